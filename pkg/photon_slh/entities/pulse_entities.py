import numpy as np
from termcolor import colored

from . import EntityBase, frozen_array
from .transfer_entities import check_uniform_grid
from .. import DimensionMismatch, PhotonSlhException


class TimeGrid:
    """ Uniform time grid t_n = t_start + n dt with a power-of-two number of samples. """

    def __init__(self, t_start, dt, n_samples):
        self.t_start = float(t_start)
        self.dt = float(dt)
        self.n_samples = int(n_samples)
        if not np.isfinite(self.t_start):
            raise PhotonSlhException(f"Grid start must be finite, got {t_start}")
        if not self.dt > 0 or not np.isfinite(self.dt):
            raise PhotonSlhException(f"Grid step must be positive, got {dt}")
        if self.n_samples < 1 or self.n_samples & (self.n_samples - 1):
            raise PhotonSlhException(f"Grid size must be a power of two, got {n_samples}")

    @classmethod
    def centered(cls, span, log2_n, center=0.0):
        n_samples = 2 ** int(log2_n)
        return cls(t_start=center - span / 2, dt=span / n_samples, n_samples=n_samples)

    def __eq__(self, other):
        return isinstance(other, TimeGrid) and \
            (self.t_start, self.dt, self.n_samples) == (other.t_start, other.dt, other.n_samples)

    def __hash__(self):
        return hash((self.t_start, self.dt, self.n_samples))

    def __repr__(self):
        return f"TimeGrid(t_start={self.t_start}, dt={self.dt}, n_samples={self.n_samples})"

    @property
    def times(self):
        return self.t_start + self.dt * np.arange(self.n_samples)

    @property
    def span(self):
        return self.dt * self.n_samples

    @property
    def omegas(self):
        """Angular frequencies of the grid's DFT in increasing order (fft-shifted)."""
        return np.fft.fftshift(2 * np.pi * np.fft.fftfreq(self.n_samples, self.dt))


class Pulse(EntityBase):
    """ A single-photon pulse shape xi(t) with one column per channel.

    A pulse is either an analytic kind (a PulseShape placed on one channel, scaled by a constant) or plain
    samples. Analytic pulses are sampled on first use; the samples are cached and read-only, so asking again
    returns the very same array.
    """

    def __init__(self, grid, samples=None, shape=None, channels=1, channel=0, scale=1.0):
        if (samples is None) == (shape is None):
            raise PhotonSlhException("A pulse is built from either samples or an analytic shape")
        self._grid = grid
        self._shape = shape
        self._scale = complex(scale)
        if samples is not None:
            samples = np.asarray(samples, dtype=complex)
            if samples.ndim == 1:
                samples = samples[:, None]
            if samples.ndim != 2 or samples.shape[0] != grid.n_samples:
                raise DimensionMismatch(f"Samples of shape {samples.shape} do not fit a grid of "
                                        f"{grid.n_samples} points")
            if not np.all(np.isfinite(samples)):
                raise PhotonSlhException("Pulse samples must be finite")
            self._samples = frozen_array(samples)
            self._channels = samples.shape[1]
            self._channel = None
        else:
            if not 0 <= channel < channels:
                raise DimensionMismatch(f"Channel {channel} is outside 0..{channels - 1}")
            self._samples = None
            self._channels = int(channels)
            self._channel = int(channel)

    @classmethod
    def from_shape(cls, shape, grid, channels=1, channel=0):
        return cls(grid, shape=shape, channels=channels, channel=channel)

    @classmethod
    def from_samples(cls, grid, samples):
        return cls(grid, samples=samples)

    def __str__(self, prefix="", verbose=False):
        output = colored(f"{prefix}Pulse ({self.kind}) on {self.channels} channel(s)\n", 'yellow') + \
            f"{prefix}    grid: t_start={self.grid.t_start:.6g} dt={self.grid.dt:.6g} n={self.grid.n_samples}\n" \
            f"{prefix}    norm: {self.norm():.10g}\n"
        if verbose and self._shape is not None:
            output += f"{prefix}    parameters: {self._shape.params}\n"
        return output

    def __repr__(self):
        return f"Pulse(kind={self.kind!r}, channels={self.channels}, grid={self.grid!r})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))

    @property
    def grid(self):
        return self._grid

    @property
    def shape(self):
        return self._shape

    @property
    def kind(self):
        return 'sampled' if self._shape is None else self._shape.name

    @property
    def channels(self):
        return self._channels

    @property
    def samples(self):
        if self._samples is None:
            samples = np.zeros((self._grid.n_samples, self._channels), dtype=complex)
            samples[:, self._channel] = self._scale * self._shape.values(self._grid.times)
            self._samples = frozen_array(samples)
        return self._samples

    def energy(self):
        """Discrete sum_k sum_n |xi_k(t_n)|^2 dt."""
        return float(np.sum(np.abs(self.samples) ** 2) * self._grid.dt)

    def norm(self):
        return float(np.sqrt(self.energy()))

    def energy_before(self, t0):
        """Fraction of the pulse energy carried by samples with t < t0."""
        total = self.energy()
        if total == 0:
            return 0.0
        early = self._grid.times < t0
        return float(np.sum(np.abs(self.samples[early]) ** 2) * self._grid.dt / total)

    def scaled(self, factor):
        if self._shape is not None:
            return Pulse(self._grid, shape=self._shape, channels=self._channels, channel=self._channel,
                         scale=self._scale * factor)
        return Pulse(self._grid, samples=self.samples * factor)

    def shift(self, n_samples):
        """Delay the pulse by a whole number of samples, wrapping around the grid."""
        return Pulse(self._grid, samples=np.roll(self.samples, n_samples, axis=0))


class Spectrum(EntityBase):
    """ Continuous-convention Fourier transform of a sampled pulse, F[xi](omega) = int e^{-i omega t} xi(t) dt.

    `omegas` is increasing; `t_start` and `dt` record the time grid so the transform can be inverted.
    """

    def __init__(self, omegas, values, t_start, dt):
        omegas = np.asarray(omegas, dtype=float)
        check_uniform_grid(omegas, "frequency")
        values = np.asarray(values, dtype=complex)
        if values.ndim != 2 or values.shape[0] != omegas.shape[0]:
            raise DimensionMismatch(f"Spectrum values of shape {values.shape} do not match {omegas.shape[0]} "
                                    f"frequencies")
        self._omegas = frozen_array(omegas, dtype=float)
        self._values = frozen_array(values)
        self.t_start = float(t_start)
        self.dt = float(dt)

    def __str__(self, prefix="", verbose=False):
        return colored(f"{prefix}Spectrum on {len(self.omegas)} frequencies, {self.channels} channel(s)\n", 'yellow')

    def __repr__(self):
        return f"Spectrum(points={len(self.omegas)}, channels={self.channels})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))

    @property
    def omegas(self):
        return self._omegas

    @property
    def values(self):
        return self._values

    @property
    def channels(self):
        return self._values.shape[1]

    def energy(self):
        """sum |xi~|^2 d omega / 2 pi, equal to the pulse energy by Parseval."""
        d_omega = 2 * np.pi / (self.dt * len(self._omegas))
        return float(np.sum(np.abs(self._values) ** 2) * d_omega / (2 * np.pi))
