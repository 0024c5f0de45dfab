"""Pulse construction, normalization and the continuous-convention Fourier transform.

The transform follows F[xi](omega) = int e^{-i omega t} xi(t) dt. On a grid t_n = t_start + n dt it becomes

    F[xi](omega_k) ~ dt e^{-i omega_k t_start} DFT(xi)_k

so spectra of pulses that differ by a time shift differ only by a linear phase.
"""
import logging

import numpy as np

from . import PhotonSlhException
from .entities.pulse_entities import Pulse, Spectrum, TimeGrid
from .pulse_shapes import PulseShape

logger = logging.getLogger(__name__)


def make_pulse(kind, grid, channels=1, channel=0, **params):
    """Place an analytic pulse kind on one channel of a grid, e.g. make_pulse('gaussian', grid, sigma=2)."""
    return Pulse.from_shape(PulseShape.factory(kind, **params), grid, channels=channels, channel=channel)


def normalize(pulse):
    """Scale a pulse so that sum_k sum_n |xi_k(t_n)|^2 dt = 1.

    Raises:
        PhotonSlhException: When the pulse is zero on the grid.
    """
    norm = pulse.norm()
    if norm == 0 or not np.isfinite(norm):
        raise PhotonSlhException("Cannot normalize a pulse with zero norm")
    logger.debug("normalizing %s pulse by %.12g", pulse.kind, norm)
    return pulse.scaled(1 / norm)


def fourier(pulse):
    grid = pulse.grid
    omegas = 2 * np.pi * np.fft.fftfreq(grid.n_samples, grid.dt)
    phase = grid.dt * np.exp(-1j * omegas * grid.t_start)
    values = phase[:, None] * np.fft.fft(pulse.samples, axis=0)
    return Spectrum(np.fft.fftshift(omegas), np.fft.fftshift(values, axes=0), grid.t_start, grid.dt)


def inverse_fourier(spectrum):
    """Undo `fourier`, returning sampled pulse on the time grid the spectrum was taken from."""
    n_samples = len(spectrum.omegas)
    omegas = np.fft.ifftshift(spectrum.omegas)
    values = np.fft.ifftshift(spectrum.values, axes=0)
    phase = np.exp(1j * omegas * spectrum.t_start) / spectrum.dt
    samples = np.fft.ifft(phase[:, None] * values, axis=0)
    return Pulse.from_samples(TimeGrid(spectrum.t_start, spectrum.dt, n_samples), samples)
