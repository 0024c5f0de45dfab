import logging
import warnings

import numpy as np
from scipy import integrate, special
from termcolor import colored

from . import EntityBase, fmt_complex, frozen_array
from .. import DimensionMismatch, ModelError, PhotonSlhException

logger = logging.getLogger(__name__)

SELF_TEST_TOL = 1e-9


class TransferStage(EntityBase):
    """ One pole of a single-photon filter: g(t) = h theta theta^dag S e^{at} u(t) + delta(t) S. """

    def __init__(self, S, theta, h, a):
        S = np.atleast_2d(np.asarray(S, dtype=complex))
        theta = np.atleast_1d(np.asarray(theta, dtype=complex))
        if S.shape != (theta.shape[0], theta.shape[0]):
            raise DimensionMismatch(f"S of shape {S.shape} does not match {theta.shape[0]} coupling(s)")
        a = complex(a)
        if not a.real < 0:
            raise ModelError(f"A filter stage needs Re(a) < 0, got a = {a}")
        self._S = frozen_array(S)
        self._theta = frozen_array(theta)
        self._h = float(h)
        self._a = a
        self._coefficient = frozen_array(self._h * np.outer(theta, theta.conj()) @ S)
        self._self_test()

    def _self_test(self):
        """Compare G(0) from the closed form with G(0) from integrating the kernel numerically."""
        closed = self._coefficient / -self._a
        re, im = self._a.real, self._a.imag
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', integrate.IntegrationWarning)
            if im == 0:
                decay, _ = integrate.quad(lambda s: np.exp(-s), 0, np.inf, epsabs=1e-14, epsrel=1e-13)
                integral = complex(decay / -re)
            else:
                # after each period of the oscillation e^{at} has only shrunk by e^{re * period}
                period = 2 * np.pi / abs(im)
                real_part, _ = integrate.quad(lambda t: np.exp(re * t), 0, period, weight='cos', wvar=abs(im),
                                              epsabs=1e-15, epsrel=1e-12)
                imag_part, _ = integrate.quad(lambda t: np.exp(re * t), 0, period, weight='sin', wvar=abs(im),
                                              epsabs=1e-15, epsrel=1e-12)
                integral = complex(real_part, np.sign(im) * imag_part) / -np.expm1(re * period)
        numeric = self._coefficient * integral
        scale = max(1.0, float(np.linalg.norm(closed)))
        residual = float(np.linalg.norm(numeric - closed)) / scale
        if residual > SELF_TEST_TOL:
            raise PhotonSlhException(f"Kernel integral disagrees with the closed-form response at omega=0 "
                                     f"(residual {residual:.3e})")
        logger.debug("stage a=%s passed the zero-frequency self-test (residual %.3e)", self._a, residual)

    def __str__(self, prefix="", verbose=False):
        output = colored(f"{prefix}Stage a={fmt_complex(self.a)}\n", 'magenta') + \
            f"{prefix}        h: {self.h:.10g}\n" \
            f"{prefix}    theta: [{', '.join(fmt_complex(c) for c in self.theta)}]\n"
        if verbose:
            for row in self.S:
                output += f"{prefix}    S row: [{', '.join(fmt_complex(x) for x in row)}]\n"
        return output

    def __repr__(self):
        return f"TransferStage(h={self.h}, a={self.a}, channels={self.channels})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))

    @property
    def S(self):
        return self._S

    @property
    def theta(self):
        return self._theta

    @property
    def h(self):
        return self._h

    @property
    def a(self):
        return self._a

    @property
    def channels(self):
        return self._theta.shape[0]

    @property
    def coefficient(self):
        """The matrix h theta theta^dag S multiplying e^{at} in the smooth part of the kernel."""
        return self._coefficient

    @property
    def is_active(self):
        return bool(np.any(self._coefficient != 0))

    def response(self, omegas):
        """G(i omega) = S + h theta theta^dag S / (i omega - a), shape (len(omegas), K, K)."""
        omegas = np.asarray(omegas, dtype=float)
        return self._S[None, :, :] + self._coefficient[None, :, :] / (1j * omegas - self._a)[:, None, None]


class PhotonTransfer(EntityBase):
    """ The linear map a single photon's pulse shape goes through: a chain of stages, first stage first.

    A bare model gives one stage; `transfer.cascade` concatenates chains. The stage list is never multiplied
    out into one rational function, so every pole stays exact however long the chain.
    """

    def __init__(self, stages):
        stages = tuple(stages)
        if not stages:
            raise ModelError("A filter needs at least one stage")
        channels = stages[0].channels
        if any(stage.channels != channels for stage in stages):
            raise DimensionMismatch("All stages of a filter must have the same number of channels")
        self._stages = stages

    @classmethod
    def from_stage(cls, S, theta, h, a):
        return cls([TransferStage(S, theta, h, a)])

    @classmethod
    def identity(cls, channels=1):
        return cls.from_stage(np.eye(channels), np.zeros(channels), 0.0, -1.0)

    def __str__(self, prefix="", verbose=False):
        return colored(f"{prefix}Photon transfer: {self.n_stages} stage(s), {self.channels} channel(s)\n", 'green')

    def __repr__(self):
        return f"PhotonTransfer(stages={self.n_stages}, channels={self.channels})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))
        if verbose or self.wants(associated_entities_to_show, 'stages'):
            for stage in self._stages:
                stage.print(prefix=f"{prefix}    ", verbose=verbose)

    @property
    def stages(self):
        return self._stages

    @property
    def n_stages(self):
        return len(self._stages)

    @property
    def channels(self):
        return self._stages[0].channels

    def _single(self):
        return self._stages[0]

    @property
    def S(self):
        return self._single().S

    @property
    def theta(self):
        return self._single().theta

    @property
    def h(self):
        return self._single().h

    @property
    def a(self):
        return self._single().a

    @property
    def feedthrough(self):
        """The delta(t) coefficient of the whole chain: the product of the stages' S, last stage leftmost."""
        total = np.eye(self.channels, dtype=complex)
        for stage in self._stages:
            total = stage.S @ total
        return total

    def _decay_profile(self):
        active = [stage for stage in self._stages if stage.is_active]
        if not active:
            return 0, np.inf
        rate = 2 * min(-stage.a.real for stage in active)
        return len(active), rate

    def tail_fraction(self, span):
        """Fraction of the smooth kernel's energy beyond `span`, bounded by treating all poles as the slowest one.

        For a pole of order n the squared kernel behaves like t^{2n-2} e^{-rate t}, whose tail is the
        regularized upper incomplete gamma function Q(2n - 1, rate * span).
        """
        order, rate = self._decay_profile()
        if order == 0:
            return 0.0
        return float(special.gammaincc(2 * order - 1, rate * span))

    def suggested_span(self, threshold):
        order, rate = self._decay_profile()
        if order == 0:
            return 0.0
        return float(special.gammainccinv(2 * order - 1, threshold) / rate)


class FrequencyResponse(EntityBase):
    """ G(i omega) sampled on a uniform, strictly increasing grid; `values` has shape (len(omegas), K, K). """

    def __init__(self, omegas, values):
        omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
        values = np.asarray(values, dtype=complex)
        check_uniform_grid(omegas, "frequency")
        if values.ndim != 3 or values.shape[0] != omegas.shape[0] or values.shape[1] != values.shape[2]:
            raise DimensionMismatch(f"Response values of shape {values.shape} do not match {omegas.shape[0]} "
                                    f"frequencies")
        self._omegas = frozen_array(omegas, dtype=float)
        self._values = frozen_array(values)

    def __str__(self, prefix="", verbose=False):
        return colored(f"{prefix}Frequency response on {len(self.omegas)} point(s)\n", 'green') + \
            f"{prefix}    omega range: [{self.omegas[0]:.6g}, {self.omegas[-1]:.6g}]\n"

    def __repr__(self):
        return f"FrequencyResponse(points={len(self.omegas)}, channels={self.channels})"

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

    def element(self, i, j):
        """G_ij over the grid, with 1-based channel indices as in G_21."""
        return self._values[:, i - 1, j - 1]


def check_uniform_grid(points, what):
    if points.ndim != 1 or points.size == 0:
        raise PhotonSlhException(f"A {what} grid must be a non-empty 1-D array")
    if not np.all(np.isfinite(points)):
        raise PhotonSlhException(f"A {what} grid must be finite")
    if points.size > 1:
        steps = np.diff(points)
        if not np.all(steps > 0):
            raise PhotonSlhException(f"A {what} grid must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=1e-8, atol=0):
            raise PhotonSlhException(f"A {what} grid must be uniformly spaced")
