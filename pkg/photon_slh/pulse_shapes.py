"""Analytic single-photon pulse kinds.

Each kind is unit-norm in the continuum. Where a kind jumps, the value at the jump itself is the mean of the
two one-sided limits, which keeps sampled integrals second-order accurate.
"""
import numpy as np

from . import PhotonSlhException


class PulseShape:

    _shapes = {}

    name = None

    @classmethod
    def register(cls, shape_class):
        cls._shapes[shape_class.name] = shape_class

    @classmethod
    def factory(cls, shape_name, **params):
        for name, shape in cls._shapes.items():
            if name == shape_name:
                try:
                    return shape(**params)
                except TypeError as e:
                    raise PhotonSlhException(f"Bad parameters for pulse kind {shape_name}: {e}")
        raise PhotonSlhException(f"Unknown pulse kind: {shape_name}")

    @classmethod
    def kinds(cls):
        return sorted(cls._shapes)

    @property
    def params(self):
        return dict(self._params)

    def values(self, ts):
        raise NotImplementedError()

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self._params.items())
        return f"{type(self).__name__}({args})"


def _step(ts, t_jump):
    """1 for t > t_jump, 1/2 at t_jump, 0 before."""
    return np.where(ts > t_jump, 1.0, np.where(ts == t_jump, 0.5, 0.0))


class Gaussian(PulseShape):
    """ (2 pi sigma^2)^{-1/4} exp(-(t - t0)^2 / 4 sigma^2) e^{i omega (t - t0)}; |xi|^2 has standard deviation sigma.

    `omega` places the centre of the spectrum; omega = -omega_c is resonant with a transition at omega_c.
    """

    name = 'gaussian'

    def __init__(self, t0=0.0, sigma=1.0, omega=0.0):
        if not sigma > 0:
            raise PhotonSlhException(f"Gaussian width must be positive, got {sigma}")
        self._params = {'t0': float(t0), 'sigma': float(sigma), 'omega': float(omega)}

    def values(self, ts):
        t0, sigma, omega = self._params['t0'], self._params['sigma'], self._params['omega']
        ts = np.asarray(ts, dtype=float)
        envelope = (2 * np.pi * sigma ** 2) ** -0.25 * np.exp(-(ts - t0) ** 2 / (4 * sigma ** 2))
        return envelope * np.exp(1j * omega * (ts - t0))


class DecayingExp(PulseShape):
    """ sqrt(kappa) e^{-kappa (t - t_on) / 2} for t > t_on: the photon spontaneously emitted by a decaying atom. """

    name = 'decaying_exp'

    def __init__(self, kappa=1.0, t_on=0.0):
        if not kappa > 0:
            raise PhotonSlhException(f"Decay rate must be positive, got {kappa}")
        self._params = {'kappa': float(kappa), 't_on': float(t_on)}

    def values(self, ts):
        kappa, t_on = self._params['kappa'], self._params['t_on']
        ts = np.asarray(ts, dtype=float)
        late = np.maximum(ts - t_on, 0.0)
        return (np.sqrt(kappa) * np.exp(-kappa * late / 2) * _step(ts, t_on)).astype(complex)


class RisingExp(PulseShape):
    """ -sqrt(kappa) e^{(kappa/2 - i omega_c) t} for t < 0.

    The time reverse of spontaneous emission with a resonant phase: it cancels the zero of the two-level
    transfer function, so the atom absorbs the whole photon by t = 0 and re-emits a decaying exponential.
    """

    name = 'rising_exp'

    def __init__(self, kappa=1.0, omega_c=0.0):
        if not kappa > 0:
            raise PhotonSlhException(f"Decay rate must be positive, got {kappa}")
        self._params = {'kappa': float(kappa), 'omega_c': float(omega_c)}

    def values(self, ts):
        kappa, omega_c = self._params['kappa'], self._params['omega_c']
        ts = np.asarray(ts, dtype=float)
        early = np.minimum(ts, 0.0)
        return -np.sqrt(kappa) * np.exp((kappa / 2 - 1j * omega_c) * early) * _step(-ts, 0.0)


class Square(PulseShape):

    name = 'square'

    def __init__(self, t0=-1.0, t1=1.0):
        if not t1 > t0:
            raise PhotonSlhException(f"Square pulse needs t1 > t0, got t0={t0}, t1={t1}")
        self._params = {'t0': float(t0), 't1': float(t1)}

    def values(self, ts):
        t0, t1 = self._params['t0'], self._params['t1']
        ts = np.asarray(ts, dtype=float)
        inside = _step(ts, t0) * _step(-ts, -t1)
        return (inside / np.sqrt(t1 - t0)).astype(complex)


PulseShape.register(Gaussian)
PulseShape.register(DecayingExp)
PulseShape.register(RisingExp)
PulseShape.register(Square)
