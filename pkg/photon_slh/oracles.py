"""Closed-form transfer functions and kernels of the two-level atom networks.

These are written out independently of the operator machinery in `network` and `transfer`, so each one
checks the other.
"""
import math

import numpy as np

from . import PhotonSlhException, SingularLoop
from .entities.pulse_entities import Pulse, TimeGrid
from .pulse_shapes import RisingExp
from .pulses import normalize

KUMMER_MAX_TERMS = 10000
KUMMER_RTOL = 1e-16
KUMMER_QUIET_TERMS = 3


class TwoLevelParams:

    def __init__(self, kappa, omega_c=0.0):
        self.kappa = float(kappa)
        self.omega_c = float(omega_c)
        if not self.kappa > 0:
            raise PhotonSlhException(f"Decay rate kappa must be positive, got {kappa}")

    def __repr__(self):
        return f"TwoLevelParams(kappa={self.kappa}, omega_c={self.omega_c})"

    @property
    def pole(self):
        return -1j * self.omega_c - self.kappa / 2


def two_level_G(params, omega):
    """(-kappa/2 + i(omega + omega_c)) / (kappa/2 + i(omega + omega_c))"""
    nu = 1j * (np.asarray(omega, dtype=float) + params.omega_c)
    return (nu - params.kappa / 2) / (nu + params.kappa / 2)


def two_channel_G(kappa1, kappa2, omega_c, omega):
    """Transmission G1 and reflection G2 of an atom coupled to two channels, photon entering on channel 1.

    The channel-2 output spectrum is -G2 times the input spectrum.

    Returns:
        (complex, complex): G1 = ((kappa2 - kappa1)/2 + i nu) / ((kappa1 + kappa2)/2 + i nu) and
            G2 = sqrt(kappa1 kappa2) / ((kappa1 + kappa2)/2 + i nu), with nu = omega + omega_c.
    """
    _check_rates(kappa1, kappa2)
    nu = 1j * (np.asarray(omega, dtype=float) + omega_c)
    denominator = (kappa1 + kappa2) / 2 + nu
    return ((kappa2 - kappa1) / 2 + nu) / denominator, np.sqrt(kappa1 * kappa2) / denominator


def two_channel_transmission(kappa1, kappa2, omega_c, omega):
    """|G1|^2 = ((kappa1 - kappa2)^2 + 4 nu^2) / ((kappa1 + kappa2)^2 + 4 nu^2)"""
    _check_rates(kappa1, kappa2)
    nu2 = 4 * (np.asarray(omega, dtype=float) + omega_c) ** 2
    return ((kappa1 - kappa2) ** 2 + nu2) / ((kappa1 + kappa2) ** 2 + nu2)


def two_channel_reflection(kappa1, kappa2, omega_c, omega):
    """|G2|^2 = 4 kappa1 kappa2 / ((kappa1 + kappa2)^2 + 4 nu^2)"""
    _check_rates(kappa1, kappa2)
    nu2 = 4 * (np.asarray(omega, dtype=float) + omega_c) ** 2
    return 4 * kappa1 * kappa2 / ((kappa1 + kappa2) ** 2 + nu2)


def _check_rates(*kappas):
    for kappa in kappas:
        if not kappa > 0:
            raise PhotonSlhException(f"Decay rates must be positive, got {kappa}")


def memory_GN(n_atoms, params, omega):
    """Transfer function of n_atoms identical atoms in series."""
    _check_atoms(n_atoms)
    return two_level_G(params, omega) ** n_atoms


def memory_G_chain(chain, omega):
    """Transfer function of a chain of atoms with individual parameters, first atom first."""
    if not chain:
        raise PhotonSlhException("A memory chain needs at least one atom")
    response = np.ones(np.shape(omega), dtype=complex)
    for params in chain:
        response = response * two_level_G(params, omega)
    return response


def _check_atoms(n_atoms):
    if int(n_atoms) != n_atoms or n_atoms < 1:
        raise PhotonSlhException(f"The number of atoms must be a positive integer, got {n_atoms}")


def kummer_1f1(a, b, z):
    """Kummer's confluent hypergeometric function 1F1(a; b; z) for real arguments.

    Sums sum_n (a)_n z^n / ((b)_n n!) with exactly rounded summation. The series stops when `a` is a
    nonpositive integer, or once KUMMER_QUIET_TERMS consecutive terms fall below KUMMER_RTOL of the partial sum.
    Negative z goes through Kummer's transformation 1F1(a; b; z) = e^z 1F1(b - a; b; -z), whose terms do
    not alternate when b > a.
    """
    a, b, z = float(a), float(b), float(z)
    if b <= 0 and b == int(b):
        raise PhotonSlhException(f"1F1 is undefined for b = {b}")
    if z < 0:
        return math.exp(z) * kummer_1f1(b - a, b, -z)

    terms = [1.0]
    term = 1.0
    quiet = 0
    for n in range(KUMMER_MAX_TERMS):
        term *= (a + n) / (b + n) * z / (n + 1)
        if term == 0.0:
            return math.fsum(terms)
        terms.append(term)
        if abs(term) < KUMMER_RTOL * abs(math.fsum(terms)):
            quiet += 1
            if quiet == KUMMER_QUIET_TERMS:
                return math.fsum(terms)
        else:
            quiet = 0
    raise PhotonSlhException(f"1F1({a}; {b}; {z}) did not converge in {KUMMER_MAX_TERMS} terms")


def memory_kernel_1f1(n_atoms, params, t):
    """Smooth part of the impulse response of n_atoms identical atoms in series, for t >= 0.

        g_N(t) = -kappa N e^{-kappa t / 2} 1F1(1 - N; 2; kappa t) e^{-i omega_c t}
               = -kappa N e^{kappa t / 2} 1F1(1 + N; 2; -kappa t) e^{-i omega_c t}

    The full kernel is delta(t) + g_N(t); N = 1 gives -kappa e^{-(kappa/2 + i omega_c) t}.
    """
    _check_atoms(n_atoms)
    ts = np.asarray(t, dtype=float)
    if np.any(ts < 0):
        raise PhotonSlhException("The memory kernel is causal; it is defined for t >= 0 only")
    kappa = params.kappa
    hyper = np.vectorize(lambda s: kummer_1f1(1 - n_atoms, 2, kappa * s), otypes=[float])(ts)
    values = -kappa * n_atoms * np.exp(-kappa * ts / 2) * hyper * np.exp(-1j * params.omega_c * ts)
    return values if values.ndim else complex(values)


def inverting_pulse(params, grid=None):
    """The rising exponential that a two-level atom absorbs completely by t = 0, normalized on `grid`.

    The default grid runs over [-40/kappa, 40/kappa) with 2^14 samples.
    """
    if grid is None:
        grid = TimeGrid.centered(span=80 / params.kappa, log2_n=14)
    pulse = Pulse.from_shape(RisingExp(kappa=params.kappa, omega_c=params.omega_c), grid)
    return normalize(pulse)


def feedback_case(S):
    """'real-S' when the scattering matrix is real, in which case the loop adds no detuning; 'complex-S' else."""
    return 'real-S' if np.all(np.imag(np.asarray(S, dtype=complex)) == 0) else 'complex-S'


def feedback_G(S, kappa1, kappa2, omega_c, omega, case=None):
    """Transfer function of a two-channel atom with output 2 fed back into input 2.

        G = S' (-|theta'|^2/2 + i(omega + omega_c + Delta)) / (|theta'|^2/2 + i(omega + omega_c + Delta))

    with S' = S11 + S12 S21 / (1 - S22), theta' = sqrt(kappa1) + S12 sqrt(kappa2) / (1 - S22) and
    Delta = Im(sqrt(kappa1 kappa2) S12 / (1 - S22) + kappa2 S22 / (1 - S22)). The 'real-S' case drops Delta;
    `case` defaults to `feedback_case(S)`.

    Raises:
        SingularLoop: When |1 - S22| <= 1e-12.
        PhotonSlhException: When the 'real-S' case is asked for a complex S.
    """
    _check_rates(kappa1, kappa2)
    S = np.asarray(S, dtype=complex)
    loop = 1 - S[1, 1]
    if abs(loop) <= 1e-12:
        raise SingularLoop(f"The feedback loop is singular: |1 - S22| = {abs(loop):.3e}")
    gain = S[0, 1] / loop
    reduced_S = S[0, 0] + gain * S[1, 0]
    theta = np.sqrt(kappa1) + gain * np.sqrt(kappa2)
    case = case or feedback_case(S)
    if case not in ('real-S', 'complex-S'):
        raise PhotonSlhException(f"Unknown feedback case {case!r}")
    if case == 'real-S' and feedback_case(S) == 'complex-S':
        raise PhotonSlhException("A complex scattering matrix needs the 'complex-S' case")
    if case == 'real-S':
        delta = 0.0
    else:
        delta = (np.sqrt(kappa1 * kappa2) * gain + kappa2 * S[1, 1] / loop).imag
    nu = 1j * (np.asarray(omega, dtype=float) + omega_c + delta)
    decay = abs(theta) ** 2 / 2
    return reduced_S * (nu - decay) / (nu + decay)
