"""SLH models: the single-photon linearity check and network composition.

A model whose ground state |0_s> is left alone by H0 and annihilated by L0, and whose coupling satisfies

    <0_s|[L0, H0] = beta <0_s|L0,   [L0^dag, L0]|0_s> = h |0_s>,   Re(a) < 0,

responds to a single photon like a linear filter with one pole at a = -i beta + (sum_k |c_k|^2) h / 2.
"""
import logging

import numpy as np

from . import DimensionMismatch, ModelError, SingularLoop
from .config import SolverConfig
from .entities.model_entities import SLHModel, DerivedParams, ConditionReport, ValidationReport
from .entities.operator_entities import Operator
from .operators import (commutator, embed_site, ground_state, row_proportionality_test, sigma_minus,
                        sigma_plus, sigma_z, vector_eigen_test)

logger = logging.getLogger(__name__)

SINGULAR_LOOP_TOL = 1e-12


def two_level_model(kappa, omega_c):
    """A two-level atom on one channel: (1, sqrt(kappa) sigma_-, omega_c/2 sigma_z)."""
    return SLHModel(S=[[1.0]], theta=[np.sqrt(kappa)], L0=sigma_minus(), H0=sigma_z() * (omega_c / 2))


def two_channel_model(kappa1, kappa2, omega_c, S=None):
    """A two-level atom coupled to two channels with strengths sqrt(kappa1), sqrt(kappa2)."""
    S = np.eye(2) if S is None else S
    return SLHModel(S=S, theta=[np.sqrt(kappa1), np.sqrt(kappa2)], L0=sigma_minus(),
                    H0=sigma_z() * (omega_c / 2))


def gradient_echo_memory(n_atoms, kappa, omega_c, config=None):
    """Joint model of n_atoms two-level atoms chained on one channel, atom 1 (site 0) upstream.

    `omega_c` is either one transition frequency or one per atom.
    """
    omegas = np.broadcast_to(np.asarray(omega_c, dtype=float), (n_atoms,))
    lowering = [embed_site(sigma_minus(), n, n_atoms, config) for n in range(n_atoms)]
    raising = [embed_site(sigma_plus(), n, n_atoms, config) for n in range(n_atoms)]

    L0 = lowering[0]
    H0 = embed_site(sigma_z(), 0, n_atoms, config) * (omegas[0] / 2)
    for n in range(1, n_atoms):
        L0 = L0 + lowering[n]
        H0 = H0 + embed_site(sigma_z(), n, n_atoms, config) * (omegas[n] / 2)
    for j in range(1, n_atoms):
        for i in range(j):
            H0 = H0 + (raising[j] @ lowering[i] - raising[i] @ lowering[j]) * (kappa / 2j)
    return SLHModel(S=[[1.0]], theta=[np.sqrt(kappa)], L0=L0, H0=H0)


def validate_theorem3(model, tol=None, config=None):
    """Check the five single-photon linearity conditions of `model`; failures are reported, not raised.

    Args:
        model (SLHModel): A model with factorized coupling L = theta^T L0.
        tol (float): Optional, tolerance of the eigen-relation tests. Defaults to the configured tolerance.
        config (SolverConfig): Optional, supplies the tolerance and the stability margin.

    Returns:
        ValidationReport: per-condition verdicts, with DerivedParams whenever the algebraic conditions hold.

    Raises:
        ModelError: When the model's coupling is not of the form theta^T L0.
    """
    config = config or SolverConfig(tolerance=tol)
    tol = tol if tol is not None else config.tolerance
    if not model.is_factorized:
        raise ModelError("The linearity conditions are defined for couplings of the form theta^T L0 only")

    ground = ground_state(model.levels)
    conditions = {}

    energy = vector_eigen_test(model.H0, ground, tol)
    conditions['ground_energy'] = ConditionReport('ground_energy', energy.holds, energy.residual)

    leak = float(np.linalg.norm(model.L0.apply(ground)))
    conditions['coupling_annihilates'] = ConditionReport(
        'coupling_annihilates', leak <= tol, leak,
        "" if leak <= tol else "L0 creates excitations from the ground state")

    proportional = row_proportionality_test(commutator(model.L0, model.H0), model.L0, ground, tol)
    conditions['commutator_proportional'] = ConditionReport(
        'commutator_proportional', proportional.holds, proportional.residual)
    beta = proportional.eigenvalue if proportional.eigenvalue is not None else 0.0

    number = vector_eigen_test(commutator(model.L0.dagger(), model.L0), ground, tol)
    number_holds = number.holds and abs(number.eigenvalue.imag) <= tol
    conditions['number_eigenrelation'] = ConditionReport('number_eigenrelation', number_holds, number.residual)

    params = None
    if all(c.holds for c in conditions.values()):
        params = DerivedParams(alpha=energy.eigenvalue, beta=beta, h=number.eigenvalue.real, theta=model.theta)
        conditions['stability'] = _stability_report(params.a, config.stability_margin, tol)
    else:
        conditions['stability'] = ConditionReport('stability', False, np.inf,
                                                  "not evaluated: an algebraic condition failed")

    report = ValidationReport(conditions, params)
    logger.info("validation %s (failed: %s)", "passed" if report.passed else "failed", report.failed_conditions)
    return report


def _stability_report(a, margin, tol):
    re_a = a.real
    holds = re_a < -margin
    if holds:
        message = ""
    elif abs(re_a) <= tol:
        message = "marginally stable: Re(a) = 0"
    elif re_a > 0:
        message = "unstable: Re(a) > 0"
    else:
        message = f"Re(a) = {re_a:.3e} is within the stability margin {margin:.3e}"
    return ConditionReport('stability', holds, max(re_a + margin, 0.0), message)


def series_product(g2, g1, config=None):
    """Feed the output of g1 into the input of g2.

    Returns (S2 S1, L2 + S2 L1, H1 + H2 + Im{L2^dag S2 L1}), where Im{X} = (X - X^dag) / 2i. The result keeps
    the theta^T L0 form whenever the composed coupling still factors, and a general coupling list otherwise.
    """
    config = config or SolverConfig()
    if g1.channels != g2.channels:
        raise DimensionMismatch(f"Cannot connect {g1.channels} channel(s) to {g2.channels} channel(s)")
    if g1.levels != g2.levels:
        raise DimensionMismatch(f"Models act on C^{g1.levels} and C^{g2.levels}; embed them on a common space")

    S1, S2 = g1.S, g2.S
    L1, L2 = g1.couplings, g2.couplings
    channels = g1.channels

    couplings = []
    for i in range(channels):
        coupling = L2[i]
        for j in range(channels):
            coupling = coupling + L1[j] * S2[i, j]
        couplings.append(coupling)

    cross = Operator(np.zeros((g1.levels, g1.levels)))
    for i in range(channels):
        for j in range(channels):
            cross = cross + (L2[i].dagger() @ L1[j]) * S2[i, j]
    H = g1.H0 + g2.H0 + (cross - cross.dagger()) * (1 / 2j)

    S = S2 @ S1
    factored = _factorize_series(g2, g1, couplings, config.tolerance)
    if factored is None:
        logger.debug("series product coupling does not factor; keeping %d coupling operators", channels)
        return SLHModel(S=S, H0=H, couplings=couplings)
    theta, L0 = factored
    return SLHModel(S=S, theta=theta, L0=L0, H0=H)


def _factorize_series(g2, g1, couplings, tol):
    def vanishes(model):
        return all(c.norm() <= tol for c in model.couplings)

    if g1.is_factorized and g2.is_factorized:
        if vanishes(g1):
            return g2.theta, g2.L0
        if vanishes(g2):
            return g2.S @ g1.theta, g1.L0
        if g1.L0.allclose(g2.L0, tol):
            return g2.theta + g2.S @ g1.theta, g2.L0
    return common_factor(couplings, tol)


def common_factor(couplings, tol):
    """Write each L_k as c_k L0 with L0 the largest coupling, or return None when they are not proportional."""
    norms = [c.norm() for c in couplings]
    reference = couplings[int(np.argmax(norms))]
    if max(norms) <= tol:
        return np.zeros(len(couplings)), reference
    ref = reference.entries.ravel()
    theta = []
    for coupling in couplings:
        entries = coupling.entries.ravel()
        c = np.vdot(ref, entries) / np.vdot(ref, ref)
        if np.linalg.norm(entries - c * ref) > tol * max(1.0, np.linalg.norm(entries)):
            return None
        theta.append(c)
    return np.array(theta), reference


def feedback_detuning(model):
    """Frequency shift Delta picked up when channel 2's output is fed back into channel 2's input."""
    c1, c2, loop_gain = _feedback_terms(model)
    S22 = model.S[1, 1]
    return float((np.conj(c1) * c2 * loop_gain + abs(c2) ** 2 * S22 / (1 - S22)).imag)


def feedback_reduce(model):
    """Close the loop from output channel 2 to input channel 2, leaving a single-channel model.

    S' = S11 + S12 (1 - S22)^-1 S21,  theta' = [c1 + S12 (1 - S22)^-1 c2],  H' = H0 + Delta L0^dag L0.
    For a two-level atom L0^dag L0 = (sigma_z + 1)/2, and a real S gives Delta = 0.

    Raises:
        DimensionMismatch: When the model does not have exactly two channels.
        SingularLoop: When 1 - S22 vanishes.
    """
    c1, c2, loop_gain = _feedback_terms(model)
    S = model.S
    reduced_S = S[0, 0] + loop_gain * S[1, 0]
    reduced_theta = c1 + loop_gain * c2
    delta = feedback_detuning(model)
    H0 = model.H0 + (model.L0.dagger() @ model.L0) * delta
    logger.info("feedback loop closed: S'=%s theta'=%s delta=%g", reduced_S, reduced_theta, delta)
    return SLHModel(S=[[reduced_S]], theta=[reduced_theta], L0=model.L0, H0=H0)


def _feedback_terms(model):
    if model.channels != 2:
        raise DimensionMismatch(f"Feedback needs a two-channel model, got {model.channels} channel(s)")
    if not model.is_factorized:
        raise ModelError("Feedback reduction needs a coupling of the form theta^T L0")
    c1, c2 = model.theta
    if c1.real < 0 or c2.real < 0:
        raise ModelError("Feedback reduction needs couplings with nonnegative real part")
    loop = 1 - model.S[1, 1]
    if abs(loop) <= SINGULAR_LOOP_TOL:
        raise SingularLoop(f"The feedback loop is singular: |1 - S22| = {abs(loop):.3e}")
    return c1, c2, model.S[0, 1] / loop
