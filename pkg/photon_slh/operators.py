"""Dense operators on C^N and the eigen-relation tests used by the linearity checker.

Qubit conventions: |0_s> is basis vector 0, sigma_z = |1_s><1_s| - |0_s><0_s|,
sigma_+ = |1_s><0_s| and sigma_- = |0_s><1_s|.
"""
import logging

import numpy as np

from . import DimensionMismatch, PhotonSlhException
from .config import SolverConfig, DEFAULT_TOLERANCE
from .entities.operator_entities import Operator, EigenRelationReport

logger = logging.getLogger(__name__)


def identity(dim):
    return Operator(np.eye(dim))


def zero(dim):
    return Operator(np.zeros((dim, dim)))


def ground_state(dim):
    vector = np.zeros(dim, dtype=complex)
    vector[0] = 1.0
    return vector


def sigma_z():
    return Operator(np.diag([-1.0, 1.0]))


def sigma_plus():
    return Operator([[0, 0], [1, 0]])


def sigma_minus():
    return Operator([[0, 1], [0, 0]])


def sigma_x():
    return Operator([[0, 1], [1, 0]])


def commutator(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch(f"Cannot commute operators of dimension {a.dim} and {b.dim}")
    return Operator(a.entries @ b.entries - b.entries @ a.entries)


def vector_eigen_test(a, v, tol=DEFAULT_TOLERANCE):
    """Test A v = lambda v.

    lambda is the Rayleigh quotient <v, A v>/<v, v> and the residual is ||A v - lambda v|| / ||v||.
    A zero vector gives a degenerate report (holds=False, eigenvalue unset).
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (a.dim,):
        raise DimensionMismatch(f"Vector of length {v.shape} does not match operator dimension {a.dim}")
    norm_v = np.linalg.norm(v)
    if norm_v == 0:
        return EigenRelationReport(holds=False, eigenvalue=None, residual=np.inf)

    av = a.entries @ v
    eigenvalue = np.vdot(v, av) / np.vdot(v, v)
    residual = np.linalg.norm(av - eigenvalue * v) / norm_v
    return EigenRelationReport(holds=residual <= tol, eigenvalue=eigenvalue, residual=residual)


def row_proportionality_test(a, b, row, tol=DEFAULT_TOLERANCE):
    """Test row.A = lambda row.B for a covector `row`.

    lambda is the least-squares fit of row.A onto row.B and the residual is measured relative to ||row.B||.
    When row.B vanishes, the relation holds iff row.A vanishes too and lambda is left unset.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"Operator dimensions differ: {a.dim} != {b.dim}")
    row = np.asarray(row, dtype=complex)
    if row.shape != (a.dim,):
        raise DimensionMismatch(f"Row of length {row.shape} does not match operator dimension {a.dim}")
    if np.linalg.norm(row) == 0:
        return EigenRelationReport(holds=False, eigenvalue=None, residual=np.inf)

    row_a = row @ a.entries
    row_b = row @ b.entries
    norm_b = np.linalg.norm(row_b)
    if norm_b <= tol:
        residual = np.linalg.norm(row_a)
        return EigenRelationReport(holds=residual <= tol, eigenvalue=None, residual=residual)

    eigenvalue = np.vdot(row_b, row_a) / np.vdot(row_b, row_b)
    residual = np.linalg.norm(row_a - eigenvalue * row_b) / norm_b
    return EigenRelationReport(holds=residual <= tol, eigenvalue=eigenvalue, residual=residual)


def embed_site(a, site, n_sites, config=None):
    """Kronecker-embed A on factor `site` of an n_sites-fold tensor product; site 0 is the leftmost factor."""
    config = config or SolverConfig()
    if not 0 <= site < n_sites:
        raise PhotonSlhException(f"Site {site} is outside 0..{n_sites - 1}")
    total = a.dim ** n_sites
    if total > config.max_dim:
        raise PhotonSlhException(f"Embedding on {n_sites} sites gives dimension {total}, "
                                 f"above the cap of {config.max_dim}")

    result = np.eye(1, dtype=complex)
    for index in range(n_sites):
        factor = a.entries if index == site else np.eye(a.dim)
        result = np.kron(result, factor)
    logger.debug("embedded %dx%d operator on site %d of %d", a.dim, a.dim, site, n_sites)
    return Operator(result)
