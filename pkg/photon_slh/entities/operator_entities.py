import numpy as np
from termcolor import colored

from . import EntityBase, fmt_complex, frozen_array
from .. import DimensionMismatch, ModelError


class Operator(EntityBase):
    """ A dense complex matrix acting on C^N.

    Entries are stored row-major in a read-only numpy array, so an Operator can be shared freely once built.
    Basis index 0 is the ground state |0_s>.
    """

    # numpy scalars on the left must defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, entries):
        entries = np.atleast_2d(np.asarray(entries, dtype=complex))
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ModelError(f"An operator must be a square matrix, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ModelError("Operator entries must be finite")
        self._entries = frozen_array(entries)

    def __str__(self, prefix="", verbose=False):
        output = colored(f"{prefix}Operator on C^{self.dim}\n", 'cyan')
        if verbose:
            for row in self._entries:
                output += f"{prefix}    [{', '.join(fmt_complex(x) for x in row)}]\n"
        return output

    def __repr__(self):
        return f"Operator({self._entries.tolist()!r})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))

    @property
    def dim(self):
        return self._entries.shape[0]

    @property
    def entries(self):
        return self._entries

    def dagger(self):
        return Operator(self._entries.conj().T)

    def norm(self):
        return float(np.linalg.norm(self._entries, 'fro'))

    def is_hermitian(self, tol):
        return float(np.linalg.norm(self._entries - self._entries.conj().T, 'fro')) <= tol

    def apply(self, vector):
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (self.dim,):
            raise DimensionMismatch(f"Vector of length {vector.shape} does not match operator dimension {self.dim}")
        return self._entries @ vector

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"Operator dimensions differ: {self.dim} != {other.dim}")

    def __add__(self, other):
        self._check_dim(other)
        return Operator(self._entries + other.entries)

    def __sub__(self, other):
        self._check_dim(other)
        return Operator(self._entries - other.entries)

    def __neg__(self):
        return Operator(-self._entries)

    def __matmul__(self, other):
        self._check_dim(other)
        return Operator(self._entries @ other.entries)

    def __mul__(self, scalar):
        return Operator(complex(scalar) * self._entries)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Operator) and np.array_equal(self._entries, other.entries)

    def __hash__(self):
        return hash(self._entries.tobytes())

    def allclose(self, other, atol):
        return self.dim == other.dim and float(np.max(np.abs(self._entries - other.entries))) <= atol


class EigenRelationReport(EntityBase):
    """ Verdict of one eigen-relation test, A v = lambda v or row.A = lambda row.B.

    `eigenvalue` is None when the test vector (or the row image it is compared with) vanishes; in that
    degenerate case `holds` only says whether the other side vanished too.
    """

    def __init__(self, holds, eigenvalue, residual):
        self._holds = bool(holds)
        self._eigenvalue = None if eigenvalue is None else complex(eigenvalue)
        self._residual = float(residual)

    def __str__(self, prefix="", verbose=False):
        verdict = colored("holds", 'green') if self.holds else colored("fails", 'red')
        return f"{prefix}{verdict}: eigenvalue={fmt_complex(self.eigenvalue)} residual={self.residual:.3e}\n"

    def __repr__(self):
        return f"EigenRelationReport(holds={self.holds}, eigenvalue={self.eigenvalue}, residual={self.residual})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))

    @property
    def holds(self):
        return self._holds

    @property
    def eigenvalue(self):
        return self._eigenvalue

    @property
    def residual(self):
        return self._residual

    def to_dict(self):
        return {
            'holds': self.holds,
            'eigenvalue': None if self.eigenvalue is None else [self.eigenvalue.real, self.eigenvalue.imag],
            'residual': self.residual if np.isfinite(self.residual) else None,
        }
