import numpy as np
from termcolor import colored

from . import EntityBase, fmt_complex, frozen_array
from .operator_entities import Operator
from .. import ModelError

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-10


class SLHModel(EntityBase):
    """ An open quantum system (S, L, H0) with K field channels on C^N.

    The coupling is normally factorized as L = theta^T L0, i.e. channel k couples through c_k L0.  Network
    composition can destroy that factorization; such models keep their coupling as a general list of K
    operators (`couplings`) and report `is_factorized == False`.

        model = SLHModel(S=[[1]], theta=[np.sqrt(kappa)], L0=sigma_minus(), H0=0.5 * omega_c * sigma_z())
    """

    def __init__(self, S, H0, theta=None, L0=None, couplings=None):
        S = np.atleast_2d(np.asarray(S, dtype=complex))
        if S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise ModelError(f"Scattering matrix must be square, got shape {S.shape}")
        if not isinstance(H0, Operator):
            H0 = Operator(H0)
        channels = S.shape[0]

        if couplings is None:
            if theta is None or L0 is None:
                raise ModelError("A model needs either theta and L0, or a list of coupling operators")
            if not isinstance(L0, Operator):
                L0 = Operator(L0)
            theta = np.atleast_1d(np.asarray(theta, dtype=complex))
            if theta.shape != (channels,):
                raise ModelError(f"theta has {theta.shape[0]} entries but S has {channels} channels")
            if L0.dim != H0.dim:
                raise ModelError(f"L0 acts on C^{L0.dim} but H0 acts on C^{H0.dim}")
            self._theta = frozen_array(theta)
            self._L0 = L0
            self._couplings = None
        else:
            couplings = [c if isinstance(c, Operator) else Operator(c) for c in couplings]
            if len(couplings) != channels:
                raise ModelError(f"{len(couplings)} coupling operators given but S has {channels} channels")
            if any(c.dim != H0.dim for c in couplings):
                raise ModelError("Coupling operators and H0 act on different spaces")
            self._theta = None
            self._L0 = None
            self._couplings = tuple(couplings)

        if not np.all(np.isfinite(S)):
            raise ModelError("Scattering matrix entries must be finite")
        defect = np.linalg.norm(S.conj().T @ S - np.eye(channels))
        if defect > UNITARY_TOL:
            raise ModelError(f"Scattering matrix is not unitary (||S^dag S - I|| = {defect:.3e})")
        if not H0.is_hermitian(HERMITIAN_TOL):
            raise ModelError("H0 is not Hermitian")

        self._S = frozen_array(S)
        self._H0 = H0

    @classmethod
    def identity(cls, channels=1, levels=2):
        """The do-nothing system: S = I, L = 0, H = 0."""
        return cls(S=np.eye(channels), theta=np.zeros(channels), L0=np.zeros((levels, levels)),
                   H0=np.zeros((levels, levels)))

    def __str__(self, prefix="", verbose=False):
        output = colored(f"{prefix}SLH model: {self.channels} channel(s) on C^{self.levels}\n", 'green')
        if self.is_factorized:
            output += f"{prefix}    theta: [{', '.join(fmt_complex(c) for c in self.theta)}]\n"
        else:
            output += f"{prefix}    coupling: general list of {self.channels} operator(s)\n"
        if verbose:
            for row in self.S:
                output += f"{prefix}    S row: [{', '.join(fmt_complex(x) for x in row)}]\n"
        return output

    def __repr__(self):
        return f"SLHModel(channels={self.channels}, levels={self.levels}, factorized={self.is_factorized})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))
        if self.wants(associated_entities_to_show, 'operators'):
            inner = f"{prefix}    "
            if self.is_factorized:
                print(f"{inner}L0:")
                self.L0.print(prefix=inner, verbose=True)
            else:
                for index, coupling in enumerate(self.couplings):
                    print(f"{inner}L[{index + 1}]:")
                    coupling.print(prefix=inner, verbose=True)
            print(f"{inner}H0:")
            self.H0.print(prefix=inner, verbose=True)

    @property
    def S(self):
        return self._S

    @property
    def theta(self):
        return self._theta

    @property
    def L0(self):
        return self._L0

    @property
    def H0(self):
        return self._H0

    @property
    def levels(self):
        return self._H0.dim

    @property
    def channels(self):
        return self._S.shape[0]

    @property
    def is_factorized(self):
        return self._couplings is None

    @property
    def couplings(self):
        """The K coupling operators L_k, expanded from theta^T L0 when the model is factorized."""
        if self._couplings is not None:
            return self._couplings
        return tuple(self._L0 * c for c in self._theta)


class DerivedParams(EntityBase):
    """ The scalars alpha, beta, h and the pole a that make the single-photon response linear.

    a is always rebuilt from beta, h and theta as a = -i beta + (sum_k |c_k|^2) h / 2.
    """

    def __init__(self, alpha, beta, h, theta):
        self._alpha = complex(alpha)
        self._beta = complex(beta)
        self._h = float(h)
        self._a = -1j * self._beta + 0.5 * float(np.sum(np.abs(theta) ** 2)) * self._h

    def __str__(self, prefix="", verbose=False):
        return colored(f"{prefix}Derived parameters\n", 'blue') + \
            f"{prefix}    alpha: {fmt_complex(self.alpha)}\n" \
            f"{prefix}     beta: {fmt_complex(self.beta)}\n" \
            f"{prefix}        h: {self.h:.10g}\n" \
            f"{prefix}        a: {fmt_complex(self.a)}\n"

    def __repr__(self):
        return f"DerivedParams(alpha={self.alpha}, beta={self.beta}, h={self.h}, a={self.a})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))

    @property
    def alpha(self):
        return self._alpha

    @property
    def beta(self):
        return self._beta

    @property
    def h(self):
        return self._h

    @property
    def a(self):
        return self._a

    def to_dict(self):
        return {
            'alpha': [self.alpha.real, self.alpha.imag],
            'beta': [self.beta.real, self.beta.imag],
            'h': self.h,
            'a': [self.a.real, self.a.imag],
        }


class ConditionReport(EntityBase):

    def __init__(self, name, holds, residual, message=""):
        self.name = name
        self.holds = bool(holds)
        self.residual = float(residual)
        self.message = message

    def __str__(self, prefix="", verbose=False):
        verdict = colored("pass", 'green') if self.holds else colored("FAIL", 'red')
        output = f"{prefix}{self.name:<24} {verdict}  residual={self.residual:.3e}"
        if self.message:
            output += f"  ({self.message})"
        return output + "\n"

    def __repr__(self):
        return f"ConditionReport({self.name!r}, holds={self.holds}, residual={self.residual})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose), end="")

    def to_dict(self):
        return {
            'holds': self.holds,
            'residual': self.residual if np.isfinite(self.residual) else None,
            'message': self.message,
        }


class ValidationReport(EntityBase):
    """ Outcome of checking a model against the single-photon linearity conditions.

    `conditions` maps each condition name, in checking order, to its ConditionReport. `params` is filled in
    whenever the four algebraic conditions hold, so a model that only fails stability still shows its pole.
    """

    CONDITIONS = ('ground_energy', 'coupling_annihilates', 'commutator_proportional',
                  'number_eigenrelation', 'stability')

    def __init__(self, conditions, params=None):
        self._conditions = {name: conditions[name] for name in self.CONDITIONS}
        self._params = params

    def __str__(self, prefix="", verbose=False):
        if self.passed:
            return colored(f"{prefix}Validation passed\n", 'green')
        return colored(f"{prefix}Validation failed: {', '.join(self.failed_conditions)}\n", 'red')

    def __repr__(self):
        return f"ValidationReport(passed={self.passed}, failed={self.failed_conditions})"

    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        print(self.__str__(prefix=prefix, verbose=verbose))
        inner = f"{prefix}    "
        if verbose or self.wants(associated_entities_to_show, 'conditions'):
            for condition in self._conditions.values():
                condition.print(prefix=inner, verbose=verbose)
            print()
        if self._params is not None and (verbose or self.wants(associated_entities_to_show, 'params')):
            self._params.print(prefix=inner, verbose=verbose)

    @property
    def passed(self):
        return all(c.holds for c in self._conditions.values())

    @property
    def conditions(self):
        return dict(self._conditions)

    @property
    def failed_conditions(self):
        return [name for name, c in self._conditions.items() if not c.holds]

    @property
    def params(self):
        return self._params

    def to_dict(self):
        return {
            'passed': self.passed,
            'conditions': {name: c.to_dict() for name, c in self._conditions.items()},
            'params': None if self._params is None else self._params.to_dict(),
        }
