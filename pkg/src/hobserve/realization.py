"""
SISO quaternionic state-space systems and their observable companion form.

The companion realization is built without determinants: solve ``O s = e_n``
for the observability matrix ``O``, stack the Krylov columns
``T = [s, A s, ..., A^{n-1} s]`` and read the companion coefficients off the
last column of ``T^-1 A T``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import NotObservableError
from .hmatrix import QMatrix, RightSpectrum, inverse, rank, right_spectrum, solve
from .qpoly import QPoly, left_substitute_matrix, right_root_classes
from .quat import Quat

__all__ = [
    "StateSpace",
    "CompanionRealization",
    "observability_matrix",
    "controllability_matrix",
    "is_observable",
    "is_controllable",
    "to_observable_companion",
    "annihilation_residual",
    "spectrum_via_companion",
]


@dataclass(frozen=True)
class StateSpace:
    """``x' = A x + B u``, ``y = C x + D u`` with inputs multiplied on the right."""

    A: QMatrix
    B: QMatrix
    C: QMatrix
    D: Quat = field(default_factory=Quat)

    def __post_init__(self):
        n = self.A.rows
        if not self.A.is_square:
            raise ValueError(f"A must be square, got {self.A.shape}")
        if self.B.shape != (n, 1):
            raise ValueError(f"B must be {n}x1, got {self.B.shape}")
        if self.C.shape != (1, n):
            raise ValueError(f"C must be 1x{n}, got {self.C.shape}")
        object.__setattr__(self, "D", Quat.coerce(self.D))

    @classmethod
    def from_pair(cls, A: QMatrix, C: QMatrix) -> "StateSpace":
        """System with zero input matrix, for observer-only work."""
        return cls(A, QMatrix.zeros(A.rows, 1), C, Quat())

    @property
    def n(self) -> int:
        return self.A.rows

    def dual(self) -> "StateSpace":
        """``(A, B, C, D) -> (A*, C*, B*, D*)``."""
        return StateSpace(self.A.H, self.C.H, self.B.H, self.D.conj())


def _krylov_rows(c: QMatrix, a: QMatrix, n: int) -> list[QMatrix]:
    rows = [c]
    for _ in range(n - 1):
        rows.append(rows[-1] @ a)
    return rows


def _krylov_cols(a: QMatrix, b: QMatrix, n: int) -> list[QMatrix]:
    cols = [b]
    for _ in range(n - 1):
        cols.append(a @ cols[-1])
    return cols


def observability_matrix(sys: StateSpace) -> QMatrix:
    return QMatrix.vstack(_krylov_rows(sys.C, sys.A, sys.n))


def controllability_matrix(sys: StateSpace) -> QMatrix:
    return QMatrix.hstack(_krylov_cols(sys.A, sys.B, sys.n))


def is_observable(sys: StateSpace) -> bool:
    return rank(observability_matrix(sys)) == sys.n


def is_controllable(sys: StateSpace) -> bool:
    return rank(controllability_matrix(sys)) == sys.n


@dataclass(frozen=True)
class CompanionRealization:
    """Result of the companion construction; ``A_o = T^-1 A T``, ``C_o = C T``."""

    A_o: QMatrix
    C_o: QMatrix
    T: QMatrix
    T_inv: QMatrix
    a: QPoly
    s: QMatrix
    O: QMatrix
    O_inv: QMatrix

    @property
    def n(self) -> int:
        return self.A_o.rows

    @property
    def condition(self) -> float:
        """Frobenius-norm condition estimate ``||T|| ||T^-1||``."""
        return self.T.frobenius() * self.T_inv.frobenius()

    @cached_property
    def exact_companion(self) -> QMatrix:
        """Companion matrix rebuilt from the coefficients (exact zeros and ones)."""
        from .qpoly import companion_matrix

        return companion_matrix(self.a)


def to_observable_companion(sys: StateSpace, tol: float = 1e-9) -> CompanionRealization:
    """Similarity to right observable companion form.

    Raises :class:`NotObservableError` for an unobservable pair.  Warns when
    the inversion residual of ``T`` exceeds ``tol`` relative to its scale.
    """
    n = sys.n
    O = observability_matrix(sys)
    if rank(O) < n:
        raise NotObservableError("observability matrix is rank deficient")
    O_inv = inverse(O)
    s = solve(O, QMatrix.basis(n, n - 1))
    T = QMatrix.hstack(_krylov_cols(sys.A, s, n))
    T_inv = inverse(T)
    resid = (T @ T_inv - QMatrix.identity(n)).frobenius()
    if resid > tol * (1.0 + T.frobenius() * T_inv.frobenius()):
        warnings.warn(f"ill-conditioned similarity: residual {resid:.2e}", RuntimeWarning, stacklevel=2)
    A_o = T_inv @ sys.A @ T
    C_o = sys.C @ T
    coeffs = [-A_o[k, n - 1] for k in range(n)]
    a = QPoly.monic(coeffs)
    return CompanionRealization(A_o=A_o, C_o=C_o, T=T, T_inv=T_inv, a=a, s=s, O=O, O_inv=O_inv)


def annihilation_residual(cr: CompanionRealization) -> float:
    """Frobenius norm of ``a(A_o)`` under left substitution."""
    return left_substitute_matrix(cr.a, cr.A_o).frobenius()


def spectrum_via_companion(sys: StateSpace) -> RightSpectrum:
    """Right spectrum of ``A`` from the zero classes of the companion polynomial."""
    return right_root_classes(to_observable_companion(sys).a)


def direct_spectrum(sys: StateSpace) -> RightSpectrum:
    return right_spectrum(sys.A)


def random_system(rng: np.random.Generator, n: int, spread: float = 1.0) -> StateSpace:
    """Random system with entries whose components are uniform in ``[-spread, spread]``."""
    A = QMatrix(rng.uniform(-spread, spread, size=(n, n, 4)))
    B = QMatrix(rng.uniform(-spread, spread, size=(n, 1, 4)))
    C = QMatrix(rng.uniform(-spread, spread, size=(1, n, 4)))
    return StateSpace(A, B, C, Quat())
