"""
Dense quaternion matrices under the right-module convention.

Matrices act on column vectors from the left and scalars multiply vectors on
the right.  Elimination therefore uses *left* row operations only (a pivot row
is left-multiplied by the pivot inverse), which keeps the right-linear column
relations of the matrix intact.

Right spectra are obtained from the complex adjoint

    chi(A) = [[A1, A2], [-conj(A2), conj(A1)]],   A = A1 + A2 j,

whose 2n eigenvalues come in conjugate pairs; one class per pair.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import eigen
from .errors import SingularMatrixError
from .quat import Quat, SimilarityClass, left_matrix, qconj, qinv, qmul, qnorm

__all__ = [
    "QMatrix",
    "RightSpectrum",
    "matmul",
    "solve",
    "inverse",
    "rank",
    "complex_adjoint",
    "right_spectrum",
    "is_stable",
]

SINGULAR_RTOL = 1e-12
RANK_RTOL = 1e-10
PAIR_TOL = 1e-7


class QMatrix:
    """Immutable dense ``rows x cols`` quaternion matrix.

    Entries live in a read-only float array of shape ``(rows, cols, 4)``.
    ``A @ B`` is the matrix product, ``A * q`` scales on the right and
    ``q * A`` on the left.  Column vectors are simply ``n x 1`` matrices.
    """

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim == 2 and arr.shape[-1] != 4:
            # plain real matrix
            arr = np.stack([arr, np.zeros_like(arr), np.zeros_like(arr), np.zeros_like(arr)], axis=-1)
        if arr.ndim != 3 or arr.shape[-1] != 4:
            raise ValueError(f"expected (rows, cols, 4) array, got shape {arr.shape}")
        arr.setflags(write=False)
        self._data = arr

    # construction -------------------------------------------------------

    @classmethod
    def from_quats(cls, rows: Sequence[Sequence]) -> "QMatrix":
        return cls([[Quat.coerce(q).to_array() for q in row] for row in rows])

    @classmethod
    def column(cls, entries: Iterable) -> "QMatrix":
        return cls([[Quat.coerce(q).to_array()] for q in entries])

    @classmethod
    def row(cls, entries: Iterable) -> "QMatrix":
        return cls([[Quat.coerce(q).to_array() for q in entries]])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_real(np.eye(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def from_real(cls, m) -> "QMatrix":
        m = np.asarray(m, dtype=float)
        out = np.zeros(m.shape + (4,))
        out[..., 0] = m
        return cls(out)

    @classmethod
    def basis(cls, n: int, k: int) -> "QMatrix":
        """Column ``e_k`` (zero based)."""
        out = np.zeros((n, 1, 4))
        out[k, 0, 0] = 1.0
        return cls(out)

    @classmethod
    def hstack(cls, blocks: Sequence["QMatrix"]) -> "QMatrix":
        return cls(np.concatenate([b.data for b in blocks], axis=1))

    @classmethod
    def vstack(cls, blocks: Sequence["QMatrix"]) -> "QMatrix":
        return cls(np.concatenate([b.data for b in blocks], axis=0))

    # basic properties ---------------------------------------------------

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape[0], self._data.shape[1]

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        if isinstance(i, int) and isinstance(j, int):
            return Quat.from_array(self._data[i, j])
        sub = self._data[i, j]
        if sub.ndim == 1:
            raise IndexError("mixed int/slice indexing; use slices for both axes")
        return QMatrix(sub)

    def entries(self) -> list[list[Quat]]:
        return [[Quat.from_array(self._data[i, j]) for j in range(self.cols)] for i in range(self.rows)]

    def column_entries(self, j: int = 0) -> list[Quat]:
        return [Quat.from_array(self._data[i, j]) for i in range(self.rows)]

    def to_list(self) -> list:
        return self._data.tolist()

    def frobenius(self) -> float:
        return float(np.sqrt(np.sum(self._data ** 2)))

    def scale(self) -> float:
        """``max(1, ||A||_F)``, the reference size for relative thresholds."""
        return max(1.0, self.frobenius())

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self._data[..., 1:]) <= tol))

    def max_abs_diff(self, other: "QMatrix") -> float:
        other = _as_qmatrix(other)
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return float(np.max(np.abs(self._data - other._data), initial=0.0))

    def allclose(self, other, tol: float = 1e-9) -> bool:
        return self.max_abs_diff(other) <= tol

    # algebra ------------------------------------------------------------

    def __add__(self, other):
        other = _as_qmatrix(other)
        _check_same_shape(self, other)
        return QMatrix(self._data + other._data)

    def __sub__(self, other):
        other = _as_qmatrix(other)
        _check_same_shape(self, other)
        return QMatrix(self._data - other._data)

    def __neg__(self):
        return QMatrix(-self._data)

    def __matmul__(self, other):
        return matmul(self, _as_qmatrix(other))

    def __mul__(self, q):
        # right scalar multiplication A * q
        if isinstance(q, (int, float, np.floating, np.integer)):
            return QMatrix(self._data * float(q))
        q = Quat.coerce(q)
        return QMatrix(qmul(self._data, q.to_array()))

    def __rmul__(self, q):
        if isinstance(q, (int, float, np.floating, np.integer)):
            return QMatrix(self._data * float(q))
        q = Quat.coerce(q)
        return QMatrix(qmul(q.to_array(), self._data))

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square or k < 0:
            raise ValueError("matrix power needs a square matrix and k >= 0")
        out = QMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def conj_transpose(self) -> "QMatrix":
        return QMatrix(qconj(np.swapaxes(self._data, 0, 1)))

    @property
    def H(self) -> "QMatrix":
        return self.conj_transpose()

    def transpose(self) -> "QMatrix":
        return QMatrix(np.swapaxes(self._data, 0, 1))

    def real_left(self) -> np.ndarray:
        """Real ``4m x 4n`` matrix of the map ``x -> A @ x`` on stacked ``[w, x, y, z]`` blocks."""
        m, n = self.shape
        out = np.zeros((4 * m, 4 * n))
        for i in range(m):
            for j in range(n):
                out[4 * i:4 * i + 4, 4 * j:4 * j + 4] = left_matrix(self._data[i, j])
        return out

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def format(self, precision: int = 6) -> str:
        rows = []
        for i in range(self.rows):
            rows.append("  [" + ",  ".join(Quat.from_array(self._data[i, j]).format(precision) for j in range(self.cols)) + "]")
        return "\n".join(rows)

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})\n{self.format(4)}"


def _as_qmatrix(x) -> QMatrix:
    return x if isinstance(x, QMatrix) else QMatrix(x)


def _check_same_shape(a: QMatrix, b: QMatrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def matmul(a: QMatrix, b: QMatrix) -> QMatrix:
    """Matrix product; each term is ``a[i, j] * b[j, k]`` in that order."""
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions disagree: {a.shape} @ {b.shape}")
    prod = qmul(a.data[:, :, None, :], b.data[None, :, :, :])
    return QMatrix(prod.sum(axis=1))


# --------------------------------------------------------------------------
# elimination
# --------------------------------------------------------------------------

def solve(a: QMatrix, b: QMatrix) -> QMatrix:
    """Solve ``A X = B`` by Gauss-Jordan elimination with left pivot division.

    The pivot in each column is the entry of largest quaternion norm.
    Raises :class:`SingularMatrixError` when every candidate pivot has norm
    below ``1e-12 * max(1, ||A||_F)``.
    """
    if not a.is_square:
        raise ValueError("solve needs a square coefficient matrix")
    if b.rows != a.rows:
        raise ValueError(f"right-hand side has {b.rows} rows, expected {a.rows}")
    n = a.rows
    thresh = SINGULAR_RTOL * a.scale()
    aug = np.concatenate([a.data, b.data], axis=1).copy()
    for k in range(n):
        norms = qnorm(aug[k:, k])
        p = k + int(np.argmax(norms))
        if norms[p - k] <= thresh:
            raise SingularMatrixError(f"no pivot in column {k} (max norm {norms[p - k]:.3e})")
        if p != k:
            aug[[k, p]] = aug[[p, k]]
        aug[k] = qmul(qinv(aug[k, k]), aug[k])
        factors = aug[:, k].copy()
        factors[k] = 0.0
        aug -= qmul(factors[:, None, :], aug[k][None, :, :])
    return QMatrix(aug[:, n:])


def inverse(a: QMatrix) -> QMatrix:
    return solve(a, QMatrix.identity(a.rows))


def rank(a: QMatrix, rtol: float = RANK_RTOL) -> int:
    """Number of right-independent columns, from left row reduction."""
    work = a.data.copy()
    m, n = a.shape
    thresh = rtol * a.scale()
    r = 0
    for k in range(n):
        if r == m:
            break
        norms = qnorm(work[r:, k])
        p = r + int(np.argmax(norms))
        if norms[p - r] <= thresh:
            continue
        if p != r:
            work[[r, p]] = work[[p, r]]
        work[r] = qmul(qinv(work[r, k]), work[r])
        factors = work[r + 1:, k].copy()
        work[r + 1:] -= qmul(factors[:, None, :], work[r][None, :, :])
        r += 1
    return r


# --------------------------------------------------------------------------
# spectra
# --------------------------------------------------------------------------

def complex_adjoint(a: QMatrix) -> np.ndarray:
    """Complex ``2n x 2n`` embedding ``[[A1, A2], [-conj(A2), conj(A1)]]``."""
    d = a.data
    a1 = d[..., 0] + 1j * d[..., 1]
    a2 = d[..., 2] + 1j * d[..., 3]
    return np.block([[a1, a2], [-a2.conj(), a1.conj()]])


@dataclass(frozen=True)
class RightSpectrum:
    """Multiset of similarity classes, sorted by ``(re, imnorm)``."""

    classes: tuple[SimilarityClass, ...]
    pair_mismatch: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(sorted(self.classes)))

    @classmethod
    def from_pairs(cls, pairs) -> "RightSpectrum":
        return cls(tuple(SimilarityClass(re, im) for re, im in pairs))

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def deviations(self, other: "RightSpectrum") -> list[float]:
        """Per-class deviation after optimal one-to-one matching.

        Raises ``ValueError`` if multiplicities (sizes) differ.
        """
        if len(self) != len(other):
            raise ValueError(f"spectra have {len(self)} and {len(other)} classes")
        if not self.classes:
            return []
        cost = np.array([[c.distance(d) for d in other.classes] for c in self.classes])
        rows, cols = linear_sum_assignment(cost)
        dev = [0.0] * len(self)
        for r, c in zip(rows, cols):
            dev[r] = float(cost[r, c])
        return dev

    def max_deviation(self, other: "RightSpectrum") -> float:
        return max(self.deviations(other), default=0.0)

    def matches(self, other: "RightSpectrum", tol: float = 1e-6) -> bool:
        if len(self) != len(other):
            return False
        return self.max_deviation(other) <= tol

    @property
    def is_stable(self) -> bool:
        return all(c.re < 0 for c in self.classes)

    def to_list(self) -> list[list[float]]:
        return [c.to_list() for c in self.classes]

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in self.classes) + "}"


def _pair_conjugates(lams: np.ndarray) -> tuple[list[tuple[float, float]], float]:
    order = sorted(range(len(lams)), key=lambda i: (lams[i].real, lams[i].imag))
    remaining = [lams[i] for i in order]
    pairs = []
    worst = 0.0
    while remaining:
        lam = remaining.pop(0)
        dist = [abs(mu - lam.conjugate()) for mu in remaining]
        j = int(np.argmin(dist))
        mu = remaining.pop(j)
        worst = max(worst, dist[j])
        pairs.append((0.5 * (lam.real + mu.real), 0.5 * (abs(lam.imag) + abs(mu.imag))))
    return pairs, worst


def right_spectrum(a: QMatrix) -> RightSpectrum:
    """Right spectrum as ``n`` similarity classes (with multiplicity)."""
    if not a.is_square:
        raise ValueError("right spectrum needs a square matrix")
    if a.rows == 0:
        return RightSpectrum(())
    lams = eigen.eigvals(complex_adjoint(a))
    pairs, worst = _pair_conjugates(lams)
    if worst > PAIR_TOL * a.scale():
        # defective eigenvalues split by O(sqrt(eps)); report, do not fail
        warnings.warn(f"conjugate pairing mismatch {worst:.2e}", RuntimeWarning, stacklevel=2)
    return RightSpectrum(tuple(SimilarityClass(re, im) for re, im in pairs), pair_mismatch=worst)


def is_stable(a: QMatrix) -> bool:
    return right_spectrum(a).is_stable
