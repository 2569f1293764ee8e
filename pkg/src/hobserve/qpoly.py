"""
Polynomials with quaternion coefficients and a central indeterminate.

``p(t) = p_0 + p_1 t + ... + p_n t^n`` is stored as its ascending coefficient
list.  Because the coefficients do not commute with a quaternion argument,
there are two values at ``q``: the right value ``sum p_k q^k`` and the left
value ``sum q^k p_k``.  Matrices are substituted on the left,
``p(M) = sum M^k p_k``.

Point roots inside a known class ``[q]`` come from division by the real
quadratic ``Q(t) = t^2 - 2 Re(q) t + |q|^2`` of that class: with
``p = h Q + (r_1 t + r_0)``, every ``x`` in ``[q]`` has right value
``r_1 x + r_0``, so the only candidate is ``x = -r_1^-1 r_0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeError, NotARootError, UnsupportedRootsError
from .hmatrix import QMatrix, RightSpectrum, right_spectrum
from .quat import Quat, SimilarityClass, are_similar, qinv, qmul, qnorm, similarity_class

__all__ = [
    "QPoly",
    "ZeroKind",
    "eval_right",
    "eval_left",
    "left_substitute_matrix",
    "companion_matrix",
    "poly_from_right_roots",
    "right_root_classes",
    "eigenvector_from_right_root",
    "root_in_class",
    "left_root_in_class",
    "classify_zero",
]

ROOT_TOL = 1e-8


@dataclass(frozen=True)
class QPoly:
    """Ascending-order quaternionic polynomial, ``coeffs[k]`` multiplies ``t^k``."""

    coeffs: tuple[Quat, ...]

    def __post_init__(self):
        cs = tuple(Quat.coerce(c) for c in self.coeffs)
        if not cs:
            raise ValueError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_array(cls, arr) -> "QPoly":
        arr = np.asarray(arr, dtype=float)
        if arr.ndim == 1:
            return cls(tuple(Quat(float(v)) for v in arr))
        return cls(tuple(Quat.from_array(row) for row in arr))

    @classmethod
    def monic(cls, lower: Sequence) -> "QPoly":
        """Monic polynomial from its non-leading coefficients ``d_0 .. d_{n-1}``."""
        return cls(tuple(lower) + (Quat(1.0),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_array(self) -> np.ndarray:
        return np.array([c.to_array() for c in self.coeffs])

    def to_list(self) -> list[list[float]]:
        return [c.to_list() for c in self.coeffs]

    def is_monic(self, tol: float = 1e-12) -> bool:
        return self.coeffs[-1].isclose(Quat(1.0), tol)

    def is_real(self, tol: float = 0.0) -> bool:
        return all(c.is_real(tol) for c in self.coeffs)

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.to_array(), other.to_array()
        n = max(len(a), len(b))
        out = np.zeros((n, 4))
        out[: len(a)] += a
        out[: len(b)] += b
        return QPoly.from_array(out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + QPoly(tuple(-c for c in other.coeffs))

    def __mul__(self, other: "QPoly") -> "QPoly":
        # t is central, so (fg)_k = sum_i f_i g_{k-i}
        a, b = self.to_array(), other.to_array()
        out = np.zeros((len(a) + len(b) - 1, 4))
        for i in range(len(a)):
            out[i:i + len(b)] += qmul(a[i], b)
        return QPoly.from_array(out)

    def __call__(self, q) -> Quat:
        return eval_right(self, Quat.coerce(q))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            tk = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            terms.append(f"({c.format(4)}){tk}")
        return " + ".join(terms)


def _powers(q: np.ndarray, n: int) -> list[np.ndarray]:
    out = [np.array([1.0, 0.0, 0.0, 0.0])]
    for _ in range(n):
        out.append(qmul(out[-1], q))
    return out


def eval_right(p: QPoly, q: Quat) -> Quat:
    """Right value ``sum p_k q^k``."""
    qa = q.to_array()
    acc = np.zeros(4)
    for c, qk in zip(p.coeffs, _powers(qa, p.degree)):
        acc = acc + qmul(c.to_array(), qk)
    return Quat.from_array(acc)


def eval_left(p: QPoly, q: Quat) -> Quat:
    """Left value ``sum q^k p_k``."""
    qa = q.to_array()
    acc = np.zeros(4)
    for c, qk in zip(p.coeffs, _powers(qa, p.degree)):
        acc = acc + qmul(qk, c.to_array())
    return Quat.from_array(acc)


def left_substitute_matrix(p: QPoly, m: QMatrix) -> QMatrix:
    """``sum M^k p_k`` with each coefficient on the right of its power."""
    if not m.is_square:
        raise ValueError("left substitution needs a square matrix")
    n = m.rows
    power = QMatrix.identity(n)
    acc = np.zeros((n, n, 4))
    for k, c in enumerate(p.coeffs):
        if k:
            power = power @ m
        acc += qmul(power.data, c.to_array())
    return QMatrix(acc)


def companion_matrix(p: QPoly) -> QMatrix:
    """Observable companion matrix: unit subdiagonal, last column ``-[p_0 .. p_{n-1}]``."""
    if not p.is_monic():
        raise DegreeError("companion matrix needs a monic polynomial")
    n = p.degree
    if n < 1:
        raise DegreeError("companion matrix needs degree >= 1")
    out = np.zeros((n, n, 4))
    for k in range(1, n):
        out[k, k - 1, 0] = 1.0
    out[:, n - 1] = -p.to_array()[:n]
    return QMatrix(out)


def right_root_classes(p: QPoly) -> RightSpectrum:
    """Classes of the right zeros, read from the companion matrix spectrum."""
    return right_spectrum(companion_matrix(p))


# --------------------------------------------------------------------------
# construction from roots
# --------------------------------------------------------------------------

def _real_poly(real_coeffs) -> QPoly:
    return QPoly.from_array(np.asarray(real_coeffs, dtype=float))


def poly_from_right_roots(roots: Iterable, tol: float = 1e-12) -> QPoly:
    """Monic polynomial whose right zeros include every requested root.

    * real roots contribute linear real factors;
    * complex roots (no j, k part) are paired with their conjugate, listed or
      not, and contribute a real quadratic, so the whole class is assigned;
    * the remaining quaternionic roots are chained as
      ``P_{m+1} = (t - b) P_m`` with ``b = P_m(r) r P_m(r)^-1``, which keeps the
      zeros of ``P_m`` and adds ``r``.  Each must lie in a class not used by
      an earlier quaternionic root.

    The real part is central, so it is simply multiplied on the left.
    """
    roots = [Quat.coerce(r) for r in roots]
    if not roots:
        raise UnsupportedRootsError("empty root list")

    real_part = np.array([1.0])
    quats: list[Quat] = []
    pending_complex: list[Quat] = []
    for r in roots:
        if r.is_real(tol):
            real_part = np.convolve(real_part, [-r.w, 1.0])
        elif r.is_complex(tol):
            # consume an explicitly listed conjugate if present
            for k, c in enumerate(pending_complex):
                if c.isclose(r.conj(), tol):
                    pending_complex.pop(k)
                    break
            else:
                pending_complex.append(r)
                real_part = np.convolve(real_part, [r.w * r.w + r.x * r.x, -2.0 * r.w, 1.0])
        else:
            quats.append(r)

    qpart = QPoly((Quat(1.0),))
    for m, r in enumerate(quats):
        for prev in quats[:m]:
            if are_similar(prev, r, 1e-9):
                raise UnsupportedRootsError(f"quaternionic roots {prev} and {r} share a similarity class")
        g = eval_right(qpart, r)
        if g.norm() <= 1e-12:
            raise UnsupportedRootsError(f"root {r} is already a zero")
        b = g * r * g.inv()
        qpart = QPoly((-b, Quat(1.0))) * qpart

    return _real_poly(real_part) * qpart


# --------------------------------------------------------------------------
# eigenvectors and point roots
# --------------------------------------------------------------------------

def eigenvector_from_right_root(p: QPoly, lam: Quat, tol: float = ROOT_TOL) -> QMatrix:
    """Right eigenvector of ``companion_matrix(p)`` for a right zero ``lam``.

    Backward recurrence ``v_n = 1``, ``v_{j-1} = p_{j-1} + v_j lam``.
    """
    lam = Quat.coerce(lam)
    resid = eval_right(p, lam).norm()
    if resid > tol * max(1.0, max(c.norm() for c in p.coeffs)):
        raise NotARootError(f"{lam} is not a right zero (residual {resid:.3e})")
    n = p.degree
    v = [Quat()] * n
    v[n - 1] = Quat(1.0)
    for j in range(n - 1, 0, -1):
        v[j - 1] = p.coeffs[j] + v[j] * lam
    return QMatrix.column(v)


def _class_quadratic(cls: SimilarityClass) -> np.ndarray:
    if cls.imnorm == 0.0:
        return np.array([-cls.re, 1.0])
    return np.array([cls.re ** 2 + cls.imnorm ** 2, -2.0 * cls.re, 1.0])


def _remainder_mod_real(p: QPoly, q: np.ndarray) -> np.ndarray:
    # remainder of p modulo a monic real polynomial q (componentwise long division)
    rem = p.to_array().copy()
    d = len(q) - 1
    for k in range(len(rem) - 1, d - 1, -1):
        lead = rem[k].copy()
        rem[k - d:k + 1] -= np.outer(q, lead)
    return rem[:d]


def root_in_class(p: QPoly, cls: SimilarityClass, tol: float = ROOT_TOL) -> Quat:
    """A right zero of ``p`` lying in ``cls``.

    For a spherical zero every class member works and the standard
    representative is returned.  Raises :class:`NotARootError` if the class
    holds no zero.
    """
    r = _remainder_mod_real(p, _class_quadratic(cls))
    scale = max(1.0, max(c.norm() for c in p.coeffs))
    if cls.imnorm == 0.0:
        if qnorm(r[0]) > tol * scale:
            raise NotARootError(f"class {cls} holds no right zero")
        return Quat(cls.re)
    r0, r1 = r
    if qnorm(r1) <= tol * scale:
        if qnorm(r0) > tol * scale:
            raise NotARootError(f"class {cls} holds no right zero")
        return cls.representative
    x = Quat.from_array(-qmul(qinv(r1), r0))
    if not are_similar(x, cls.representative, max(1e-6, tol) * scale):
        raise NotARootError(f"class {cls} holds no right zero")
    return x


def left_root_in_class(p: QPoly, cls: SimilarityClass, tol: float = ROOT_TOL) -> Quat:
    """A left zero of ``p`` in ``cls`` (left value there is ``r_0 + x r_1``)."""
    r = _remainder_mod_real(p, _class_quadratic(cls))
    scale = max(1.0, max(c.norm() for c in p.coeffs))
    if cls.imnorm == 0.0:
        if qnorm(r[0]) > tol * scale:
            raise NotARootError(f"class {cls} holds no left zero")
        return Quat(cls.re)
    r0, r1 = r
    if qnorm(r1) <= tol * scale:
        if qnorm(r0) > tol * scale:
            raise NotARootError(f"class {cls} holds no left zero")
        return cls.representative
    x = Quat.from_array(-qmul(r0, qinv(r1)))
    if not are_similar(x, cls.representative, max(1e-6, tol) * scale):
        raise NotARootError(f"class {cls} holds no left zero")
    return x


class ZeroKind(str, enum.Enum):
    ISOLATED = "isolated"
    SPHERICAL = "spherical"


def classify_zero(p: QPoly, q: Quat, tol: float = ROOT_TOL) -> ZeroKind:
    """Isolated vs spherical: sample ``Re q + |Im q| u`` for ``u = i, j, k``.

    Real zeros are isolated by definition.  A zero is called spherical when
    all three samples vanish to within ``tol``.
    """
    q = Quat.coerce(q)
    scale = max(1.0, max(c.norm() for c in p.coeffs))
    if eval_right(p, q).norm() > tol * scale:
        raise NotARootError(f"{q} is not a right zero")
    if q.is_real():
        return ZeroKind.ISOLATED
    re, r = q.w, q.imag_norm
    samples = (Quat(re, r), Quat(re, 0, r), Quat(re, 0, 0, r))
    if all(eval_right(p, s).norm() <= tol * scale for s in samples):
        return ZeroKind.SPHERICAL
    return ZeroKind.ISOLATED
