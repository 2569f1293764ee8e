"""
Quaternion scalars and their similarity classes.

A quaternion is stored scalar-first, ``q = w + x i + y j + z k``, and the
same ``[w, x, y, z]`` layout is used for every array of quaternions in the
package (trailing axis of length 4).  The array helpers at the top of this
module are what the matrix code builds on; :class:`Quat` is the scalar value
type handed to users.

Similarity ``q ~ r`` (``q = a^-1 r a`` for some nonzero ``a``) preserves the
real part and the length of the imaginary part, so a class is stored as the
pair ``(re, imnorm)`` and represented by the complex number ``re + imnorm i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

__all__ = [
    "Quat",
    "SimilarityClass",
    "qmul",
    "qconj",
    "qnorm",
    "qinv",
    "left_matrix",
    "mul",
    "inv",
    "similarity_class",
    "are_similar",
]


# --------------------------------------------------------------------------
# array kernels, operate on (..., 4) float arrays
# --------------------------------------------------------------------------

def qmul(a, b):
    """Hamilton product of broadcastable ``(..., 4)`` arrays, ``a`` on the left."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a):
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(a):
    return np.sqrt(np.sum(np.asarray(a, dtype=float) ** 2, axis=-1))


def qinv(a):
    a = np.asarray(a, dtype=float)
    n2 = np.sum(a * a, axis=-1)
    if np.any(n2 == 0.0):
        raise ZeroDivisionError("quaternion inverse of zero")
    return qconj(a) / n2[..., None]


def left_matrix(a):
    """Real 4x4 matrix ``M`` with ``M @ b == qmul(a, b)`` for a single quaternion ``a``."""
    a0, a1, a2, a3 = (float(v) for v in np.asarray(a, dtype=float))
    return np.array(
        [
            [a0, -a1, -a2, -a3],
            [a1, a0, -a3, a2],
            [a2, a3, a0, -a1],
            [a3, -a2, a1, a0],
        ]
    )


# --------------------------------------------------------------------------
# scalar type
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Quat:
    """Immutable quaternion ``w + x i + y j + z k``.

    ``*`` is the Hamilton product and is not commutative.  Division by a
    quaternion is deliberately not overloaded because ``a / b`` is ambiguous;
    use ``a * b.inv()`` or ``b.inv() * a``.  Division by a real number is fine.
    """

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, a) -> "Quat":
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(a[0], a[1], a[2], a[3])

    @classmethod
    def coerce(cls, value) -> "Quat":
        """Accept a Quat, a real number, or a length-4 sequence."""
        if isinstance(value, Quat):
            return value
        if isinstance(value, (Real, np.floating, np.integer)):
            return cls(float(value))
        return cls.from_array(value)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _maybe_quat(other)
        if o is None:
            return NotImplemented
        return Quat(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _maybe_quat(other)
        if o is None:
            return NotImplemented
        return Quat(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = _maybe_quat(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quat(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            s = float(other)
            return Quat(self.w * s, self.x * s, self.y * s, self.z * s)
        if isinstance(other, Quat):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            return self * (1.0 / float(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = Quat(1.0)
        for _ in range(k):
            out = out * self
        return out

    # properties ---------------------------------------------------------

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> "Quat":
        return Quat(0.0, self.x, self.y, self.z)

    @property
    def imag_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def conj(self) -> "Quat":
        return Quat(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)

    def inv(self) -> "Quat":
        return inv(self)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.imag_norm <= tol

    def is_complex(self, tol: float = 0.0) -> bool:
        """True when the j and k parts vanish (reals count as complex)."""
        return abs(self.y) <= tol and abs(self.z) <= tol

    def similarity_class(self) -> "SimilarityClass":
        return similarity_class(self)

    def isclose(self, other, tol: float = 1e-9) -> bool:
        o = Quat.coerce(other)
        return max(abs(self.w - o.w), abs(self.x - o.x), abs(self.y - o.y), abs(self.z - o.z)) <= tol

    def format(self, precision: int = 6) -> str:
        p = precision
        return (
            f"{self.w:.{p}f} {_sgn(self.x)} {abs(self.x):.{p}f} i "
            f"{_sgn(self.y)} {abs(self.y):.{p}f} j {_sgn(self.z)} {abs(self.z):.{p}f} k"
        )

    def __str__(self) -> str:
        return self.format()


def _sgn(v: float) -> str:
    return "-" if math.copysign(1.0, v) < 0 else "+"


def _maybe_quat(value):
    if isinstance(value, Quat):
        return value
    if isinstance(value, (Real, np.floating, np.integer)):
        return Quat(float(value))
    return None


def mul(a: Quat, b: Quat) -> Quat:
    """Hamilton product ``a * b``."""
    return Quat(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def inv(q: Quat) -> Quat:
    n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    if n2 == 0.0:
        raise ZeroDivisionError("quaternion inverse of zero")
    return Quat(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


# --------------------------------------------------------------------------
# similarity classes
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SimilarityClass:
    """Class ``[q]`` stored as ``(Re q, |Im q|)``; ordering is lexicographic."""

    re: float
    imnorm: float

    def __post_init__(self):
        if self.imnorm < 0:
            raise ValueError("imnorm must be nonnegative")
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "imnorm", float(self.imnorm))

    @property
    def representative(self) -> Quat:
        """Standard complex member ``re + imnorm i``."""
        return Quat(self.re, self.imnorm)

    @property
    def is_real(self) -> bool:
        return self.imnorm == 0.0

    def contains(self, q: Quat, tol: float = 1e-9) -> bool:
        return self.distance(similarity_class(q)) <= tol

    def distance(self, other: "SimilarityClass") -> float:
        return max(abs(self.re - other.re), abs(self.imnorm - other.imnorm))

    def to_list(self) -> list[float]:
        return [self.re, self.imnorm]

    def __str__(self) -> str:
        return f"[{self.re:.6g} + {self.imnorm:.6g} i]"


def similarity_class(q: Quat) -> SimilarityClass:
    return SimilarityClass(q.w, q.imag_norm)


def are_similar(a: Quat, b: Quat, tol: float = 1e-9) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return abs(a.w - b.w) <= tol and abs(a.imag_norm - b.imag_norm) <= tol
