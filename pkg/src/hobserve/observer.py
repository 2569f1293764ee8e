"""
Observer gain synthesis for quaternionic SISO systems.

Three routes to the output-injection gain ``L`` (error dynamics ``A - L C``):

``companion``
    coefficient update ``L_o[k] = d_k - a_k`` in observable companion
    coordinates, mapped back with ``L = T L_o``.  Works for any monic target,
    quaternionic coefficients included.
``ackermann``
    one-shot ``L = a_d(A) O^-1 e_n``.  Only valid for real targets, since only
    central coefficients commute with the similarity ``T``.
``dual``
    controller-side Ackermann on the dual pair ``(A*, C*)`` and ``L = K*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from .errors import DegreeError, NoncentralTargetError
from .hmatrix import QMatrix, RightSpectrum, inverse, right_spectrum
from .qpoly import QPoly, left_substitute_matrix, poly_from_right_roots, right_root_classes
from .quat import Quat
from .realization import (
    CompanionRealization,
    StateSpace,
    controllability_matrix,
    to_observable_companion,
)

__all__ = [
    "ObserverDesign",
    "DesignReport",
    "target_from_poles",
    "place_companion",
    "place_ackermann",
    "place_dual",
    "ackermann_state_feedback",
    "place",
    "verify_design",
]

METHODS = ("companion", "ackermann", "dual")


@dataclass(frozen=True)
class ObserverDesign:
    L: QMatrix
    L_o: QMatrix
    method: str
    target: QPoly
    achieved: RightSpectrum
    A_obs: QMatrix
    realization: CompanionRealization
    extras: dict = field(default_factory=dict)


def target_from_poles(poles: Iterable, n: int) -> QPoly:
    """Monic degree-``n`` target from a pole list, with the degree budget enforced.

    Real poles use one degree, a nonreal complex class two (its conjugate is
    added automatically), and each quaternionic pole one.
    """
    poles = [Quat.coerce(p) for p in poles]
    r = sum(1 for p in poles if p.is_real(1e-12))
    cplx = [p for p in poles if not p.is_real(1e-12) and p.is_complex(1e-12)]
    # an explicitly listed conjugate does not open a second class
    s = 0
    seen: list[Quat] = []
    for p in cplx:
        hit = next((k for k, c in enumerate(seen) if c.isclose(p.conj(), 1e-12)), None)
        if hit is None:
            seen.append(p)
            s += 1
        else:
            seen.pop(hit)
    q = len(poles) - r - len(cplx)
    need = 2 * s + r + q
    if need > n:
        raise DegreeError(f"degree budget exceeded: 2*{s} + {r} + {q} = {need} > n = {n}")
    if need < n:
        raise DegreeError(f"poles define degree {need}, system order is {n}")
    return poly_from_right_roots(poles)


def _check_target(target: QPoly, n: int):
    if target.degree != n:
        raise DegreeError(f"target degree {target.degree} does not match n = {n}")
    if not target.is_monic():
        raise DegreeError("target polynomial must be monic")


def _finish(sys, L, method, target, cr, **extras) -> ObserverDesign:
    A_obs = sys.A - L @ sys.C
    L_o = cr.T_inv @ L
    return ObserverDesign(
        L=L, L_o=L_o, method=method, target=target,
        achieved=right_spectrum(A_obs), A_obs=A_obs, realization=cr, extras=extras,
    )


def place_companion(sys: StateSpace, target: QPoly) -> ObserverDesign:
    cr = to_observable_companion(sys)
    _check_target(target, sys.n)
    L_o = QMatrix.column([target.coeffs[k] - cr.a.coeffs[k] for k in range(sys.n)])
    L = cr.T @ L_o
    design = _finish(sys, L, "companion", target, cr)
    # keep the exact coefficient differences rather than T^-1 (T L_o)
    return replace(design, L_o=L_o)


def place_ackermann(sys: StateSpace, target: QPoly, force: bool = False) -> ObserverDesign:
    """``L = a_d(A) O^-1 e_n``.

    Quaternionic target coefficients raise :class:`NoncentralTargetError`
    unless ``force`` is set; a forced run returns whatever the formula gives,
    which in general does not place the requested classes.
    """
    if not target.is_real() and not force:
        raise NoncentralTargetError("Ackermann formula needs a real-coefficient target (use force to override)")
    cr = to_observable_companion(sys)
    _check_target(target, sys.n)
    ad_A = left_substitute_matrix(target, sys.A)
    L = ad_A @ (cr.O_inv @ QMatrix.basis(sys.n, sys.n - 1))
    return _finish(sys, L, "ackermann", target, cr, ackermann_matrix=ad_A, forced=bool(force and not target.is_real()))


def ackermann_state_feedback(F: QMatrix, G: QMatrix, target: QPoly, force: bool = False) -> QMatrix:
    """Row gain ``K = e_n^T Ctrb(F, G)^-1 a_d(F)`` so that ``F - G K`` has the target classes."""
    if not target.is_real() and not force:
        raise NoncentralTargetError("Ackermann formula needs a real-coefficient target")
    n = F.rows
    ctrb = controllability_matrix(StateSpace(F, G, QMatrix.zeros(1, n)))
    last_row = inverse(ctrb)[n - 1:n, :]
    return last_row @ left_substitute_matrix(target, F)


def place_dual(sys: StateSpace, target: QPoly, force: bool = False) -> ObserverDesign:
    cr = to_observable_companion(sys)
    _check_target(target, sys.n)
    K = ackermann_state_feedback(sys.A.H, sys.C.H, target, force=force)
    L = K.H
    return _finish(sys, L, "dual", target, cr, dual_gain=K)


def place(sys: StateSpace, target: QPoly, method: str = "companion", force: bool = False) -> ObserverDesign:
    if method == "companion":
        return place_companion(sys, target)
    if method == "ackermann":
        return place_ackermann(sys, target, force=force)
    if method == "dual":
        return place_dual(sys, target, force=force)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


@dataclass(frozen=True)
class DesignReport:
    expected: RightSpectrum
    achieved: RightSpectrum
    deviations: list[float]
    matched: bool
    stable: bool
    residuals: dict

    @property
    def max_deviation(self) -> float:
        return max(self.deviations, default=0.0)


def verify_design(sys: StateSpace, design: ObserverDesign, tol: float = 1e-6) -> DesignReport:
    """Recompute the spectrum of ``A - L C`` and compare it with the target's zero classes."""
    A_obs = sys.A - design.L @ sys.C
    achieved = right_spectrum(A_obs)
    expected = right_root_classes(design.target)
    devs = achieved.deviations(expected) if len(achieved) == len(expected) else [float("inf")]
    cr = design.realization
    residuals = {
        "max_class_deviation": max(devs, default=0.0),
        "similarity": (cr.T @ cr.A_o - sys.A @ cr.T).frobenius(),
        "gain_backmap": (cr.T @ design.L_o - design.L).frobenius(),
        "T_condition": cr.condition,
    }
    return DesignReport(
        expected=expected, achieved=achieved, deviations=devs,
        matched=max(devs, default=0.0) <= tol, stable=achieved.is_stable, residuals=residuals,
    )
