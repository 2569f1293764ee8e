import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from hobserve.errors import DegreeError, NotARootError, UnsupportedRootsError
from hobserve.hmatrix import QMatrix, RightSpectrum, right_spectrum
from hobserve.qpoly import (
    QPoly, ZeroKind, classify_zero, companion_matrix, eigenvector_from_right_root,
    eval_left, eval_right, left_root_in_class, left_substitute_matrix,
    poly_from_right_roots, right_root_classes, root_in_class,
)
from hobserve.quat import Quat, are_similar, similarity_class

from conftest import component, nonzero_quats, quats

I, J, K = Quat(0, 1), Quat(0, 0, 1), Quat(0, 0, 0, 1)

real_polys = st.lists(component, min_size=2, max_size=6).map(lambda c: QPoly(tuple(Quat(v) for v in c)))
quat_polys = st.lists(quats, min_size=2, max_size=5).map(QPoly)


def test_right_and_left_values_differ():
    # p(t) = i t : right value i q, left value q i
    p = QPoly((Quat(), I))
    assert eval_right(p, J) == K
    assert eval_left(p, J) == -K


def test_evaluation_by_hand():
    p = QPoly((Quat(1), J, Quat(1)))  # 1 + j t + t^2
    q = I
    assert eval_right(p, q) == Quat(1) + J * I + I * I
    assert eval_left(p, q) == Quat(1) + I * J + I * I


def test_product_vanishes_at_zeros_of_right_factor():
    f = QPoly((-I, Quat(1)))
    g = QPoly((-J, Quat(1)))
    assert eval_right(f * g, J) == Quat()
    # but not at the zero of the left factor
    assert eval_right(f * g, I).norm() > 1.0


@given(real_polys, quats)
def test_real_coefficients_side_independent(p, q):
    assert eval_right(p, q) == eval_left(p, q)


@given(real_polys, quats, nonzero_quats)
def test_real_coefficients_similarity_equivariant(p, q, a):
    lhs = eval_right(p, a.inv() * q * a)
    rhs = a.inv() * eval_right(p, q) * a
    assert lhs.isclose(rhs, 1e-7 * max(1.0, rhs.norm()))


@given(quat_polys, quat_polys, quats)
def test_product_rule(f, g, q):
    gq = eval_right(g, q)
    assume(gq.norm() > 1e-3)
    lhs = eval_right(f * g, q)
    rhs = eval_right(f, gq * q * gq.inv()) * gq
    scale = (1 + f.to_array().__abs__().sum()) * (1 + g.to_array().__abs__().sum()) * (1 + q.norm()) ** 8
    assert lhs.isclose(rhs, 1e-12 * scale)


@pytest.mark.parametrize("seed", range(5))
def test_real_zero_classes_match_numpy_roots(seed):
    rng = np.random.default_rng(seed)
    c = rng.uniform(-2, 2, size=5)
    p = QPoly.monic([Quat(v) for v in c])
    roots = np.roots(np.r_[1.0, c[::-1]])
    # every complex root maps to its class, so a conjugate pair counts twice
    ref = RightSpectrum.from_pairs([(z.real, abs(z.imag)) for z in roots])
    ours = right_root_classes(p)
    assert ours.max_deviation(ref) < 1e-8


def test_left_substitution_of_companion():
    rng = np.random.default_rng(7)
    for n in range(1, 6):
        p = QPoly.monic([Quat(*rng.uniform(-2, 2, 4)) for _ in range(n)])
        assert left_substitute_matrix(p, companion_matrix(p)).frobenius() < 1e-10


def test_companion_requires_monic():
    with pytest.raises(DegreeError):
        companion_matrix(QPoly((Quat(1), Quat(2))))
    with pytest.raises(DegreeError):
        companion_matrix(QPoly((Quat(1),)))


def test_eigenvector_recurrence():
    p = poly_from_right_roots([Quat(-1, 0, 1), Quat(-2, 0, 0, 1)])
    C = companion_matrix(p)
    for lam in (Quat(-1, 0, 1), Quat(-2, 0, 0, 1)):
        v = eigenvector_from_right_root(p, lam)
        assert (C @ v - v * lam).frobenius() < 1e-12
    with pytest.raises(NotARootError):
        eigenvector_from_right_root(p, Quat(5))


def test_two_quaternionic_roots_exact_coefficients():
    p = poly_from_right_roots([Quat(-1, 0, 1), Quat(-2, 0, 0, 1)])
    ref = [Quat(8 / 3, -1, -4 / 3, 1 / 3), Quat(3, -2 / 3, -1 / 3, -1 / 3), Quat(1)]
    for c, r in zip(p.coeffs, ref):
        assert c.isclose(r, 1e-12)
    assert eval_right(p, Quat(-1, 0, 1)).norm() < 1e-12
    assert eval_right(p, Quat(-2, 0, 0, 1)).norm() < 1e-12


@given(st.lists(nonzero_quats, min_size=1, max_size=3))
def test_chained_roots_are_right_zeros(roots):
    roots = [r for r in roots if r.imag_norm > 0.1 and not r.is_complex(1e-9)]
    assume(roots)
    for a in range(len(roots)):
        for b in range(a):
            assume(similarity_class(roots[a]).distance(similarity_class(roots[b])) > 0.1)
    p = poly_from_right_roots(roots)
    assert p.degree == len(roots) and p.is_monic()
    for r in roots:
        assert eval_right(p, r).norm() <= 1e-7 * max(1.0, max(c.norm() for c in p.coeffs))


def test_complex_roots_give_real_quadratic():
    p = poly_from_right_roots([Quat(-1, 1)])
    assert p.is_real() and p.degree == 2
    assert poly_from_right_roots([Quat(-1, 1), Quat(-1, -1)]) == p
    # the whole class vanishes
    assert classify_zero(p, Quat(-1, 0, 0, 1)) == ZeroKind.SPHERICAL


def test_unsupported_root_lists():
    with pytest.raises(UnsupportedRootsError):
        poly_from_right_roots([])
    with pytest.raises(UnsupportedRootsError):
        poly_from_right_roots([Quat(-1, 0, 1), Quat(-1, 0, 0, 1)])


def test_isolated_zero():
    p = QPoly((-J, Quat(1)))  # t - j, right zero j only
    assert classify_zero(p, J) == ZeroKind.ISOLATED
    with pytest.raises(NotARootError):
        classify_zero(p, I)


def test_point_roots_in_class():
    p = poly_from_right_roots([Quat(-1, 0, 1), Quat(-2, 0, 0, 1)])
    for cls in right_root_classes(p).classes:
        x = root_in_class(p, cls)
        assert eval_right(p, x).norm() < 1e-9
        assert cls.contains(x, 1e-9)
        y = left_root_in_class(p, cls)
        assert eval_left(p, y).norm() < 1e-9
        assert cls.contains(y, 1e-9)
    with pytest.raises(NotARootError):
        root_in_class(p, similarity_class(Quat(3, 1)))


def test_left_and_right_zeros_share_classes_but_not_points():
    p = QPoly((-J * I, -I, Quat(1)))
    sp = right_spectrum(companion_matrix(p))
    for cls in sp.classes:
        x, y = root_in_class(p, cls), left_root_in_class(p, cls)
        assert are_similar(x, y, 1e-8)
