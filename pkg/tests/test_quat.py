import math

import numpy as np
import pytest
from hypothesis import given

from hobserve.quat import (
    Quat, SimilarityClass, are_similar, left_matrix, qinv, qmul, similarity_class,
)

from conftest import nonzero_quats, quats, real_quats

I, J, K = Quat(0, 1), Quat(0, 0, 1), Quat(0, 0, 0, 1)


def test_unit_products():
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K
    assert I * I == J * J == K * K == Quat(-1)
    assert I * J * K == Quat(-1)


def test_noncommutative_example():
    a, b = Quat(1, 2, 0, 0), Quat(0, 0, 1, 0)
    assert a * b != b * a
    assert (a * b - b * a).norm() == pytest.approx(4.0)


@given(quats, quats, quats)
def test_associative(a, b, c):
    assert ((a * b) * c).isclose(a * (b * c), 1e-9)


@given(quats, quats)
def test_norm_multiplicative(a, b):
    assert (a * b).norm() == pytest.approx(a.norm() * b.norm(), rel=1e-12, abs=1e-12)


@given(quats, quats)
def test_conj_reverses_products(a, b):
    assert (a * b).conj().isclose(b.conj() * a.conj(), 1e-10)


@given(nonzero_quats)
def test_inverse(q):
    assert (q * q.inv()).isclose(Quat(1), 1e-10)
    assert (q.inv() * q).isclose(Quat(1), 1e-10)


@given(real_quats, quats)
def test_reals_are_central(r, q):
    assert (r * q).isclose(q * r, 1e-12)


@given(quats, quats)
def test_left_matrix_realizes_product(a, b):
    np.testing.assert_allclose(left_matrix(a.to_array()) @ b.to_array(), (a * b).to_array(), atol=1e-12)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        qinv(np.zeros(4))
    with pytest.raises(ZeroDivisionError):
        Quat().inv()


def test_vectorized_qmul_broadcasts():
    a = np.random.default_rng(1).normal(size=(5, 3, 4))
    b = np.random.default_rng(2).normal(size=(3, 4))
    out = qmul(a, b)
    assert out.shape == (5, 3, 4)
    ref = (Quat.from_array(a[2, 1]) * Quat.from_array(b[1])).to_array()
    np.testing.assert_allclose(out[2, 1], ref, atol=1e-14)


@given(quats, nonzero_quats)
def test_similarity_invariant(q, alpha):
    p = alpha.inv() * q * alpha
    assert similarity_class(p).distance(similarity_class(q)) < 1e-9
    assert are_similar(p, q, 1e-8)


def test_class_representative():
    c = similarity_class(Quat(-1, 0, 1, 0))
    assert c == SimilarityClass(-1.0, 1.0)
    assert c.representative == Quat(-1, 1)
    assert c.contains(Quat(-1, 0, 0, 1))
    assert not c.contains(Quat(-1, 0, 0, 2))


def test_are_similar_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        are_similar(I, J, 0.0)


def test_unit_imaginaries_share_a_class():
    assert are_similar(I, J) and are_similar(J, K) and are_similar(I, -I)
    assert not are_similar(I, Quat(0, 2))


def test_format():
    assert Quat(1, -1, 2, -2).format(1) == "1.0 - 1.0 i + 2.0 j - 2.0 k"
    assert math.isclose(Quat(0, 3, 0, 4).imag_norm, 5.0)
