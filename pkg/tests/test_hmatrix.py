import numpy as np
import pytest
from hypothesis import given, strategies as st

from hobserve.eigen import eigvals, hessenberg
from hobserve.errors import SingularMatrixError
from hobserve.hmatrix import (
    QMatrix, RightSpectrum, complex_adjoint, inverse, rank, right_spectrum, solve,
)
from hobserve.quat import Quat

from conftest import nonzero_quats, qmatrices

I, J, K = Quat(0, 1), Quat(0, 0, 1), Quat(0, 0, 0, 1)


# -- eigensolver against numpy (oracle) --------------------------------------

def _match(a, b):
    # nearest-neighbour greedy match of two complex multisets
    b = list(b)
    worst = 0.0
    for z in a:
        k = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b.pop(k)))
    return worst


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_eigvals_against_numpy(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        ours = eigvals(a)
        ref = np.linalg.eigvals(a)
        assert _match(ours, ref) < 1e-9 * max(1.0, np.abs(ref).max())


def test_eigvals_real_input_and_defective():
    a = np.array([[2.0, 1.0], [0.0, 2.0]])
    np.testing.assert_allclose(np.sort_complex(eigvals(a)), [2, 2], atol=1e-7)
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert _match(eigvals(rot), [1j, -1j]) < 1e-12


def test_hessenberg_is_similar():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = hessenberg(a)
    assert np.allclose(np.tril(h, -2), 0.0)
    assert _match(np.linalg.eigvals(h), np.linalg.eigvals(a)) < 1e-10


# -- arithmetic and solves ---------------------------------------------------

def test_right_scalar_vs_left_scalar():
    A = QMatrix.from_quats([[I, Quat(1)], [J, K]])
    assert not (A * J).allclose(J * A)
    assert (A * J)[0, 0] == I * J


@given(qmatrices(3, 3), qmatrices(3, 2), qmatrices(2, 2))
def test_matmul_associative(a, b, c):
    assert ((a @ b) @ c).allclose(a @ (b @ c), 1e-9)


@given(qmatrices(3, 3), qmatrices(3, 3))
def test_conj_transpose_reverses(a, b):
    assert (a @ b).H.allclose(b.H @ a.H, 1e-10)


@given(qmatrices(3, 3), qmatrices(3, 3))
def test_complex_adjoint_is_homomorphism(a, b):
    np.testing.assert_allclose(complex_adjoint(a @ b), complex_adjoint(a) @ complex_adjoint(b), atol=1e-10)


@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_solve_residual(n):
    rng = np.random.default_rng(10 + n)
    for _ in range(10):
        a = QMatrix(rng.normal(size=(n, n, 4)))
        b = QMatrix(rng.normal(size=(n, 2, 4)))
        x = solve(a, b)
        assert (a @ x - b).frobenius() <= 1e-10 * a.scale() * x.scale()
        ai = inverse(a)
        assert (ai @ a).allclose(QMatrix.identity(n), 1e-9)
        assert (a @ ai).allclose(QMatrix.identity(n), 1e-9)


def test_singular_raises():
    a = QMatrix.from_quats([[I, J], [I * K, J * K]])  # second row = first row * k
    with pytest.raises(SingularMatrixError):
        inverse(a)
    assert rank(a) == 1


def test_rank_uses_left_linear_combination():
    # rows r and q*r are dependent over H (left multiple), even though no
    # real or complex multiple relates them
    r = [Quat(1, 2, 0, 1), Quat(0, 1, 1, 0)]
    q = Quat(0.3, -1, 2, 0.5)
    a = QMatrix.from_quats([r, [q * x for x in r]])
    assert rank(a) == 1


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (4, 3), (5, 5)])
def test_rank_matches_complex_adjoint(n, k):
    rng = np.random.default_rng(n * 10 + k)
    left = QMatrix(rng.normal(size=(n, k, 4)))
    right = QMatrix(rng.normal(size=(k, n, 4)))
    a = left @ right
    assert rank(a) == k
    assert np.linalg.matrix_rank(complex_adjoint(a), tol=1e-9) == 2 * k


# -- right spectrum ----------------------------------------------------------

def test_spectrum_of_diagonal():
    a = QMatrix.from_quats([[Quat(-1, 0, 1), Quat()], [Quat(), Quat(-2, 0, 0, 1)]])
    sp = right_spectrum(a)
    assert sp.matches(RightSpectrum.from_pairs([(-1, 1), (-2, 1)]), 1e-12)


@given(qmatrices(3, 3), nonzero_quats)
def test_spectrum_similarity_invariant(a, _):
    rng = np.random.default_rng(0)
    P = QMatrix(rng.normal(size=(3, 3, 4)))
    b = inverse(P) @ a @ P
    sa, sb = right_spectrum(a), right_spectrum(b)
    assert sa.max_deviation(sb) <= 1e-6 * max(1.0, a.frobenius()) * max(1.0, P.frobenius() ** 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_adjoint_eigenvalues_come_in_conjugate_pairs(n):
    rng = np.random.default_rng(n)
    a = QMatrix(rng.normal(size=(n, n, 4)))
    lam = np.linalg.eigvals(complex_adjoint(a))
    assert _match(lam, np.conj(lam)) < 1e-8
    sp = right_spectrum(a)
    assert len(sp.classes) == n
    ref = sorted((z.real, abs(z.imag)) for z in lam)
    # each class appears twice among the 2n adjoint eigenvalues
    for c in sp.classes:
        assert min(abs(c.re - r) + abs(c.imnorm - m) for r, m in ref) < 1e-8


def test_spectrum_deviation_size_mismatch():
    with pytest.raises(ValueError):
        RightSpectrum.from_pairs([(1, 0)]).deviations(RightSpectrum.from_pairs([(1, 0), (2, 0)]))


def test_stability_flag():
    assert RightSpectrum.from_pairs([(-1, 3), (-0.1, 0)]).is_stable
    assert not RightSpectrum.from_pairs([(-1, 3), (0.0, 1)]).is_stable
