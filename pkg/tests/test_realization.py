import warnings

import numpy as np
import pytest

from hobserve.cases import benchmark_system
from hobserve.errors import NotObservableError
from hobserve.hmatrix import QMatrix, inverse, rank, right_spectrum
from hobserve.qpoly import companion_matrix, left_substitute_matrix
from hobserve.quat import Quat
from hobserve.realization import (
    StateSpace, annihilation_residual, controllability_matrix, is_controllable, is_observable,
    observability_matrix, random_system, spectrum_via_companion, to_observable_companion,
)

I, J, K = Quat(0, 1), Quat(0, 0, 1), Quat(0, 0, 0, 1)


@pytest.fixture(scope="module")
def systems():
    rng = np.random.default_rng(5)
    return [random_system(rng, n) for n in (1, 2, 3, 4, 5) for _ in range(4)]


def test_observability_rows_are_krylov(systems):
    for s in systems:
        O = observability_matrix(s)
        row = s.C
        for k in range(s.n):
            assert O[k:k + 1, :].allclose(row, 1e-12)
            row = row @ s.A


def test_controllability_columns_are_krylov(systems):
    for s in systems:
        Cm = controllability_matrix(s)
        col = s.B
        for k in range(s.n):
            assert Cm[:, k:k + 1].allclose(col, 1e-12)
            col = s.A @ col


def test_companion_shape(systems):
    for s in systems:
        cr = to_observable_companion(s)
        n = s.n
        A_o = cr.A_o
        for i in range(n):
            for j in range(n - 1):
                expect = Quat(1) if i == j + 1 else Quat()
                assert A_o[i, j].isclose(expect, 1e-8 * cr.condition)
        assert cr.C_o.allclose(QMatrix.basis(n, n - 1).H, 1e-8 * cr.condition)
        # O T is lower-left triangular with unit anti-diagonal
        OT = cr.O @ cr.T
        for i in range(n):
            for j in range(n):
                if i + j == n - 1:
                    assert OT[i, j].isclose(Quat(1), 1e-8 * cr.condition)
                elif i + j < n - 1:
                    assert OT[i, j].isclose(Quat(), 1e-8 * cr.condition)


def test_similarity_round_trip(systems):
    for s in systems:
        cr = to_observable_companion(s)
        assert (cr.T @ cr.A_o @ cr.T_inv).allclose(s.A, 1e-8 * cr.condition)
        assert cr.exact_companion.allclose(cr.A_o, 1e-8 * cr.condition)
        assert annihilation_residual(cr) < 1e-9 * cr.condition


def test_annihilation_is_for_the_companion_not_the_original():
    # left substitution is not invariant under similarity over H
    s = benchmark_system()
    cr = to_observable_companion(s)
    assert annihilation_residual(cr) < 1e-12
    assert left_substitute_matrix(cr.a, s.A).frobenius() > 0.1


def test_spectrum_routes_agree(systems):
    for s in systems:
        assert spectrum_via_companion(s).max_deviation(right_spectrum(s.A)) < 1e-6


def test_scalar_system():
    s = StateSpace.from_pair(QMatrix.from_quats([[Quat(-1, 0, 2)]]), QMatrix.from_quats([[K]]))
    cr = to_observable_companion(s)
    assert cr.A_o[0, 0].isclose(Quat(-1, 0, 2), 1e-12) or cr.A_o[0, 0].similarity_class().distance(
        Quat(-1, 0, 2).similarity_class()) < 1e-12
    assert cr.C_o[0, 0].isclose(Quat(1), 1e-12)


def test_unobservable():
    A = QMatrix.from_quats([[Quat(-1), Quat()], [Quat(), Quat(-2)]])
    s = StateSpace.from_pair(A, QMatrix.row([Quat(1), Quat()]))
    assert not is_observable(s)
    with pytest.raises(NotObservableError):
        to_observable_companion(s)
    with pytest.raises(NotObservableError):
        to_observable_companion(StateSpace.from_pair(A, QMatrix.zeros(1, 2)))


def test_observability_with_scalar_like_a():
    A = QMatrix.from_quats([[I, Quat()], [Quat(), I]])
    # C = [1, i]: C A = [i, -1] = i C, so the rows are left dependent
    assert not is_observable(StateSpace.from_pair(A, QMatrix.row([Quat(1), I])))
    # C = [1, j]: C A = [i, -k] while i C = [i, k]; i does not commute with j
    assert is_observable(StateSpace.from_pair(A, QMatrix.row([Quat(1), J])))


def test_controllability_examples():
    s = benchmark_system()
    assert is_controllable(s)
    A = QMatrix.from_quats([[Quat(-1), Quat()], [Quat(), Quat(-2)]])
    s2 = StateSpace(A, QMatrix.column([Quat(1), Quat()]), QMatrix.row([Quat(1), Quat(1)]), Quat())
    assert not is_controllable(s2)


def test_duality(systems):
    for s in systems:
        d = s.dual()
        assert observability_matrix(d).allclose(controllability_matrix(s).H, 1e-12)
        assert controllability_matrix(d).allclose(observability_matrix(s).H, 1e-12)
        assert is_observable(s) == is_controllable(d)


def test_dimension_validation():
    A = QMatrix.identity(2)
    with pytest.raises(ValueError):
        StateSpace(A, QMatrix.zeros(3, 1), QMatrix.zeros(1, 2), Quat())
    with pytest.raises(ValueError):
        StateSpace(A, QMatrix.zeros(2, 1), QMatrix.zeros(1, 3), Quat())
