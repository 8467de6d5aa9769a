import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxnumrange import core
from maxnumrange.core import (Tolerance, block_diag, build_banded_toeplitz,
                              conjugate_by_permutation, matrix_power, max_convex_hull,
                              max_eigenvalue, max_trace, oplus, otimes, outer,
                              permutation_matrix, sup_norm)
from maxnumrange.errors import MaxAlgebraError, NegativeEntryError, ShapeError
from maxnumrange.intervals import Interval, IntervalSet
from maxnumrange.single import wmax

from .strategies import square, square_pair


class TestValidation:
    def test_negative_entry_is_named(self):
        with pytest.raises(NegativeEntryError) as exc:
            core.as_square([[1, 2], [-3, 4]])
        assert exc.value.index == (1, 0)
        assert "(1, 0)" in str(exc.value)

    @pytest.mark.parametrize("bad", [np.nan, np.inf])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(NegativeEntryError):
            core.as_square([[1, bad], [0, 1]])

    def test_non_square(self):
        with pytest.raises(ShapeError):
            core.as_square(np.ones((2, 3)))

    def test_empty(self):
        with pytest.raises(ShapeError):
            core.as_square(np.ones((0, 0)))

    def test_result_is_read_only(self):
        A = core.as_square([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            A[0, 0] = 5


class TestSemiring:
    def test_otimes_small(self):
        A = np.array([[1.0, 2], [3, 0]])
        B = np.array([[0.0, 5], [4, 1]])
        assert otimes(A, B).tolist() == [[8.0, 5.0], [0.0, 15.0]]

    def test_otimes_vector(self):
        A = np.array([[1.0, 2], [3, 0]])
        assert otimes(A, np.array([1.0, 0.5])).tolist() == [1.0, 3.0]

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            otimes(np.ones((2, 3)), np.ones((2, 3)))
        with pytest.raises(ShapeError):
            oplus(np.ones((2, 2)), np.ones((3, 3)))

    def test_matrix_power(self):
        A = np.array([[0.0, 2], [3, 0]])
        assert matrix_power(A, 2).tolist() == [[6.0, 0.0], [0.0, 6.0]]
        with pytest.raises(MaxAlgebraError):
            matrix_power(A, 0)

    @given(square_pair())
    def test_otimes_definition(self, AB):
        A, B = AB
        n = A.shape[0]
        ref = [[max(A[i, k] * B[k, j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert otimes(A, B).tolist() == ref

    @given(square_pair())
    def test_trace_commutes(self, AB):
        A, B = AB
        assert max_trace(otimes(A, B)) == max_trace(otimes(B, A))

    @given(square())
    def test_identity_neutral(self, A):
        eye = np.eye(A.shape[0])
        assert np.array_equal(otimes(eye, A), A)
        assert np.array_equal(otimes(A, eye), A)


class TestNorms:
    def test_sup_norm(self):
        assert sup_norm([[1, 7], [3, 2]]) == 7.0
        assert sup_norm([0.5, 0.25]) == 0.5

    @given(square_pair(), st.integers(1, 4))
    def test_submultiplicative_and_powers(self, AB, m):
        A, B = AB
        assert sup_norm(otimes(A, B)) <= sup_norm(A) * sup_norm(B)
        assert sup_norm(matrix_power(A, m)) <= sup_norm(A) ** m

    @given(square())
    def test_unitary_similarity(self, A):
        for p in itertools.islice(itertools.permutations(range(A.shape[0])), 6):
            U = permutation_matrix(p)
            conj = otimes(U.T, otimes(A, U))
            assert np.array_equal(conj, conjugate_by_permutation(A, p))
            assert sup_norm(conj) == sup_norm(A)


class TestPermutations:
    def test_matrix_columns(self):
        U = permutation_matrix([2, 0, 1])
        assert U[:, 0].tolist() == [0, 0, 1]
        assert np.array_equal(otimes(U.T, U), np.eye(3))

    def test_rejects_non_permutation(self):
        with pytest.raises(MaxAlgebraError):
            permutation_matrix([0, 0, 1])
        with pytest.raises(ShapeError):
            conjugate_by_permutation(np.eye(3), [1, 0])


class TestHull:
    def test_union_hull(self):
        S = IntervalSet([Interval(5, 8), Interval(10, 12)])
        assert max_convex_hull(S) == Interval(5, 12)

    def test_points(self):
        assert max_convex_hull([32.0, 40.0]) == Interval(32, 40)

    def test_open_interval_is_closed(self):
        assert max_convex_hull(Interval(0, 3, lo_closed=False)) == Interval(0, 3)

    def test_empty(self):
        with pytest.raises(MaxAlgebraError):
            max_convex_hull(IntervalSet.empty())
        with pytest.raises(MaxAlgebraError):
            max_convex_hull([])


def _brute_cycle_mean(A):
    n = A.shape[0]
    best = 0.0
    for size in range(1, n + 1):
        for cyc in itertools.permutations(range(n), size):
            w = np.prod([A[a, b] for a, b in zip(cyc, cyc[1:] + cyc[:1])])
            if w > 0:
                best = max(best, w ** (1 / size))
    return best


class TestEigenvalue:
    def test_diagonal(self):
        assert max_eigenvalue(np.diag([2.0, 4, 5])) == 5.0

    def test_two_cycle(self):
        assert max_eigenvalue(np.array([[0.0, 4], [9, 0]])) == 6.0

    @pytest.mark.parametrize("a, b, want", [
        (1e300, 1e300, 1e300), (4e200, 1e200, 2e200),
        (1.7976931348623157e308, 1.7976931348623157e308, 1.7976931348623157e308),
    ])
    def test_two_cycle_near_overflow(self, a, b, want):
        assert max_eigenvalue(np.array([[0.0, a], [b, 0.0]])) == want

    def test_acyclic(self):
        assert max_eigenvalue(np.array([[0.0, 3], [0, 0]])) == 0.0

    def test_three_cycle(self):
        A = np.zeros((3, 3))
        A[0, 1], A[1, 2], A[2, 0] = 2.0, 4.0, 8.0
        assert Tolerance().close(max_eigenvalue(A), 4.0)

    @given(square(max_n=4))
    def test_matches_brute_force_and_lies_in_wmax(self, A):
        lam = max_eigenvalue(A)
        tol = Tolerance()
        assert tol.close(lam, _brute_cycle_mean(A))
        W = wmax(A)
        assert (W.lo <= lam or tol.close(lam, W.lo)) and (lam <= W.hi or tol.close(lam, W.hi))


class TestTolerance:
    def test_close(self):
        t = Tolerance()
        assert t.close(1.0, 1.0 + 1e-13)
        assert not t.close(1.0, 1.0 + 1e-9)
        assert not t.close(0.0, 1e-300)

    def test_positive(self):
        with pytest.raises(MaxAlgebraError):
            Tolerance(0.0)


class TestConstructors:
    def test_toeplitz_four(self):
        A = build_banded_toeplitz((2, 5, 3, 4, 2), 4)
        assert A.tolist() == [[3, 4, 2, 0], [5, 3, 4, 2], [2, 5, 3, 4], [0, 2, 5, 3]]

    def test_toeplitz_errors(self):
        with pytest.raises(MaxAlgebraError):
            build_banded_toeplitz((1,), 2)
        with pytest.raises(ShapeError):
            build_banded_toeplitz((1, 2, 3), 4)
        with pytest.raises(MaxAlgebraError):
            build_banded_toeplitz((1, 0, 3, 4, 5), 4)

    def test_block_diag(self):
        B = block_diag(np.ones((1, 1)), 2 * np.ones((2, 2)))
        assert B.tolist() == [[1, 0, 0], [0, 2, 2], [0, 2, 2]]

    def test_outer(self):
        assert outer([1.0, 2.0], [3.0, 0.5]).tolist() == [[3.0, 0.5], [6.0, 1.0]]
