import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxnumrange import core
from maxnumrange.errors import EnumerationLimitError, ShapeError
from maxnumrange.intervals import Interval
from maxnumrange.perm import (C_range, PointSet, c_range, c_range_hull,
                              joint_c_range, product)

from .conftest import C_A1, C_A2, C_B2, TRIPLE
from .strategies import square


def reference_C(T, C):
    n = T.shape[1]
    pts = set()
    for p in itertools.permutations(range(n)):
        P = core.permutation_matrix(p)
        pts.add(tuple(core.max_trace(core.otimes(C, core.otimes(P.T, core.otimes(A, P))))
                      for A in T))
    return PointSet(tuple(pts))


class TestExamples:
    def test_single_c_ranges(self):
        c = [2.0, 8.0]
        assert c_range(C_A1, c).scalars == (32.0, 40.0)
        assert c_range(C_A2, c).scalars == (24.0, 64.0)

    def test_joint_pair(self):
        assert joint_c_range(np.stack([C_A1, C_A2]), [2.0, 8.0]) == PointSet(((32, 64), (40, 24)))

    def test_not_max_min_pairing(self):
        T = np.stack([C_A1, C_B2])
        c = [4.0, 3.0]
        assert c_range(C_A1, c).scalars == (16.0, 20.0)
        assert c_range(C_B2, c).scalars == (28.0, 36.0)
        assert joint_c_range(T, c) == PointSet(((20, 36), (16, 28)))
        assert joint_c_range(T, c) != PointSet(((16, 36), (20, 28)))

    def test_triple(self):
        got = joint_c_range(TRIPLE, [3.0, 4.0, 5.0])
        want = {(40, 20, 30), (35, 25, 30), (40, 15, 30), (28, 20, 24), (32, 15, 24)}
        assert set(got) == {tuple(map(float, p)) for p in want}
        assert set(c_range(TRIPLE[0], [3.0, 4, 5]).scalars) == {40, 35, 28, 32}
        assert set(c_range(TRIPLE[1], [3.0, 4, 5]).scalars) == {20, 25, 15}
        assert set(c_range(TRIPLE[2], [3.0, 4, 5]).scalars) == {30, 24}

    def test_C_range_offdiagonal(self):
        # C = E_12 picks the off-diagonal entry (P^t A P)_21
        C = np.array([[0.0, 1], [0, 0]])
        assert C_range(C_A1, C).scalars == (2.0, 7.0)

    def test_hull(self):
        assert c_range_hull(C_A1, [2.0, 8.0]) == Interval(32, 40)


class TestPointSet:
    def test_normalization(self):
        ps = PointSet(((2, 1), (1, 5), (2, 1)))
        assert ps.points == ((1.0, 5.0), (2.0, 1.0))
        assert (2, 1) in ps and len(ps) == 2
        with pytest.raises(ShapeError):
            PointSet(((1,), (1, 2)))

    def test_operations(self):
        a = PointSet(((1, 4), (3, 2)))
        b = PointSet(((2, 2),))
        assert a.oplus(b) == PointSet(((2, 4), (3, 2)))
        assert a.scale(2) == PointSet(((2, 8), (6, 4)))
        assert product(PointSet(((1,), (2,))), PointSet(((5,),))) == PointSet(((1, 5), (2, 5)))
        with pytest.raises(ShapeError):
            a.scalars


class TestLimits:
    def test_refuses_large_n(self):
        with pytest.raises(EnumerationLimitError) as exc:
            c_range(np.eye(11), np.ones(11))
        assert exc.value.flag == "n"

    def test_weight_shape(self):
        with pytest.raises(ShapeError):
            c_range(np.eye(3), [1.0, 2.0])
        with pytest.raises(ShapeError):
            C_range(np.eye(3), np.eye(2))


class TestProperties:
    @given(square(max_n=4), st.integers(0, 2 ** 31))
    def test_C_matches_definition(self, A, seed):
        rng = np.random.default_rng(seed)
        n = A.shape[0]
        C = rng.integers(0, 5, (n, n)).astype(float)
        assert C_range(A, C) == reference_C(A[None], C)

    @given(square(max_n=5), st.integers(0, 2 ** 31))
    def test_diag_C_is_c(self, A, seed):
        c = np.random.default_rng(seed).integers(0, 9, A.shape[0]).astype(float)
        assert C_range(A, np.diag(c)) == c_range(A, c)
        assert c_range(A.T, c) == c_range(A, c)

    @given(square(max_n=5))
    def test_cardinality(self, A):
        n = A.shape[0]
        c = np.arange(1.0, n + 1)
        assert 1 <= len(c_range(A, c)) <= math.factorial(n)
