import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxnumrange import isometry
from maxnumrange.core import otimes
from maxnumrange.errors import EnumerationLimitError, MaxAlgebraError, ShapeError
from maxnumrange.isometry import (MaxIsometry, SupportPattern, adjacency_graph,
                                  certify_rank_k, enumerate_support_families,
                                  is_orthogonal_family, orthogonal, sample_isometry,
                                  validate_isometry)

from .conftest import BLOCK_4
from .strategies import square


class TestValidate:
    def test_valid(self):
        X = np.array([[1.0, 0], [0.5, 0], [0, 1]])
        assert validate_isometry(X) == (True, "")

    @pytest.mark.parametrize("X, fragment", [
        (np.array([[1.0, 0.5], [0, 1]]), "row 0"),
        (np.array([[0.9], [0.2]]), "maximum"),
        (np.array([[1.5], [0]]), "exceeds 1"),
        (np.array([[1.0, 0, 0]]), "more columns"),
    ])
    def test_violations(self, X, fragment):
        ok, why = validate_isometry(X)
        assert not ok and fragment in why

    def test_agrees_with_definition_on_grid(self):
        for vals in itertools.product((0.0, 0.5, 1.0), repeat=6):
            X = np.array(vals).reshape(3, 2)
            expected = np.array_equal(otimes(X.T, X), np.eye(2))
            assert validate_isometry(X)[0] == expected


class TestPatterns:
    def test_disjoint_required(self):
        with pytest.raises(MaxAlgebraError):
            SupportPattern(3, ((0, 1), (1,)))
        with pytest.raises(MaxAlgebraError):
            SupportPattern(3, ((0,), ()))
        with pytest.raises(MaxAlgebraError):
            SupportPattern(2, ((0, 2),))

    def test_masks_and_canonical(self):
        p = SupportPattern(4, ((2, 3), (0,)))
        assert p.masks == (12, 1)
        assert p.canonical().blocks == ((0,), (2, 3))

    def test_isometry_shape_checks(self):
        with pytest.raises(ShapeError):
            MaxIsometry(SupportPattern(3, ((0, 1),)), ((1.0,),))

    def test_round_trip(self):
        X = np.array([[0.0, 1], [1, 0], [0.25, 0]])
        iso = MaxIsometry.from_matrix(X)
        assert np.array_equal(iso.matrix, X)
        assert iso.pattern.blocks == ((1, 2), (0,))


class TestOrthogonality:
    def test_block_example_graph(self):
        g = adjacency_graph(BLOCK_4)
        assert g.edges == frozenset()
        A = np.array([[1.0, 2, 0], [0, 1, 0], [0, 0, 1]])
        g = adjacency_graph(A)
        assert g.has_edge(1, 0) and not g.has_edge(0, 2)
        assert orthogonal(g, (0, 1), (2,))
        assert not orthogonal(g, (0,), (1,))

    def test_family_check(self):
        A = np.array([[1.0, 2, 0], [0, 1, 0], [0, 0, 1]])
        assert is_orthogonal_family(A, SupportPattern(3, ((0, 1), (2,))))
        assert not is_orthogonal_family(A, SupportPattern(3, ((0, 2), (1,))))


def _bruteforce(A, k):
    n = A.shape[0]
    g = adjacency_graph(A)
    out = set()
    for labels in itertools.product(range(-1, k), repeat=n):
        blocks = [tuple(i for i in range(n) if labels[i] == b) for b in range(k)]
        if all(blocks) and all(orthogonal(g, blocks[r], blocks[s])
                               for r in range(k) for s in range(r + 1, k)):
            out.add(tuple(sorted(blocks)))
    return out


class TestEnumeration:
    @given(square(max_n=5), st.integers(1, 3))
    def test_matches_bruteforce(self, A, k):
        if k > A.shape[0]:
            return
        got = [f.blocks for f in enumerate_support_families(A, k)]
        assert len(got) == len(set(got))
        assert set(got) == _bruteforce(A, k)

    def test_diagonal_counts(self):
        # zero off-diagonal: families of k disjoint nonempty subsets of 4 points
        got = list(enumerate_support_families(np.diag([1.0, 2, 3, 4]), 2))
        assert len(got) == 25  # S(5, 3)

    def test_limit(self):
        with pytest.raises(EnumerationLimitError) as exc:
            list(enumerate_support_families(np.eye(6), 2, limit=10))
        assert exc.value.limit == 10 and exc.value.flag == "--limit"

    def test_bad_k(self):
        with pytest.raises(MaxAlgebraError):
            enumerate_support_families(np.eye(2), 3)


class TestExactCertification:
    def test_block_witness(self):
        # columns (1, 0, sqrt(9/10), 0) and (0, 1, 0, sqrt(9/12)) give 9 I_2
        pat = SupportPattern(4, ((0, 2), (1, 3)))
        squares = ((1, Fraction(9, 10)), (1, Fraction(9, 12)))
        vals = tuple(tuple(float(np.sqrt(float(s))) for s in col) for col in squares)
        X = MaxIsometry(pat, vals, squares)
        assert certify_rank_k(BLOCK_4, X, 9.0)
        assert not certify_rank_k(BLOCK_4, X, 9.5)

    def test_float_squares_fallback(self):
        X = MaxIsometry(SupportPattern(2, ((0, 1),)), ((1.0, 0.5),))
        A = np.array([[1.0, 0], [0, 4]])
        assert certify_rank_k(A, X, 1.0)

    def test_rejects_non_isometry(self):
        X = MaxIsometry(SupportPattern(2, ((0, 1),)), ((0.5, 0.5),))
        assert not certify_rank_k(np.eye(2), X, 0.25)


class TestSampling:
    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))),
           st.integers(0, 2 ** 31))
    def test_sample_is_isometry(self, nk, seed):
        n, k = nk
        pat = SupportPattern(n, tuple((i,) for i in range(k - 1)) + (tuple(range(k - 1, n)),))
        X = sample_isometry(pat, seed)
        assert validate_isometry(X)[0]
        assert X == sample_isometry(pat, seed)
        assert np.array_equal(otimes(X.matrix.T, X.matrix), np.eye(k))

    def test_block_values_have_unit(self):
        vals = isometry.sample_block_values(np.random.default_rng(0), 3, 100)
        assert (vals.max(axis=1) == 1).all() and (vals > 0).all()
