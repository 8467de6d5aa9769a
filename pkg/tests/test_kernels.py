import json
import os
import subprocess
import sys

import numpy as np
import pytest

from maxnumrange import kernels, oracle, single
from maxnumrange.isometry import adjacency_graph

IMPLS = [kernels.numba_impl, kernels.numpy_impl]


@pytest.fixture(params=range(20))
def matrix(request):
    rng = np.random.default_rng(request.param)
    return oracle.random_rational_matrix(rng, int(rng.integers(1, 7)), zero_p=0.5)


def _family_args(A, k, limit=10 ** 7):
    V, lo_key, hi_idx = single._value_tables(A)
    adj = np.array(adjacency_graph(A).masks, dtype=np.int64)
    return adj, lo_key, hi_idx, A.shape[0], k, limit, 2 * len(V), len(V)


class TestEquivalence:
    def test_subset_tables(self, matrix):
        a, b = (impl.subset_tables(matrix) for impl in IMPLS)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_family_table(self, matrix):
        for k in range(1, matrix.shape[0] + 1):
            (ta, ca, oa), (tb, cb, ob) = (impl.family_table(*_family_args(matrix, k)) for impl in IMPLS)
            assert np.array_equal(ta, tb) and ca == cb and oa == ob

    def test_family_overflow(self):
        args = _family_args(np.eye(6), 3, limit=7)
        for impl in IMPLS:
            assert impl.family_table(*args)[2]

    def test_perm_points(self, matrix):
        rng = np.random.default_rng(matrix.shape[0])
        n = matrix.shape[0]
        T = np.stack([matrix, matrix.T])
        c = rng.integers(0, 5, n).astype(float)
        C = rng.integers(0, 5, (n, n)).astype(float)
        D = np.diagonal(T, axis1=1, axis2=2)
        assert np.array_equal(*(impl.perm_c_points(D, c) for impl in IMPLS))
        assert np.array_equal(*(impl.perm_C_points(T, C) for impl in IMPLS))

    def test_column_values(self, matrix):
        rng = np.random.default_rng(1)
        s = matrix.shape[0]
        X = 1.0 - rng.random((50, s))
        T = np.stack([matrix, matrix.T, 2 * matrix])
        assert np.array_equal(*(impl.column_values(T, X) for impl in IMPLS))


SCRIPT = """
import json, numpy as np
from maxnumrange import kernels, lambda_k, joint_C_range
A = np.array([[0.0, 5, 0, 1], [5, 0, 0, 0], [0, 0, 3, 2], [1, 0, 2, 4]])
print(json.dumps({"numba": kernels.NUMBA_ENABLED,
                  "lam": [lambda_k(A, k).to_dicts() for k in (1, 2, 3)],
                  "C": joint_C_range(A, A).to_lists()}))
"""


def _run(flag):
    env = dict(os.environ)
    env.pop("MAXNUMRANGE_DISABLE_NUMBA", None)
    if flag is not None:
        env["MAXNUMRANGE_DISABLE_NUMBA"] = flag
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(out.stdout)


def test_env_flag_selects_fallback_with_identical_results():
    fast, slow = _run(None), _run("1")
    assert fast["numba"] is True and slow["numba"] is False
    assert fast["lam"] == slow["lam"] and fast["C"] == slow["C"]
