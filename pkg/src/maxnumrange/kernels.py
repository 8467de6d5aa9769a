"""Hot inner loops, compiled with numba when available.

Set ``MAXNUMRANGE_DISABLE_NUMBA=1`` to run the pure numpy / Python
fallbacks instead. Both paths stay importable as ``numba_impl`` and
``numpy_impl`` so the benchmark can time them side by side; the
module-level names dispatch according to the flag.

Kernels:

* ``subset_tables``: min diagonal and max entry of every principal
  submatrix, indexed by bitmask.
* ``family_table``: walks every orthogonal support family and marks which
  (lower end, upper end) pairs of the per-family intersection occur.
* ``perm_c_points`` / ``perm_C_points``: one point per permutation of S_n.
* ``column_values``: ``max_{i,l} x_i a_il x_l`` for a batch of columns.
"""
from __future__ import annotations

import itertools
import math
import os
from types import SimpleNamespace

import numpy as np

_FLAG = "MAXNUMRANGE_DISABLE_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

NUMBA_ENABLED = HAVE_NUMBA and _numba_requested()


def _njit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ----------------------------------------------------------------------
# subset tables


def _subset_tables_loop(A):
    n = A.shape[0]
    size = 1 << n
    mindiag = np.empty(size)
    maxsub = np.empty(size)
    mindiag[0] = np.inf
    maxsub[0] = 0.0
    for mask in range(1, size):
        low = 0
        while not (mask >> low) & 1:
            low += 1
        rest = mask & (mask - 1)
        d = A[low, low]
        m = mindiag[rest]
        mindiag[mask] = d if d < m else m
        best = maxsub[rest]
        if d > best:
            best = d
        for j in range(n):
            if (rest >> j) & 1:
                if A[low, j] > best:
                    best = A[low, j]
                if A[j, low] > best:
                    best = A[j, low]
        maxsub[mask] = best
    return mindiag, maxsub


def _subset_tables_numpy(A):
    n = A.shape[0]
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    mindiag = np.where(bits, np.diagonal(A)[None, :], np.inf).min(axis=1)
    pair = bits[:, :, None] & bits[:, None, :]
    maxsub = np.where(pair, A[None, :, :], 0.0).max(axis=(1, 2))
    return mindiag, maxsub


# ----------------------------------------------------------------------
# support family walk


def _family_table_loop(adj, lo_key, hi_idx, n, k, limit, nkeys, nvals):
    """Enumerate families of k disjoint, pairwise orthogonal supports.

    Element ``v`` is either unused, added to an existing block, or opens a
    new block; blocks are therefore ordered by their smallest element and
    each unordered family is visited once. Returns ``(table, count,
    overflow)``; ``overflow`` is set as soon as ``count`` exceeds ``limit``.
    """
    table = np.zeros((nkeys, nvals), dtype=np.bool_)
    choice = np.full(n + 1, -2, dtype=np.int64)
    blk = np.zeros(k, dtype=np.int64)
    allm = 0
    nb = 0
    count = 0
    v = 0
    while v >= 0:
        if v == n:
            if nb == k:
                count += 1
                if count > limit:
                    return table, count, True
                key = -1
                hi = nvals
                for b in range(k):
                    kb = lo_key[blk[b]]
                    hb = hi_idx[blk[b]]
                    if kb > key:
                        key = kb
                    if hb < hi:
                        hi = hb
                lo = key >> 1
                if lo < hi or (lo == hi and (key & 1) == 0):
                    table[key, hi] = True
            v -= 1
            continue
        c = choice[v]
        bit = 1 << v
        if c >= 0:
            blk[c] &= ~bit
            allm &= ~bit
            if blk[c] == 0:
                nb -= 1
        c += 1
        remaining = n - v - 1
        placed = False
        top = nb if nb < k else nb - 1
        while c <= top:
            if c == -1:
                ok = remaining >= k - nb
            elif c < nb:
                ok = remaining >= k - nb and (adj[v] & (allm & ~blk[c])) == 0
            else:
                ok = remaining >= k - nb - 1 and (adj[v] & allm) == 0
            if ok:
                placed = True
                break
            c += 1
        if placed:
            choice[v] = c
            if c >= 0:
                if c == nb:
                    nb += 1
                blk[c] |= bit
                allm |= bit
            v += 1
            choice[v] = -2
        else:
            choice[v] = -2
            v -= 1
    return table, count, False


# ----------------------------------------------------------------------
# permutation ranges


def _next_permutation(p):
    n = p.shape[0]
    i = n - 2
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while p[j] <= p[i]:
        j -= 1
    p[i], p[j] = p[j], p[i]
    lo, hi = i + 1, n - 1
    while lo < hi:
        p[lo], p[hi] = p[hi], p[lo]
        lo += 1
        hi -= 1
    return True


def _perm_c_points_loop(D, c):
    m, n = D.shape
    total = 1
    for i in range(2, n + 1):
        total *= i
    out = np.empty((total, m))
    p = np.arange(n)
    r = 0
    while True:
        for l in range(m):
            best = 0.0
            for i in range(n):
                val = c[i] * D[l, p[i]]
                if val > best:
                    best = val
            out[r, l] = best
        r += 1
        if not _next_permutation_jit(p):
            break
    return out


def _perm_C_points_loop(As, C):
    m, n, _ = As.shape
    total = 1
    for i in range(2, n + 1):
        total *= i
    out = np.empty((total, m))
    p = np.arange(n)
    r = 0
    while True:
        for l in range(m):
            best = 0.0
            for i in range(n):
                for j in range(n):
                    val = C[i, j] * As[l, p[j], p[i]]
                    if val > best:
                        best = val
            out[r, l] = best
        r += 1
        if not _next_permutation_jit(p):
            break
    return out


_CHUNK = 1 << 16


def _perm_chunks(n):
    it = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _perm_c_points_numpy(D, c):
    m, n = D.shape
    out = np.empty((math.factorial(n), m))
    r = 0
    for P in _perm_chunks(n):
        # D[:, P] has shape (m, chunk, n)
        vals = (D[:, P] * c[None, None, :]).max(axis=2)
        out[r:r + P.shape[0]] = vals.T
        r += P.shape[0]
    return out


def _perm_C_points_numpy(As, C):
    m, n, _ = As.shape
    out = np.empty((math.factorial(n), m))
    r = 0
    for P in _perm_chunks(n):
        # B[l, s, j, i] = A_l[p[j], p[i]]
        B = As[:, P[:, :, None], P[:, None, :]]
        vals = (C.T[None, None, :, :] * B).max(axis=(2, 3))
        out[r:r + P.shape[0]] = vals.T
        r += P.shape[0]
    return out


# ----------------------------------------------------------------------
# batched column evaluation


def _column_values_loop(Asub, X):
    m, s, _ = Asub.shape
    N = X.shape[0]
    out = np.zeros((N, m))
    for t in range(N):
        for l in range(m):
            best = 0.0
            for i in range(s):
                xi = X[t, i]
                if xi == 0.0:
                    continue
                for j in range(s):
                    val = xi * (Asub[l, i, j] * X[t, j])
                    if val > best:
                        best = val
            out[t, l] = best
    return out


def _column_values_numpy(Asub, X):
    # product order x_i * (a_il * x_l) matches X^t ⊗ (A ⊗ X)
    inner = Asub[None, :, :, :] * X[:, None, None, :]
    return (X[:, None, :, None] * inner).max(axis=(2, 3))


# ----------------------------------------------------------------------
# dispatch

if HAVE_NUMBA:
    _next_permutation_jit = _njit(_next_permutation)
    _jit_subset_tables = _njit(_subset_tables_loop)
    _jit_family_table = _njit(_family_table_loop)
    _jit_perm_c = _njit(_perm_c_points_loop)
    _jit_perm_C = _njit(_perm_C_points_loop)
    _jit_columns = _njit(_column_values_loop)
else:  # pragma: no cover
    _next_permutation_jit = _next_permutation
    _jit_subset_tables = _subset_tables_numpy
    _jit_family_table = _family_table_loop
    _jit_perm_c = _perm_c_points_numpy
    _jit_perm_C = _perm_C_points_numpy
    _jit_columns = _column_values_numpy


def _as_f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def _family_numba(adj, lo_key, hi_idx, n, k, limit, nkeys, nvals):
    return _jit_family_table(np.ascontiguousarray(adj, dtype=np.int64),
                             np.ascontiguousarray(lo_key, dtype=np.int64),
                             np.ascontiguousarray(hi_idx, dtype=np.int64),
                             n, k, limit, nkeys, nvals)


def _family_python(adj, lo_key, hi_idx, n, k, limit, nkeys, nvals):
    # plain Python ints avoid numpy scalar overhead in the tight loop
    return _family_table_loop([int(a) for a in adj], [int(x) for x in lo_key],
                              [int(x) for x in hi_idx], n, k, limit, nkeys, nvals)


numba_impl = SimpleNamespace(
    subset_tables=lambda A: _jit_subset_tables(_as_f64(A)),
    family_table=_family_numba,
    perm_c_points=lambda D, c: _jit_perm_c(_as_f64(D), _as_f64(c)),
    perm_C_points=lambda As, C: _jit_perm_C(_as_f64(As), _as_f64(C)),
    column_values=lambda Asub, X: _jit_columns(_as_f64(Asub), _as_f64(X)),
)

numpy_impl = SimpleNamespace(
    subset_tables=lambda A: _subset_tables_numpy(_as_f64(A)),
    family_table=_family_python,
    perm_c_points=lambda D, c: _perm_c_points_numpy(_as_f64(D), _as_f64(c)),
    perm_C_points=lambda As, C: _perm_C_points_numpy(_as_f64(As), _as_f64(C)),
    column_values=lambda Asub, X: _column_values_numpy(_as_f64(Asub), _as_f64(X)),
)

active = numba_impl if NUMBA_ENABLED else numpy_impl

subset_tables = active.subset_tables
family_table = active.family_table
perm_c_points = active.perm_c_points
perm_C_points = active.perm_C_points
column_values = active.column_values
