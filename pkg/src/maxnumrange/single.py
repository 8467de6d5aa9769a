"""Numerical ranges of a single nonnegative matrix.

``lambda_k`` is exact. A value ``λ`` lies in the rank-k range iff some
A-orthogonal family ``(T_1, ..., T_k)`` has ``λ`` in every block's
achievable set, where the achievable set of a single column supported
exactly on ``T`` is ``[m, M]`` with ``m`` the least diagonal entry and ``M``
the largest entry of ``A`` on ``T x T`` (lower end open when ``m = 0 < M``,
and ``{0}`` when ``M = 0``).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .core import as_square, as_vector, outer, sup_norm
from .errors import EnumerationLimitError, MaxAlgebraError, ShapeError
from .intervals import Interval, IntervalSet
from .isometry import (DEFAULT_LIMIT, MaxIsometry, SupportPattern,
                       adjacency_graph, enumerate_support_families)

MAX_EXACT_N = 16

BOTTOM = -math.inf
"""Radius of an empty range."""


def _check_k(n: int, k: int) -> int:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n:
        raise MaxAlgebraError(f"k must be an integer in 1..{n}, got {k!r}")
    return int(k)


def wmax(A) -> Interval:
    """``[min_i a_ii, max_ij a_ij]``."""
    A = as_square(A)
    return Interval(float(np.diagonal(A).min()), float(A.max()))


def wmax_k(A, k: int) -> Interval:
    """Max k-numerical range.

    For ``k < n`` the lower end is the k-th smallest diagonal entry (the
    least possible max over k diagonal entries) and the upper end the
    largest entry; for ``k = n`` the range is the single max trace.
    """
    A = as_square(A)
    n = A.shape[0]
    k = _check_k(n, k)
    d = np.sort(np.diagonal(A))
    if k == n:
        return Interval.point(float(d[-1]))
    return Interval(float(d[k - 1]), float(A.max()))


def achievable_diag_set(A, T: Iterable[int]) -> Interval:
    """Values of ``x^t ⊗ A ⊗ x`` over columns supported exactly on ``T`` with max 1."""
    A = as_square(A)
    T = sorted(set(int(i) for i in T))
    if not T:
        raise MaxAlgebraError("support must be nonempty")
    if T[0] < 0 or T[-1] >= A.shape[0]:
        raise MaxAlgebraError(f"support {T} outside 0..{A.shape[0] - 1}")
    sub = A[np.ix_(T, T)]
    m = float(np.diagonal(sub).min())
    M = float(sub.max())
    if M == 0:
        return Interval.point(0.0)
    return Interval(m, M, lo_closed=m > 0)


def _value_tables(A):
    """Encode each support's achievable set as (lower key, upper index).

    Values are indices into ``V`` (sorted distinct entries of ``A``); the
    lower key is ``2 * index + open`` so that an open end sorts above a
    closed one at the same value.
    """
    mindiag, maxsub = kernels.subset_tables(A)
    V = np.unique(A)
    zero = int(np.searchsorted(V, 0.0))
    md = np.where(np.isfinite(mindiag), mindiag, 0.0)
    lo_idx = np.searchsorted(V, md)
    hi_idx = np.searchsorted(V, maxsub)
    lo_key = np.where(maxsub == 0, 2 * zero, np.where(md == 0, 2 * zero + 1, 2 * lo_idx))
    lo_key[0] = 0
    hi_idx[0] = len(V) - 1
    return V, lo_key.astype(np.int64), hi_idx.astype(np.int64)


def lambda_k(A, k: int, limit: int = DEFAULT_LIMIT) -> IntervalSet:
    """Exact max rank-k numerical range as a normalized union of intervals."""
    A = as_square(A)
    n = A.shape[0]
    k = _check_k(n, k)
    if n > MAX_EXACT_N:
        raise EnumerationLimitError(
            f"exact rank-k range supports n <= {MAX_EXACT_N}, got n={n}", MAX_EXACT_N, flag="n")
    V, lo_key, hi_idx = _value_tables(A)
    adj = np.array(adjacency_graph(A).masks, dtype=np.int64)
    table, count, overflow = kernels.family_table(
        adj, lo_key, hi_idx, n, k, int(limit), 2 * len(V), len(V))
    if overflow:
        raise EnumerationLimitError(
            f"more than {limit} support families for n={n}, k={k}", limit)
    pieces = []
    for key, hi in zip(*np.nonzero(table)):
        lo = int(key) >> 1
        pieces.append(Interval(float(V[lo]), float(V[hi]), lo_closed=not (int(key) & 1)))
    return IntervalSet(pieces)


def _family_range(A, pattern: SupportPattern) -> Optional[Interval]:
    acc: Optional[Interval] = None
    for b in pattern.blocks:
        iv = achievable_diag_set(A, b)
        acc = iv if acc is None else acc.intersect(iv)
        if acc is None:
            return None
    return acc


def _column_witness(A, T: Sequence[int], lam: float):
    """A column on a subset of ``T`` with ``x^t ⊗ A ⊗ x = lam`` exactly.

    Returns ``(rows, values, squares)``. Uses ``e_p`` when ``lam`` is a
    diagonal entry on ``T``; otherwise keeps a min-diagonal index ``p`` at 1,
    adds a maximizing pair ``(i, j)`` scaled by ``t``, and takes the least
    ``t`` with ``max(a_pp, t L, t^2 Q) = lam``. ``t^2`` is rational in the
    entries, so the squares are exact.
    """
    T = list(T)
    for p in T:
        if A[p, p] == lam:
            return (p,), (1.0,), (Fraction(1),)
    p = min(T, key=lambda i: (A[i, i], i))
    sub = A[np.ix_(T, T)]
    i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
    rest = sorted({T[i], T[j]} - {p})
    L = max(max(A[p, q], A[q, p]) for q in rest)
    Q = max(A[q, r] for q in rest for r in rest)
    target = Fraction(lam)
    options = []
    if L > 0:
        options.append((target / Fraction(L)) ** 2)
    if Q > 0:
        options.append(target / Fraction(Q))
    t2 = min(min(options), Fraction(1))
    scaled = min(1.0, math.sqrt(t2))
    rows = tuple(sorted([p] + rest))
    values = tuple(1.0 if r == p else scaled for r in rows)
    squares = tuple(Fraction(1) if r == p else t2 for r in rows)
    return rows, values, squares


def witness_isometry(A, k: int, lam: float, limit: int = DEFAULT_LIMIT) -> Optional[MaxIsometry]:
    """An isometry with ``X^t ⊗ A ⊗ X = lam I_k``, or None when ``lam`` is outside the range.

    Float entries may be rounded square roots; ``X.squares`` holds the exact
    squared entries (see :func:`maxnumrange.isometry.certify_rank_k`).
    """
    A = as_square(A)
    n = A.shape[0]
    k = _check_k(n, k)
    lam = float(lam)
    if not (math.isfinite(lam) and lam >= 0):
        return None
    for family in enumerate_support_families(A, k, limit):
        rng = _family_range(A, family)
        if rng is None or lam not in rng:
            continue
        cols = [_column_witness(A, b, lam) for b in family.blocks]
        pattern = SupportPattern(n, tuple(c[0] for c in cols))
        return MaxIsometry(pattern, tuple(c[1] for c in cols), tuple(c[2] for c in cols))
    return None


def lambda_radius(A, k: int, limit: int = DEFAULT_LIMIT) -> float:
    """Supremum of the rank-k range; ``-inf`` when the range is empty."""
    rng = lambda_k(A, k, limit)
    return BOTTOM if rng.is_empty() else rng.sup


def rank_one_sum_bound(factors, k: int):
    """Cover and radius bound for ``Z = ⊕_j x_j ⊗ y_j^t``.

    Returns ``(⋃_j W_max(x_j y_j^t), ⊕_j ||x_j y_j^t||)``; the rank-k
    range of ``Z`` lies in the cover and its radius is at most the bound.
    """
    factors = list(factors)
    if not factors:
        raise MaxAlgebraError("at least one rank-one factor is required")
    n = None
    pieces = []
    bound = 0.0
    for x, y in factors:
        x = as_vector(x, "x")
        y = as_vector(y, "y")
        if x.size != y.size or (n is not None and x.size != n):
            raise ShapeError("all factor vectors must share one length")
        n = x.size
        R = outer(x, y)
        pieces.append(wmax(R))
        bound = max(bound, sup_norm(R))
    _check_k(n, k)
    return IntervalSet(pieces), bound
