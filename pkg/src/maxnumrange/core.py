"""Max-times semiring arithmetic on nonnegative scalars, vectors and matrices.

Matrices are dense ``float64`` numpy arrays. Every public routine validates
its inputs with :func:`as_nonneg`; the semiring operations themselves
(max and ordinary multiplication) are exact on representable inputs, so
algebraic identities can be compared with ``==``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MaxAlgebraError, NegativeEntryError, ShapeError
from .intervals import Interval, IntervalSet


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance for oracle-vs-analytic comparisons.

    Structural zeros are always compared exactly.
    """

    rel_eq: float = 1e-12

    def __post_init__(self):
        if not self.rel_eq > 0:
            raise MaxAlgebraError("rel_eq must be positive")

    def close(self, a: float, b: float) -> bool:
        if a == b:
            return True
        if a == 0 or b == 0:
            return False
        return abs(a - b) <= self.rel_eq * max(abs(a), abs(b))


DEFAULT_TOLERANCE = Tolerance()


def as_nonneg(A, name: str = "matrix", ndim: int | None = 2) -> np.ndarray:
    """Return ``A`` as a float64 array after checking it is finite and >= 0."""
    arr = np.array(A, dtype=np.float64)
    if ndim is not None and arr.ndim != ndim:
        raise ShapeError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ShapeError(f"{name} must be nonempty")
    bad = ~np.isfinite(arr) | (arr < 0)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise NegativeEntryError(
            f"{name} entry {idx} = {float(arr[idx])!r} is not a nonnegative finite number", idx)
    arr.setflags(write=False)
    return arr


def as_square(A, name: str = "matrix") -> np.ndarray:
    arr = as_nonneg(A, name)
    if arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {arr.shape}")
    return arr


def as_vector(x, name: str = "vector") -> np.ndarray:
    return as_nonneg(x, name, ndim=1)


def oplus(A, B) -> np.ndarray:
    """Entrywise maximum."""
    A = as_nonneg(A, "A", ndim=None)
    B = as_nonneg(B, "B", ndim=None)
    if A.shape != B.shape:
        raise ShapeError(f"oplus needs equal shapes, got {A.shape} and {B.shape}")
    return np.maximum(A, B)


def otimes(A, B) -> np.ndarray:
    """Max-times product ``(A ⊗ B)_ij = max_k a_ik b_kj``.

    A 1-D right operand is treated as a column vector and a 1-D result is
    returned.
    """
    A = as_nonneg(A, "A", ndim=None)
    B = as_nonneg(B, "B", ndim=None)
    if A.ndim != 2 or B.ndim not in (1, 2):
        raise ShapeError(f"otimes expects a matrix times a matrix or vector, got {A.shape}, {B.shape}")
    vec = B.ndim == 1
    B2 = B[:, None] if vec else B
    if A.shape[1] != B2.shape[0]:
        raise ShapeError(f"inner dimensions differ: {A.shape} ⊗ {B.shape}")
    out = (A[:, :, None] * B2[None, :, :]).max(axis=1)
    return out[:, 0] if vec else out


def outer(x, y) -> np.ndarray:
    """``x ⊗ y^t`` for vectors (a rank-one matrix)."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    return np.multiply.outer(x, y)


def identity(n: int) -> np.ndarray:
    return np.eye(n)


def matrix_power(A, m: int) -> np.ndarray:
    """``A`` raised to the ``m``-th max-times power, ``m >= 1``."""
    A = as_square(A)
    if m < 1:
        raise MaxAlgebraError("power must be a positive integer")
    out = A
    for _ in range(m - 1):
        out = otimes(out, A)
    return out


def max_trace(A) -> float:
    """``tr_⊗(A)``: the largest diagonal entry."""
    A = as_square(A)
    return float(np.diagonal(A).max())


def sup_norm(A) -> float:
    """Largest entry; works for vectors and matrices alike."""
    A = as_nonneg(A, ndim=None)
    return float(A.max())


def check_permutation(p, n: int | None = None) -> tuple:
    p = tuple(int(i) for i in p)
    if sorted(p) != list(range(len(p))):
        raise MaxAlgebraError(f"{p} is not a permutation of 0..{len(p) - 1}")
    if n is not None and len(p) != n:
        raise ShapeError(f"permutation has {len(p)} elements, expected {n}")
    return p


def permutation_matrix(p) -> np.ndarray:
    """The unitary ``U`` whose i-th column is ``e_{p[i]}``."""
    p = check_permutation(p)
    U = np.zeros((len(p), len(p)))
    U[list(p), list(range(len(p)))] = 1.0
    return U


def conjugate_by_permutation(A, p) -> np.ndarray:
    """``U^t ⊗ A ⊗ U``; entry (i, j) equals ``a[p[i], p[j]]``."""
    A = as_square(A)
    p = check_permutation(p, A.shape[0])
    return A[np.ix_(p, p)]


def max_convex_hull(S) -> Interval:
    """Max-convex hull of a compact subset of R+: ``[inf S, sup S]``.

    ``S`` may be an :class:`IntervalSet`, an :class:`Interval` or a finite
    collection of reals.
    """
    if isinstance(S, Interval):
        return Interval(S.lo, S.hi)
    if isinstance(S, IntervalSet):
        if S.is_empty():
            raise MaxAlgebraError("hull of an empty set")
        return S.hull()
    vals = np.asarray(list(S), dtype=np.float64).ravel()
    if vals.size == 0:
        raise MaxAlgebraError("hull of an empty set")
    vals = as_nonneg(vals, "point set", ndim=1)
    return Interval(float(vals.min()), float(vals.max()))


def max_eigenvalue(A) -> float:
    """Largest cycle geometric mean of ``A`` (the principal max eigenvalue).

    Karp's maximum cycle mean on log-weights; zero entries are absent arcs.
    Returns 0 when the digraph of ``A`` has no cycle. The log round trip
    costs a few ulps, so when a loop or a 2-cycle attains the optimum (to
    within ``DEFAULT_TOLERANCE``) its directly computed value is returned.
    """
    A = as_square(A)
    n = A.shape[0]
    with np.errstate(divide="ignore"):
        W = np.where(A > 0, np.log(np.where(A > 0, A, 1.0)), -np.inf)
    D = np.full((n + 1, n), -np.inf)
    D[0] = 0.0
    for step in range(n):
        D[step + 1] = (D[step][:, None] + W).max(axis=0)
    best = -np.inf
    for v in range(n):
        if D[n, v] == -np.inf:
            continue
        worst = np.inf
        for step in range(n):
            if D[step, v] > -np.inf:
                worst = min(worst, (D[n, v] - D[step, v]) / (n - step))
        best = max(best, worst)
    if best == -np.inf:
        return 0.0
    value = float(math.exp(best))
    with np.errstate(over="ignore"):
        pair = A * A.T
    # where a*b overflows, scale both by 2^-600 (exact) before the root
    scaled = np.sqrt(np.ldexp(A, -600) * np.ldexp(A.T, -600))
    pair = np.where(np.isfinite(pair), np.sqrt(pair), np.ldexp(scaled, 600))
    np.fill_diagonal(pair, 0.0)
    short = max(float(np.diagonal(A).max()), float(pair.max()))
    if DEFAULT_TOLERANCE.close(value, short):
        return short
    return value


def build_banded_toeplitz(diags: Sequence[float], n: int) -> np.ndarray:
    """Toeplitz matrix with zero corners from bands ``(a_{n-2}, ..., a_0, ..., a_{-(n-2)})``.

    Entry ``(i, j)`` is ``a_{i-j}``; the offsets ``±(n-1)`` are the two
    zero corners. Every supplied band must be positive.
    """
    if n < 3:
        raise MaxAlgebraError(f"banded Toeplitz needs n >= 3, got {n}")
    bands = as_vector(diags, "bands")
    if bands.size != 2 * n - 3:
        raise ShapeError(f"expected {2 * n - 3} band values for n={n}, got {bands.size}")
    if (bands == 0).any():
        raise MaxAlgebraError("every band value must be nonzero")
    A = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            off = i - j
            if abs(off) <= n - 2:
                A[i, j] = bands[(n - 2) - off]
    return A


def block_diag(*blocks) -> np.ndarray:
    """Block-diagonal matrix with zero off-diagonal blocks."""
    mats = [as_nonneg(b, "block") for b in blocks]
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = np.zeros((rows, cols))
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out
