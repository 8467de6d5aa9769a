"""Joint k-numerical ranges of m-tuples of nonnegative matrices.

Only the outer bounding box and the ``k = n`` point are exact. For
``1 < k < n`` and ``m >= 2`` the range has no closed form, so
:func:`joint_sample_cloud` returns a sampled inner approximation.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import as_nonneg, max_trace, otimes, sup_norm
from .errors import MaxAlgebraError, ShapeError
from .isometry import MaxIsometry, SupportPattern, sample_block_values
from .single import _check_k, wmax_k


def as_tuple(mats) -> np.ndarray:
    """Stack ``m >= 1`` square matrices of a common size into an (m, n, n) array."""
    arr = as_nonneg(mats, "matrix tuple", ndim=None)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ShapeError(f"expected m square matrices of equal size, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class BoxRegion:
    intervals: tuple

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def contains(self, point) -> bool:
        return len(point) == self.dim and all(x in iv for x, iv in zip(point, self.intervals))

    __contains__ = contains

    def to_dicts(self) -> list:
        return [iv.to_dict() for iv in self.intervals]


@dataclass(frozen=True)
class PointCloud:
    """Sampled points of a joint range (an inner approximation)."""

    points: np.ndarray
    seed: int
    k: int
    empty: bool = False

    @property
    def count(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(self.dim)])
        for row in self.points:
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def _as_matrix(X) -> np.ndarray:
    if isinstance(X, MaxIsometry):
        return X.matrix
    return np.asarray(X, dtype=np.float64)


def joint_eval(T, X) -> tuple:
    """``(tr_⊗(X^t ⊗ A_1 ⊗ X), ..., tr_⊗(X^t ⊗ A_m ⊗ X))``."""
    T = as_tuple(T)
    Xm = _as_matrix(X)
    if Xm.ndim != 2 or Xm.shape[0] != T.shape[1]:
        raise ShapeError(f"isometry has shape {Xm.shape}, matrices are {T.shape[1]}x{T.shape[1]}")
    return tuple(max_trace(otimes(Xm.T, otimes(A, Xm))) for A in T)


def joint_bounding_box(T, k: int) -> BoxRegion:
    """Product of the per-matrix ranges ``W_max^k(A_l)``; contains the joint range."""
    T = as_tuple(T)
    k = _check_k(T.shape[1], k)
    return BoxRegion(tuple(wmax_k(A, k) for A in T))


def joint_exact_full(T) -> tuple:
    """The joint range for ``k = n``: the single tuple of max traces."""
    T = as_tuple(T)
    return tuple(max_trace(A) for A in T)


def _stirling_table(n: int, k: int) -> list:
    S = [[0] * (k + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, min(i, k) + 1):
            S[i][j] = S[i - 1][j - 1] + j * S[i - 1][j]
    return S


def _random_family(rng: np.random.Generator, n: int, k: int, S: list) -> SupportPattern:
    """Uniform family of k disjoint nonempty supports in ``range(n)``.

    Families correspond to partitions of ``n + 1`` points into ``k + 1``
    blocks (the block holding the extra point collects the unused rows).
    The Stirling recursion decides, from the top point down, whether a point
    opens a block or joins one of the blocks of the points below it; the
    joined block is identified by its rank in order of smallest element.
    """
    decision = [0] * (n + 1)
    j = k + 1
    for i in range(n + 1, 0, -1):
        if rng.random() * S[i][j] < S[i - 1][j - 1]:
            decision[i - 1] = 0
            j -= 1
        else:
            decision[i - 1] = int(rng.integers(1, j + 1))
    leaders: list = []
    groups: dict = {}
    for i in range(n + 1):
        if decision[i] == 0:
            leaders.append(i)
            groups[i] = [i]
        else:
            groups[leaders[decision[i] - 1]].append(i)
    blocks = sorted(g for g in groups.values() if n not in g)
    return SupportPattern(n, tuple(tuple(b) for b in blocks))


def _cloud_points(T, patterns, rng) -> np.ndarray:
    """Evaluate a random isometry on each pattern; patterns are grouped for batching."""
    m = T.shape[0]
    out = np.empty((len(patterns), m))
    groups: dict = {}
    for idx, pat in enumerate(patterns):
        groups.setdefault(pat.blocks, []).append(idx)
    for blocks in sorted(groups):
        rows = np.array(groups[blocks])
        acc = np.zeros((rows.size, m))
        for b in blocks:
            X = sample_block_values(rng, len(b), rows.size)
            sub = T[:, b][:, :, b]
            acc = np.maximum(acc, kernels.column_values(sub, X))
        out[rows] = acc
    return out


def joint_sample_cloud(T, k: int, samples: int, seed: int) -> PointCloud:
    """Sampled points of ``W_max^k`` of the tuple: a sound inner approximation.

    Each sample draws a support family uniformly among all families of k
    disjoint nonempty supports, fills it with a random isometry and records
    the tuple of max traces. Deterministic in ``seed``.
    """
    T = as_tuple(T)
    n = T.shape[1]
    k = _check_k(n, k)
    if samples < 1:
        raise MaxAlgebraError("samples must be positive")
    rng = np.random.default_rng(seed)
    S = _stirling_table(n + 1, k + 1)
    patterns = [_random_family(rng, n, k, S) for _ in range(samples)]
    return PointCloud(_cloud_points(T, patterns, rng), int(seed), k)


def lipschitz_certificate(T, X, Y) -> tuple:
    """``(||f(X) - f(Y)||, ||⊕ A_l|| (||X|| + ||Y||) ||X - Y||)``; the first never exceeds the second."""
    T = as_tuple(T)
    Xm, Ym = _as_matrix(X), _as_matrix(Y)
    if Xm.shape != Ym.shape:
        raise ShapeError(f"isometries differ in shape: {Xm.shape} vs {Ym.shape}")
    fx = np.array(joint_eval(T, Xm))
    fy = np.array(joint_eval(T, Ym))
    lhs = float(np.abs(fx - fy).max())
    rhs = sup_norm(T.max(axis=0)) * (sup_norm(Xm) + sup_norm(Ym)) * float(np.abs(Xm - Ym).max())
    return lhs, rhs


def drop_dominated_column(T, X) -> MaxIsometry:
    """Remove one column of ``X`` without changing the joint trace tuple.

    When ``X`` has more columns than the tuple has matrices, some column is
    dominated in every coordinate by the others and can be dropped.
    """
    T = as_tuple(T)
    if not isinstance(X, MaxIsometry):
        X = MaxIsometry.from_matrix(X)
    m = T.shape[0]
    if X.k <= m:
        raise MaxAlgebraError(f"need more than {m} columns to drop one, got {X.k}")
    Xm = X.matrix
    # per column, the m-tuple of its own diagonal values
    vals = np.array([[float(otimes(Xm[:, [j]].T, otimes(A, Xm[:, [j]]))[0, 0]) for A in T]
                     for j in range(X.k)])
    for s in range(X.k):
        others = np.delete(vals, s, axis=0).max(axis=0)
        if (vals[s] <= others).all():
            keep = [j for j in range(X.k) if j != s]
            pattern = SupportPattern(X.n, tuple(X.pattern.blocks[j] for j in keep))
            return MaxIsometry(pattern, tuple(X.values[j] for j in keep))
    raise AssertionError("no dominated column found")  # unreachable for k > m


def pad_isometry(X, rows, n: int) -> MaxIsometry:
    """Embed an isometry on the principal rows ``rows`` into ``n`` rows with zeros."""
    if not isinstance(X, MaxIsometry):
        X = MaxIsometry.from_matrix(X)
    rows = list(rows)
    blocks = tuple(tuple(rows[i] for i in b) for b in X.pattern.blocks)
    order = [np.argsort(b) for b in blocks]
    blocks = tuple(tuple(np.array(b)[o]) for b, o in zip(blocks, order))
    values = tuple(tuple(np.array(v)[o]) for v, o in zip(X.values, order))
    return MaxIsometry(SupportPattern(n, blocks), values)
