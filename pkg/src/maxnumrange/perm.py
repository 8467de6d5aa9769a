"""Permutation-indexed ranges: max c- and C-numerical ranges.

The unitaries of max algebra are the permutation matrices, so every range
here is a finite set computed by walking all of S_n. Enumeration is refused
above ``MAX_PERM_N`` rather than approximated.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import as_square, as_vector, max_convex_hull
from .errors import EnumerationLimitError, ShapeError
from .intervals import Interval
from .joint import as_tuple

MAX_PERM_N = 10


@dataclass(frozen=True)
class PointSet:
    """Finite set of m-tuples, deduplicated and in lexicographic order."""

    points: tuple

    def __post_init__(self):
        pts = sorted(set(tuple(float(v) for v in p) for p in self.points))
        if len({len(p) for p in pts}) > 1:
            raise ShapeError("points of a PointSet must share one dimension")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def from_array(cls, arr) -> "PointSet":
        arr = np.unique(np.asarray(arr, dtype=np.float64), axis=0)
        return cls(tuple(map(tuple, arr)))

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        if np.isscalar(p):
            p = (p,)
        return tuple(float(v) for v in p) in set(self.points)

    @property
    def scalars(self) -> tuple:
        """Coordinates of a one-dimensional set, ascending."""
        if self.dim != 1:
            raise ShapeError(f"set has dimension {self.dim}, not 1")
        return tuple(p[0] for p in self.points)

    def issubset(self, other: "PointSet") -> bool:
        return set(self.points) <= set(other.points)

    __le__ = issubset

    def oplus(self, other: "PointSet") -> "PointSet":
        """``{p ⊕ q : p in self, q in other}`` with ⊕ the coordinatewise max."""
        return PointSet(tuple(tuple(max(a, b) for a, b in zip(p, q))
                              for p in self.points for q in other.points))

    def scale(self, alpha: float) -> "PointSet":
        return PointSet(tuple(tuple(alpha * v for v in p) for p in self.points))

    def to_lists(self) -> list:
        return [list(p) for p in self.points]


def product(*sets: PointSet) -> PointSet:
    """Cartesian product of one-dimensional sets."""
    return PointSet(tuple(itertools.product(*(s.scalars for s in sets))))


def _check_perm_n(n: int) -> None:
    if n > MAX_PERM_N:
        raise EnumerationLimitError(
            f"exact permutation ranges support n <= {MAX_PERM_N}, got n={n}",
            MAX_PERM_N, flag="n")


def _weights(c, n: int) -> np.ndarray:
    c = as_vector(c, "c")
    if c.size != n:
        raise ShapeError(f"weight vector has length {c.size}, matrices are {n}x{n}")
    return c


def joint_c_range(T, c) -> PointSet:
    """``{(⊕_i c_i (A_l)_{σ(i)σ(i)})_l : σ in S_n}``."""
    T = as_tuple(T)
    n = T.shape[1]
    c = _weights(c, n)
    _check_perm_n(n)
    D = np.diagonal(T, axis1=1, axis2=2)
    return PointSet.from_array(kernels.perm_c_points(D, c))


def joint_C_range(T, C) -> PointSet:
    """``{(tr_⊗(C ⊗ P^t ⊗ A_l ⊗ P))_l : P a permutation matrix}``."""
    T = as_tuple(T)
    n = T.shape[1]
    C = as_square(C, "C")
    if C.shape[0] != n:
        raise ShapeError(f"C is {C.shape[0]}x{C.shape[0]}, matrices are {n}x{n}")
    _check_perm_n(n)
    return PointSet.from_array(kernels.perm_C_points(T, C))


def c_range(A, c) -> PointSet:
    """Max c-numerical range of one matrix (a one-dimensional point set)."""
    return joint_c_range(as_square(A)[None], c)


def C_range(A, C) -> PointSet:
    """Max C-numerical range of one matrix."""
    return joint_C_range(as_square(A)[None], C)


def c_range_hull(A, c) -> Interval:
    """Max-convex hull of the c-numerical range."""
    return max_convex_hull(c_range(A, c).scalars)
