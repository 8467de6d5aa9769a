"""Intervals and finite unions of intervals in the nonnegative reals.

Closure is tracked per endpoint. An empty interval is never constructed;
:func:`make_interval` returns ``None`` instead, and the empty union is an
:class:`IntervalSet` with no members.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import MaxAlgebraError


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise MaxAlgebraError(f"interval endpoints must be finite, got ({lo}, {hi})")
        if lo < 0:
            raise MaxAlgebraError(f"interval lower end {lo} is negative")
        if lo > hi:
            raise MaxAlgebraError(f"interval lower end {lo} exceeds upper end {hi}")
        if lo == hi and not (self.lo_closed and self.hi_closed):
            raise MaxAlgebraError("a degenerate interval must be closed at both ends")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_closed", bool(self.lo_closed))
        object.__setattr__(self, "hi_closed", bool(self.hi_closed))

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        x = float(x)
        above = x > self.lo or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif other.lo > self.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return make_interval(lo, hi, lo_closed, hi_closed)

    def issubset(self, other: "Interval") -> bool:
        lo_ok = self.lo > other.lo or (self.lo == other.lo and (other.lo_closed or not self.lo_closed))
        hi_ok = self.hi < other.hi or (self.hi == other.hi and (other.hi_closed or not self.hi_closed))
        return lo_ok and hi_ok

    def scale(self, alpha: float) -> "Interval":
        alpha = float(alpha)
        if alpha == 0:
            return Interval.point(0.0)
        return Interval(alpha * self.lo, alpha * self.hi, self.lo_closed, self.hi_closed)

    def to_dict(self) -> dict:
        return {"lo": self.lo, "lo_closed": self.lo_closed,
                "hi": self.hi, "hi_closed": self.hi_closed}

    def __str__(self):
        if self.is_degenerate:
            return f"{{{self.lo:g}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"


def make_interval(lo, hi, lo_closed=True, hi_closed=True) -> Optional[Interval]:
    """Build an interval, or return None when the described set is empty."""
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return None
    return Interval(lo, hi, lo_closed, hi_closed)


def _mergeable(a: Interval, b: Interval) -> bool:
    # assumes a.lo <= b.lo
    if b.lo < a.hi:
        return True
    if b.lo == a.hi:
        return a.hi_closed or b.lo_closed
    return False


def _sort_key(iv: Interval):
    return (iv.lo, not iv.lo_closed)


class IntervalSet:
    """A normalized finite union of disjoint, non-abutting intervals."""

    __slots__ = ("_intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        self._intervals = _normalize(intervals)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @property
    def intervals(self) -> tuple:
        return self._intervals

    def is_empty(self) -> bool:
        return not self._intervals

    def __bool__(self):
        return bool(self._intervals)

    def __len__(self):
        return len(self._intervals)

    def __iter__(self):
        return iter(self._intervals)

    def __eq__(self, other):
        if isinstance(other, Interval):
            other = IntervalSet([other])
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self):
        return hash(self._intervals)

    def __repr__(self):
        return f"IntervalSet({list(self._intervals)!r})"

    def __str__(self):
        if not self._intervals:
            return "∅"
        return " ∪ ".join(str(iv) for iv in self._intervals)

    def __contains__(self, x) -> bool:
        return any(x in iv for iv in self._intervals)

    @property
    def inf(self) -> float:
        if not self._intervals:
            raise MaxAlgebraError("infimum of an empty set")
        return self._intervals[0].lo

    @property
    def sup(self) -> float:
        if not self._intervals:
            raise MaxAlgebraError("supremum of an empty set")
        return self._intervals[-1].hi

    def union(self, other) -> "IntervalSet":
        if isinstance(other, Interval):
            other = (other,)
        return IntervalSet(self._intervals + tuple(other))

    __or__ = union

    def intersection(self, other) -> "IntervalSet":
        if isinstance(other, Interval):
            other = IntervalSet([other])
        out = []
        for a in self._intervals:
            for b in other:
                c = a.intersect(b)
                if c is not None:
                    out.append(c)
        return IntervalSet(out)

    __and__ = intersection

    def issubset(self, other) -> bool:
        if isinstance(other, Interval):
            other = IntervalSet([other])
        # normalized members are maximal, so each piece must sit inside one member
        return all(any(a.issubset(b) for b in other) for a in self._intervals)

    def __le__(self, other):
        return self.issubset(other)

    def scale(self, alpha: float) -> "IntervalSet":
        return IntervalSet(iv.scale(alpha) for iv in self._intervals)

    def hull(self) -> Interval:
        """Closed interval between the extremes (closure of the convex hull)."""
        return Interval(self.inf, self.sup)

    def to_dicts(self) -> list:
        return [iv.to_dict() for iv in self._intervals]


def _normalize(intervals: Iterable[Interval]) -> tuple:
    items = sorted((iv for iv in intervals if iv is not None), key=_sort_key)
    out: list = []
    for iv in items:
        if out and _mergeable(out[-1], iv):
            last = out[-1]
            if iv.hi > last.hi:
                hi, hi_closed = iv.hi, iv.hi_closed
            elif iv.hi == last.hi:
                hi, hi_closed = last.hi, last.hi_closed or iv.hi_closed
            else:
                hi, hi_closed = last.hi, last.hi_closed
            lo_closed = last.lo_closed or (iv.lo == last.lo and iv.lo_closed)
            out[-1] = Interval(last.lo, hi, lo_closed, hi_closed)
        else:
            out.append(iv)
    return tuple(out)
