"""Max-algebra isometries and the support structures behind them.

An ``n x k`` nonnegative matrix ``X`` satisfies ``X^t ⊗ X = I_k`` exactly
when its columns have pairwise disjoint supports, entries in ``[0, 1]`` and
column maximum 1. The nonzero pattern of such a matrix is a
:class:`SupportPattern`; a pattern whose blocks have no nonzero entry of
``A`` between them (in either orientation) is *A-orthogonal*, which is what
makes the off-diagonal of ``X^t ⊗ A ⊗ X`` vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .core import as_nonneg, as_square
from .errors import EnumerationLimitError, MaxAlgebraError, ShapeError

DEFAULT_LIMIT = 10 ** 7


@dataclass(frozen=True)
class SupportPattern:
    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        if not blocks:
            raise MaxAlgebraError("a support pattern needs at least one block")
        seen: set = set()
        for b in blocks:
            if not b:
                raise MaxAlgebraError("support blocks must be nonempty")
            if b[0] < 0 or b[-1] >= self.n:
                raise MaxAlgebraError(f"block {b} leaves the index range 0..{self.n - 1}")
            if len(set(b)) != len(b) or seen.intersection(b):
                raise MaxAlgebraError("support blocks must be pairwise disjoint")
            seen.update(b)
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def masks(self) -> tuple:
        return tuple(sum(1 << i for i in b) for b in self.blocks)

    def canonical(self) -> "SupportPattern":
        """Same family with blocks ordered by smallest element."""
        return SupportPattern(self.n, tuple(sorted(self.blocks)))


@dataclass(frozen=True)
class MaxIsometry:
    """Columns supported on ``pattern.blocks`` with the given positive values.

    ``squares`` optionally carries the exact squared entries as fractions.
    It is set by constructions whose entries are square roots, so that
    ``X^t ⊗ A ⊗ X = λ I`` can be certified in exact arithmetic even though
    the float ``values`` are rounded.
    """

    pattern: SupportPattern
    values: tuple
    squares: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        vals = tuple(tuple(float(v) for v in col) for col in self.values)
        if len(vals) != self.pattern.k:
            raise ShapeError("one value column per support block is required")
        for b, col in zip(self.pattern.blocks, vals):
            if len(b) != len(col):
                raise ShapeError(f"block {b} has {len(b)} indices but {len(col)} values")
        object.__setattr__(self, "values", vals)
        if self.squares is not None:
            sq = tuple(tuple(Fraction(s) for s in col) for col in self.squares)
            object.__setattr__(self, "squares", sq)

    @property
    def n(self) -> int:
        return self.pattern.n

    @property
    def k(self) -> int:
        return self.pattern.k

    @property
    def matrix(self) -> np.ndarray:
        X = np.zeros((self.n, self.k))
        for j, (b, col) in enumerate(zip(self.pattern.blocks, self.values)):
            X[list(b), j] = col
        return X

    def exact_squares(self) -> tuple:
        """Per column, a dict ``row -> x_row^2`` as exact fractions."""
        if self.squares is not None:
            sq = self.squares
        else:
            sq = tuple(tuple(Fraction(v) ** 2 for v in col) for col in self.values)
        return tuple(dict(zip(b, col)) for b, col in zip(self.pattern.blocks, sq))

    @classmethod
    def from_matrix(cls, X) -> "MaxIsometry":
        X = as_nonneg(X, "X")
        ok, why = validate_isometry(X)
        if not ok:
            raise MaxAlgebraError(f"not an isometry: {why}")
        blocks = [tuple(np.flatnonzero(X[:, j])) for j in range(X.shape[1])]
        values = [tuple(X[list(b), j]) for j, b in enumerate(blocks)]
        return cls(SupportPattern(X.shape[0], tuple(blocks)), tuple(values))


def validate_isometry(X) -> tuple:
    """Check ``X^t ⊗ X = I_k``; returns ``(ok, reason)``.

    ``reason`` names the first violated condition, or is empty.
    """
    if isinstance(X, MaxIsometry):
        X = X.matrix
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.size == 0:
        return False, f"expected a nonempty 2-D array, got shape {X.shape}"
    if X.shape[1] > X.shape[0]:
        return False, f"more columns ({X.shape[1]}) than rows ({X.shape[0]})"
    if not np.isfinite(X).all():
        return False, "non-finite entry"
    if (X < 0).any():
        i, j = np.argwhere(X < 0)[0]
        return False, f"negative entry at ({i}, {j})"
    if (X > 1).any():
        i, j = np.argwhere(X > 1)[0]
        return False, f"entry at ({i}, {j}) exceeds 1"
    colmax = X.max(axis=0)
    for j, mx in enumerate(colmax):
        if mx != 1.0:
            return False, f"column {j} has maximum {mx}, not 1"
    support = X > 0
    shared = support.sum(axis=1) > 1
    if shared.any():
        i = int(np.flatnonzero(shared)[0])
        cols = tuple(int(c) for c in np.flatnonzero(support[i]))
        return False, f"row {i} is positive in columns {cols}"
    return True, ""


def exact_isometry_check(X: MaxIsometry) -> bool:
    """``X^t ⊗ X = I_k`` evaluated on the exact squared entries."""
    cols = X.exact_squares()
    for r, cr in enumerate(cols):
        if max(cr.values()) != 1:
            return False
        for s in range(r + 1, len(cols)):
            if set(cr).intersection(cols[s]):
                return False
    return True


def exact_compression_squares(A, X: MaxIsometry) -> list:
    """Squared entries of ``X^t ⊗ A ⊗ X`` as exact fractions (k x k list).

    Max of nonnegative numbers commutes with squaring, so comparing squares
    decides equalities of the real matrix exactly.
    """
    A = as_square(A)
    cols = X.exact_squares()
    sqA = {}
    out = []
    for cr in cols:
        row = []
        for cs in cols:
            best = Fraction(0)
            for i, xi in cr.items():
                for j, xj in cs.items():
                    a = A[i, j]
                    if a == 0:
                        continue
                    if (i, j) not in sqA:
                        sqA[(i, j)] = Fraction(a) ** 2
                    val = xi * sqA[(i, j)] * xj
                    if val > best:
                        best = val
            row.append(best)
        out.append(row)
    return out


def certify_rank_k(A, X: MaxIsometry, lam: float) -> bool:
    """Exact check that ``X`` is an isometry with ``X^t ⊗ A ⊗ X = lam I_k``."""
    if not exact_isometry_check(X):
        return False
    target = Fraction(float(lam)) ** 2
    G = exact_compression_squares(A, X)
    k = len(G)
    return all(G[r][s] == (target if r == s else 0) for r in range(k) for s in range(k))


@dataclass(frozen=True)
class AdjacencyGraph:
    n: int
    edges: frozenset

    @property
    def masks(self) -> tuple:
        """Neighbour bitmask of every vertex."""
        out = [0] * self.n
        for i, j in self.edges:
            out[i] |= 1 << j
            out[j] |= 1 << i
        return tuple(out)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges


def adjacency_graph(A) -> AdjacencyGraph:
    """Undirected graph with an edge {i, j} whenever a_ij or a_ji is nonzero."""
    A = as_square(A)
    nz = (A != 0) | (A.T != 0)
    n = A.shape[0]
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n) if nz[i, j])
    return AdjacencyGraph(n, edges)


def orthogonal(graph: AdjacencyGraph, S: Sequence[int], T: Sequence[int]) -> bool:
    """True when no edge joins the index sets ``S`` and ``T``."""
    return not any(graph.has_edge(i, j) for i in S for j in T if i != j) and not set(S) & set(T)


def enumerate_support_families(A, k: int, limit: int = DEFAULT_LIMIT) -> Iterator[SupportPattern]:
    """Yield every A-orthogonal family of ``k`` disjoint nonempty supports.

    Families are unordered; each is yielded once with blocks sorted by their
    smallest element. Raises :class:`EnumerationLimitError` before yielding
    the ``limit + 1``-th family.
    """
    A = as_square(A)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise MaxAlgebraError(f"k must lie in 1..{n}, got {k}")
    adj = adjacency_graph(A).masks
    blocks: list = []
    count = 0

    def walk(v: int, used: int):
        nonlocal count
        if n - v < k - len(blocks):
            return
        if v == n:
            count += 1
            if count > limit:
                raise EnumerationLimitError(
                    f"more than {limit} support families for n={n}, k={k}", limit)
            yield SupportPattern(n, tuple(tuple(_bits(b)) for b in blocks))
            return
        bit = 1 << v
        yield from walk(v + 1, used)
        for idx in range(len(blocks)):
            others = used & ~blocks[idx]
            if adj[v] & others == 0:
                blocks[idx] |= bit
                yield from walk(v + 1, used | bit)
                blocks[idx] &= ~bit
        if len(blocks) < k and adj[v] & used == 0:
            blocks.append(bit)
            yield from walk(v + 1, used | bit)
            blocks.pop()

    return walk(0, 0)


def _bits(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def is_orthogonal_family(A, pattern: SupportPattern) -> bool:
    g = adjacency_graph(A)
    blocks = pattern.blocks
    return all(orthogonal(g, blocks[r], blocks[s])
               for r in range(len(blocks)) for s in range(r + 1, len(blocks)))


def sample_block_values(rng: np.random.Generator, size: int, count: int) -> np.ndarray:
    """``count`` random columns on a block of ``size`` rows: entries in (0, 1], one forced 1."""
    vals = 1.0 - rng.random((count, size))
    unit = rng.integers(0, size, count)
    vals[np.arange(count), unit] = 1.0
    return vals


def sample_isometry(pattern: SupportPattern, rng_seed: int) -> MaxIsometry:
    """Random isometry on ``pattern``; deterministic in ``rng_seed``."""
    rng = np.random.default_rng(rng_seed)
    values = tuple(tuple(sample_block_values(rng, len(b), 1)[0]) for b in pattern.blocks)
    return MaxIsometry(pattern, values)
