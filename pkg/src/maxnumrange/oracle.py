"""Brute-force references and the randomized claim suite.

Everything here works from the definitions: isometries are built or
sampled explicitly and ``X^t ⊗ A ⊗ X`` is evaluated entrywise. No oracle
calls the closed forms it is used to check. ``run_claim_suite`` replays every
registered property on seeded random instances; reports are reproducible
bit for bit from ``(seed, trials)``.
"""
from __future__ import annotations

import itertools
import json
import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import core, isometry, joint, perm, single
from .core import DEFAULT_TOLERANCE, block_diag
from .errors import MaxAlgebraError
from .intervals import Interval, IntervalSet
from .isometry import MaxIsometry, SupportPattern

MEMBER = "member"
NON_MEMBER = "non-member-proved"
UNKNOWN = "unknown"

MAX_RECORDED_FAILURES = 10


@dataclass
class OracleReport:
    claim: str
    trials: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_record(self) -> dict:
        return {
            "claim": self.claim,
            "status": "pass" if self.passed else "fail",
            "trials": self.trials,
            "seed": self.seed,
            "failure_count": len(self.failures),
            "counterexamples": self.failures[:MAX_RECORDED_FAILURES],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, default=_jsonable)


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, (Interval, IntervalSet)):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    return repr(obj)


# ----------------------------------------------------------------------
# random instances


def random_int_matrix(rng, n, hi=9, zero_p=0.3) -> np.ndarray:
    """Small integer entries: all products stay exact in double precision."""
    A = rng.integers(1, hi + 1, (n, n)).astype(float)
    A[rng.random((n, n)) < zero_p] = 0.0
    return A


def random_rational_matrix(rng, n, zero_p=0.3) -> np.ndarray:
    """Entries ``p / q`` with small ``p, q``, and structural zeros."""
    A = rng.integers(1, 40, (n, n)) / rng.integers(1, 6, (n, n))
    A[rng.random((n, n)) < zero_p] = 0.0
    return A


def random_isometries(rng, n, k, count) -> np.ndarray:
    """``count`` random ``n x k`` isometries as an array of shape (count, n, k)."""
    X = np.zeros((count, n, k))
    for t in range(count):
        rows = rng.permutation(n)
        labels = np.full(n, -1)
        labels[rows[:k]] = np.arange(k)
        rest = rows[k:]
        labels[rest] = rng.integers(-1, k, rest.size)
        for i in range(n):
            if labels[i] >= 0:
                X[t, i, labels[i]] = 1.0 - rng.random()
        X[t, rows[:k], np.arange(k)] = 1.0
    return X


def batch_compress(A, Xs) -> np.ndarray:
    """``X^t ⊗ A ⊗ X`` for a stack of isometries, shape (count, k, k)."""
    AX = (A[None, :, :, None] * Xs[:, None, :, :]).max(axis=2)
    return (Xs[:, :, :, None] * AX[:, :, None, :]).max(axis=1)


def batch_traces(A, Xs) -> np.ndarray:
    return np.diagonal(batch_compress(A, Xs), axis1=1, axis2=2).max(axis=1)


def _to_iso(X) -> MaxIsometry:
    return MaxIsometry.from_matrix(X)


# ----------------------------------------------------------------------
# oracles


def _unit_isometry(n, cols) -> np.ndarray:
    X = np.zeros((n, len(cols)))
    for j, rows in enumerate(cols):
        X[list(rows), j] = 1.0
    return X


def oracle_wmax_k(A, k: int, grid: int, seed: int = 0) -> Interval:
    """Hull of ``tr_⊗(X^t ⊗ A ⊗ X)`` over an explicit sample plan.

    The plan holds every 0/1 isometry with singleton columns, every isometry
    whose first column is ones on a pair ``{i, j}`` (rest singletons), and
    ``grid`` random isometries. Every value is a genuine member of the
    range, so the hull lies inside it.
    """
    A = core.as_square(A)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise MaxAlgebraError(f"k must lie in 1..{n}")
    values = []
    for S in itertools.combinations(range(n), k):
        X = _unit_isometry(n, [(i,) for i in S])
        values.append(core.max_trace(core.otimes(X.T, core.otimes(A, X))))
    if k < n:
        for i in range(n):
            for j in range(i, n):
                others = [r for r in range(n) if r not in (i, j)][:k - 1]
                X = _unit_isometry(n, [(i, j)] + [(r,) for r in others])
                values.append(core.max_trace(core.otimes(X.T, core.otimes(A, X))))
    if grid > 0:
        rng = np.random.default_rng(seed)
        values.extend(batch_traces(A, random_isometries(rng, n, k, grid)).tolist())
    return Interval(min(values), max(values))


def _column_bounds(A, T):
    sub = A[np.ix_(T, T)]
    return float(np.diagonal(sub).min()), float(sub.max())


def _scaled_column(A, T, p, direction, lam: Fraction):
    """Scale the non-unit entries of ``direction`` (unit at ``p``) to hit ``lam``.

    Returns exact squared entries, or None if ``lam`` is out of reach.
    """
    app = Fraction(A[p, p])
    if app > lam:
        return None
    if app == lam:
        return {p: Fraction(1)}
    x = {q: Fraction(direction[idx]) for idx, q in enumerate(T)}
    x[p] = Fraction(1)
    rest = [q for q in T if q != p]
    L = max((x[q] * Fraction(max(A[p, q], A[q, p])) for q in rest), default=Fraction(0))
    Q = max((x[q] * Fraction(A[q, r]) * x[r] for q in rest for r in rest), default=Fraction(0))
    if max(L, Q) < lam:
        return None
    options = []
    if L > 0:
        options.append((lam / L) ** 2)
    if Q > 0:
        options.append(lam / Q)
    t2 = min(options)
    out = {p: Fraction(1)}
    for q in rest:
        out[q] = t2 * x[q] ** 2
    return out


def oracle_lambda_membership(A, k: int, lam: float, grid: int, seed: int = 0) -> str:
    """Decide ``lam in Λ_k`` by construction or by exhaustive exclusion.

    For each orthogonal support family, ``lam`` is excluded when some block
    cannot reach it: every column on ``T`` with max 1 has value between the
    least diagonal entry and the largest entry on ``T``, and is positive
    whenever ``A`` is nonzero on ``T``. Surviving families are attacked by
    scaling random directions (plus the all-ones direction) until every
    block hits ``lam``; success is certified in exact arithmetic.
    """
    A = core.as_square(A)
    n = A.shape[0]
    lam = float(lam)
    target = Fraction(lam)
    rng = np.random.default_rng(seed)
    survivors = []
    for fam in isometry.enumerate_support_families(A, k):
        ok = True
        for T in fam.blocks:
            lo, hi = _column_bounds(A, T)
            if lam < lo or lam > hi or (lam == 0 and hi > 0):
                ok = False
                break
        if ok:
            survivors.append(fam)
    if not survivors:
        return NON_MEMBER
    for fam in survivors:
        tries = max(1, grid)
        for attempt in range(tries):
            cols = []
            for T in fam.blocks:
                found = None
                for p in T:
                    d = np.ones(len(T)) if attempt == 0 else 1.0 - rng.random(len(T))
                    found = _scaled_column(A, list(T), p, d, target)
                    if found is not None:
                        break
                if found is None:
                    break
                cols.append(found)
            if len(cols) != len(fam.blocks):
                continue
            blocks = tuple(tuple(sorted(c)) for c in cols)
            squares = tuple(tuple(c[i] for i in b) for b, c in zip(blocks, cols))
            values = tuple(tuple(min(1.0, math.sqrt(s)) for s in sq) for sq in squares)
            X = MaxIsometry(SupportPattern(n, blocks), values, squares)
            if isometry.certify_rank_k(A, X, lam):
                return MEMBER
    return UNKNOWN


# ----------------------------------------------------------------------
# claim registry

CLAIMS: dict = {}


def claim(claim_id: str, text: str):
    def deco(fn: Callable):
        CLAIMS[claim_id] = (fn, text)
        return fn
    return deco


def _fail(failures, relation, observed, **inputs):
    failures.append({"relation": relation, "observed": observed, "input": inputs})


def _rand_n(rng, lo=2, hi=5) -> int:
    return int(rng.integers(lo, hi + 1))


# -- semiring and norms --------------------------------------------------


@claim("semiring-laws", "⊕ assoc/comm/idempotent; ⊗ assoc; ⊗ distributes over ⊕")
def _semiring(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        A, B, C = (random_int_matrix(rng, n) for _ in range(3))
        o, t = core.oplus, core.otimes
        checks = {
            "oplus associative": np.array_equal(o(o(A, B), C), o(A, o(B, C))),
            "oplus commutative": np.array_equal(o(A, B), o(B, A)),
            "oplus idempotent": np.array_equal(o(A, A), A),
            "zero neutral": np.array_equal(o(A, np.zeros_like(A)), A),
            "otimes associative": np.array_equal(t(t(A, B), C), t(A, t(B, C))),
            "left distributive": np.array_equal(t(A, o(B, C)), o(t(A, B), t(A, C))),
            "right distributive": np.array_equal(t(o(B, C), A), o(t(B, A), t(C, A))),
            "identity": np.array_equal(t(np.eye(n), A), A) and np.array_equal(t(A, np.eye(n)), A),
        }
        for name, ok in checks.items():
            if not ok:
                _fail(f, name, False, A=A, B=B, C=C)
    return f


@claim("trace-laws", "tr(A^t) = tr(A) and tr(A⊗B) = tr(B⊗A)")
def _trace(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 6)
        A, B = random_rational_matrix(rng, n), random_rational_matrix(rng, n)
        if core.max_trace(A.T) != core.max_trace(A):
            _fail(f, "tr(A^t) = tr(A)", core.max_trace(A.T), A=A)
        ab, ba = core.max_trace(core.otimes(A, B)), core.max_trace(core.otimes(B, A))
        if ab != ba:
            _fail(f, "tr(A⊗B) = tr(B⊗A)", [ab, ba], A=A, B=B)
    return f


@claim("norm-axioms", "sup-norm axioms (i)-(ix)")
def _norms(rng, trials):
    f = []
    N = core.sup_norm
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        A, B = random_int_matrix(rng, n), random_int_matrix(rng, n)
        alpha = float(rng.integers(0, 7)) / float(rng.integers(1, 4))
        p = rng.permutation(n)
        x = 1.0 - rng.random(n)
        y = 1.0 - rng.random(n)
        x /= x.max()
        y *= rng.random()
        m = int(rng.integers(1, 5))
        checks = {
            "(i) nonnegative": N(A) >= 0,
            "(ii) zero iff A = 0": (N(A) == 0) == (not A.any()),
            "(ii) zero matrix": N(np.zeros((n, n))) == 0,
            "(iii) homogeneous": N(alpha * A) == alpha * N(A),
            "(iv) transpose": N(A.T) == N(A),
            "(v) unitary similarity": N(core.conjugate_by_permutation(A, p)) == N(A),
            "(vi) oplus": N(core.oplus(A, B)) == max(N(A), N(B)),
            "(vii) submultiplicative": N(core.otimes(A, B)) <= N(A) * N(B),
            "(viii) powers": N(core.matrix_power(A, m)) <= N(A) ** m,
            "(ix) rank-one contraction": N(core.otimes(A, core.outer(x, y))) <= N(A),
        }
        for name, ok in checks.items():
            if not ok:
                _fail(f, name, False, A=A, B=B, alpha=alpha, perm=p, m=m)
    return f


@claim("operator-norm", "||A|| = max{||A⊗x|| : ||x|| <= 1}, attained at the ones vector")
def _opnorm(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 6)
        A = random_rational_matrix(rng, n)
        if core.sup_norm(core.otimes(A, np.ones(n))) != core.sup_norm(A):
            _fail(f, "witness x = 1", core.sup_norm(core.otimes(A, np.ones(n))), A=A)
        for _ in range(5):
            x = rng.random(n)
            if core.sup_norm(core.otimes(A, x)) > core.sup_norm(A):
                _fail(f, "||A⊗x|| <= ||A||", x, A=A)
    return f


def _cycle_mean_bruteforce(A) -> float:
    n = A.shape[0]
    best = 0.0
    for size in range(1, n + 1):
        for cyc in itertools.permutations(range(n), size):
            if cyc[0] != min(cyc):
                continue
            w = 1.0
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                w *= A[a, b]
            if w > 0:
                best = max(best, w ** (1.0 / size))
    return best


@claim("eigenvalue-in-wmax", "σ_max(A) lies in W_max(A) and equals the best cycle geometric mean")
def _eig(rng, trials):
    f = []
    tol = DEFAULT_TOLERANCE
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        A = random_rational_matrix(rng, n, zero_p=0.5)
        lam = core.max_eigenvalue(A)
        W = single.wmax(A)
        inside = (W.lo <= lam or tol.close(lam, W.lo)) and (lam <= W.hi or tol.close(lam, W.hi))
        if not inside:
            _fail(f, "σ_max ∈ W_max", lam, A=A)
        ref = _cycle_mean_bruteforce(A)
        if not tol.close(lam, ref):
            _fail(f, "Karp = brute-force cycle mean", [lam, ref], A=A)
    return f


@claim("alpha-u-product-norm", "A = αU ⊕ C with C <= α gives ||A⊗B|| = ||B⊗A|| = α max b")
def _alpha_u(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 6)
        alpha = float(rng.integers(1, 10))
        U = core.permutation_matrix(rng.permutation(n))
        C = np.floor(rng.random((n, n)) * (alpha + 1))
        C = np.minimum(C, alpha)
        A = core.oplus(alpha * U, C)
        B = random_rational_matrix(rng, n)
        lhs, rhs = core.sup_norm(core.otimes(A, B)), core.sup_norm(core.otimes(B, A))
        if not (lhs == rhs == alpha * B.max()):
            _fail(f, "||A⊗B|| = ||B⊗A|| = α max b", [lhs, rhs, alpha * B.max()], A=A, B=B)
    return f


# -- isometries ------------------------------------------------------------


@claim("unitaries-are-permutations", "every n x n max isometry is a permutation matrix")
def _unitaries(rng, trials):
    f = []
    for n in (1, 2, 3):
        for vals in itertools.product((0.0, 0.5, 1.0), repeat=n * n):
            X = np.array(vals).reshape(n, n)
            ok, _ = isometry.validate_isometry(X)
            eq = np.array_equal(core.otimes(X.T, X), np.eye(n))
            if ok != eq:
                _fail(f, "validator agrees with X^t⊗X = I", [ok, eq], X=X)
            if ok and not (np.isin(X, (0.0, 1.0)).all() and (X.sum(axis=0) == 1).all()
                           and (X.sum(axis=1) == 1).all()):
                _fail(f, "unitary is a permutation matrix", False, X=X)
    return f


def _families_bruteforce(A, k):
    n = A.shape[0]
    g = isometry.adjacency_graph(A)
    out = set()
    for labels in itertools.product(range(-1, k), repeat=n):
        blocks = [tuple(i for i in range(n) if labels[i] == b) for b in range(k)]
        if any(not b for b in blocks):
            continue
        if all(isometry.orthogonal(g, blocks[r], blocks[s])
               for r in range(k) for s in range(r + 1, k)):
            out.add(tuple(sorted(blocks)))
    return out


@claim("family-enumeration", "support-family enumeration is exhaustive and duplicate-free")
def _families(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        k = int(rng.integers(1, min(n, 3) + 1))
        A = random_int_matrix(rng, n, zero_p=0.6)
        got = [fam.blocks for fam in isometry.enumerate_support_families(A, k)]
        ref = _families_bruteforce(A, k)
        if len(got) != len(set(got)) or set(got) != ref:
            _fail(f, "enumeration = brute force", [len(got), len(ref)], A=A, k=k)
        if k == 1 and len(got) != 2 ** n - 1:
            _fail(f, "k = 1 gives all nonempty subsets", len(got), A=A)
    return f


@claim("orthogonality", "orthogonality is symmetric and inherited by sub-blocks")
def _orth(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 2, 6)
        A = random_int_matrix(rng, n, zero_p=0.6)
        g = isometry.adjacency_graph(A)
        perm_ = rng.permutation(n)
        cut = int(rng.integers(1, n))
        S, T = tuple(perm_[:cut]), tuple(perm_[cut:])
        if isometry.orthogonal(g, S, T) != isometry.orthogonal(g, T, S):
            _fail(f, "symmetric", False, A=A, S=S, T=T)
        if isometry.orthogonal(g, S, T):
            S2 = S[: max(1, len(S) // 2)]
            if not isometry.orthogonal(g, S2, T):
                _fail(f, "monotone under subsets", False, A=A, S=S, T=T)
    return f


@claim("sampled-isometries-valid", "sampled isometries satisfy X^t⊗X = I_k and are seed-deterministic")
def _sampled(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 7)
        k = int(rng.integers(1, n + 1))
        labels = rng.permutation(n)[:k]
        blocks = [[int(b)] for b in labels]
        for i in range(n):
            if i not in labels and rng.random() < 0.5:
                blocks[int(rng.integers(0, k))].append(i)
        pat = SupportPattern(n, tuple(tuple(b) for b in blocks))
        seed = int(rng.integers(0, 2 ** 31))
        X = isometry.sample_isometry(pat, seed)
        ok, why = isometry.validate_isometry(X)
        if not ok or not np.array_equal(core.otimes(X.matrix.T, X.matrix), np.eye(k)):
            _fail(f, "X^t⊗X = I", why, pattern=pat.blocks, seed=seed)
        if isometry.sample_isometry(pat, seed) != X:
            _fail(f, "deterministic in seed", False, pattern=pat.blocks, seed=seed)
    return f


# -- single-matrix ranges --------------------------------------------------


@claim("lambda1-is-wmax", "Λ_1(A) = W_max(A)")
def _l1(rng, trials):
    f = []
    for _ in range(trials):
        A = random_rational_matrix(rng, _rand_n(rng, 1, 6))
        if single.lambda_k(A, 1) != IntervalSet([single.wmax(A)]):
            _fail(f, "Λ_1 = W_max", str(single.lambda_k(A, 1)), A=A)
    return f


@claim("lambda-chain", "Λ_{k+1}(A) ⊆ Λ_k(A) and W^{k+1} ⊆ W^k")
def _lchain(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 6)
        A = random_rational_matrix(rng, n, zero_p=0.5)
        ranges = [single.lambda_k(A, k) for k in range(1, n + 1)]
        for k in range(n - 1):
            if not ranges[k + 1].issubset(ranges[k]):
                _fail(f, "Λ_{k+1} ⊆ Λ_k", [k + 1, str(ranges[k]), str(ranges[k + 1])], A=A)
            if not single.wmax_k(A, k + 2).issubset(single.wmax_k(A, k + 1)):
                _fail(f, "W^{k+1} ⊆ W^k", k + 1, A=A)
    return f


@claim("lambda-scale-transpose", "Λ_k(αA) = αΛ_k(A) and Λ_k(A^t) = Λ_k(A)")
def _lscale(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        A = random_rational_matrix(rng, n, zero_p=0.5)
        k = int(rng.integers(1, n + 1))
        alpha = float(rng.integers(1, 9)) / float(rng.integers(1, 5))
        base = single.lambda_k(A, k)
        if single.lambda_k(alpha * A, k) != base.scale(alpha):
            _fail(f, "Λ_k(αA) = αΛ_k(A)", alpha, A=A, k=k)
        if single.lambda_k(A.T, k) != base:
            _fail(f, "Λ_k(A^t) = Λ_k(A)", str(single.lambda_k(A.T, k)), A=A, k=k)
    return f


@claim("lambda-n-scalar", "Λ_n(A) ≠ ∅ iff A = λI; Λ_k(αI) = {α}")
def _ln(rng, trials):
    f = []
    for t in range(trials):
        n = _rand_n(rng, 1, 5)
        if t % 3 == 0:
            A = float(rng.integers(0, 9)) * np.eye(n)
        elif t % 3 == 1:
            A = np.diag(rng.integers(1, 3, n).astype(float))
        else:
            A = random_int_matrix(rng, n, zero_p=0.7)
        scalar = not (A - A[0, 0] * np.eye(n)).any()
        if single.lambda_k(A, n).is_empty() == scalar:
            _fail(f, "Λ_n nonempty iff scalar", scalar, A=A)
        if scalar:
            for k in range(1, n + 1):
                if single.lambda_k(A, k) != IntervalSet([Interval.point(A[0, 0])]):
                    _fail(f, "Λ_k(αI) = {α}", k, A=A)
    return f


def _principal(rng, A):
    n = A.shape[0]
    size = int(rng.integers(1, n + 1))
    rows = np.sort(rng.choice(n, size, replace=False))
    return rows, A[np.ix_(rows, rows)]


@claim("lambda-principal", "Λ_k(B) ⊆ Λ_k(A) for principal submatrices B")
def _lprin(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 2, 6)
        A = random_rational_matrix(rng, n, zero_p=0.5)
        rows, B = _principal(rng, A)
        for k in range(1, B.shape[0] + 1):
            if not single.lambda_k(B, k).issubset(single.lambda_k(A, k)):
                _fail(f, "Λ_k(B) ⊆ Λ_k(A)", k, A=A, rows=rows)
    return f


@claim("lambda-blocks", "block diagonal: Λ_k(A) ∪ Λ_k(B) ⊆ Λ_k(C); Λ_k1(B1) ∩ Λ_k2(B2) ⊆ Λ_{k1+k2}")
def _lblocks(rng, trials):
    f = []
    for _ in range(trials):
        n1, n2 = _rand_n(rng, 1, 3), _rand_n(rng, 1, 3)
        B1 = random_rational_matrix(rng, n1, zero_p=0.4)
        B2 = random_rational_matrix(rng, n2, zero_p=0.4)
        C = block_diag(B1, B2)
        for k in range(1, min(n1, n2) + 1):
            u = single.lambda_k(B1, k) | single.lambda_k(B2, k)
            if not u.issubset(single.lambda_k(C, k)):
                _fail(f, "union inclusion", k, B1=B1, B2=B2)
        for k1 in range(1, n1 + 1):
            for k2 in range(1, n2 + 1):
                inter = single.lambda_k(B1, k1) & single.lambda_k(B2, k2)
                if not inter.issubset(single.lambda_k(C, k1 + k2)):
                    _fail(f, "intersection inclusion", [k1, k2], B1=B1, B2=B2)
    return f


def probe_points(rng_set: IntervalSet, count: int, rng) -> list:
    """Endpoints that belong to the set, plus ``count`` interior points."""
    pts = []
    for iv in rng_set:
        if iv.lo_closed:
            pts.append(iv.lo)
        pts.append(iv.hi)
    spans = [iv for iv in rng_set if not iv.is_degenerate]
    for _ in range(count if spans else 0):
        iv = spans[int(rng.integers(0, len(spans)))]
        x = iv.lo + (iv.hi - iv.lo) * float(rng.uniform(0.01, 0.99))
        if x in iv:
            pts.append(x)
    return pts


@claim("lambda-witness", "every endpoint and interior probe of Λ_k has an exact witness; outside values have none")
def _lwit(rng, trials, probes=5):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        A = random_rational_matrix(rng, n, zero_p=0.5)
        for k in range(1, n + 1):
            R = single.lambda_k(A, k)
            for lam in probe_points(R, probes, rng):
                X = single.witness_isometry(A, k, lam)
                ok = X is not None and isometry.validate_isometry(X)[0] \
                    and isometry.certify_rank_k(A, X, lam)
                if not ok:
                    _fail(f, "witness reproduces λ exactly", lam, A=A, k=k)
            outside = [A.max() * 1.5 + 1]
            if not R.is_empty():
                outside.append(R.inf / 2 if R.inf > 0 else None)
            for lam in outside:
                if lam is not None and lam not in R and single.witness_isometry(A, k, lam) is not None:
                    _fail(f, "no witness outside Λ_k", lam, A=A, k=k)
    return f


def equalized_samples(A, family: SupportPattern, count: int, rng):
    """Random isometries on ``family`` whose columns are rescaled to a common value.

    Each column gets a random unit index ``p`` and random other entries; the
    non-unit entries are then scaled by ``t`` so that ``max(a_pp, tL, t^2 Q)``
    equals a common target drawn between the largest ``a_pp`` and the
    smallest unscaled column value. Samples whose columns admit no common
    target are dropped.

    Returns ``(Xs, lam, raw)``: the float isometries, the targets, and per
    block the unscaled directions (unit entry already 1) for exact replay.
    """
    n = A.shape[0]
    blocks = family.blocks
    raw = []
    for T in blocks:
        T = np.array(T)
        s = T.size
        x = 1.0 - rng.random((count, s))
        unit = rng.integers(0, s, count)
        x[np.arange(count), unit] = 1.0
        sub = A[np.ix_(T, T)]
        p = T[unit]
        app = A[p, p]
        notunit = np.ones((count, s), dtype=bool)
        notunit[np.arange(count), unit] = False
        cross = np.maximum(sub[unit, :], sub[:, unit].T)
        L = np.where(notunit, x * cross, 0.0).max(axis=1)
        xq = np.where(notunit, x, 0.0)
        Q = (xq[:, :, None] * sub[None] * xq[:, None, :]).max(axis=(1, 2))
        raw.append((T, x, unit, notunit, app, L, Q))
    lo = np.max([r[4] for r in raw], axis=0)
    hi = np.min([np.maximum(r[4], np.maximum(r[5], r[6])) for r in raw], axis=0)
    keep = lo <= hi
    lam = lo + (hi - lo) * rng.random(count)
    Xs = np.zeros((count, n, len(blocks)))
    for j, (T, x, unit, notunit, app, L, Q) in enumerate(raw):
        with np.errstate(divide="ignore", invalid="ignore"):
            tl = np.where(L > 0, lam / L, np.inf)
            tq = np.where(Q > 0, np.sqrt(lam / Q), np.inf)
        top = np.maximum(app, np.maximum(L, Q))
        t = np.minimum(np.minimum(tl, tq), 1.0)
        t = np.where(lam >= top, 1.0, t)
        t = np.where(lam == app, 0.0, t)
        Xs[:, T, j] = np.where(notunit, x * t[:, None], x)
    dirs = [(r[0], r[1][keep], r[2][keep]) for r in raw]
    return Xs[keep], lam[keep], dirs


def member_mask(R: IntervalSet, vals) -> np.ndarray:
    """Vectorized ``v in R``."""
    vals = np.asarray(vals, dtype=np.float64)
    out = np.zeros(vals.shape, dtype=bool)
    for iv in R:
        lo = vals >= iv.lo if iv.lo_closed else vals > iv.lo
        hi = vals <= iv.hi if iv.hi_closed else vals < iv.hi
        out |= lo & hi
    return out


def exact_equalized(A, family: SupportPattern, dirs, idx: int, lam: float):
    """Replay sample ``idx`` of :func:`equalized_samples` in exact arithmetic.

    Returns the exact squared Gram matrix ``X^t ⊗ A ⊗ X`` (entrywise
    squares), or None when some column cannot reach ``lam``.
    """
    target = Fraction(float(lam))
    blocks, squares = [], []
    for T, x, unit in dirs:
        T = [int(i) for i in T]
        p = T[int(unit[idx])]
        col = _scaled_column(A, T, p, x[idx], target)
        if col is None:
            return None
        rows = tuple(sorted(col))
        blocks.append(rows)
        squares.append(tuple(col[r] for r in rows))
    values = tuple(tuple(min(1.0, math.sqrt(q)) for q in sq) for sq in squares)
    X = MaxIsometry(SupportPattern(A.shape[0], tuple(blocks)), values, tuple(squares))
    return isometry.exact_compression_squares(A, X)


@claim("lambda-sampling-soundness", "sampled isometries with equal diagonal only produce values in Λ_k")
def _lsample(rng, trials, samples=400):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        A = random_rational_matrix(rng, n, zero_p=0.5)
        per_k = max(1, samples // n)
        for k in range(1, n + 1):
            fams = list(isometry.enumerate_support_families(A, k))
            if not fams:
                continue
            R = single.lambda_k(A, k)
            picks = rng.integers(0, len(fams), per_k)
            for fi in np.unique(picks):
                fam = fams[fi]
                Xs, lam, dirs = equalized_samples(A, fam, int((picks == fi).sum()), rng)
                if Xs.shape[0] == 0:
                    continue
                G = batch_compress(A, Xs)
                off = G * (1 - np.eye(k))
                if off.any():
                    _fail(f, "off-diagonal vanishes on orthogonal family", float(off.max()),
                          A=A, k=k, family=fam.blocks)
                diag = np.diagonal(G, axis1=1, axis2=2)
                spread = diag.max(axis=1) - diag.min(axis=1)
                if (spread > 1e-12 * np.maximum(diag.max(axis=1), 1.0)).any():
                    _fail(f, "equalized columns agree", float(spread.max()), A=A, k=k)
                inside = member_mask(R, diag).all(axis=1)
                for i in np.flatnonzero(~inside):
                    # float rounding of sqrt-scaled entries: decide on the exact replay
                    sq = exact_equalized(A, fam, dirs, i, lam[i])
                    t2 = Fraction(float(lam[i])) ** 2
                    exact_ok = sq is not None and all(
                        sq[r][s] == (t2 if r == s else 0) for r in range(k) for s in range(k))
                    if not exact_ok or lam[i] not in R:
                        _fail(f, "sampled λ lies in Λ_k", [float(lam[i]), diag[i].tolist()],
                              A=A, k=k, family=fam.blocks, range=str(R))
    return f


@claim("lambda-oracle-agreement", "membership oracle never contradicts Λ_k")
def _lorc(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 4)
        A = random_rational_matrix(rng, n, zero_p=0.5)
        k = int(rng.integers(1, n + 1))
        R = single.lambda_k(A, k)
        cands = probe_points(R, 2, rng) + [float(v) for v in np.unique(A)] + [A.max() + 1]
        for lam in cands:
            verdict = oracle_lambda_membership(A, k, lam, grid=20, seed=int(rng.integers(2 ** 31)))
            if (verdict == MEMBER and lam not in R) or (verdict == NON_MEMBER and lam in R):
                _fail(f, "oracle consistent with Λ_k", [lam, verdict], A=A, k=k)
    return f


def achievable_grid(A, T, grid: int = 200) -> np.ndarray:
    """Values of ``x^t ⊗ A ⊗ x`` on a grid of columns supported exactly on ``T``.

    Every column has one entry equal to 1; the others run over a mixed
    linear/geometric grid in (0, 1] so that both ends of the range are
    approached.
    """
    T = list(T)
    s = len(T)
    pts = np.unique(np.concatenate([np.linspace(0, 1, grid + 1)[1:],
                                    np.geomspace(1e-12, 1, grid)]))
    sub = A[np.ix_(T, T)]
    out = []
    for unit in range(s):
        axes = [pts if i != unit else np.array([1.0]) for i in range(s)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, s)
        vals = (mesh[:, :, None] * (sub[None] * mesh[:, None, :])).max(axis=(1, 2))
        out.append(vals)
    return np.concatenate(out)


@claim("achievable-set", "single-column value set matches a dense grid within 1e-3")
def _aset(rng, trials, grid=200):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 4)
        A = random_rational_matrix(rng, n, zero_p=0.4)
        size = int(rng.integers(1, min(n, 3) + 1))
        T = sorted(rng.choice(n, size, replace=False).tolist())
        iv = single.achievable_diag_set(A, T)
        vals = achievable_grid(A, T, grid)
        if abs(vals.min() - iv.lo) > 1e-3 or abs(vals.max() - iv.hi) > 1e-3:
            _fail(f, "grid hull matches endpoints", [float(vals.min()), float(vals.max()), str(iv)],
                  A=A, T=T)
        if not iv.lo_closed and (vals == iv.lo).any():
            _fail(f, "open end is never attained", float(iv.lo), A=A, T=T)
        if (vals < iv.lo).any() or (vals > iv.hi).any():
            _fail(f, "grid values inside the set", str(iv), A=A, T=T)
    return f


@claim("wmax-k-oracle", "closed form of W^k equals the oracle hull exactly")
def _wkor(rng, trials, grid=200):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        A = random_rational_matrix(rng, n, zero_p=0.4)
        k = int(rng.integers(1, n + 1))
        est = oracle_wmax_k(A, k, grid, seed=int(rng.integers(2 ** 31)))
        ref = single.wmax_k(A, k)
        if est != ref:
            _fail(f, "oracle hull = closed form", [str(est), str(ref)], A=A, k=k)
    return f


def _oplus_scalar(c: float, iv: Interval) -> Interval:
    return Interval(max(c, iv.lo), max(c, iv.hi))


@claim("wmax-k-identities", "n/2 <= k < n identity, equal blocks, block hulls")
def _wkid(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 2, 7)
        A = random_rational_matrix(rng, n)
        for k in range(1, n):
            if 2 * k >= n:
                ck = float(np.sort(np.diagonal(A))[k - 1])
                if single.wmax_k(A, k) != _oplus_scalar(ck, single.wmax_k(A, n - k)):
                    _fail(f, "W^k = c_k ⊕ W^{n-k}", k, A=A)
        # blocks with a common W_max
        kb = _rand_n(rng, 2, 3)
        a, b = float(rng.integers(0, 4)), float(rng.integers(4, 9))
        blocks = []
        for _ in range(kb):
            s = _rand_n(rng, 1, 3)
            B = np.floor(rng.random((s, s)) * (b - a + 1)) + a
            np.fill_diagonal(B, np.maximum(np.diagonal(B), a))
            B[int(rng.integers(0, s)), int(rng.integers(0, s))] = b
            i = int(rng.integers(0, s))
            B[i, i] = a
            blocks.append(B)
        D = block_diag(*blocks)
        if len({single.wmax(B) for B in blocks}) == 1:
            for m in range(1, kb + 1):
                if m < D.shape[0] and single.wmax_k(D, m) != single.wmax(D):
                    _fail(f, "equal blocks: W^m = W", m, blocks=blocks)
        D1, D2 = random_rational_matrix(rng, _rand_n(rng, 1, 3)), random_rational_matrix(rng, _rand_n(rng, 1, 3))
        hull = core.max_convex_hull(IntervalSet([single.wmax(D1), single.wmax(D2)]))
        if single.wmax(block_diag(D1, D2)) != hull:
            _fail(f, "W(D ⊕ C) = conv(W(D) ∪ W(C))", str(hull), D=D1, C=D2)
    return f


@claim("rank-one-bound", "Λ_k(⊕ x_j y_j^t) ⊆ ⋃ W_max(x_j y_j^t); radius bounded by ⊕ norms")
def _r1(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        s = _rand_n(rng, 1, 3)
        factors = []
        for _ in range(s):
            x = rng.integers(0, 5, n).astype(float)
            y = rng.integers(0, 5, n).astype(float)
            factors.append((x, y))
        Z = np.max([core.outer(x, y) for x, y in factors], axis=0)
        for k in range(1, n + 1):
            cover, bound = single.rank_one_sum_bound(factors, k)
            R = single.lambda_k(Z, k)
            if not R.issubset(cover):
                _fail(f, "Λ_k(Z) ⊆ cover", [str(R), str(cover)], Z=Z, k=k)
            if single.lambda_radius(Z, k) > bound:
                _fail(f, "radius <= bound", bound, Z=Z, k=k)
    return f


@claim("identity-block-products", "W and W^k of A⊗B, B⊗A for A = I_r ⊕ A1, B = C ⊕ B1")
def _irblock(rng, trials):
    f = []
    for _ in range(trials):
        r = _rand_n(rng, 1, 3)
        q = _rand_n(rng, 1, 3)
        n = r + q
        alpha = float(rng.integers(1, 6))
        A1 = core.oplus(alpha * core.permutation_matrix(rng.permutation(q)),
                        np.floor(rng.random((q, q)) * (alpha + 1)))
        A1 = np.minimum(A1, alpha)
        B1 = random_int_matrix(rng, q)
        C = random_int_matrix(rng, r)
        zeros = rng.choice(r, int(rng.integers(1, r + 1)), replace=False)
        C[zeros, zeros] = 0.0
        s = int((np.diagonal(C) == 0).sum())
        A = block_diag(np.eye(r), A1)
        B = block_diag(C, B1)
        AB, BA = core.otimes(A, B), core.otimes(B, A)
        top_ab = max(core.sup_norm(core.otimes(A1, B1)), core.sup_norm(C))
        top_ba = max(core.sup_norm(core.otimes(B1, A1)), core.sup_norm(C))
        if not (single.wmax(AB) == single.wmax(BA) == Interval(0.0, top_ab)):
            _fail(f, "W(A⊗B) = W(B⊗A) = [0, ||A1⊗B1|| ⊕ ||C||]",
                  [str(single.wmax(AB)), str(single.wmax(BA))], A=A, B=B)
        for k in range(1, n):
            c = float(np.sort(np.diagonal(AB))[k - 1])
            d = float(np.sort(np.diagonal(BA))[k - 1])
            exp_ab = Interval(0.0 if k <= s else c, top_ab)
            exp_ba = Interval(0.0 if k <= s else d, top_ba)
            if single.wmax_k(AB, k) != exp_ab or single.wmax_k(BA, k) != exp_ba:
                _fail(f, "W^k of the products", k, A=A, B=B)
            if k <= s and single.wmax_k(AB, k) != single.wmax_k(BA, k):
                _fail(f, "W^k(A⊗B) = W^k(B⊗A) for k <= s", k, A=A, B=B)
    return f


# -- joint ranges ----------------------------------------------------------


def random_tuple(rng, m, n, maker=random_rational_matrix) -> np.ndarray:
    return np.stack([maker(rng, n) for _ in range(m)])


@claim("lipschitz", "||f(X) - f(Y)|| <= ||⊕A_i|| (||X|| + ||Y||) ||X - Y||")
def _lip(rng, trials, pairs_per_trial=100):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        m = _rand_n(rng, 1, 3)
        T = random_tuple(rng, m, n)
        k = int(rng.integers(1, n + 1))
        X = random_isometries(rng, n, k, pairs_per_trial)
        Y = random_isometries(rng, n, k, pairs_per_trial)
        fx = np.stack([batch_traces(A, X) for A in T], axis=1)
        fy = np.stack([batch_traces(A, Y) for A in T], axis=1)
        lhs = np.abs(fx - fy).max(axis=1)
        rhs = T.max() * (X.max(axis=(1, 2)) + Y.max(axis=(1, 2))) * np.abs(X - Y).max(axis=(1, 2))
        bad = np.flatnonzero(lhs > rhs)
        for i in bad[:3]:
            _fail(f, "lhs <= rhs", [float(lhs[i]), float(rhs[i])], T=T, X=X[i], Y=Y[i])
        # the library routine agrees with the batch evaluation
        lib = joint.lipschitz_certificate(T, X[0], Y[0])
        if lib != (float(lhs[0]), float(rhs[0])):
            _fail(f, "lipschitz_certificate = batch", [lib, float(lhs[0]), float(rhs[0])], T=T)
    return f


@claim("joint-box", "sampled joint-range points lie in the bounding box")
def _jbox(rng, trials, samples=1000):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        m = _rand_n(rng, 1, 3)
        T = random_tuple(rng, m, n)
        k = int(rng.integers(1, n + 1))
        cloud = joint.joint_sample_cloud(T, k, samples, int(rng.integers(2 ** 31)))
        box = joint.joint_bounding_box(T, k)
        lo = np.array([iv.lo for iv in box.intervals])
        hi = np.array([iv.hi for iv in box.intervals])
        bad = ((cloud.points < lo) | (cloud.points > hi)).any(axis=1)
        if bad.any():
            _fail(f, "cloud ⊆ box", cloud.points[bad][0], T=T, k=k)
        if k == n and not (cloud.points == np.array(joint.joint_exact_full(T))).all():
            _fail(f, "k = n cloud is the trace tuple", cloud.points[0], T=T)
    return f


@claim("joint-properties", "joint k-range: shifts, ⊕, similarity, k = n, principal and block embedding, column deletion")
def _jthm(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 2, 5)
        m = _rand_n(rng, 1, 3)
        T = random_tuple(rng, m, n)
        k = int(rng.integers(1, n + 1))
        Xs = random_isometries(rng, n, k, 20)
        # (i) equal matrices give diagonal points inside W^k(A)
        same = np.stack([T[0]] * m)
        W = single.wmax_k(T[0], k)
        for X in Xs:
            pt = joint.joint_eval(same, X)
            if len(set(pt)) != 1 or pt[0] not in W:
                _fail(f, "(i) diagonal and inside W^k", pt, A=T[0], k=k)
        # (ii) shifts and ⊕-subadditivity, pointwise per isometry
        alphas = rng.integers(0, 9, m).astype(float)
        shifted = np.stack([core.oplus(A, a * np.eye(n)) for A, a in zip(T, alphas)])
        B = random_tuple(rng, m, n)
        TB = np.maximum(T, B)
        for X in Xs:
            base = np.array(joint.joint_eval(T, X))
            if not np.array_equal(np.array(joint.joint_eval(shifted, X)), np.maximum(base, alphas)):
                _fail(f, "(ii) shift by αI", alphas, T=T, X=X)
            if not np.array_equal(np.array(joint.joint_eval(TB, X)),
                                  np.maximum(base, np.array(joint.joint_eval(B, X)))):
                _fail(f, "(ii) ⊕ splits pointwise", None, T=T, B=B, X=X)
        # (iii) unitary similarity: f_{U^t A U}(X) = f_A(U ⊗ X)
        p = rng.permutation(n)
        conj = np.stack([core.conjugate_by_permutation(A, p) for A in T])
        U = core.permutation_matrix(p)
        for X in Xs:
            if joint.joint_eval(conj, X) != joint.joint_eval(T, core.otimes(U, X)):
                _fail(f, "(iii) unitary similarity", p, T=T, X=X)
        # (iv) k = n with scalings
        sc = rng.integers(0, 5, m).astype(float)
        full = joint.joint_sample_cloud(T * sc[:, None, None], n, 5, int(rng.integers(2 ** 31)))
        want = tuple(float(a * core.max_trace(A)) for a, A in zip(sc, T))
        if not (full.points == np.array(want)).all():
            _fail(f, "(iv) W^n of scaled tuple", want, T=T, scales=sc)
        # (v) principal subtuples embed by zero padding
        rows, _ = _principal(rng, T[0])
        sub = T[:, rows][:, :, rows]
        if k <= rows.size:
            for Xb in random_isometries(rng, rows.size, k, 5):
                Y = joint.pad_isometry(Xb, rows, n)
                if joint.joint_eval(sub, Xb) != joint.joint_eval(T, Y):
                    _fail(f, "(v) principal embedding", rows, T=T)
        # (vi) block tuples contain both block ranges
        p2 = _rand_n(rng, 1, 3)
        Bt = random_tuple(rng, m, p2)
        D = np.stack([block_diag(a, b) for a, b in zip(T, Bt)])
        kk = int(rng.integers(1, min(n, p2) + 1))
        for Xa in random_isometries(rng, n, kk, 3):
            if joint.joint_eval(T, Xa) != joint.joint_eval(D, joint.pad_isometry(Xa, range(n), n + p2)):
                _fail(f, "(vi) first block embeds", kk, T=T, B=Bt)
        for Xb in random_isometries(rng, p2, kk, 3):
            if joint.joint_eval(Bt, Xb) != joint.joint_eval(D, joint.pad_isometry(Xb, range(n, n + p2), n + p2)):
                _fail(f, "(vi) second block embeds", kk, T=T, B=Bt)
        # (vii) m - 1 < k < n: a (k+1)-point is a k-point after dropping a column
        for kk in range(m, n):
            for X in random_isometries(rng, n, kk + 1, 5):
                Y = joint.drop_dominated_column(T, X)
                if Y.k != kk or joint.joint_eval(T, Y) != joint.joint_eval(T, X):
                    _fail(f, "(vii) column deletion", kk, T=T, X=X)
    return f


# -- permutation ranges ----------------------------------------------------


def _trace_tuple(T):
    return tuple(core.max_trace(A) for A in T)


@claim("c-vs-C", "W^C with C = diag(c) equals W^c")
def _cC(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 6)
        m = _rand_n(rng, 1, 3)
        T = random_tuple(rng, m, n)
        c = rng.integers(0, 9, n) / rng.integers(1, 4, n)
        if perm.joint_C_range(T, np.diag(c)) != perm.joint_c_range(T, c):
            _fail(f, "W^diag(c) = W^c", None, T=T, c=c)
    return f


@claim("c-set-bounds", "projection inclusion and r <= |W^c| <= n!")
def _cbounds(rng, trials):
    f = []
    for t in range(trials):
        n = _rand_n(rng, 1, 5)
        m = _rand_n(rng, 1, 3)
        T = random_tuple(rng, m, n)
        if t % 4 == 0:
            for A in T:
                np.fill_diagonal(A, A[0, 0])
        c = rng.integers(0, 9, n).astype(float)
        J = perm.joint_c_range(T, c)
        singles = [perm.c_range(A, c) for A in T]
        P = perm.product(*singles)
        if not J.issubset(P):
            _fail(f, "W^c(T) ⊆ ×_l W^c(A_l)", None, T=T, c=c)
        if all(len(s) == 1 for s in singles) and J != P:
            _fail(f, "equality for singletons", None, T=T, c=c)
        r = max(len(s) for s in singles)
        if not r <= len(J) <= math.factorial(n):
            _fail(f, "r <= |W^c| <= n!", [r, len(J)], T=T, c=c)
    return f


@claim("C-properties", "joint C-range: shifts, ⊕ in A and C, similarity, transpose, αI, αC ⊕ βI")
def _Cthm(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        m = _rand_n(rng, 1, 3)
        T = random_tuple(rng, m, n, random_int_matrix)
        B = random_tuple(rng, m, n, random_int_matrix)
        C = random_int_matrix(rng, n)
        D = random_int_matrix(rng, n)
        W = perm.joint_C_range(T, C)
        trC = core.max_trace(C)
        alphas = rng.integers(0, 6, m).astype(float)
        shifted = np.stack([core.oplus(A, a * np.eye(n)) for A, a in zip(T, alphas)])
        if perm.joint_C_range(shifted, C) != W.oplus(perm.PointSet((tuple(alphas * trC),))):
            _fail(f, "(i) shift", alphas, T=T, C=C)
        if not perm.joint_C_range(np.maximum(T, B), C).issubset(W.oplus(perm.joint_C_range(B, C))):
            _fail(f, "(ii) W^C(A ⊕ B) ⊆ W^C(A) ⊕ W^C(B)", None, T=T, B=B, C=C)
        if not perm.joint_C_range(T, np.maximum(C, D)).issubset(W.oplus(perm.joint_C_range(T, D))):
            _fail(f, "(ii) W^{C⊕D} ⊆ W^C ⊕ W^D", None, T=T, C=C, D=D)
        p = rng.permutation(n)
        conj = np.stack([core.conjugate_by_permutation(A, p) for A in T])
        if perm.joint_C_range(conj, C) != W:
            _fail(f, "(iii) unitary similarity of the tuple", p, T=T, C=C)
        if perm.joint_C_range(np.transpose(T, (0, 2, 1)), C) != perm.joint_C_range(T, C.T):
            _fail(f, "(iv) transpose", None, T=T, C=C)
        alpha = float(rng.integers(0, 6))
        if perm.joint_C_range(T, alpha * np.eye(n)) != perm.PointSet(
                (tuple(alpha * v for v in _trace_tuple(T)),)):
            _fail(f, "(v) C = αI", alpha, T=T)
        beta = float(rng.integers(0, 6))
        lhs = perm.joint_C_range(T, core.oplus(alpha * C, beta * np.eye(n)))
        rhs = W.scale(alpha).oplus(perm.PointSet((tuple(beta * v for v in _trace_tuple(T)),)))
        if lhs != rhs:
            _fail(f, "(vi) αC ⊕ βI", [alpha, beta], T=T, C=C)
        q = rng.permutation(n)
        if perm.joint_C_range(T, core.conjugate_by_permutation(C, q)) != W:
            _fail(f, "(vii) unitary similarity of C", q, T=T, C=C)
    return f


@claim("c-properties", "joint c-range: shifts, ⊕, similarity, transpose, constant weights")
def _ccor(rng, trials):
    f = []
    for _ in range(trials):
        n = _rand_n(rng, 1, 5)
        m = _rand_n(rng, 1, 3)
        T = random_tuple(rng, m, n, random_int_matrix)
        B = random_tuple(rng, m, n, random_int_matrix)
        c = rng.integers(0, 9, n).astype(float)
        d = rng.integers(0, 9, n).astype(float)
        W = perm.joint_c_range(T, c)
        alphas = rng.integers(0, 6, m).astype(float)
        shifted = np.stack([core.oplus(A, a * np.eye(n)) for A, a in zip(T, alphas)])
        if perm.joint_c_range(shifted, c) != W.oplus(perm.PointSet((tuple(alphas * c.max()),))):
            _fail(f, "(i) shift", alphas, T=T, c=c)
        if not perm.joint_c_range(np.maximum(T, B), c).issubset(W.oplus(perm.joint_c_range(B, c))):
            _fail(f, "(ii) tuple ⊕", None, T=T, B=B, c=c)
        if not perm.joint_c_range(T, np.maximum(c, d)).issubset(W.oplus(perm.joint_c_range(T, d))):
            _fail(f, "(ii) weight ⊕", None, T=T, c=c, d=d)
        p = rng.permutation(n)
        conj = np.stack([core.conjugate_by_permutation(A, p) for A in T])
        if perm.joint_c_range(conj, c) != W:
            _fail(f, "(iii) unitary similarity", p, T=T, c=c)
        if perm.joint_c_range(np.transpose(T, (0, 2, 1)), c) != W:
            _fail(f, "(iv) transpose", None, T=T, c=c)
        for A in T:
            if perm.c_range(A.T, c) != perm.c_range(A, c):
                _fail(f, "W^c(A^t) = W^c(A)", None, A=A, c=c)
        c1 = float(rng.integers(0, 9))
        if perm.joint_c_range(T, np.full(n, c1)) != perm.PointSet(
                (tuple(c1 * v for v in _trace_tuple(T)),)):
            _fail(f, "(v) constant weights", c1, T=T)
    return f


# ----------------------------------------------------------------------


def claim_seed(seed: int, claim_id: str) -> np.random.Generator:
    return np.random.default_rng([int(seed), zlib.crc32(claim_id.encode())])


def run_claim(claim_id: str, seed: int, trials: int, **kwargs) -> OracleReport:
    fn, _ = CLAIMS[claim_id]
    rng = claim_seed(seed, claim_id)
    failures = fn(rng, trials, **kwargs)
    return OracleReport(claim_id, trials, int(seed), failures)


def run_claim_suite(seed: int, trials: int, claims=None) -> list:
    """Run every registered claim (or the named subset) on seeded random instances."""
    if trials < 1:
        raise MaxAlgebraError("trials must be at least 1")
    ids = list(CLAIMS) if claims is None else list(claims)
    return [run_claim(cid, seed, trials) for cid in ids]
