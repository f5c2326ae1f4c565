"""Vote similarity measures, exact Kemeny aggregation and correlations."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .core import Election, ElectionError, Vote

KEMENY_MAX_M = 24


class InstanceTooLargeError(ElectionError):
    """Raised instead of silently falling back to a heuristic."""


class UndefinedCorrelationError(ValueError):
    """Raised when a correlation coefficient has a zero-variance input."""


# --- Kendall tau -----------------------------------------------------------

def _count_inversions(seq: list[int]) -> int:
    """Number of inversions in ``seq`` by merge sort, O(m log m)."""
    if len(seq) < 2:
        return 0
    buf = list(seq)
    inv = 0
    width = 1
    n = len(buf)
    while width < n:
        merged = []
        for lo in range(0, n, 2 * width):
            left = buf[lo:lo + width]
            right = buf[lo + width:lo + 2 * width]
            i = j = 0
            while i < len(left) and j < len(right):
                if right[j] < left[i]:
                    merged.append(right[j])
                    inv += len(left) - i
                    j += 1
                else:
                    merged.append(left[i])
                    i += 1
            merged.extend(left[i:])
            merged.extend(right[j:])
        buf = merged
        width *= 2
    return inv


def kendall_tau(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of candidate pairs ordered differently by ``u`` and ``v``."""
    if len(u) != len(v) or set(u) != set(v) or len(set(u)) != len(u):
        raise ValueError("votes must be rankings of the same candidate set")
    pos = {c: i for i, c in enumerate(v)}
    return _count_inversions([pos[c] for c in u])


def pairwise_kt(e: Election) -> np.ndarray:
    """Symmetric ``(n, n)`` matrix of KT distances between votes."""
    pos = e.positions
    n, m = pos.shape
    iu, ju = np.triu_indices(m, 1)
    # sign of position difference for every candidate pair, per vote
    orient = pos[:, iu] < pos[:, ju]
    o = orient.astype(np.int32)
    agree = o @ o.T + (1 - o) @ (1 - o).T
    return (len(iu) - agree).astype(np.int64)


def majority_matrix(e: Election) -> np.ndarray:
    """``W[a, b]`` = number of voters preferring ``a`` to ``b``."""
    pos = e.positions
    return (pos[:, :, None] < pos[:, None, :]).sum(axis=0).astype(np.int64)


# --- Similarity summary --------------------------------------------------------

@dataclass(frozen=True)
class SimilaritySummary:
    max_kt: int
    avg_kt: float
    disagreeing_pairs: int
    kemeny_score: int | None

    def as_dict(self) -> dict:
        return asdict(self)


def disagreeing_pairs(e: Election) -> int:
    W = majority_matrix(e)
    iu, ju = np.triu_indices(e.m, 1)
    return int(np.count_nonzero((W[iu, ju] > 0) & (W[ju, iu] > 0)))


def similarity_summary(e: Election, kemeny_score: bool = True) -> SimilaritySummary:
    """Maximum and average pairwise KT distance, disagreeing pairs, Kemeny score."""
    e.require_complete()
    if e.n < 2:
        raise ElectionError("pairwise similarity needs at least two votes")
    D = pairwise_kt(e)
    iu = np.triu_indices(e.n, 1)
    vals = D[iu]
    score = kemeny(e)[0] if kemeny_score else None
    return SimilaritySummary(
        max_kt=int(vals.max()),
        avg_kt=float(vals.sum()) / len(vals),
        disagreeing_pairs=disagreeing_pairs(e),
        kemeny_score=score,
    )


# --- Kemeny ---------------------------------------------------------------------

def _popcount_layers(m: int) -> list[np.ndarray]:
    sets = np.arange(1 << m, dtype=np.int64)
    counts = np.zeros(1 << m, dtype=np.int8)
    for c in range(m):
        counts += ((sets >> c) & 1).astype(np.int8)
    return [np.flatnonzero(counts == k) for k in range(m + 1)]


def _subset_sums(weights: np.ndarray) -> np.ndarray:
    """``out[S] = sum(weights[c] for c in S)`` for every bitmask ``S``."""
    out = np.zeros(1, dtype=np.int64)
    for w in weights:
        out = np.concatenate([out, out + int(w)])
    return out


def kemeny(e: Election) -> tuple[int, Vote]:
    """Exact Kemeny score and ranking by dynamic programming over subsets.

    ``G[S]`` is the cheapest way to order the candidate set ``S`` below every
    candidate outside it.  Among optimal rankings the lexicographically
    smallest candidate sequence is returned.
    """
    e.require_complete()
    m = e.m
    if m > KEMENY_MAX_M:
        raise InstanceTooLargeError(f"exact Kemeny limited to m <= {KEMENY_MAX_M}, got {m}")
    W = majority_matrix(e)
    full = (1 << m) - 1
    # cost of putting c on top of S: voters preferring some x in S to c
    precompute = m <= 18
    Q = [_subset_sums(W[:, c]) for c in range(m)] if precompute else None

    INF = np.iinfo(np.int64).max // 4
    G = np.full(1 << m, INF, dtype=np.int64)
    G[0] = 0
    for layer in _popcount_layers(m)[1:]:
        best = np.full(len(layer), INF, dtype=np.int64)
        for c in range(m):
            has = ((layer >> c) & 1).astype(bool)
            if not has.any():
                continue
            sets = layer[has]
            rest = sets & ~(1 << c)
            q = Q[c][rest] if precompute else _subset_sums(W[:, c])[rest]
            cand = G[rest] + q
            best[has] = np.minimum(best[has], cand)
        G[layer] = best

    ranking = []
    S = full
    while S:
        for c in range(m):
            if S >> c & 1:
                rest = S & ~(1 << c)
                q = Q[c][rest] if precompute else int(sum(W[x, c] for x in range(m) if rest >> x & 1))
                if G[rest] + q == G[S]:
                    ranking.append(c)
                    S = rest
                    break
    return int(G[full]), tuple(ranking)


def kemeny_score_of(e: Election, ranking: Sequence[int]) -> int:
    """Summed KT distance from ``ranking`` to every vote."""
    return sum(kendall_tau(v, ranking) for v in e.votes)


# --- Correlation ----------------------------------------------------------------

def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two equal-length vectors")
    if len(x) < 2:
        raise UndefinedCorrelationError("correlation undefined for fewer than two points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for a constant input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def spearman_rank(r1: Sequence[int], r2: Sequence[int]) -> float:
    """Spearman coefficient of two strict rankings of the same candidates."""
    if len(r1) != len(r2) or set(r1) != set(r2) or len(set(r1)) != len(r1):
        raise ValueError("rankings must order the same candidate set")
    m = len(r1)
    if m < 2:
        raise UndefinedCorrelationError("spearman needs at least two candidates")
    pos2 = {c: i for i, c in enumerate(r2)}
    d2 = sum((i - pos2[c]) ** 2 for i, c in enumerate(r1))
    return 1.0 - 6.0 * d2 / (m * (m * m - 1))


# --- Parts of votes ---------------------------------------------------------------

PART_NAMES = ("top", "middle", "bottom")


@dataclass(frozen=True)
class PartIntersection:
    part: str
    positions: tuple[int, int]  # 1-based inclusive
    pairwise: float
    total: int
    common: tuple[int, ...]
    canonical: bool


def part_bounds(m: int) -> dict[str, tuple[int, int]]:
    """0-based half-open position ranges of the top/middle/bottom parts.

    For ``m = 15`` these are positions 1-8, 5-12 and 8-15; other sizes scale
    the part length to ``ceil(8m/15)``.
    """
    size = max(1, math.ceil(8 * m / 15))
    mid = math.ceil((m - size) / 2)
    return {"top": (0, size), "middle": (mid, mid + size), "bottom": (m - size, m)}


def part_intersections(e: Election) -> dict[str, PartIntersection]:
    e.require_complete()
    if e.n < 2:
        raise ElectionError("part intersections need at least two votes")
    arr = e.array
    iu, ju = np.triu_indices(e.n, 1)
    out = {}
    for name, (lo, hi) in part_bounds(e.m).items():
        member = np.zeros((e.n, e.m), dtype=np.int32)
        np.put_along_axis(member, arr[:, lo:hi], 1, axis=1)
        inter = member @ member.T
        common = np.flatnonzero(member.all(axis=0))
        out[name] = PartIntersection(
            part=name,
            positions=(lo + 1, hi),
            pairwise=float(inter[iu, ju].mean()),
            total=len(common),
            common=tuple(int(c) for c in common),
            canonical=e.m == 15,
        )
    return out


def part_restricted_kt(e: Election, part: str) -> float | None:
    """Average pairwise KT distance restricted to the part's total intersection.

    Returns ``None`` when fewer than two candidates appear in the part of
    every vote.
    """
    from .core import restrict

    common = part_intersections(e)[part].common
    if len(common) < 2:
        return None
    sub = restrict(e, keep_candidates=common)
    D = pairwise_kt(sub)
    return float(D[np.triu_indices(sub.n, 1)].mean())


# --- Temporal measures ------------------------------------------------------------

@dataclass(frozen=True)
class TemporalProfile:
    avg_ordering_change: float
    max_ordering_change: int
    fluctuation_per_position: tuple[int, ...]
    avg_fluctuation: float
    kt_temporal_pcc: float | None  # None when undefined (zero variance)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["fluctuation_per_position"] = list(self.fluctuation_per_position)
        return d


def temporal_profile(e: Election, shuffled: bool = False, seed: int | None = None) -> TemporalProfile:
    """Change statistics along the vote order, which is taken as time.

    With ``shuffled=True`` the votes are first permuted with ``seed`` to give
    the random-order baseline.
    """
    e.require_complete()
    if e.n < 2:
        raise ElectionError("temporal measures need at least two votes")
    arr = e.array
    pos = e.positions
    if shuffled:
        order = np.random.default_rng(seed).permutation(e.n)
        arr = arr[order]
        pos = pos[order]
    m = e.m
    iu, ju = np.triu_indices(m, 1)
    orient = pos[:, iu] < pos[:, ju]
    changes = (orient[1:] != orient[:-1]).sum(axis=0)
    fluct = (arr[1:] != arr[:-1]).sum(axis=0)

    o = orient.astype(np.int32)
    D = len(iu) - (o @ o.T + (1 - o) @ (1 - o).T)
    a, b = np.triu_indices(e.n, 1)
    kts = D[a, b]
    gaps = b - a  # votes strictly between plus one
    try:
        pcc = pearson(kts, gaps)
    except UndefinedCorrelationError:
        pcc = None
    return TemporalProfile(
        avg_ordering_change=float(changes.mean()) if len(iu) else 0.0,
        max_ordering_change=int(changes.max()) if len(iu) else 0,
        fluctuation_per_position=tuple(int(x) for x in fluct),
        avg_fluctuation=float(fluct.mean()),
        kt_temporal_pcc=pcc,
    )


# --- Parameter budget ------------------------------------------------------------

@dataclass(frozen=True)
class Magnitude:
    base: float
    exponent: float
    log10: float
    text: str


def _magnitude(base: float, exponent: float) -> Magnitude:
    log10 = exponent * math.log10(base)
    if log10 < 15:
        value = base ** exponent
        text = str(round(value)) if abs(value - round(value)) < 1e-9 * max(1.0, value) else f"{value:.6g}"
    else:
        exp = math.floor(log10)
        mant = 10 ** (log10 - exp)
        if round(mant, 2) >= 10:
            mant /= 10
            exp += 1
        text = f"{mant:.2f}e{exp}"
    return Magnitude(base=base, exponent=exponent, log10=log10, text=text)


@dataclass(frozen=True)
class ParameterBudget:
    candidates: Magnitude
    kemeny_score: Magnitude
    avg_kt: Magnitude

    def as_dict(self) -> dict:
        return {
            name: {"log10": getattr(self, name).log10, "value": getattr(self, name).text}
            for name in ("candidates", "kemeny_score", "avg_kt")
        }


def parameter_budget(
    e: Election | None = None,
    *,
    m: int | None = None,
    kemeny_score: float | None = None,
    avg_kt: float | None = None,
) -> ParameterBudget:
    """Exponential factors ``2^m``, ``1.53^k`` and ``16^d`` of the
    parameterized Kemeny algorithms, with ``k`` the Kemeny score and ``d`` the
    average KT distance.  Explicit keyword values override the election.
    """
    if e is not None and (m is None or kemeny_score is None or avg_kt is None):
        s = similarity_summary(e)
        m = e.m if m is None else m
        kemeny_score = s.kemeny_score if kemeny_score is None else kemeny_score
        avg_kt = s.avg_kt if avg_kt is None else avg_kt
    if m is None or kemeny_score is None or avg_kt is None:
        raise ValueError("need an election or all of m, kemeny_score, avg_kt")
    return ParameterBudget(
        candidates=_magnitude(2, m),
        kemeny_score=_magnitude(1.53, kemeny_score),
        avg_kt=_magnitude(16, avg_kt),
    )
