"""From raw incomplete elections to complete, size-normalized samples.

An incomplete election is viewed as a bipartite graph between voters and
candidates (an edge when the voter ranks the candidate).  A complete
sub-election is a biclique, and we want one with many edges.  Once the
candidate set ``C`` is fixed the best voter set is every voter ranking all of
``C``, so the search runs over candidate sets only.
"""

from __future__ import annotations

import numpy as np

from .core import Election, ElectionError, restrict


def _coverage(e: Election) -> np.ndarray:
    A = np.zeros((e.n, e.m), dtype=bool)
    for i, v in enumerate(e.votes):
        A[i, list(v)] = True
    return A


class _BicliqueSearch:
    def __init__(self, A: np.ndarray):
        self.A = A
        self.n, self.m = A.shape

    def voters(self, cand: np.ndarray) -> np.ndarray:
        return self.A[:, cand].all(axis=1)

    def score(self, cand: np.ndarray) -> int:
        k = int(cand.sum())
        return k * int(self.voters(cand).sum()) if k else 0

    def descend(self, cand: np.ndarray) -> tuple[int, np.ndarray]:
        """Repeatedly drop the candidate whose removal keeps the most voters;
        return the best set seen along the way."""
        cand = cand.copy()
        best, best_set = self.score(cand), cand.copy()
        while cand.sum() > 1:
            missing = (~self.A) & cand[None, :]
            miss = missing.sum(axis=1)
            base = int((miss == 0).sum())
            gain = missing[miss == 1].sum(axis=0)
            gain = np.where(cand, gain, -1)
            c = int(np.argmax(gain))
            cand[c] = False
            s = (base + int(gain[c])) * int(cand.sum())
            if s > best:
                best, best_set = s, cand.copy()
        return best, best_set

    def local_search(self, cand: np.ndarray, score: int) -> tuple[int, np.ndarray]:
        """First-improvement hill climbing over single additions and removals."""
        cand = cand.copy()
        improved = True
        while improved:
            improved = False
            for c in range(self.m):
                cand[c] = not cand[c]
                s = self.score(cand)
                if s > score:
                    score, improved = s, True
                else:
                    cand[c] = not cand[c]
        return score, cand


def max_biclique(
    e: Election, effort: int = 200, seed: int | None = 0
) -> tuple[list[int], list[int], int]:
    """Heuristic maximum-edge biclique of the voter/candidate graph.

    Starts are the full candidate set, each voter's ranked set and ``effort``
    random intersections of a few voters' sets.  Each start is greedily
    thinned and then hill-climbed.  The earliest start wins ties.

    Returns
    -------
    candidates, voters : list of int
    edges : int
    """
    A = _coverage(e)
    search = _BicliqueSearch(A)
    rng = np.random.default_rng(seed)
    starts = [np.ones(e.m, dtype=bool)] + [A[i].copy() for i in range(e.n)]
    for _ in range(max(0, effort)):
        k = int(rng.integers(1, min(4, e.n) + 1))
        chosen = rng.choice(e.n, size=k, replace=False)
        starts.append(A[chosen].all(axis=0))

    best, best_set = -1, None
    seen: set[bytes] = set()
    for start in starts:
        key = np.packbits(start).tobytes()
        if key in seen or not start.any():
            continue
        seen.add(key)
        s, cand = search.descend(start)
        s, cand = search.local_search(cand, s)
        if s > best:
            best, best_set = s, cand
    cands = np.flatnonzero(best_set).tolist()
    voters = np.flatnonzero(search.voters(best_set)).tolist()
    return cands, voters, best


def complete_election(e: Election, effort: int = 200, seed: int | None = 0) -> Election:
    """Largest complete sub-election the heuristic finds.

    Kept votes are the source votes restricted to the kept candidates; no
    missing preference is imputed.  A complete input comes back unchanged.
    """
    if e.is_complete:
        return e
    cands, voters, _ = max_biclique(e, effort, seed)
    return restrict(e, keep_candidates=cands, keep_voters=voters)


def is_relevant(e: Election, min_candidates: int = 15) -> bool:
    e.require_complete()
    return e.m >= min_candidates


def normalize_sample(e: Election, m_out: int = 15, n_out: int = 30, seed: int | None = None) -> Election:
    """Random sub-election with ``m_out`` candidates and ``n_out`` voters.

    Candidates are drawn without replacement, then voters with replacement,
    both from one generator seeded with ``seed``.
    """
    e.require_complete()
    if e.m < m_out:
        raise ElectionError(f"election has {e.m} candidates, fewer than {m_out}")
    if m_out < 1 or n_out < 1:
        raise ElectionError("sample sizes must be positive")
    rng = np.random.default_rng(seed)
    cands = np.sort(rng.choice(e.m, size=m_out, replace=False))
    voters = rng.integers(0, e.n, size=n_out)
    keep = set(cands.tolist())
    relabel = {c: i for i, c in enumerate(cands.tolist())}
    votes = [[relabel[c] for c in e.votes[v] if c in keep] for v in voters.tolist()]
    return Election([e.labels[c] for c in cands.tolist()], votes)


def exhaustive_biclique(e: Election) -> int:
    """Exact maximum edge count by enumerating candidate subsets (small ``m`` only)."""
    if e.m > 20:
        raise ElectionError("exhaustive search limited to 20 candidates")
    A = _coverage(e)
    masks = np.zeros(e.n, dtype=np.int64)
    for c in range(e.m):
        masks |= A[:, c].astype(np.int64) << c
    best = 0
    for sub in range(1, 1 << e.m):
        k = bin(sub).count("1")
        best = max(best, k * int(((masks & sub) == sub).sum()))
    return best
