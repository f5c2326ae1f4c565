"""Slow, obviously-correct reference implementations used as test oracles."""

from __future__ import annotations

import itertools

import numpy as np

from electra.core import Election, restrict


def random_election(rng: np.random.Generator, m: int, n: int) -> Election:
    return Election.from_votes([rng.permutation(m).tolist() for _ in range(n)], m)


def structured_election(rng: np.random.Generator, m: int, n: int, swaps: int = 2) -> Election:
    """Votes a few adjacent swaps away from a common base vote.

    Impartial culture almost never lands in a restricted domain; these
    elections hit every domain combination.
    """
    base = rng.permutation(m)
    votes = []
    for _ in range(n):
        v = list(base)
        for _ in range(int(rng.integers(0, swaps + 1))):
            if m > 1:
                i = int(rng.integers(0, m - 1))
                v[i], v[i + 1] = v[i + 1], v[i]
        votes.append(v)
    return Election.from_votes(votes, m)


def mixed_election(rng: np.random.Generator, m: int, n: int) -> Election:
    return structured_election(rng, m, n) if rng.random() < 0.6 else random_election(rng, m, n)


def kt(u, v) -> int:
    pu = {c: i for i, c in enumerate(u)}
    pv = {c: i for i, c in enumerate(v)}
    return sum(
        1 for a, b in itertools.combinations(u, 2) if (pu[a] < pu[b]) != (pv[a] < pv[b])
    )


def kemeny_brute(e: Election) -> tuple[int, tuple[int, ...]]:
    best = None
    for r in itertools.permutations(range(e.m)):
        s = sum(kt(r, v) for v in e.votes)
        if best is None or s < best[0]:
            best = (s, r)
    return best


def pref(vote, x, y) -> bool:
    return vote.index(x) < vote.index(y)


def is_sp_brute(e: Election) -> bool:
    """Some axis on which no vote ranks a candidate below both its neighbours' sides."""
    for axis in itertools.permutations(range(e.m)):
        if all(
            not (pref(v, a, b) and pref(v, c, b))
            for v in e.votes
            for a, b, c in itertools.combinations(axis, 3)
        ):
            return True
    return False


def is_sc_brute(e: Election) -> bool:
    for order in itertools.permutations(range(e.n)):
        ok = True
        for x, y in itertools.combinations(range(e.m), 2):
            seq = [pref(e.votes[i], x, y) for i in order]
            if sum(a != b for a, b in zip(seq, seq[1:])) > 1:
                ok = False
                break
        if ok:
            return True
    return False


def is_gs_brute(e: Election) -> bool:
    """Every candidate subset of size >= 2 splits into two blocks that each
    voter ranks one entirely above the other."""
    for r in range(2, e.m + 1):
        for A in itertools.combinations(range(e.m), r):
            ok = False
            for k in range(1, r):
                for A1 in itertools.combinations(A, k):
                    if A[0] not in A1:
                        continue
                    A2 = [x for x in A if x not in A1]
                    if all(
                        all(pref(v, x, y) for x in A1 for y in A2) or all(pref(v, y, x) for x in A1 for y in A2)
                        for v in e.votes
                    ):
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False
    return True


def is_value_restricted_brute(e: Election) -> bool:
    for a, b, c in itertools.combinations(range(e.m), 3):
        cyc1 = [(a, b, c), (b, c, a), (c, a, b)]
        cyc2 = [(a, c, b), (c, b, a), (b, a, c)]
        for cyc in (cyc1, cyc2):
            if all(any(pref(v, x, y) and pref(v, y, z) for v in e.votes) for x, y, z in cyc):
                return False
    return True


MEMBERSHIP = {
    "single_peaked": is_sp_brute,
    "single_crossing": is_sc_brute,
    "group_separable": is_gs_brute,
    "value_restricted": is_value_restricted_brute,
}


def deletion_brute(e: Election, domain: str, mode: str) -> int:
    member = MEMBERSHIP[domain]
    universe = e.n if mode == "voters" else e.m
    for k in range(universe):
        for drop in itertools.combinations(range(universe), k):
            keep = [i for i in range(universe) if i not in drop]
            sub = restrict(e, keep_voters=keep) if mode == "voters" else restrict(e, keep_candidates=keep)
            if member(sub):
                return k
    return universe - 1  # a single voter or candidate is always in every domain


# Forbidden configurations written directly from their defining patterns.
def _pattern(kind, votes, cands) -> bool:
    if kind == "alpha":
        v, w = votes
        a, b, c, d = cands
        return (pref(v, a, b) and pref(v, b, c) and pref(v, d, b)
                and pref(w, c, b) and pref(w, b, a) and pref(w, d, b))
    if kind == "beta":
        v, w = votes
        a, b, c, d = cands
        return list(v).index(a) < list(v).index(b) < list(v).index(c) < list(v).index(d) and \
            list(w).index(b) < list(w).index(d) < list(w).index(a) < list(w).index(c)
    if kind == "delta":
        v1, v2, v3, v4 = votes
        a, b, c, d = cands
        return (pref(v1, a, b) and pref(v1, c, d) and pref(v2, a, b) and pref(v2, d, c)
                and pref(v3, b, a) and pref(v3, c, d) and pref(v4, b, a) and pref(v4, d, c))
    a, b, c = cands
    v1, v2, v3 = votes

    def top(v, x):
        return all(pref(v, x, y) for y in cands if y != x)

    def bottom(v, x):
        return all(pref(v, y, x) for y in cands if y != x)

    def middle(v, x):
        return not top(v, x) and not bottom(v, x)

    if kind == "best":
        return top(v1, a) and top(v2, b) and top(v3, c)
    if kind == "worst":
        return bottom(v1, c) and bottom(v2, b) and bottom(v3, a)
    if kind == "medium":
        return middle(v1, a) and middle(v2, b) and middle(v3, c)
    if kind == "value":
        return (pref(v1, a, b) and pref(v1, b, c) and pref(v2, b, c) and pref(v2, c, a)
                and pref(v3, c, a) and pref(v3, a, b))
    raise ValueError(kind)


_SHAPE = {"alpha": (2, 4), "beta": (2, 4), "delta": (4, 4), "best": (3, 3),
          "worst": (3, 3), "medium": (3, 3), "value": (3, 3)}


def find_configuration_brute(e: Election, kind: str):
    """Lexicographically first (voters, candidates) realizing ``kind``."""
    votes = [list(v) for v in e.votes]
    if kind == "gamma":
        return _gamma_brute(votes, e.m)
    k_v, k_c = _SHAPE[kind]
    for vs in itertools.permutations(range(e.n), k_v):
        if kind == "delta":
            cand_iter = (
                (a, b, c, d)
                for a, b in itertools.permutations(range(e.m), 2)
                for c, d in itertools.permutations(range(e.m), 2)
                if {a, b} != {c, d}
            )
        else:
            cand_iter = itertools.permutations(range(e.m), k_c)
        for cs in cand_iter:
            if _pattern(kind, [votes[i] for i in vs], cs):
                return vs, tuple(cs)
    return None


def _gamma_brute(votes, m):
    pairs = list(itertools.permutations(range(m), 2))
    for vs in itertools.permutations(range(len(votes)), 3):
        v, w, u = (votes[i] for i in vs)
        ab = [(a, b) for a, b in pairs if pref(v, b, a) and pref(w, a, b) and pref(u, a, b)]
        cd = [(c, d) for c, d in pairs if pref(v, c, d) and pref(w, d, c) and pref(u, c, d)]
        ef = [(x, y) for x, y in pairs if pref(v, x, y) and pref(w, x, y) and pref(u, y, x)]
        if ab and cd and ef:
            return vs, ab[0] + cd[0] + ef[0]
    return None


def assignment_brute(C: np.ndarray) -> float:
    k = len(C)
    return min(sum(C[i, p[i]] for i in range(k)) for p in itertools.permutations(range(k)))


def biclique_brute(votes, m) -> int:
    """Maximum |V'|·|C'| over voter subsets (each voter subset's best C' is
    the intersection of their ranked candidate sets)."""
    sets = [set(v) for v in votes]
    best = 0
    for r in range(1, len(sets) + 1):
        for vs in itertools.combinations(range(len(sets)), r):
            common = set.intersection(*(sets[i] for i in vs))
            best = max(best, r * len(common))
    return best
