"""Forbidden configurations characterizing restricted domains.

A configuration is a handful of voters (each in a fixed *role*) together with
a tuple of candidates on which the voters' preferences form a given pattern:

=========  ======  ==========  =========================================
kind       voters  candidates  absent in
=========  ======  ==========  =========================================
alpha      2       4           single-peaked (with worst)
beta       2       4           group-separable (with medium)
gamma      3       6*          single-crossing (with delta)
delta      4       4*          single-crossing (with gamma)
best       3       3           best-restricted
worst      3       3           worst-restricted, single-peaked
medium     3       3           medium-restricted, group-separable
value      3       3           value-restricted
=========  ======  ==========  =========================================

(*) candidates of different pairs may coincide.

In every kind the roles are mutually exclusive, so for a fixed candidate
tuple the lexicographically first voter tuple takes the first voter of each
role.  Searches return the witness that is lexicographically first by
``(voters, candidates)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..core import Election

KINDS = ("alpha", "beta", "gamma", "delta", "best", "worst", "medium", "value")

ARITY = {
    "alpha": (2, 4),
    "beta": (2, 4),
    "gamma": (3, 6),
    "delta": (4, 4),
    "best": (3, 3),
    "worst": (3, 3),
    "medium": (3, 3),
    "value": (3, 3),
}


@dataclass(frozen=True)
class ForbiddenConfigurationWitness:
    kind: str
    voters: tuple[int, ...]
    candidates: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"kind": self.kind, "voters": list(self.voters), "candidates": list(self.candidates)}


# Role predicates.  ``P`` maps a candidate letter to an (n, K) array holding
# each voter's position of that candidate for every candidate tuple.
def _roles(kind: str):
    def above(x, y):
        return lambda P: P[x] < P[y]

    def all_of(*preds):
        return lambda P: np.logical_and.reduce([p(P) for p in preds])

    def chain(*xs):
        return all_of(*(above(a, b) for a, b in zip(xs, xs[1:])))

    def either(*preds):
        return lambda P: np.logical_or.reduce([p(P) for p in preds])

    if kind == "alpha":
        return [
            all_of(chain("a", "b", "c"), above("d", "b")),
            all_of(chain("c", "b", "a"), above("d", "b")),
        ]
    if kind == "beta":
        return [chain("a", "b", "c", "d"), chain("b", "d", "a", "c")]
    if kind == "delta":
        return [
            all_of(above("a", "b"), above("c", "d")),
            all_of(above("a", "b"), above("d", "c")),
            all_of(above("b", "a"), above("c", "d")),
            all_of(above("b", "a"), above("d", "c")),
        ]
    if kind == "best":
        return [
            all_of(above("a", "b"), above("a", "c")),
            all_of(above("b", "a"), above("b", "c")),
            all_of(above("c", "a"), above("c", "b")),
        ]
    if kind == "worst":
        return [
            all_of(above("a", "c"), above("b", "c")),
            all_of(above("a", "b"), above("c", "b")),
            all_of(above("b", "a"), above("c", "a")),
        ]
    if kind == "medium":
        return [
            either(chain("b", "a", "c"), chain("c", "a", "b")),
            either(chain("a", "b", "c"), chain("c", "b", "a")),
            either(chain("a", "c", "b"), chain("b", "c", "a")),
        ]
    if kind == "value":
        return [chain("a", "b", "c"), chain("b", "c", "a"), chain("c", "a", "b")]
    raise ValueError(f"no role table for {kind!r}")


def _candidate_tuples(kind: str, m: int) -> np.ndarray:
    if kind in ("alpha", "beta"):
        rows = list(itertools.permutations(range(m), 4))
    elif kind == "delta":
        rows = [
            (a, b, c, d)
            for a, b in itertools.permutations(range(m), 2)
            for c, d in itertools.permutations(range(m), 2)
            if {a, b} != {c, d}
        ]
    else:
        rows = list(itertools.permutations(range(m), 3))
    return np.array(rows, dtype=np.intp).reshape(-1, ARITY[kind][1])


def _lexmin(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def _find_by_candidate_tuples(e: Election, kind: str) -> ForbiddenConfigurationWitness | None:
    n_roles, arity = ARITY[kind]
    T = _candidate_tuples(kind, e.m)
    if len(T) == 0:
        return None
    pos = e.positions
    P = {letter: pos[:, T[:, i]] for i, letter in enumerate("abcd"[:arity])}
    firsts = []
    valid = np.ones(len(T), dtype=bool)
    for role in _roles(kind):
        hit = role(P)
        valid &= hit.any(axis=0)
        firsts.append(np.argmax(hit, axis=0))
    if not valid.any():
        return None
    rows = np.column_stack(firsts + [T])[valid]
    best = _lexmin(rows)
    return ForbiddenConfigurationWitness(
        kind, tuple(int(v) for v in best[:n_roles]), tuple(int(c) for c in best[n_roles:])
    )


def _find_gamma(e: Election) -> ForbiddenConfigurationWitness | None:
    m = e.m
    if m < 2:
        return None
    pos = e.positions
    iu, ju = np.triu_indices(m, 1)
    orient = pos[:, iu] < pos[:, ju]
    # first occurrences suffice: a witness never uses two equal votes
    _, reps = np.unique(orient, axis=0, return_index=True)
    reps = sorted(int(r) for r in reps)
    bits = {v: int("".join("1" if b else "0" for b in orient[v][::-1]) or "0", 2) for v in reps}

    def oriented_pairs(mask: int, voter: int) -> list[tuple[int, int]]:
        out = []
        k = 0
        while mask:
            if mask & 1:
                x, y = int(iu[k]), int(ju[k])
                out.append((x, y) if pos[voter, x] < pos[voter, y] else (y, x))
            mask >>= 1
            k += 1
        return out

    for v, v1, v2 in itertools.permutations(reps, 3):
        d01 = bits[v] ^ bits[v1]
        d02 = bits[v] ^ bits[v2]
        d12 = bits[v1] ^ bits[v2]
        s1 = d01 & d02  # (a, b): v alone disagrees
        s2 = d01 & d12  # (c, d): v' alone disagrees
        s3 = d02 & d12  # (e, f): v'' alone disagrees
        if s1 and s2 and s3:
            ab = min(oriented_pairs(s1, v1))
            cd = min(oriented_pairs(s2, v))
            ef = min(oriented_pairs(s3, v))
            return ForbiddenConfigurationWitness("gamma", (v, v1, v2), ab + cd + ef)
    return None


def find_configuration(e: Election, kind: str) -> ForbiddenConfigurationWitness | None:
    """Lexicographically first witness of a ``kind`` configuration, or ``None``."""
    e.require_complete()
    if kind not in KINDS:
        raise ValueError(f"unknown configuration kind {kind!r}")
    if kind == "gamma":
        return _find_gamma(e)
    return _find_by_candidate_tuples(e, kind)


def check_witness(e: Election, w: ForbiddenConfigurationWitness) -> bool:
    """Verify a witness against the pattern of its kind, vote by vote."""
    n_roles, arity = ARITY[w.kind]
    if len(w.voters) != n_roles or len(w.candidates) != arity:
        return False
    if len(set(w.voters)) != n_roles:
        return False
    pos = e.positions

    def pref(v, x, y):
        return pos[v, x] < pos[v, y]

    if w.kind == "gamma":
        a, b, c, d, e_, f = w.candidates
        if a == b or c == d or e_ == f:
            return False
        v, v1, v2 = w.voters
        return (
            pref(v, b, a) and pref(v, c, d) and pref(v, e_, f)
            and pref(v1, a, b) and pref(v1, d, c) and pref(v1, e_, f)
            and pref(v2, a, b) and pref(v2, c, d) and pref(v2, f, e_)
        )
    cands = w.candidates
    if w.kind == "delta":
        a, b, c, d = cands
        if a == b or c == d or {a, b} == {c, d}:
            return False
    elif len(set(cands)) != arity:
        return False
    P = {letter: pos[:, [cands[i]]] for i, letter in enumerate("abcd"[:arity])}
    return all(bool(role(P)[v, 0]) for role, v in zip(_roles(w.kind), w.voters))
