"""Exact minimum hitting set by iterative-deepening branch and bound."""

from __future__ import annotations

from typing import Iterable, Sequence


def _disjoint_lower_bound(sets: Sequence[frozenset]) -> int:
    """Size of a greedy packing of pairwise disjoint sets (smallest first)."""
    used: set = set()
    count = 0
    for s in sorted(sets, key=lambda s: (len(s), sorted(s))):
        if used.isdisjoint(s):
            used |= s
            count += 1
    return count


def min_hitting_set(
    sets: Iterable[Iterable[int]],
    lower_bound: int = 0,
    upper_limit: int | None = None,
) -> frozenset | None:
    """Smallest set of elements meeting every input set.

    Sizes are tried in increasing order from ``max(lower_bound, packing
    bound)``; for each size a depth-first search branches on the elements of
    the smallest unhit set, in increasing element order, so the result is
    deterministic.  Returns ``None`` if no hitting set of size at most
    ``upper_limit`` exists.
    """
    family = [frozenset(s) for s in sets]
    if any(len(s) == 0 for s in family):
        raise ValueError("an empty set cannot be hit")
    family = sorted(set(family), key=lambda s: (len(s), sorted(s)))
    if not family:
        return frozenset()
    # drop supersets of other sets: hitting the smaller one suffices
    minimal = [s for s in family if not any(t < s for t in family)]
    k = max(lower_bound, _disjoint_lower_bound(minimal))
    limit = len({x for s in minimal for x in s}) if upper_limit is None else upper_limit

    def search(chosen: frozenset, budget: int) -> frozenset | None:
        unhit = [s for s in minimal if chosen.isdisjoint(s)]
        if not unhit:
            return chosen
        if budget == 0 or _disjoint_lower_bound(unhit) > budget:
            return None
        pivot = min(unhit, key=lambda s: (len(s), sorted(s)))
        for x in sorted(pivot):
            found = search(chosen | {x}, budget - 1)
            if found is not None:
                return found
        return None

    while k <= limit:
        found = search(frozenset(), k)
        if found is not None:
            return found
        k += 1
    return None
