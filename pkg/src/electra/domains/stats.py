"""Degeneracy statistics and aggregate reports over collections of elections."""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from ..core import Election
from ..metrics import UndefinedCorrelationError, pearson
from .deletion import DOMAINS, _jsonable, deletion_distance, recognize

VENN_DOMAINS = ("single_peaked", "single_crossing", "group_separable")
VENN_THRESHOLDS = {"candidates": (0, 1, 2, 3), "voters": (0, 2, 4, 6)}
SHORT = {"single_peaked": "SP", "single_crossing": "SC", "group_separable": "GS", "value_restricted": "VR"}


def axis_statistics(e: Election, axis: Sequence[int]) -> tuple[np.ndarray, int]:
    """Histogram of voters' top-choice ranks along ``axis`` and the number of
    distinct top choices.

    ``hist[i]`` counts voters whose top choice sits at axis position ``i + 1``.
    """
    e.require_complete()
    rank = {c: i for i, c in enumerate(axis)}
    if sorted(rank) != list(range(e.m)):
        raise ValueError("axis must be a permutation of the candidates")
    tops = [v[0] for v in e.votes]
    hist = np.bincount([rank[t] for t in tops], minlength=e.m)
    return hist, len(set(tops))


def changing_pairs_fraction(e: Election, order: Sequence[int] | None = None) -> float:
    """Fraction of candidate pairs whose relative order is not constant
    along the voter order."""
    e.require_complete()
    if e.m < 2:
        return 0.0
    pos = e.positions if order is None else e.positions[list(order)]
    iu, ju = np.triu_indices(e.m, 1)
    orient = pos[:, iu] < pos[:, ju]
    changing = orient.any(axis=0) & ~orient.all(axis=0)
    return float(changing.mean())


def venn_regions(memberships: Sequence[dict[str, bool]], domains: Sequence[str] = VENN_DOMAINS) -> dict[str, int]:
    """Count elections per exact combination of domains (``"none"`` if in none)."""
    counts: dict[str, int] = {}
    for r in range(len(domains), -1, -1):
        for combo in itertools.combinations(domains, r):
            key = "&".join(SHORT[d] for d in combo) if combo else "none"
            counts[key] = 0
    for mem in memberships:
        combo = tuple(d for d in domains if mem.get(d))
        key = "&".join(SHORT[d] for d in combo) if combo else "none"
        counts[key] += 1
    return counts


def election_row(
    e: Election,
    label: str,
    budget: int | None = None,
    distances: bool = True,
    domains: Sequence[str] = VENN_DOMAINS,
) -> dict:
    """Membership, certificates and (optionally) deletion distances of one election.

    Distances above ``budget`` are ``None``.
    """
    row: dict = {"id": label, "membership": {}, "certificates": {}}
    for d in DOMAINS:
        member, cert = recognize(e, d)
        row["membership"][d] = member
        if cert is not None:
            row["certificates"][d] = _jsonable(cert)
    if distances:
        row["distances"] = {"voters": {}, "candidates": {}}
        for mode in ("voters", "candidates"):
            for d in domains:
                if row["membership"][d]:
                    row["distances"][mode][d] = 0
                else:
                    row["distances"][mode][d] = deletion_distance(e, d, mode, budget=budget).k
    return row


def summarize_rows(rows: Sequence[dict]) -> dict:
    """Membership counts, Venn tables and distance correlations from election rows."""
    report: dict = {
        "elections": list(rows),
        "membership_counts": {d: sum(r["membership"][d] for r in rows) for d in DOMAINS},
        "venn": {"distance_0": venn_regions([r["membership"] for r in rows])},
        "correlation": {},
    }
    if not rows or "distances" not in rows[0]:
        return report
    for mode, thresholds in VENN_THRESHOLDS.items():
        for t in thresholds:
            within = [
                {d: (r["distances"][mode][d] is not None and r["distances"][mode][d] <= t) for d in VENN_DOMAINS}
                for r in rows
            ]
            report["venn"][f"{mode}_{t}"] = venn_regions(within)
        corr = {}
        for a, b in itertools.combinations(VENN_DOMAINS, 2):
            pairs = [
                (r["distances"][mode][a], r["distances"][mode][b])
                for r in rows
                if r["distances"][mode][a] is not None and r["distances"][mode][b] is not None
            ]
            key = f"{SHORT[a]}-{SHORT[b]}"
            try:
                corr[key] = pearson([p[0] for p in pairs], [p[1] for p in pairs]) if len(pairs) >= 2 else None
            except UndefinedCorrelationError:
                corr[key] = None
        report["correlation"][mode] = corr
    return report


def domain_report(
    elections: Sequence[Election],
    labels: Sequence[str] | None = None,
    budget: int | None = None,
    distances: bool = True,
) -> dict:
    """Membership table, Venn counts at several deletion distances and
    correlations between the distances to different domains.

    Distances above ``budget`` are reported as ``None`` and count as "not
    within" every threshold; correlations use elections where both
    distances are known.
    """
    if not elections:
        raise ValueError("no elections given")
    ms = {e.m for e in elections}
    if len(ms) != 1:
        raise ValueError(f"elections have mixed numbers of candidates: {sorted(ms)}")
    labels = list(labels) if labels is not None else [f"e{i}" for i in range(len(elections))]
    rows = [election_row(e, label, budget, distances) for label, e in zip(labels, elections)]
    return summarize_rows(rows)


def within_counts(report: dict, mode: str) -> dict[str, dict[int, int]]:
    """Per domain, number of elections within each threshold distance."""
    out = {}
    for d in VENN_DOMAINS:
        out[d] = {}
        for t in VENN_THRESHOLDS[mode]:
            out[d][t] = sum(
                1 for r in report["elections"]
                if r["distances"][mode][d] is not None and r["distances"][mode][d] <= t
            )
    return out
