"""Exact voter and candidate deletion distances to restricted domains.

The residual election lies in a domain exactly when it contains none of the
domain's forbidden configurations, so a deletion set must meet the voters (or
candidates) of every configuration.  The engine grows a family of witness
sets lazily: solve minimum hitting set on the family, ask the recognizer
whether the residual is a member, and if not add a witness found in the
residual.  The first feasible hitting set is optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..core import Election, restrict
from ..hitting_set import min_hitting_set
from .configurations import find_configuration
from .recognize import (
    detect_group_separable,
    detect_single_crossing,
    detect_single_peaked,
    tree_leaves,
)

SINGLE_PEAKED = "single_peaked"
SINGLE_CROSSING = "single_crossing"
GROUP_SEPARABLE = "group_separable"
VALUE_RESTRICTED = "value_restricted"
DOMAINS = (SINGLE_PEAKED, SINGLE_CROSSING, GROUP_SEPARABLE, VALUE_RESTRICTED)
MODES = ("voters", "candidates")

FORBIDDEN = {
    SINGLE_PEAKED: ("alpha", "worst"),
    SINGLE_CROSSING: ("gamma", "delta"),
    GROUP_SEPARABLE: ("beta", "medium"),
    VALUE_RESTRICTED: ("value",),
}


class ConfigurationMissingError(RuntimeError):
    """The recognizer rejected an election that contains no forbidden configuration."""


def recognize(e: Election, domain: str) -> tuple[bool, Any]:
    """Membership verdict and certificate (``None`` for value restriction)."""
    if domain == SINGLE_PEAKED:
        cert = detect_single_peaked(e)
        return cert is not None, cert
    if domain == SINGLE_CROSSING:
        cert = detect_single_crossing(e)
        return cert is not None, cert
    if domain == GROUP_SEPARABLE:
        cert = detect_group_separable(e)
        return cert is not None, cert
    if domain == VALUE_RESTRICTED:
        return find_configuration(e, "value") is None, None
    raise ValueError(f"unknown domain {domain!r}")


@dataclass(frozen=True)
class DeletionResult:
    domain: str
    mode: str
    k: int | None
    deleted: tuple[int, ...]
    certificate: Any
    lower_bound: int
    exceeds_budget: bool = False

    def as_dict(self) -> dict:
        return {
            "domain": self.domain,
            "mode": self.mode,
            "k": self.k,
            "deleted": list(self.deleted),
            "certificate": _jsonable(self.certificate),
            "lower_bound": self.lower_bound,
            "exceeds_budget": self.exceeds_budget,
        }


def _jsonable(cert):
    if cert is None or isinstance(cert, int):
        return cert
    return [_jsonable(c) for c in cert]


def _map_tree(tree, mapping):
    if isinstance(tree, int):
        return mapping[tree]
    return (_map_tree(tree[0], mapping), _map_tree(tree[1], mapping))


def deletion_distance(
    e: Election, domain: str, mode: str, budget: int | None = None
) -> DeletionResult:
    """Minimum number of voters or candidates whose removal puts ``e`` in ``domain``.

    Parameters
    ----------
    domain : {"single_peaked", "single_crossing", "group_separable", "value_restricted"}
    mode : {"voters", "candidates"}
    budget : int, optional
        Give up once the optimum is known to exceed this; the result then has
        ``k=None``, ``exceeds_budget=True`` and the best proven lower bound.
    """
    e.require_complete()
    if domain not in DOMAINS:
        raise ValueError(f"unknown domain {domain!r}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    universe = e.n if mode == "voters" else e.m
    family: list[frozenset] = []
    deleted: frozenset = frozenset()
    while True:
        keep = [i for i in range(universe) if i not in deleted]
        if mode == "voters":
            residual = restrict(e, keep_voters=keep)
        else:
            residual = restrict(e, keep_candidates=keep)
        member, cert = recognize(residual, domain)
        if member:
            return DeletionResult(
                domain, mode, len(deleted), tuple(sorted(deleted)),
                _lift_certificate(cert, domain, mode, keep), len(deleted),
            )
        new_sets = _witness_packing(residual, domain, mode, keep)
        if not new_sets:
            raise ConfigurationMissingError(
                f"{domain} recognizer rejected an election without {FORBIDDEN[domain]} configurations"
            )
        family.extend(new_sets)
        limit = budget if budget is not None else universe
        hs = min_hitting_set(family, lower_bound=len(deleted), upper_limit=limit)
        if hs is None:
            return DeletionResult(
                domain, mode, None, (), None, (budget if budget is not None else universe) + 1, True
            )
        deleted = hs


def _witness_packing(residual: Election, domain: str, mode: str, keep: list[int]) -> list[frozenset]:
    """Witness sets (in original indices) found by repeatedly searching the
    residual with all previously found elements removed.

    Configurations survive restriction, so each one is a witness of the
    original election; consecutive rounds are disjoint, which lifts the
    packing lower bound quickly.
    """
    found: list[frozenset] = []
    local_keep = list(range(len(keep)))
    sub = residual
    while True:
        round_sets = []
        for kind in FORBIDDEN[domain]:
            w = find_configuration(sub, kind)
            if w is not None:
                local = w.voters if mode == "voters" else w.candidates
                round_sets.append(frozenset(local_keep[i] for i in local))
        if not round_sets:
            return found
        found.extend(frozenset(keep[i] for i in s) for s in round_sets)
        used = set().union(*round_sets)
        local_keep = [i for i in local_keep if i not in used]
        if not local_keep:
            return found
        try:
            if mode == "voters":
                sub = restrict(residual, keep_voters=local_keep)
            else:
                sub = restrict(residual, keep_candidates=local_keep)
        except ValueError:
            return found


def _lift_certificate(cert, domain: str, mode: str, keep: list[int]):
    """Translate a residual certificate back to original indices."""
    if cert is None:
        return None
    if domain == SINGLE_CROSSING:
        return tuple(keep[v] for v in cert) if mode == "voters" else tuple(cert)
    if mode == "voters":
        return cert
    if domain == SINGLE_PEAKED:
        return tuple(keep[c] for c in cert)
    if domain == GROUP_SEPARABLE:
        return _map_tree(cert, keep)
    return cert


def residual_election(e: Election, result: DeletionResult) -> Election:
    """The election left after removing ``result.deleted``."""
    if result.k is None:
        raise ValueError("deletion distance exceeded its budget; no residual")
    drop = set(result.deleted)
    if result.mode == "voters":
        return restrict(e, keep_voters=[v for v in range(e.n) if v not in drop])
    return restrict(e, keep_candidates=[c for c in range(e.m) if c not in drop])


__all__ = [
    "DOMAINS",
    "MODES",
    "FORBIDDEN",
    "DeletionResult",
    "deletion_distance",
    "recognize",
    "residual_election",
    "tree_leaves",
]
