"""Voting rules, Condorcet winners and agreement between rules.

All rules return every candidate with the best final score as a winner.
Rankings are weak orders: a tuple of tie-groups, best group first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Election
from .metrics import UndefinedCorrelationError, kemeny, majority_matrix, pearson

PLURALITY = "plurality"
RUNOFF = "plurality_runoff"
BORDA = "borda"
COPELAND = "copeland"
HARE = "hare"
KEMENY = "kemeny"
RULES = (PLURALITY, RUNOFF, BORDA, COPELAND, HARE, KEMENY)

STRONG = "strong"
WEAK = "weak"

LEXICOGRAPHIC = "lexicographic"
NONEMPTY_OVERLAP = "nonempty_overlap"
NORMALIZED_OVERLAP = "normalized_overlap"
CONSENSUS_MEASURES = (LEXICOGRAPHIC, NONEMPTY_OVERLAP, NORMALIZED_OVERLAP)

WeakOrder = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RuleOutcome:
    rule: str
    winners: frozenset
    ranking: WeakOrder
    trace: dict = field(default_factory=dict, compare=False)

    @property
    def lex_winner(self) -> int:
        """Winner after lexicographic tie-breaking (smallest candidate index)."""
        return min(self.winners)

    @property
    def tied(self) -> bool:
        return len(self.winners) > 1


def _order_by_score(scores: Sequence[float], cands: Iterable[int] | None = None) -> WeakOrder:
    cands = range(len(scores)) if cands is None else cands
    groups: dict[float, list[int]] = {}
    for c in cands:
        groups.setdefault(scores[c], []).append(c)
    return tuple(tuple(sorted(groups[s])) for s in sorted(groups, reverse=True))


def _top_counts(e: Election, alive: np.ndarray) -> np.ndarray:
    """Plurality score of each alive candidate restricted to the alive set."""
    pos = np.where(alive[None, :], e.positions, e.m + 1)
    tops = np.argmin(pos, axis=1)
    return np.bincount(tops, minlength=e.m)


def plurality(e: Election) -> RuleOutcome:
    scores = np.bincount(e.array[:, 0], minlength=e.m)
    best = scores.max()
    return RuleOutcome(
        PLURALITY,
        frozenset(int(c) for c in np.flatnonzero(scores == best)),
        _order_by_score(scores.tolist()),
        {"scores": scores.tolist()},
    )


def borda(e: Election) -> RuleOutcome:
    scores = (e.m - 1 - e.positions).sum(axis=0)
    best = scores.max()
    return RuleOutcome(
        BORDA,
        frozenset(int(c) for c in np.flatnonzero(scores == best)),
        _order_by_score(scores.tolist()),
        {"scores": scores.tolist()},
    )


def copeland(e: Election) -> RuleOutcome:
    W = majority_matrix(e)
    wins = (W > W.T).sum(axis=1)
    losses = (W < W.T).sum(axis=1)
    scores = wins - losses
    best = scores.max()
    return RuleOutcome(
        COPELAND,
        frozenset(int(c) for c in np.flatnonzero(scores == best)),
        _order_by_score(scores.tolist()),
        {"scores": scores.tolist()},
    )


def plurality_runoff(e: Election) -> RuleOutcome:
    """Two-round plurality.

    The first round keeps every candidate scoring at least as much as the
    runner-up: all candidates tied at the top if there are two or more of
    them, otherwise the leader and everyone tied for second.  The second
    round is plurality among those.
    """
    first = np.bincount(e.array[:, 0], minlength=e.m)
    if e.m == 1:
        keep = np.array([0])
    else:
        # the runner-up's score; covers "more than two tied at the top" too
        second_best = np.sort(first)[-2]
        keep = np.flatnonzero(first >= second_best)
    alive = np.zeros(e.m, dtype=bool)
    alive[keep] = True
    second = _top_counts(e, alive)
    best = second[keep].max()
    winners = frozenset(int(c) for c in keep if second[c] == best)
    eliminated = [c for c in range(e.m) if not alive[c]]
    ranking = _order_by_score(second.tolist(), keep.tolist()) + _order_by_score(first.tolist(), eliminated)
    return RuleOutcome(
        RUNOFF, winners, ranking,
        {"first_round": first.tolist(), "finalists": keep.tolist(), "second_round": second[keep].tolist()},
    )


def hare(e: Election) -> RuleOutcome:
    """Instant runoff.

    Each round removes one candidate with the lowest plurality score among
    the remaining ones; among several, the one the first voter ranks lowest
    goes.  When all remaining candidates have equal score they all win.
    """
    alive = np.ones(e.m, dtype=bool)
    first_voter_pos = e.positions[0]
    eliminated: list[int] = []
    rounds = []
    while True:
        scores = _top_counts(e, alive)
        live = np.flatnonzero(alive)
        live_scores = scores[live]
        rounds.append({int(c): int(scores[c]) for c in live})
        if live_scores.min() == live_scores.max():
            break
        lowest = live[live_scores == live_scores.min()]
        out = int(lowest[np.argmax(first_voter_pos[lowest])])
        alive[out] = False
        eliminated.append(out)
    winners = tuple(int(c) for c in np.flatnonzero(alive))
    ranking = (winners,) + tuple((c,) for c in reversed(eliminated))
    return RuleOutcome(HARE, frozenset(winners), ranking, {"eliminated": eliminated, "rounds": rounds})


def kemeny_rule(e: Election) -> RuleOutcome:
    score, ranking = kemeny(e)
    return RuleOutcome(
        KEMENY, frozenset([ranking[0]]), tuple((c,) for c in ranking), {"kemeny_score": score}
    )


_RULE_FUNCS = {
    PLURALITY: plurality,
    RUNOFF: plurality_runoff,
    BORDA: borda,
    COPELAND: copeland,
    HARE: hare,
    KEMENY: kemeny_rule,
}


def apply_rule(e: Election, rule: str) -> RuleOutcome:
    e.require_complete()
    try:
        func = _RULE_FUNCS[rule]
    except KeyError:
        raise ValueError(f"unknown rule {rule!r}; choose from {', '.join(RULES)}") from None
    return func(e)


# --- Condorcet -------------------------------------------------------------------

def condorcet_winners(e: Election) -> tuple[int | None, frozenset]:
    """Strong Condorcet winner (or ``None``) and the set of weak ones.

    A strong winner beats every other candidate by a strict majority; a weak
    winner is never beaten by a strict majority.
    """
    e.require_complete()
    W = majority_matrix(e)
    beaten = (W.T > W).any(axis=1)  # some d with a strict majority preferring d
    beats_all = ((W > W.T) | np.eye(e.m, dtype=bool)).all(axis=1)
    strong = np.flatnonzero(beats_all)
    weak = frozenset(int(c) for c in np.flatnonzero(~beaten))
    return (int(strong[0]) if len(strong) else None), weak


@dataclass(frozen=True)
class CondorcetEfficiency:
    efficiency: float
    admitting_fraction: float
    eligible: int
    total: int


def condorcet_efficiency(
    elections: Sequence[Election], rule: str, notion: str = STRONG
) -> CondorcetEfficiency:
    """Among elections with a Condorcet winner of the given notion, the
    fraction where the rule's winner set contains one."""
    if notion not in (STRONG, WEAK):
        raise ValueError(f"unknown notion {notion!r}")
    if not elections:
        raise ValueError("no elections given")
    if len({e.m for e in elections}) != 1:
        raise ValueError("elections must share the number of candidates")
    eligible = hits = 0
    for e in elections:
        strong, weak = condorcet_winners(e)
        target = {strong} if notion == STRONG and strong is not None else (weak if notion == WEAK else set())
        if not target:
            continue
        eligible += 1
        if apply_rule(e, rule).winners & target:
            hits += 1
    if eligible == 0:
        raise ValueError(f"no election admits a {notion} Condorcet winner")
    return CondorcetEfficiency(hits / eligible, eligible / len(elections), eligible, len(elections))


# --- Consensus between rules -------------------------------------------------------

def winner_agreement(a: RuleOutcome, b: RuleOutcome, measure: str) -> float:
    if measure == LEXICOGRAPHIC:
        return float(a.lex_winner == b.lex_winner)
    if measure == NONEMPTY_OVERLAP:
        return float(bool(a.winners & b.winners))
    if measure == NORMALIZED_OVERLAP:
        return len(a.winners & b.winners) / len(a.winners | b.winners)
    raise ValueError(f"unknown consensus measure {measure!r}")


def winner_consensus(
    elections: Sequence[Election], rule_a: str, rule_b: str, measure: str = LEXICOGRAPHIC
) -> float:
    """Average winner agreement of two rules over the elections."""
    if not elections:
        raise ValueError("no elections given")
    vals = [winner_agreement(apply_rule(e, rule_a), apply_rule(e, rule_b), measure) for e in elections]
    return float(np.mean(vals))


def average_ranks(ranking: WeakOrder, m: int) -> np.ndarray:
    """1-based rank of each candidate, tie-groups sharing their average rank."""
    ranks = np.zeros(m)
    start = 1
    for group in ranking:
        ranks[list(group)] = start + (len(group) - 1) / 2
        start += len(group)
    return ranks


def ranking_correlation(r1: WeakOrder, r2: WeakOrder, m: int) -> float:
    """Spearman coefficient of two weak orders using average ranks.

    A ranking that is one big tie has no rank variance; two such rankings
    count as identical (1.0), one against a proper ranking as uncorrelated (0.0).
    """
    x, y = average_ranks(r1, m), average_ranks(r2, m)
    try:
        return pearson(x, y)
    except UndefinedCorrelationError:
        return 1.0 if np.array_equal(x, y) else 0.0


def ranking_consensus(elections: Sequence[Election], rule_a: str, rule_b: str) -> float:
    if not elections:
        raise ValueError("no elections given")
    vals = [
        ranking_correlation(apply_rule(e, rule_a).ranking, apply_rule(e, rule_b).ranking, e.m)
        for e in elections
    ]
    return float(np.mean(vals))


def tie_report(elections: Sequence[Election], rules: Sequence[str] = RULES) -> dict[str, dict]:
    """Per rule, the fraction of elections with several winners, overall and
    among elections without a strong Condorcet winner (``None`` if there are none)."""
    if not elections:
        raise ValueError("no elections given")
    no_cw = [condorcet_winners(e)[0] is None for e in elections]
    out = {}
    for rule in rules:
        tied = [apply_rule(e, rule).tied for e in elections]
        sub = [t for t, flag in zip(tied, no_cw) if flag]
        out[rule] = {
            "all": float(np.mean(tied)),
            "no_strong_condorcet": float(np.mean(sub)) if sub else None,
        }
    return out


def rules_report(elections: Sequence[Election], rules: Sequence[str] = RULES) -> dict:
    """Everything needed for the Condorcet, consensus and tie tables."""
    outcomes = [{r: apply_rule(e, r) for r in rules} for e in elections]
    cw = [condorcet_winners(e) for e in elections]
    no_strong = [i for i, (s, _) in enumerate(cw) if s is None]

    def condorcet_table(notion):
        row = {}
        targets = [({s} if s is not None else set()) if notion == STRONG else set(w) for s, w in cw]
        eligible = [i for i, t in enumerate(targets) if t]
        row["admitting_fraction"] = len(eligible) / len(elections)
        for r in rules:
            row[r] = (
                sum(bool(outcomes[i][r].winners & targets[i]) for i in eligible) / len(eligible)
                if eligible else None
            )
        return row

    def matrix(fn, subset):
        if not subset:
            return None
        return {
            a: {b: float(np.mean([fn(outcomes[i][a], outcomes[i][b], elections[i].m) for i in subset])) for b in rules}
            for a in rules
        }

    everyone = list(range(len(elections)))
    report = {
        "n_elections": len(elections),
        "condorcet": {STRONG: condorcet_table(STRONG), WEAK: condorcet_table(WEAK)},
        "winner_consensus": {},
        "ranking_consensus": {
            "all": matrix(lambda a, b, m: ranking_correlation(a.ranking, b.ranking, m), everyone),
            "no_strong_condorcet": matrix(lambda a, b, m: ranking_correlation(a.ranking, b.ranking, m), no_strong),
        },
        "ties": {},
    }
    for measure in CONSENSUS_MEASURES:
        fn = lambda a, b, m, _ms=measure: winner_agreement(a, b, _ms)
        report["winner_consensus"][measure] = {"all": matrix(fn, everyone), "no_strong_condorcet": matrix(fn, no_strong)}
    for r in rules:
        tied = [outcomes[i][r].tied for i in everyone]
        report["ties"][r] = {
            "all": float(np.mean(tied)),
            "no_strong_condorcet": float(np.mean([tied[i] for i in no_strong])) if no_strong else None,
        }
    return report


def pairwise_rule_names(rules: Sequence[str] = RULES) -> list[tuple[str, str]]:
    return list(itertools.combinations(rules, 2))
