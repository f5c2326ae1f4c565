"""Synthetic election generators.

Single-peaked samplers use the axis ``0, 1, ..., m-1``.  Every sampler draws
from its own ``numpy.random.Generator`` seeded with ``seed``; batch callers
derive per-task seeds with :func:`task_seed`.
"""

from __future__ import annotations

import numpy as np

from .core import Election, ElectionError
from .mapel import CompassSpec, compass_matrix

IMPARTIAL = "impartial"
WALSH_SP = "walsh_sp"
CONITZER_SP = "conitzer_sp"
IDENTITY = "identity"
ANTAGONISM = "antagonism"
CULTURES = (IMPARTIAL, WALSH_SP, CONITZER_SP, IDENTITY, ANTAGONISM)


def task_seed(seed: int, index: int) -> int:
    """Seed for the ``index``-th task of a batch."""
    return int(seed) ^ int(index)


def walsh_vote(rng: np.random.Generator, m: int) -> list[int]:
    """Uniformly random vote single-peaked on the identity axis.

    Fill the ranking from the bottom: the worst remaining candidate is the
    leftmost or the rightmost remaining one with equal probability.
    """
    lo, hi = 0, m - 1
    bottom_up = []
    coins = rng.random(m)
    for i in range(m):
        if lo == hi or coins[i] < 0.5:
            bottom_up.append(lo)
            lo += 1
        else:
            bottom_up.append(hi)
            hi -= 1
    return bottom_up[::-1]


def conitzer_vote(rng: np.random.Generator, m: int) -> list[int]:
    """Single-peaked vote with a uniform peak, grown left or right by fair coins."""
    peak = int(rng.integers(m))
    lo = hi = peak
    vote = [peak]
    coins = rng.random(m)
    for i in range(1, m):
        go_left = hi == m - 1 or (lo > 0 and coins[i] < 0.5)
        if go_left:
            lo -= 1
            vote.append(lo)
        else:
            hi += 1
            vote.append(hi)
    return vote


def sample_culture(kind: str, m: int, n: int, seed: int | None = None) -> Election:
    """Draw an election from a statistical culture.

    Parameters
    ----------
    kind : {"impartial", "walsh_sp", "conitzer_sp", "identity", "antagonism"}
    m, n : int
        Numbers of candidates and voters; both at least 1, and ``n`` even
        for antagonism.
    seed : int, optional
    """
    if m < 1 or n < 1:
        raise ElectionError("need at least one candidate and one voter")
    rng = np.random.default_rng(seed)
    if kind == IMPARTIAL:
        votes = [rng.permutation(m).tolist() for _ in range(n)]
    elif kind == WALSH_SP:
        votes = [walsh_vote(rng, m) for _ in range(n)]
    elif kind == CONITZER_SP:
        votes = [conitzer_vote(rng, m) for _ in range(n)]
    elif kind == IDENTITY:
        v = rng.permutation(m).tolist()
        votes = [v] * n
    elif kind == ANTAGONISM:
        if n % 2:
            raise ElectionError("antagonism needs an even number of voters")
        v = rng.permutation(m).tolist()
        votes = [v] * (n // 2) + [v[::-1]] * (n // 2)
    else:
        raise ValueError(f"unknown culture {kind!r}; choose from {', '.join(CULTURES)}")
    return Election.from_votes(votes, m)


def uniformity_matrix(m: int) -> np.ndarray:
    return compass_matrix(CompassSpec("uniformity", m))


def stratification_matrix(m: int) -> np.ndarray:
    return compass_matrix(CompassSpec("stratification", m))
