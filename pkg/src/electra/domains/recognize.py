"""Recognition of single-peaked, single-crossing and group-separable elections.

Every recognizer returns a certificate (axis, voter order or partition tree)
or ``None``, and each certificate is re-checked against the domain definition
before it is returned.
"""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from ..core import Election

Axis = tuple[int, ...]
VoterOrder = tuple[int, ...]
PartitionTree = Union[int, tuple["PartitionTree", "PartitionTree"]]

GREEDY_FIXED = "greedy_fixed"
RANDOM = "random"


class CertificateError(AssertionError):
    """A recognizer produced a certificate that fails its definition check."""


# --- single-peaked ------------------------------------------------------------

def is_single_peaked_axis(e: Election, axis: Sequence[int]) -> bool:
    """Check the axis against the definition: no candidate is ranked below
    some candidate on its left and some candidate on its right."""
    e.require_complete()
    if sorted(axis) != list(range(e.m)):
        return False
    pos = e.positions[:, list(axis)]
    big = e.m + 1
    left = np.minimum.accumulate(np.concatenate([np.full((e.n, 1), big), pos[:, :-1]], axis=1), axis=1)
    rev = pos[:, ::-1]
    right = np.minimum.accumulate(np.concatenate([np.full((e.n, 1), big), rev[:, :-1]], axis=1), axis=1)[:, ::-1]
    return not bool(np.any((pos > left) & (pos > right)))


def detect_single_peaked(
    e: Election, tie_break: str = GREEDY_FIXED, seed: int | None = None
) -> Axis | None:
    """A societal axis compatible with every vote, or ``None``.

    The axis is built from both ends inwards: at each step the candidates
    ranked last among the remaining ones by some voter must occupy the two
    free extremes.  With ``greedy_fixed`` ties go to the leftmost free slot
    (lower candidate index first); with ``random`` the order of the options
    is drawn from ``seed``.  Choices that turn out inconsistent are undone,
    so the search is exact.
    """
    e.require_complete()
    if tie_break not in (GREEDY_FIXED, RANDOM):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    rng = np.random.default_rng(seed) if tie_break == RANDOM else None
    pos = np.unique(e.positions, axis=0)
    m = e.m
    left: list[int] = []
    right: list[int] = []
    remaining = np.ones(m, dtype=bool)

    def consistent(x: int, outer: list[int]) -> bool:
        # once placed, x sits between `outer` and every other candidate;
        # it must never be ranked below one of each
        inner = [c for c in range(m) if c != x and c not in outer]
        if not outer or not inner:
            return True
        px = pos[:, x]
        below_outer = px > pos[:, outer].min(axis=1)
        below_inner = px > pos[:, inner].min(axis=1)
        return not bool(np.any(below_outer & below_inner))

    def place(x: int, side: str) -> bool:
        outer = left if side == "L" else right
        if not consistent(x, outer):
            return False
        outer.append(x)
        remaining[x] = False
        return True

    def unplace(x: int, side: str) -> None:
        (left if side == "L" else right).pop()
        remaining[x] = True

    def search() -> bool:
        if not remaining.any():
            return True
        idx = np.flatnonzero(remaining)
        last = idx[np.argmax(pos[:, idx], axis=1)]
        bottoms = sorted(set(int(c) for c in last))
        if len(bottoms) > 2:
            return False
        if len(bottoms) == 2:
            x, y = bottoms
            options = [((x, "L"), (y, "R")), ((y, "L"), (x, "R"))]
        else:
            (x,) = bottoms
            options = [((x, "L"),), ((x, "R"),)]
        if rng is not None:
            options = [options[i] for i in rng.permutation(len(options))]
        for option in options:
            done = []
            ok = True
            for c, side in option:
                if place(c, side):
                    done.append((c, side))
                else:
                    ok = False
                    break
            if ok and search():
                return True
            for c, side in reversed(done):
                unplace(c, side)
        return False

    if not search():
        return None
    axis = tuple(left + right[::-1])
    if not is_single_peaked_axis(e, axis):
        raise CertificateError(f"axis {axis} fails the single-peaked check")
    return axis


# --- single-crossing -----------------------------------------------------------

def _pair_orientation(e: Election) -> np.ndarray:
    pos = e.positions
    iu, ju = np.triu_indices(e.m, 1)
    return pos[:, iu] < pos[:, ju]


def is_single_crossing_order(e: Election, order: Sequence[int]) -> bool:
    """Check that along ``order`` every candidate pair flips at most once."""
    e.require_complete()
    if sorted(order) != list(range(e.n)):
        return False
    orient = _pair_orientation(e)[list(order)]
    flips = (orient[1:] != orient[:-1]).sum(axis=0)
    return bool(np.all(flips <= 1))


def detect_single_crossing(e: Election) -> VoterOrder | None:
    """A voter order witnessing single-crossingness, or ``None``.

    In a single-crossing order the KT distance from an end vote grows along
    the order, and the vote farthest from any vote is an end vote.  So the
    votes are sorted by KT distance to the vote farthest from the first one
    and the result is verified.
    """
    e.require_complete()
    orient = _pair_orientation(e).astype(np.int32)
    n_pairs = orient.shape[1]

    def dist_to(i: int) -> np.ndarray:
        return n_pairs - (orient @ orient[i] + (1 - orient) @ (1 - orient[i]))

    end = int(np.argmax(dist_to(0)))
    order = tuple(int(v) for v in np.argsort(dist_to(end), kind="stable"))
    if not is_single_crossing_order(e, order):
        return None
    return order


# --- group-separable ------------------------------------------------------------

def tree_leaves(tree: PartitionTree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return tree_leaves(tree[0]) + tree_leaves(tree[1])


def is_group_separable_tree(e: Election, tree: PartitionTree) -> bool:
    """Check that at every internal node each voter ranks all leaves of one
    child above all leaves of the other."""
    e.require_complete()
    if sorted(tree_leaves(tree)) != list(range(e.m)):
        return False
    pos = e.positions

    def ok(node) -> bool:
        if isinstance(node, int):
            return True
        a, b = tree_leaves(node[0]), tree_leaves(node[1])
        pa, pb = pos[:, a], pos[:, b]
        a_above = pa.max(axis=1) < pb.min(axis=1)
        b_above = pb.max(axis=1) < pa.min(axis=1)
        return bool(np.all(a_above | b_above)) and ok(node[0]) and ok(node[1])

    return ok(tree)


def detect_group_separable(e: Election) -> PartitionTree | None:
    """A binary partition tree certifying group-separability, or ``None``.

    A candidate set is group-separable exactly when it splits into two
    blocks every voter ranks one above the other and both blocks are
    group-separable; since the property is inherited by subsets, any split
    will do.  One of the blocks is a prefix of the first vote, which gives
    the candidate splits.
    """
    e.require_complete()
    pos = np.unique(e.positions, axis=0)
    first = [int(c) for c in np.argsort(pos[0])]

    def split(cands: list[int]) -> PartitionTree | None:
        if len(cands) == 1:
            return cands[0]
        order = sorted(cands, key=lambda c: pos[0, c])
        sub = pos[:, cands]
        ranks = np.argsort(np.argsort(sub, axis=1), axis=1)
        col = {c: i for i, c in enumerate(cands)}
        k_all = len(cands)
        for k in range(1, k_all):
            block = [col[c] for c in order[:k]]
            r = ranks[:, block]
            top = r.max(axis=1) < k
            bottom = r.min(axis=1) >= k_all - k
            if np.all(top | bottom):
                left = split(order[:k])
                if left is None:
                    return None
                right = split(order[k:])
                if right is None:
                    return None
                return (left, right)
        return None

    tree = split(first)
    if tree is None:
        return None
    if not is_group_separable_tree(e, tree):
        raise CertificateError(f"tree {tree} fails the group-separable check")
    return tree
