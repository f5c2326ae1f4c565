"""Election data model, PrefLib-style I/O, restriction and frequency matrices.

Candidates are identified by their 0-based position in the roster; labels are
metadata only.  A vote is a tuple of candidate indices, top choice first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Vote = tuple[int, ...]

COMPLETE = "complete"
INCOMPLETE = "incomplete"


class ElectionError(ValueError):
    """Raised when an election violates the data model invariants."""


class IncompleteElectionError(ElectionError):
    """Raised when an operation needs every voter to rank every candidate."""


class ParseError(ElectionError):
    """Base class for election file parse errors.

    Attributes
    ----------
    line : int
        1-based line number in the source document (0 if not applicable).
    """

    code = "parse_error"

    def __init__(self, message: str, line: int = 0):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


class MalformedHeaderError(ParseError):
    code = "malformed_header"


class DuplicateCandidateIndexError(ParseError):
    code = "duplicate_candidate_index"


class CandidateIndexError(ParseError):
    code = "candidate_index_out_of_range"


class DuplicateInVoteError(ParseError):
    code = "duplicate_candidate_in_vote"


class CountMismatchError(ParseError):
    code = "count_mismatch"


class MalformedVoteError(ParseError):
    code = "malformed_vote"


def default_label(index: int) -> str:
    return f"cand_{index}"


@dataclass(frozen=True)
class Election:
    """An ordered collection of votes over ``m`` candidates.

    Parameters
    ----------
    labels : sequence of str
        Candidate labels; candidate ``i`` is ``labels[i]``.  Empty labels are
        replaced by ``cand_<i>``.
    votes : sequence of sequences of int
        Rankings, top choice first.  Incomplete votes list a subset of the
        candidates.
    """

    labels: tuple[str, ...]
    votes: tuple[Vote, ...]
    _kind: str = field(init=False, repr=False, compare=False)

    def __init__(self, labels: Sequence[str], votes: Iterable[Sequence[int]]):
        labels = tuple(str(lab) if str(lab) else default_label(i) for i, lab in enumerate(labels))
        votes = tuple(tuple(int(c) for c in v) for v in votes)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "votes", votes)
        object.__setattr__(self, "_kind", self._validate())

    @classmethod
    def from_votes(cls, votes: Iterable[Sequence[int]], m: int | None = None) -> "Election":
        """Build an election with default labels; ``m`` defaults to max index + 1."""
        votes = [tuple(v) for v in votes]
        if m is None:
            m = 1 + max((max(v) for v in votes if v), default=-1)
        return cls([default_label(i) for i in range(m)], votes)

    @classmethod
    def from_strings(cls, votes: Iterable[str]) -> "Election":
        """Build an election from letter strings such as ``["abc", "bca"]``."""
        votes = list(votes)
        letters = sorted({ch for v in votes for ch in v})
        index = {ch: i for i, ch in enumerate(letters)}
        return cls(letters, [[index[ch] for ch in v] for v in votes])

    def _validate(self) -> str:
        m = len(self.labels)
        if m < 1:
            raise ElectionError("an election needs at least one candidate")
        if len(self.votes) < 1:
            raise ElectionError("an election needs at least one vote")
        complete = True
        for i, v in enumerate(self.votes):
            if len(v) == 0:
                raise ElectionError(f"vote {i} is empty")
            if len(set(v)) != len(v):
                raise ElectionError(f"vote {i} ranks a candidate twice")
            if min(v) < 0 or max(v) >= m:
                raise ElectionError(f"vote {i} uses a candidate index outside 0..{m - 1}")
            if len(v) != m:
                complete = False
        return COMPLETE if complete else INCOMPLETE

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def is_complete(self) -> bool:
        return self._kind == COMPLETE

    def require_complete(self) -> None:
        if not self.is_complete:
            raise IncompleteElectionError("operation requires a complete election")

    @cached_property
    def array(self) -> np.ndarray:
        """Votes as an ``(n, m)`` int array (complete elections only)."""
        self.require_complete()
        arr = np.array(self.votes, dtype=np.intp).reshape(self.n, self.m)
        arr.setflags(write=False)
        return arr

    @cached_property
    def positions(self) -> np.ndarray:
        """``positions[v, c]`` is the 0-based position of candidate ``c`` in vote ``v``."""
        arr = self.array
        pos = np.empty_like(arr)
        rows = np.arange(self.n)[:, None]
        pos[rows, arr] = np.arange(self.m)[None, :]
        pos.setflags(write=False)
        return pos

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"Election(m={self.m}, n={self.n}, {self.kind})"


def _parse_int(token: str, line: int, err=MalformedHeaderError) -> int:
    token = token.strip()
    if not re.fullmatch(r"[+-]?\d+", token):
        raise err(f"expected an integer, got {token!r}", line)
    return int(token)


def parse_election(text: str, break_ties: bool = False) -> Election:
    """Parse a PrefLib-style election document.

    Layout: optional ``#`` comment lines, the candidate count ``m``, ``m``
    lines ``<index>,<label>`` (1-based indices), a line
    ``<n>,<sum of multiplicities>,<distinct vote lines>`` and then vote lines
    ``<multiplicity>: <c1>,<c2>,...``.

    Tied groups written as ``{c1,c2}`` are rejected unless ``break_ties`` is
    set, in which case members are ranked in increasing index order.
    """
    lines = [(i + 1, raw.strip()) for i, raw in enumerate(text.splitlines())]
    lines = [(no, s) for no, s in lines if s and not s.startswith("#")]
    if not lines:
        raise MalformedHeaderError("empty document", 1)
    it = iter(lines)

    no, s = next(it)
    m = _parse_int(s, no)
    if m < 1:
        raise MalformedHeaderError(f"candidate count must be positive, got {m}", no)

    labels: list[str | None] = [None] * m
    for _ in range(m):
        try:
            no, s = next(it)
        except StopIteration:
            raise MalformedHeaderError("document ends inside the candidate list", no) from None
        idx_tok, sep, label = s.partition(",")
        if not sep:
            raise MalformedHeaderError(f"expected '<index>,<label>', got {s!r}", no)
        idx = _parse_int(idx_tok, no)
        if not 1 <= idx <= m:
            raise CandidateIndexError(f"candidate index {idx} outside 1..{m}", no)
        if labels[idx - 1] is not None:
            raise DuplicateCandidateIndexError(f"candidate index {idx} listed twice", no)
        labels[idx - 1] = label.strip()

    try:
        no, s = next(it)
    except StopIteration:
        raise MalformedHeaderError("missing voter count line", no) from None
    parts = s.split(",")
    if len(parts) != 3:
        raise MalformedHeaderError(f"expected '<n>,<sum>,<distinct>', got {s!r}", no)
    n_decl, sum_decl, distinct_decl = (_parse_int(p, no) for p in parts)
    header_line = no

    votes: list[Vote] = []
    total = 0
    distinct = 0
    for no, s in it:
        mult_tok, sep, body = s.partition(":")
        if not sep:
            raise MalformedVoteError(f"expected '<multiplicity>: <ranking>', got {s!r}", no)
        mult = _parse_int(mult_tok, no, MalformedVoteError)
        if mult < 1:
            raise MalformedVoteError(f"multiplicity must be positive, got {mult}", no)
        vote = _parse_ranking(body, m, no, break_ties)
        votes.extend([vote] * mult)
        total += mult
        distinct += 1

    if not votes:
        raise CountMismatchError("document contains no votes", header_line)
    if n_decl != total or sum_decl != total:
        raise CountMismatchError(
            f"header declares n={n_decl}, sum={sum_decl} but vote lines sum to {total}", header_line
        )
    if distinct_decl != distinct:
        raise CountMismatchError(
            f"header declares {distinct_decl} vote lines but found {distinct}", header_line
        )
    return Election(labels, votes)


def _parse_ranking(body: str, m: int, line: int, break_ties: bool) -> Vote:
    tokens: list[list[str]] = []
    for group in re.finditer(r"\{([^}]*)\}|([^,{}]+)", body):
        if group.group(1) is not None:
            if not break_ties:
                raise MalformedVoteError("tied ballots are not supported", line)
            tokens.append([t for t in group.group(1).split(",") if t.strip()])
        elif group.group(2).strip():
            tokens.append([group.group(2)])
    stripped = re.sub(r"\{[^}]*\}|[^,{}]+|,|\s", "", body)
    if stripped:
        raise MalformedVoteError(f"cannot parse ranking {body.strip()!r}", line)
    vote: list[int] = []
    for group in tokens:
        ids = sorted(_parse_int(t, line, MalformedVoteError) for t in group)
        for idx in ids:
            if not 1 <= idx <= m:
                raise CandidateIndexError(f"candidate index {idx} outside 1..{m}", line)
            vote.append(idx - 1)
    if not vote:
        raise MalformedVoteError("empty vote", line)
    if len(set(vote)) != len(vote):
        raise DuplicateInVoteError("duplicate candidate in vote", line)
    return tuple(vote)


def write_election(e: Election) -> str:
    """Serialize ``e``; runs of equal consecutive votes share one line."""
    runs: list[list] = []
    for v in e.votes:
        if runs and runs[-1][1] == v:
            runs[-1][0] += 1
        else:
            runs.append([1, v])
    out = [str(e.m)]
    out += [f"{i + 1},{label}" for i, label in enumerate(e.labels)]
    out.append(f"{e.n},{e.n},{len(runs)}")
    out += [f"{mult}: " + ",".join(str(c + 1) for c in v) for mult, v in runs]
    return "\n".join(out) + "\n"


def read_election(path, break_ties: bool = False) -> Election:
    with open(path, encoding="utf-8") as fh:
        return parse_election(fh.read(), break_ties=break_ties)


def save_election(e: Election, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_election(e))


def restrict(
    e: Election,
    keep_candidates: Iterable[int] | None = None,
    keep_voters: Iterable[int] | None = None,
) -> Election:
    """Sub-election on the given candidates and voters.

    Kept candidates are renumbered ``0..m'-1`` in increasing original index;
    voter order and the relative order inside every vote are preserved.
    Incomplete votes left empty are dropped.
    """
    cands = range(e.m) if keep_candidates is None else sorted(set(keep_candidates))
    voters = range(e.n) if keep_voters is None else sorted(set(keep_voters))
    if len(cands) == 0 or len(voters) == 0:
        raise ElectionError("restriction to an empty candidate or voter set")
    for c in cands:
        if not 0 <= c < e.m:
            raise ElectionError(f"candidate index {c} out of range")
    for v in voters:
        if not 0 <= v < e.n:
            raise ElectionError(f"voter index {v} out of range")
    relabel = {c: i for i, c in enumerate(cands)}
    votes = []
    for vi in voters:
        vote = tuple(relabel[c] for c in e.votes[vi] if c in relabel)
        if vote:
            votes.append(vote)
    if not votes:
        raise ElectionError("restriction leaves no nonempty vote")
    return Election([e.labels[c] for c in cands], votes)


def frequency_matrix(e: Election) -> np.ndarray:
    """Position-by-candidate matrix of rank frequencies.

    ``F[p, c]`` is the fraction of voters ranking candidate ``c`` at position
    ``p`` (0-based).  Rows and columns each sum to one.
    """
    e.require_complete()
    F = np.zeros((e.m, e.m))
    cols = e.array
    for p in range(e.m):
        F[p] = np.bincount(cols[:, p], minlength=e.m)
    return F / e.n


def is_doubly_stochastic(F: np.ndarray, tol: float = 1e-9) -> bool:
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        return False
    return bool(
        np.all(F >= -tol)
        and np.all(F <= 1 + tol)
        and np.allclose(F.sum(axis=0), 1.0, atol=tol, rtol=0)
        and np.allclose(F.sum(axis=1), 1.0, atol=tol, rtol=0)
    )


def identity_election(m: int, n: int) -> Election:
    return Election.from_votes([tuple(range(m))] * n, m)


def reverse(v: Sequence[int]) -> Vote:
    return tuple(reversed(v))
