import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from electra.core import (
    CandidateIndexError,
    CountMismatchError,
    DuplicateCandidateIndexError,
    DuplicateInVoteError,
    Election,
    ElectionError,
    IncompleteElectionError,
    MalformedHeaderError,
    MalformedVoteError,
    frequency_matrix,
    identity_election,
    is_doubly_stochastic,
    parse_election,
    restrict,
    write_election,
)

TWO_VOTES = "2\n1,a\n2,b\n2,2,2\n1: 1,2\n1: 2,1\n"


@st.composite
def complete_elections(draw, max_m=6, max_n=8):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    votes = [draw(st.permutations(range(m))) for _ in range(n)]
    return Election.from_votes(votes, m)


@st.composite
def any_elections(draw, max_m=6, max_n=8):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    votes = []
    for _ in range(n):
        perm = draw(st.permutations(range(m)))
        k = draw(st.integers(1, m))
        votes.append(perm[:k])
    return Election.from_votes(votes, m)


class TestParse:
    def test_two_vote_document(self):
        e = parse_election(TWO_VOTES)
        assert (e.m, e.n, e.kind) == (2, 2, "complete")
        assert e.votes == ((0, 1), (1, 0))
        assert e.labels == ("a", "b")

    def test_multiplicity_expands_in_order(self):
        e = parse_election("2\n1,a\n2,b\n3,3,2\n2: 1,2\n1: 2,1\n")
        assert e.votes == ((0, 1), (0, 1), (1, 0))

    def test_comments_and_blank_lines(self):
        e = parse_election("# source: test\n# another\n\n" + TWO_VOTES)
        assert e.n == 2

    def test_incomplete_votes(self):
        e = parse_election("3\n1,a\n2,b\n3,c\n2,2,2\n1: 1,2,3\n1: 2\n")
        assert e.kind == "incomplete"
        assert e.votes[1] == (1,)
        with pytest.raises(IncompleteElectionError):
            e.require_complete()
        with pytest.raises(IncompleteElectionError):
            frequency_matrix(e)

    @pytest.mark.parametrize(
        "text, error, line",
        [
            ("x\n", MalformedHeaderError, 1),
            ("2\n1,a\n", MalformedHeaderError, 2),
            ("2\n1,a\n1,b\n1,1,1\n1: 1,2\n", DuplicateCandidateIndexError, 3),
            ("2\n1,a\n3,b\n1,1,1\n1: 1,2\n", CandidateIndexError, 3),
            ("2\n1,a\n2,b\n1,1,1\n1: 1,1\n", DuplicateInVoteError, 5),
            ("2\n1,a\n2,b\n1,1,1\n1: 1,5\n", CandidateIndexError, 5),
            ("2\n1,a\n2,b\n2,2,1\n1: 1,2\n", CountMismatchError, 4),
            ("2\n1,a\n2,b\n1,1,2\n1: 1,2\n", CountMismatchError, 4),
            ("2\n1,a\n2,b\n1,1,1\n1 1,2\n", MalformedVoteError, 5),
            ("2\n1,a\n2,b\n1,1,1\n1: {1,2}\n", MalformedVoteError, 5),
            ("2\n1,a\n2,b\n1,1\n1: 1,2\n", MalformedHeaderError, 4),
        ],
    )
    def test_errors_name_their_line(self, text, error, line):
        with pytest.raises(error) as info:
            parse_election(text)
        assert info.value.line == line

    def test_error_classes_are_distinct(self):
        errors = {
            MalformedHeaderError, DuplicateCandidateIndexError, CandidateIndexError,
            DuplicateInVoteError, CountMismatchError, MalformedVoteError,
        }
        assert len({cls.code for cls in errors}) == len(errors)

    def test_duplicate_message(self):
        with pytest.raises(DuplicateInVoteError, match="duplicate candidate in vote"):
            parse_election("2\n1,a\n2,b\n1,1,1\n1: 1,1\n")

    def test_tie_breaking_lower_index_first(self):
        e = parse_election("3\n1,a\n2,b\n3,c\n1,1,1\n1: {3,1},2\n", break_ties=True)
        assert e.votes == ((0, 2, 1),)


class TestWrite:
    def test_round_trip(self):
        e = parse_election(TWO_VOTES)
        assert parse_election(write_election(e)) == e

    def test_identical_votes_share_a_line(self):
        e = Election.from_strings(["abc"] * 3)
        text = write_election(e)
        assert "3: 1,2,3" in text
        assert text.count(":") == 1

    def test_empty_label_gets_default(self):
        e = Election(["", "b"], [(0, 1)])
        assert "1,cand_0" in write_election(e)

    @given(any_elections())
    @settings(max_examples=60, deadline=None)
    def test_round_trip_property(self, e):
        assert parse_election(write_election(e)) == e


class TestElection:
    def test_validation(self):
        with pytest.raises(ElectionError):
            Election(["a"], [])
        with pytest.raises(ElectionError):
            Election(["a", "b"], [(0, 0)])
        with pytest.raises(ElectionError):
            Election(["a", "b"], [(0, 2)])
        with pytest.raises(ElectionError):
            Election(["a"], [()])

    def test_positions_invert_votes(self):
        e = Election.from_strings(["abc", "cab"])
        assert e.positions.tolist() == [[0, 1, 2], [1, 2, 0]]


class TestRestrict:
    def test_keep_all(self):
        e = Election.from_strings(["abc", "cba"])
        assert restrict(e) == e

    def test_drop_candidate_keeps_order(self):
        e = Election.from_strings(["abc", "cba"])
        r = restrict(e, keep_candidates=[0, 2])
        assert r.votes == ((0, 1), (1, 0))
        assert r.labels == ("a", "c")

    def test_keep_first_voter(self):
        e = Election.from_strings(["ab", "ba"])
        assert restrict(e, keep_voters={0}).votes == ((0, 1),)

    def test_empty_incomplete_votes_dropped(self):
        e = Election.from_votes([(0, 1), (2,)], 3)
        assert restrict(e, keep_candidates=[0, 1]).n == 1

    def test_empty_result_is_error(self):
        e = Election.from_votes([(2,)], 3)
        with pytest.raises(ElectionError):
            restrict(e, keep_candidates=[0])

    @given(any_elections(), st.data())
    @settings(max_examples=60, deadline=None)
    def test_restrict_composes(self, e, data):
        c1 = data.draw(st.sets(st.integers(0, e.m - 1), min_size=1))
        c2 = data.draw(st.sets(st.sampled_from(sorted(c1)), min_size=1))
        try:
            once = restrict(e, keep_candidates=c2)
        except ElectionError:
            return
        first = restrict(e, keep_candidates=c1)
        relabel = {c: i for i, c in enumerate(sorted(c1))}
        assert restrict(first, keep_candidates=[relabel[c] for c in c2]) == once


class TestFrequencyMatrix:
    def test_identity(self):
        assert np.array_equal(frequency_matrix(identity_election(4, 3)), np.eye(4))

    def test_two_opposite_votes(self):
        assert np.allclose(frequency_matrix(Election.from_strings(["ab", "ba"])), 0.5)

    def test_direct_count(self):
        F = frequency_matrix(Election.from_strings(["abc", "abc", "bac"]))
        assert np.allclose(F[:, 0], [2 / 3, 1 / 3, 0])

    @given(complete_elections())
    @settings(max_examples=80, deadline=None)
    def test_doubly_stochastic(self, e):
        assert is_doubly_stochastic(frequency_matrix(e))
