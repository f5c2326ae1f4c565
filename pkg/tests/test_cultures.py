import numpy as np
import pytest
from scipy.stats import chisquare

from electra.core import ElectionError, frequency_matrix
from electra.cultures import (
    CULTURES,
    sample_culture,
    stratification_matrix,
    task_seed,
    uniformity_matrix,
)
from electra.domains import detect_single_peaked, is_single_peaked_axis
from electra.metrics import similarity_summary


@pytest.mark.parametrize("kind", CULTURES)
def test_deterministic(kind):
    a = sample_culture(kind, 6, 8, seed=11)
    b = sample_culture(kind, 6, 8, seed=11)
    assert a == b and a.is_complete and (a.m, a.n) == (6, 8)


@pytest.mark.parametrize("kind", ["walsh_sp", "conitzer_sp"])
def test_single_peaked_on_identity_axis(kind):
    for seed in range(30):
        e = sample_culture(kind, 7, 9, seed)
        assert is_single_peaked_axis(e, range(7))
        assert detect_single_peaked(e) is not None


def test_walsh_is_uniform_over_sp_votes():
    m = 4
    e = sample_culture("walsh_sp", m, 16000, seed=1)
    counts = {}
    for v in e.votes:
        counts[v] = counts.get(v, 0) + 1
    assert len(counts) == 2 ** (m - 1)
    assert chisquare(list(counts.values())).pvalue > 0.001


def test_conitzer_tops_uniform():
    e = sample_culture("conitzer_sp", 7, 10000, seed=2)
    tops = np.bincount(e.array[:, 0], minlength=7)
    assert chisquare(tops).pvalue > 0.001


def test_walsh_tops_central():
    e = sample_culture("walsh_sp", 7, 10000, seed=3)
    tops = np.bincount(e.array[:, 0], minlength=7)
    assert tops[3] >= tops[0] and tops[3] >= tops[6]


def test_identity_summary():
    s = similarity_summary(sample_culture("identity", 6, 5, 0))
    assert (s.max_kt, s.avg_kt, s.disagreeing_pairs, s.kemeny_score) == (0, 0.0, 0, 0)


def test_antagonism_fifteen():
    s = similarity_summary(sample_culture("antagonism", 15, 30, 0), kemeny_score=False)
    assert s.max_kt == 105 and s.disagreeing_pairs == 105


def test_antagonism_odd_n():
    with pytest.raises(ElectionError):
        sample_culture("antagonism", 4, 3, 0)


def test_bad_arguments():
    with pytest.raises(ElectionError):
        sample_culture("impartial", 0, 3, 0)
    with pytest.raises(ValueError):
        sample_culture("mallows", 3, 3, 0)


def test_matrix_shortcuts():
    assert np.allclose(uniformity_matrix(3), 1 / 3)
    S = stratification_matrix(4)
    assert np.allclose(S[:2, :2], 0.5) and np.allclose(S[:2, 2:], 0)


def test_impartial_frequencies_approach_uniform():
    F = frequency_matrix(sample_culture("impartial", 5, 5000, seed=4))
    assert np.all(np.abs(F - 0.2) <= 0.03)


def test_task_seed():
    assert task_seed(10, 0) == 10 and task_seed(10, 3) == 9
    assert sample_culture("impartial", 5, 4, task_seed(1, 0)) != sample_culture("impartial", 5, 4, task_seed(1, 1))
