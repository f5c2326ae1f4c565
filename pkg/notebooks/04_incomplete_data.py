# %% [markdown]
# # From raw, incomplete ballots to fixed-size samples
#
# Real data often lists only some candidates per ballot. Keep the largest
# block of voters and candidates in which every voter ranks every candidate,
# then draw uniformly sized samples for comparison.

# %%
import numpy as np

from electra.core import Election, write_election
from electra.cultures import sample_culture
from electra.preprocess import complete_election, exhaustive_biclique, max_biclique, normalize_sample

rng = np.random.default_rng(0)
m, n = 10, 12
votes = []
for _ in range(n):
    perm = rng.permutation(m)
    votes.append(perm[: rng.integers(3, m + 1)].tolist())
raw = Election.from_votes(votes, m)

cands, voters, edges = max_biclique(raw, effort=200, seed=0)
print("heuristic:", edges, "optimum:", exhaustive_biclique(raw))
full = complete_election(raw, seed=0)
print(write_election(full))

# %%
big = sample_culture("impartial", 20, 60, seed=1)
small = normalize_sample(big, m_out=15, n_out=30, seed=2)
print(small.m, small.n, small.is_complete)
