# %% [markdown]
# # How similar are the votes?
#
# Sample elections from a few statistical cultures, compare their internal
# diversity, and place them on a two-dimensional map next to the compass
# elections (identity, uniformity, antagonism, stratification).

# %%
from electra.cultures import sample_culture
from electra.mapel import diameter, distance_matrix, embed_map
from electra.metrics import parameter_budget, similarity_summary, temporal_profile

M, N = 8, 30
cultures = ["impartial", "walsh_sp", "conitzer_sp", "identity", "antagonism"]
elections = {f"{c}_{k}": sample_culture(c, M, N, seed=k) for c in cultures for k in range(3)}

# %% [markdown]
# Kendall-tau summaries. Identity has no disagreement at all; antagonism
# reaches the maximum possible value of m(m-1)/2 for max_kt.

# %%
for name, e in elections.items():
    s = similarity_summary(e)
    print(f"{name:15s} max={s.max_kt:3d} avg={s.avg_kt:6.2f} disagree={s.disagreeing_pairs:3d} kemeny={s.kemeny_score}")

# %% [markdown]
# The exponential budget for candidate-parameterized algorithms is tiny for
# m=8, while the Kemeny-score based budgets explode on diverse inputs.

# %%
b = parameter_budget(elections["impartial_0"])
print(b.as_dict())

# %% [markdown]
# Temporal view: how much does each vote differ from the previous one?

# %%
tp = temporal_profile(elections["walsh_sp_0"])
print(tp.as_dict())
print(temporal_profile(elections["walsh_sp_0"], shuffled=True, seed=1).as_dict())

# %% [markdown]
# The map. Positionwise distances are bounded by the identity-uniformity
# distance, so every entry is reported relative to it.

# %%
names = list(elections)
dm = distance_matrix([elections[k] for k in names], labels=names,
                     tags=[k.rsplit("_", 1)[0] for k in names], include_compass=True)
print("largest relative distance:", dm.d.max() / diameter(M))
emap = embed_map(dm, iterations=800, seed=0)
print(f"normalized stress {emap.stress:.3f}")
for label, (x, y) in zip(emap.labels, emap.points):
    if not label.startswith(("identity", "uniformity", "antagonism", "stratification")) or "@" not in label:
        print(f"{label:28s} {x:8.2f} {y:8.2f}")

# %%
for (a, b), v in sorted(dm.group_averages().items()):
    if a <= b:
        print(f"{a:12s} {b:12s} {v:7.2f}")
