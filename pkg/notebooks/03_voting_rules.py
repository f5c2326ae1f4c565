# %% [markdown]
# # Voting rules on the same inputs
#
# Run six rules, check how often they agree on the winner and on the full
# ranking, and how often they elect the Condorcet winner when one exists.

# %%
from electra.cultures import sample_culture
from electra.rules import RULES, apply_rule, condorcet_winners, rules_report

e = sample_culture("impartial", 5, 11, seed=3)
print("Condorcet (strong, weak):", condorcet_winners(e))
for rule in RULES:
    o = apply_rule(e, rule)
    print(f"{rule:18s} winners={sorted(o.winners)} ranking={o.ranking}")

# %%
pool = [sample_culture("impartial", 6, 15, s) for s in range(40)]
pool += [sample_culture("conitzer_sp", 6, 15, s) for s in range(40)]
rep = rules_report(pool)
for notion, table in rep["condorcet"].items():
    print(notion, {r: round(v, 3) for r, v in table.items()})

# %%
lex = rep["winner_consensus"]["lexicographic"]["all"]
print(" " * 18 + " ".join(f"{r[:8]:>8s}" for r in RULES))
for a in RULES:
    print(f"{a:18s}" + " ".join(f"{lex[a][b]:8.2f}" for b in RULES))

# %%
print(rep["ties"])
