# %% [markdown]
# # Restricted domains
#
# Test single-peakedness, single-crossingness, group-separability and value
# restriction, extract forbidden-configuration witnesses, and measure how many
# voters or candidates must go before an election fits a domain.

# %%
from electra.core import Election
from electra.cultures import sample_culture
from electra.domains import DOMAINS, KINDS, deletion_distance, election_row, find_configuration, recognize, summarize_rows

cycle = Election.from_strings(["abc", "bca", "cab"])
for d in DOMAINS:
    ok, cert = recognize(cycle, d)
    print(f"{d:18s} member={ok} certificate={cert}")

# %% [markdown]
# Witnesses name the offending voters and candidates, which makes a "no"
# answer checkable by hand.

# %%
for kind in KINDS:
    print(kind, find_configuration(cycle, kind))

# %%
for mode in ("voters", "candidates"):
    r = deletion_distance(cycle, "single_peaked", mode)
    print(mode, r.k, "delete", r.deleted, "axis", r.certificate)

# %% [markdown]
# A small experiment: Walsh samples are single-peaked by construction, while
# impartial ones usually need several deletions.

# %%
es = [sample_culture("walsh_sp", 6, 10, s) for s in range(5)] + [sample_culture("impartial", 6, 10, s) for s in range(5)]
rows = [election_row(e, f"e{i}", budget=4) for i, e in enumerate(es)]
for row in rows[:2] + rows[-2:]:
    print(row["id"], row["membership"], row["distances"]["voters"])
report = summarize_rows(rows)
print(report["membership_counts"])
print(report["venn"])
