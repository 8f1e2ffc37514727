"""
How often do the intervals contain the truth?

Runs a small Monte-Carlo study with ``run_coverage``. Each trial gets its
own seed derived from the master seed, so the study is reproducible.

Run with ``python demos/03_coverage.py``.
"""

# %%
from mcgap import birth_death_chain, run_coverage

model = birth_death_chain(2, [0.4], [0.4])
summary = run_coverage(model, n=100_000, delta=0.1, trials=100, master_seed=0)

print(f"pi covered (all states at once): {summary.pi_coverage:.2f}")
print(f"gap covered:                     {summary.gap_coverage:.2f}")
print(f"median half-width w:             {summary.median('w'):.4f}")

# %%
# The guarantee is at least 1 - delta = 0.9; the bounds are conservative,
# so in practice coverage is close to 1.
d = summary.to_dict()
print(d["coverage"])
print(d["widths"]["w"])
