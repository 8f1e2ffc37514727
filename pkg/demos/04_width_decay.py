"""
Interval widths shrink as the path gets longer.

A random walk on a weighted complete graph mixes fast, so the bounds become
informative early. Compare with a birth-death chain on the same number of
states, whose gap interval stays trivial until the path is much longer.

Run with ``python demos/04_width_decay.py``.
"""

# %%
import numpy as np

from mcgap import birth_death_chain, random_walk_on_weighted_graph, run_coverage

rng = np.random.default_rng(8)
W = rng.uniform(0.5, 1.5, (8, 8))
chains = {
    "weighted graph": random_walk_on_weighted_graph((W + W.T) / 2),
    "birth-death": birth_death_chain(8, [0.45] * 7, [0.45] * 7),
}

# %%
for name, model in chains.items():
    print(f"{name}: gap {model.gap:.3f}, kappa {model.kappa:.3f}, pimin {model.pimin:.3f}")
    for n in (10_000, 40_000, 160_000, 640_000):
        s = run_coverage(model, n, 0.1, 20, master_seed=1)
        print(f"  n={n:>7}  median b {s.median('b'):.4f}  median w {s.median('w'):.4g}")
