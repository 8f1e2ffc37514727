"""
Walk through one estimation run step by step on a two-state chain.

Run with ``python demos/01_walkthrough.py``.
"""

# %%
# A two-state chain that leaves state 0 with probability 0.3 and state 1 with
# probability 0.2. Its stationary distribution is (0.4, 0.6) and its spectral
# gap is 0.3 + 0.2 = 0.5.
import numpy as np

from mcgap import birth_death_chain, estimate, sample_path

model = birth_death_chain(2, up=[0.3], down=[0.2])
print("true pi  ", model.pi)
print("true gap ", model.gap)

# %%
# Draw one trajectory of length 50 000, started from stationarity.
path = sample_path(model, 50_000, seed=1)
print(path, path.states[:20])

# %%
# Estimate. delta = 0.1 asks for intervals that hold with probability 0.9.
rep = estimate(path, delta=0.1)

np.set_printoptions(precision=5, suppress=True)
print("visit counts        ", rep.counts.n_visits)
print("smoothed P_hat\n", rep.P_hat)
print("pi_hat              ", rep.pi_hat)
print("eigenvalues         ", rep.eigenvalues)
print("gap_hat             ", rep.gap_hat)

# %%
# The error bounds, in the order they are derived.
print(f"tau   = {rep.tau:.4f}   tail threshold")
print(f"max B = {rep.B.max():.4f}   bound on |P_hat - P|")
print(f"kappa = {rep.kappa:.4f}   sensitivity of pi to P")
print(f"b     = {rep.b:.4f}   bound on |pi_hat - pi|")
print(f"rho   = {rep.rho:.4f}")
print(f"w     = {rep.w:.4f}   half-width for the gap")

# %%
ivs = rep.intervals
for i, I in enumerate(ivs.pi):
    print(f"pi_{i} in [{I.lo:.4f}, {I.hi:.4f}]   (true {model.pi[i]:.4f})")
print(f"gap  in [{ivs.gap.lo:.4f}, {ivs.gap.hi:.4f}]   (true {model.gap:.4f})")
print(f"relaxation time in [{ivs.relaxation.lo:.3f}, {ivs.relaxation.hi:.3f}]")
print("flags:", ivs.flags)
