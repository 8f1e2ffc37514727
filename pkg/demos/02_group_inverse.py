"""
The group inverse of ``A = I - P`` and what it says about the chain.

Run with ``python demos/02_group_inverse.py``.
"""

# %%
import numpy as np

from mcgap.linalg import group_inverse, stationary_distribution
from mcgap.intervals import sensitivity
from mcgap.simulator import birth_death_chain

np.set_printoptions(precision=4, suppress=True)

P = birth_death_chain(4, [0.3, 0.3, 0.3], [0.2, 0.2, 0.2]).P.entries
pi = stationary_distribution(P)
A = np.eye(4) - P
G = group_inverse(A, pi)
print("A#\n", G)

# %%
# The three defining identities.
print("|A A# A - A|   ", np.abs(A @ G @ A - A).max())
print("|A# A A# - A#| ", np.abs(G @ A @ G - G).max())
print("|A A# - A# A|  ", np.abs(A @ G - G @ A).max())

# %%
# I - A A# is the limiting matrix: every row equals pi.
print("I - A A#\n", np.eye(4) - A @ G)
print("pi ", pi)

# %%
# Column spreads of A# give the sensitivity kappa; for a reversible chain it
# never exceeds d / gap.
m = birth_death_chain(4, [0.3, 0.3, 0.3], [0.2, 0.2, 0.2])
print(f"kappa = {sensitivity(G):.3f},  d/gap = {m.d / m.gap:.3f}")
