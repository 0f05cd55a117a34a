"""
Belief, plausibility and commonality tables
===========================================

A mass distribution on a three-element frame, its dense tables, and the
way back from belief to masses.
"""

import numpy as np

from massflow import make_frame, make_mass, mass_from_belief, tables

frame = make_frame(["a", "b", "c"])
m = make_mass(frame, [(["a"], 0.4), (["a", "b"], 0.5), (["a", "b", "c"], 0.1)])
print(m)

t = tables(m)
print(f"{'set':<10} {'Bel':>6} {'Pl':>6} {'Q':>6}")
for mask in range(1 << frame.size):
    print(f"{frame.format(mask):<10} {t.bel[mask]:6.3f} {t.pl[mask]:6.3f} {t.q[mask]:6.3f}")

# plausibility is belief of the complement, read backwards
assert np.array_equal(t.pl, 1.0 - t.bel[::-1])

# Moebius inversion recovers the masses
print(mass_from_belief(frame, t.bel))

# the sweeps are O(n 2^n); twenty elements is about a million subsets
rng = np.random.default_rng(0)
big = make_frame([f"x{i}" for i in range(20)])
masks = rng.choice(big.full, size=500, replace=False) + 1
m20 = make_mass(big, [(int(k), w) for k, w in zip(masks, rng.dirichlet(np.ones(500)))], normalize=True)
print("Bel(everything) at n = 20:", tables(m20).bel[big.full])
