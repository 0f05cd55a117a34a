"""Random generators and brute-force oracles shared by the test modules.

The oracles deliberately avoid the library's lattice sweeps and bit tricks
where they can: subset relations are tabulated with frozensets.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from massflow import MassDistribution, SpecializationMatrix, make_frame, make_mass, make_matrix
from massflow.frame import submasks


def letters(n):
    return make_frame([chr(ord("a") + i) for i in range(n)])


@lru_cache(maxsize=None)
def relation_matrices(n):
    """Boolean 2^n x 2^n tables: subset[A, B] = B ⊆ A, meets[A, B] = A ∩ B ≠ ∅."""
    sets = [frozenset(i for i in range(n) if (k >> i) & 1) for k in range(1 << n)]
    subset = np.array([[b <= a for b in sets] for a in sets])
    meets = np.array([[bool(a & b) for b in sets] for a in sets])
    return subset, meets


def naive_tables(m: MassDistribution):
    """Bel, Pl and Q by summing over every pair of subsets (O(4^n))."""
    n = m.frame.size
    dense = np.zeros(1 << n)
    for a, v in m.items():
        dense[a] = v
    subset, meets = relation_matrices(n)
    bel = subset.astype(float) @ dense
    pl = meets.astype(float) @ dense
    q = subset.T.astype(float) @ dense
    return bel, pl, q


def random_mass(rng, frame, max_focal=6, exclude=()):
    n = frame.size
    pool = [a for a in range(1, 1 << n) if a not in exclude]
    k = int(rng.integers(1, min(max_focal, len(pool)) + 1))
    chosen = rng.choice(len(pool), size=k, replace=False)
    weights = rng.dirichlet(np.ones(k))
    return make_mass(frame, [(pool[i], w) for i, w in zip(chosen, weights)], normalize=True)


def random_frame_mass(rng, n_max, max_focal=6):
    n = int(rng.integers(1, n_max + 1))
    f = letters(n)
    return f, random_mass(rng, f, max_focal)


def random_event(rng, frame):
    return int(rng.integers(1, frame.full + 1))


def random_row(rng, a, max_targets=3, allow_empty=True):
    subs = [b for b in submasks(a) if b or allow_empty]
    if not subs:
        return [(0, 1.0)]
    k = int(rng.integers(1, min(max_targets, len(subs)) + 1))
    picks = rng.choice(len(subs), size=k, replace=False)
    weights = rng.dirichlet(np.ones(k))
    return [(subs[i], w) for i, w in zip(picks, weights)]


def random_matrix(rng, frame, sources=None, max_targets=3, allow_empty=True, density=1.0):
    """Random specialization matrix with explicit rows for ``sources``."""
    if sources is None:
        sources = range(1, 1 << frame.size)
    rows = {a: random_row(rng, a, max_targets, allow_empty) for a in sources if rng.random() < density}
    return make_matrix(frame, rows)


def dense_apply(m: MassDistribution, v: SpecializationMatrix):
    """Vector-times-matrix oracle for apply, returning (masses, c)."""
    n = m.frame.size
    vec = np.zeros(1 << n)
    for a, x in m.items():
        vec[a] = x
    raw = vec @ v.to_dense()
    raw[0] = 0.0
    c = raw.sum()
    return (raw / c if c > 0 else raw), c


def all_subsets(n):
    return range(1 << n)


def pairs_of(iterable):
    return itertools.combinations(iterable, 2)
