"""Mass distributions and the belief / plausibility / commonality family.

Focal elements are stored sparsely as ``{mask: mass}``.  Dense tables over
all ``2**n`` subsets are a derived view computed by one-dimension-at-a-time
sweeps over the subset lattice (the fast zeta transform), with Möbius
inversion running the same sweep backwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    AllMassZero,
    EmptySetMass,
    FrameTooLargeForDense,
    InvalidInput,
    NotABeliefFunction,
    NotNormalized,
)
from .frame import Frame, Refinement, is_subset, outer_reduction, refine_set, same_frame
from .tolerance import get_epsilon

MAX_DENSE_SIZE = 20


@dataclass(frozen=True, eq=False)
class MassDistribution:
    """A normalized mass distribution with no mass on the empty set.

    Build through :func:`make_mass`; the constructor assumes ``focal`` is
    already validated.  Indexing with a mask returns its mass (0 for
    non-focal sets).
    """

    frame: Frame
    focal: Mapping[int, float]

    def __post_init__(self) -> None:
        items = sorted(self.focal.items())
        object.__setattr__(self, "focal", MappingProxyType(dict(items)))

    def __getitem__(self, mask: int) -> float:
        return self.focal.get(self.frame.check(mask), 0.0)

    def __len__(self) -> int:
        return len(self.focal)

    def __iter__(self):
        return iter(self.focal)

    def items(self):
        return self.focal.items()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassDistribution):
            return NotImplemented
        return self.frame == other.frame and dict(self.focal) == dict(other.focal)

    def __hash__(self) -> int:
        return hash((self.frame, tuple(self.focal.items())))

    def isclose(self, other: "MassDistribution", atol: float = 1e-9) -> bool:
        """Same frame and every mass (focal in either) within ``atol``."""
        if self.frame != other.frame:
            return False
        keys = set(self.focal) | set(other.focal)
        return all(abs(self[k] - other[k]) <= atol for k in keys)

    def max_difference(self, other: "MassDistribution") -> float:
        same_frame(self.frame, other.frame)
        keys = set(self.focal) | set(other.focal)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    @property
    def total(self) -> float:
        return math.fsum(self.focal.values())

    @property
    def core(self) -> int:
        """Union of the focal elements."""
        out = 0
        for a in self.focal:
            out |= a
        return out

    def dense(self) -> np.ndarray:
        """Masses as a length ``2**n`` array indexed by mask."""
        _check_dense(self.frame)
        out = np.zeros(1 << self.frame.size)
        for a, v in self.focal.items():
            out[a] = v
        return out

    def __repr__(self) -> str:
        body = ", ".join(f"{self.frame.format(a)}: {v:.6g}" for a, v in self.focal.items())
        return f"MassDistribution({body})"


def make_mass(
    frame: Frame,
    assignments: Iterable[tuple] | Mapping,
    normalize: bool = False,
) -> MassDistribution:
    """Validate and build a mass distribution.

    ``assignments`` is a mapping or iterable of ``(subset, mass)`` pairs;
    subsets may be int masks or iterables of labels.  Duplicate subsets are
    merged by addition.  Masses at or below the tolerance are dropped and the
    remainder renormalized.

    Raises
    ------
    EmptySetMass
        If the empty set receives positive mass.
    NotNormalized
        If ``normalize`` is false and the masses do not sum to 1.
    AllMassZero
        If nothing positive is left to normalize.
    """
    eps = get_epsilon()
    if isinstance(assignments, Mapping):
        assignments = assignments.items()
    merged: dict[int, float] = {}
    for subset, value in assignments:
        mask = frame.subset(subset)
        value = float(value)
        if not math.isfinite(value) or value < 0:
            raise InvalidInput(f"mass must be a finite nonnegative number, got {value}")
        if mask == 0:
            if value > eps:
                raise EmptySetMass("the empty set cannot carry mass (closed world)")
            continue
        merged[mask] = merged.get(mask, 0.0) + value
    total = math.fsum(merged.values())
    if total <= 0:
        raise AllMassZero("no positive mass assigned")
    if not normalize and abs(total - 1.0) > eps:
        raise NotNormalized(f"masses sum to {total!r}, not 1")
    return _from_raw(frame, merged, total)


def _from_raw(frame: Frame, masses: Mapping[int, float], total: float | None = None) -> MassDistribution:
    """Normalize, prune entries at or below epsilon, renormalize."""
    eps = get_epsilon()
    if total is None:
        total = math.fsum(masses.values())
    if total <= 0:
        raise AllMassZero("no positive mass assigned")
    scaled = {a: v / total for a, v in masses.items() if a != 0}
    kept = {a: v for a, v in scaled.items() if v > eps}
    if not kept:
        raise AllMassZero("all masses fell below the tolerance")
    if len(kept) != len(scaled) or total != 1.0:
        s = math.fsum(kept.values())
        if s != 1.0:
            kept = {a: v / s for a, v in kept.items()}
    return MassDistribution(frame, kept)


def vacuous(frame: Frame) -> MassDistribution:
    """Total ignorance: all mass on the whole frame."""
    return MassDistribution(frame, {frame.full: 1.0})


def bayesian(frame: Frame, p: Iterable[float]) -> MassDistribution:
    """Mass ``p[i]`` on the singleton of element ``i``."""
    p = [float(x) for x in p]
    if len(p) != frame.size:
        raise InvalidInput(f"need {frame.size} probabilities, got {len(p)}")
    if any(x < 0 or not math.isfinite(x) for x in p):
        raise InvalidInput("probabilities must be finite and nonnegative")
    if abs(math.fsum(p) - 1.0) > get_epsilon():
        raise NotNormalized(f"probabilities sum to {math.fsum(p)!r}, not 1")
    return _from_raw(frame, {1 << i: x for i, x in enumerate(p)})


# -- point queries ------------------------------------------------------------


def belief(m: MassDistribution, a: int) -> float:
    """Total mass of the focal elements inside ``a``."""
    m.frame.check(a)
    return math.fsum(v for b, v in m.focal.items() if b & ~a == 0)


def plausibility(m: MassDistribution, a: int) -> float:
    """Total mass of the focal elements meeting ``a``."""
    m.frame.check(a)
    return math.fsum(v for b, v in m.focal.items() if b & a)


def commonality(m: MassDistribution, a: int) -> float:
    """Total mass of the focal elements containing ``a``."""
    m.frame.check(a)
    return math.fsum(v for b, v in m.focal.items() if a & ~b == 0)


# -- dense tables -------------------------------------------------------------


@dataclass(frozen=True)
class EvidenceTables:
    frame: Frame
    bel: np.ndarray = field(repr=False)
    pl: np.ndarray = field(repr=False)
    q: np.ndarray = field(repr=False)


def _check_dense(frame: Frame) -> None:
    if frame.size > MAX_DENSE_SIZE:
        raise FrameTooLargeForDense(
            f"dense tables need 2**{frame.size} entries; the cap is n = {MAX_DENSE_SIZE}"
        )


def subset_sum(values: np.ndarray, n: int) -> np.ndarray:
    """Zeta transform over subsets: ``out[A] = sum(values[B] for B ⊆ A)``."""
    out = np.array(values, dtype=np.float64, copy=True)
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 1, :] += view[:, 0, :]
    return out


def superset_sum(values: np.ndarray, n: int) -> np.ndarray:
    """Zeta transform over supersets: ``out[A] = sum(values[B] for B ⊇ A)``."""
    out = np.array(values, dtype=np.float64, copy=True)
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 0, :] += view[:, 1, :]
    return out


def subset_mobius(values: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`subset_sum`."""
    out = np.array(values, dtype=np.float64, copy=True)
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    return out


def tables(m: MassDistribution) -> EvidenceTables:
    """Dense Bel, Pl and Q over all ``2**n`` subsets in O(n 2**n)."""
    n = m.frame.size
    dense = m.dense()
    bel = subset_sum(dense, n)
    # complement of mask A is full ^ A, i.e. the reversed index.  Summation
    # order can push Bel(A) + Bel(~A) an ulp past 1; clipping Bel by its
    # dual first keeps Bel <= Pl while Pl stays exactly 1 - Bel(~A).
    np.clip(bel, 0.0, 1.0, out=bel)
    bel = np.minimum(bel, 1.0 - bel[::-1])
    bel[-1] = 1.0
    pl = 1.0 - bel[::-1]
    q = superset_sum(dense, n)
    for arr in (bel, pl, q):
        arr.setflags(write=False)
    return EvidenceTables(m.frame, bel, pl, q)


def mass_from_belief(frame: Frame, bel: np.ndarray) -> MassDistribution:
    """Recover the mass distribution of a belief table by Möbius inversion.

    Raises :class:`NotABeliefFunction` if a recovered mass is below
    ``-epsilon`` or the boundary values are wrong.
    """
    _check_dense(frame)
    eps = get_epsilon()
    bel = np.asarray(bel, dtype=np.float64)
    if bel.shape != (1 << frame.size,):
        raise InvalidInput(f"belief table must have 2**{frame.size} entries")
    if abs(bel[0]) > eps or abs(bel[-1] - 1.0) > eps:
        raise NotABeliefFunction("a belief function has Bel(empty) = 0 and Bel(frame) = 1")
    masses = subset_mobius(bel, frame.size)
    masses[0] = 0.0
    worst = int(np.argmin(masses))
    if masses[worst] < -eps:
        raise NotABeliefFunction(
            f"recovered mass {masses[worst]:.3g} on {frame.format(worst)} is negative"
        )
    idx = np.flatnonzero(masses > eps)
    return _from_raw(frame, {int(i): float(masses[i]) for i in idx})


# -- coarsening and refining --------------------------------------------------


def project(r: Refinement, m: MassDistribution) -> MassDistribution:
    """Push a fine distribution onto the coarse frame via outer reduction."""
    same_frame(r.fine, m.frame)
    out: dict[int, float] = {}
    for a, v in m.focal.items():
        b = outer_reduction(r, a)
        out[b] = out.get(b, 0.0) + v
    return _from_raw(r.coarse, out)


def vacuous_extension(r: Refinement, m: MassDistribution) -> MassDistribution:
    """Restate a coarse distribution on the fine frame without adding information."""
    same_frame(r.coarse, m.frame)
    return MassDistribution(r.fine, {refine_set(r, a): v for a, v in m.focal.items()})


def focal_contained(a: int, focal: Iterable[int]) -> bool:
    return any(is_subset(a, b) for b in focal)
