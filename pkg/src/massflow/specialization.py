"""Specialization matrices and the specialization order.

A specialization matrix sends the mass of each set ``A`` to subsets of
``A`` in fixed proportions; rows not stored explicitly are the identity.
Applying a matrix renormalizes away whatever lands on the empty set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

import numpy as np

from ._flow import Transport, transport
from .errors import (
    ConservationViolated,
    EmptyEvent,
    FlowOutsideSubset,
    FrameTooLargeForCheck,
    FrameTooLargeForDense,
    InvalidInput,
    NotASpecialization,
    RowNotStochastic,
    TotalContradiction,
)
from .frame import Frame, is_subset, same_frame, submasks
from .mass import MassDistribution, _from_raw, focal_contained
from .tolerance import get_epsilon

MAX_CHECK_SIZE = 12
MAX_DENSE_MATRIX_SIZE = 8

Row = tuple[tuple[int, float], ...]


@dataclass(frozen=True, eq=False)
class SpecializationMatrix:
    """Row-stochastic flow from sets to their subsets.

    ``rows`` holds the explicitly stored rows.  ``rule``, when given,
    computes rows on demand for sets missing from ``rows`` (used by the
    conditioning and revision matrices so they stay cheap on large frames).
    Anything else is the identity row.  Build through :func:`make_matrix`
    or one of the constructors below.
    """

    frame: Frame
    rows: Mapping[int, Row] = field(default_factory=dict)
    rule: Callable[[int], Row] | None = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", MappingProxyType(dict(sorted(self.rows.items()))))

    def row(self, a: int) -> Row:
        got = self.rows.get(a)
        if got is not None:
            return got
        if self.rule is not None:
            return self.rule(a)
        return ((a, 1.0),)

    def __getitem__(self, key: tuple[int, int]) -> float:
        a, b = key
        for target, w in self.row(self.frame.check(a)):
            if target == b:
                return w
        return 0.0

    def nontrivial_rows(self) -> dict[int, Row]:
        """Every row that differs from the identity, materialized."""
        if self.rule is None:
            return {a: r for a, r in self.rows.items() if r != ((a, 1.0),)}
        if self.frame.size > MAX_CHECK_SIZE:
            raise FrameTooLargeForCheck(
                f"materializing all rows needs n <= {MAX_CHECK_SIZE}, frame has {self.frame.size}"
            )
        out = {}
        for a in range(1 << self.frame.size):
            r = self.row(a)
            if r != ((a, 1.0),):
                out[a] = r
        return out

    def to_dense(self) -> np.ndarray:
        """The full ``2**n x 2**n`` matrix; test-oracle sized frames only."""
        n = self.frame.size
        if n > MAX_DENSE_MATRIX_SIZE:
            raise FrameTooLargeForDense(f"dense matrices need n <= {MAX_DENSE_MATRIX_SIZE}")
        out = np.zeros((1 << n, 1 << n))
        for a in range(1 << n):
            for b, w in self.row(a):
                out[a, b] = w
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpecializationMatrix):
            return NotImplemented
        return self.frame == other.frame and self.nontrivial_rows() == other.nontrivial_rows()

    __hash__ = None  # type: ignore[assignment]


def _validate_row(frame: Frame, a: int, targets: Iterable[tuple]) -> Row:
    eps = get_epsilon()
    merged: dict[int, float] = {}
    for b, w in targets:
        b = frame.subset(b)
        w = float(w)
        if not math.isfinite(w) or w < -eps:
            raise RowNotStochastic(f"row {frame.format(a)} has invalid weight {w}")
        if w <= eps:
            continue
        if not is_subset(b, a):
            raise FlowOutsideSubset(
                f"row {frame.format(a)} sends weight to {frame.format(b)}, which is not a subset of it"
            )
        merged[b] = merged.get(b, 0.0) + w
    total = math.fsum(merged.values())
    if abs(total - 1.0) > eps:
        raise RowNotStochastic(f"row {frame.format(a)} sums to {total!r}, not 1")
    if total != 1.0:
        merged = {b: w / total for b, w in merged.items()}
    return tuple(sorted(merged.items()))


def make_matrix(frame: Frame, rows: Mapping | Iterable = (), name: str = "") -> SpecializationMatrix:
    """Validate rows ``{A: [(B, weight), ...]}`` into a specialization matrix.

    Each row must sum to 1 and may only send weight to subsets of its
    source (the empty set included).  Weights at or below epsilon are
    dropped before renormalizing.  Identity rows are not stored.
    """
    if isinstance(rows, Mapping):
        rows = rows.items()
    stored: dict[int, Row] = {}
    for a, targets in rows:
        a = frame.subset(a)
        if a in stored:
            raise InvalidInput(f"row {frame.format(a)} given twice")
        row = _validate_row(frame, a, targets)
        if row != ((a, 1.0),):
            stored[a] = row
    return SpecializationMatrix(frame, stored, name=name)


def identity(frame: Frame) -> SpecializationMatrix:
    return SpecializationMatrix(frame, {}, name="identity")


class ApplyOutcome(NamedTuple):
    result: MassDistribution
    consistency: float


def apply(m: MassDistribution, v: SpecializationMatrix) -> ApplyOutcome:
    """Push ``m`` through ``v``; drop mass reaching ∅ and renormalize.

    ``consistency`` is the mass that reached nonempty sets before
    renormalization.
    """
    same_frame(m.frame, v.frame)
    raw: dict[int, list[float]] = {}
    for a, ma in m.focal.items():
        for b, w in v.row(a):
            if b:
                raw.setdefault(b, []).append(ma * w)
    sums = {b: math.fsum(parts) for b, parts in raw.items()}
    c = math.fsum(sums.values())
    if c <= get_epsilon():
        raise TotalContradiction(f"all mass flows to the empty set (consistency {c:.3g})")
    return ApplyOutcome(_from_raw(m.frame, sums, c), c)


def conditional_matrix(frame: Frame, event: int) -> SpecializationMatrix:
    """Keep sets inside ``event`` in place; send every other set to ∅."""
    event = frame.check(event)
    if event == 0:
        raise EmptyEvent("the conditioning event must be nonempty")
    empty_row: Row = ((0, 1.0),)

    def rule(a: int) -> Row:
        return ((a, 1.0),) if a & ~event == 0 else empty_row

    return SpecializationMatrix(frame, {}, rule, name=f"C{frame.format(event)}")


def revision_matrix(frame: Frame, event: int) -> SpecializationMatrix:
    """Send every set ``A`` to ``A ∩ event``."""
    event = frame.check(event)
    if event == 0:
        raise EmptyEvent("the revision event must be nonempty")

    def rule(a: int) -> Row:
        return ((a & event, 1.0),)

    return SpecializationMatrix(frame, {}, rule, name=f"R{frame.format(event)}")


# -- the specialization order -------------------------------------------------


def is_specialization(s: MassDistribution, t: MassDistribution) -> bool:
    """True iff every focal element of ``s`` lies inside a focal element of ``t``.

    This is the support form of "Q_t(A) = 0 implies Q_s(A) = 0".
    """
    same_frame(s.frame, t.frame)
    return all(focal_contained(b, t.focal) for b in s.focal)


@dataclass(frozen=True)
class FlowPlan:
    """Absolute mass moved from focal sets of a source distribution.

    ``flows[(A, B)]`` is the mass moving from ``A`` to ``B`` (``B = 0`` is
    the empty set).  ``consistency`` is the share that reaches nonempty
    sets.  ``monotonic`` records whether the matrix built from the plan is
    monotonic, or ``None`` when the frame is too large to check.
    """

    frame: Frame
    flows: Mapping[tuple[int, int], float]
    consistency: float
    monotonic: bool | None = None

    def outflow(self, a: int) -> float:
        return math.fsum(f for (src, _), f in self.flows.items() if src == a)

    def inflow(self, b: int) -> float:
        return math.fsum(f for (_, dst), f in self.flows.items() if dst == b)


def _transport(
    t_sets: list[int], supply: list[float], s_sets: list[int], demand: list[float]
) -> Transport:
    edges = [
        (i, j)
        for i, a in enumerate(t_sets)
        for j, b in enumerate(s_sets)
        if is_subset(b, a)
    ]
    return transport(supply, demand, edges)


def max_consistency(s: MassDistribution, t: MassDistribution, max_rounds: int = 1000) -> tuple[float, Transport]:
    """Largest ``c`` for which ``t`` can deliver ``c * s(B)`` to every focal ``B``.

    The max flow ``F(c)`` is the lower envelope of the cut lines
    ``T_cut + c * S_cut``; starting from ``c = 1``, each round jumps to where
    the current minimum cut crosses ``F = c``.  The cut sequence is strictly
    decreasing in ``c`` and finite, so the loop ends on the exact optimum
    (up to float rounding).
    """
    t_sets, supply = list(t.focal), list(t.focal.values())
    s_sets, shares = list(s.focal), list(s.focal.values())
    slack = 1e-12
    c = 1.0
    for _ in range(max_rounds):
        got = _transport(t_sets, supply, s_sets, [c * x for x in shares])
        if got.value >= c - slack:
            return c, got
        t_cut = math.fsum(supply[i] for i in range(len(t_sets)) if i not in got.reached_supply)
        s_cut = math.fsum(shares[j] for j in got.reached_demand)
        if t_cut <= 0.0 or s_cut >= 1.0:
            raise NotASpecialization("no flow plan with positive consistency")
        nxt = t_cut / (1.0 - s_cut)
        if not nxt < c:
            # rounding stall: the current flow is optimal to working precision
            return got.value, got
        c = nxt
    raise NotASpecialization("consistency search did not converge")


def witness_flow(s: MassDistribution, t: MassDistribution) -> FlowPlan:
    """Find a flow plan turning ``t`` into ``s`` with maximal consistency.

    A plan with consistency ``c`` exists iff a max flow from the focal sets
    of ``t`` (capacity ``t(A)``) to those of ``s`` (capacity ``c * s(B)``)
    along subset edges saturates every sink; see :func:`max_consistency`.
    Whatever does not reach a nonempty sink flows to ∅.

    Raises :class:`NotASpecialization` when ``s`` is not a specialization of
    ``t``.
    """
    same_frame(s.frame, t.frame)
    if not is_specialization(s, t):
        raise NotASpecialization("some focal element of s lies in no focal element of t")
    t_sets, supply = list(t.focal), list(t.focal.values())
    s_sets = list(s.focal)
    _, got = max_consistency(s, t)
    flows = got.flows

    plan: dict[tuple[int, int], float] = {}
    for (i, j), f in sorted(flows.items()):
        plan[(t_sets[i], s_sets[j])] = f
    for i, a in enumerate(t_sets):
        sent = math.fsum(f for (src, _), f in plan.items() if src == a)
        rest = supply[i] - sent
        if rest > 0:
            plan[(a, 0)] = rest
    plan = dict(sorted(plan.items()))
    consistency = math.fsum(f for (_, b), f in plan.items() if b)

    monotonic = None
    if t.frame.size <= MAX_CHECK_SIZE:
        v = flow_to_matrix(FlowPlan(t.frame, plan, consistency), t)
        monotonic = is_monotonic(v).monotonic
    return FlowPlan(t.frame, MappingProxyType(plan), consistency, monotonic)


def flow_to_matrix(p: FlowPlan, t: MassDistribution) -> SpecializationMatrix:
    """Relative form of a flow plan: ``V[A, B] = flow(A, B) / t(A)``."""
    same_frame(p.frame, t.frame)
    eps = get_epsilon()
    grouped: dict[int, list[tuple[int, float]]] = {}
    for (a, b), f in p.flows.items():
        if a not in t.focal:
            if f > eps:
                raise ConservationViolated(f"flow leaves {t.frame.format(a)}, which is not focal")
            continue
        grouped.setdefault(a, []).append((b, f))
    rows = {}
    for a, ta in t.focal.items():
        targets = grouped.get(a, [])
        sent = math.fsum(f for _, f in targets)
        if abs(sent - ta) > eps:
            raise ConservationViolated(
                f"{t.frame.format(a)} sends {sent!r} but holds {ta!r}"
            )
        rows[a] = [(b, f / sent) for b, f in targets]
    return make_matrix(t.frame, rows, name="witness")


# -- monotonicity -------------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityReport:
    """Outcome of :func:`is_monotonic`; truthy when monotonic.

    ``counterexample`` is ``(A, B, C)``: ``V[A, B] > 0`` and ``C ⊇ A`` but
    no row-``C`` target contains ``B``.
    """

    monotonic: bool
    counterexample: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.monotonic


def monotonicity_violations(v: SpecializationMatrix) -> Iterator[tuple[int, int, int]]:
    """Yield every triple ``(A, B, C)`` breaking monotonicity of ``v``.

    Only non-identity rows ``C`` can break it: an identity row keeps ``C``
    itself, which contains every ``B ⊆ A ⊆ C``.  Order: ``C`` ascending,
    then ``A`` ascending, then ``B`` ascending.
    """
    n = v.frame.size
    if n > MAX_CHECK_SIZE:
        raise FrameTooLargeForCheck(f"monotonicity check needs n <= {MAX_CHECK_SIZE}, frame has {n}")
    cache: dict[int, tuple[int, ...]] = {}

    def targets(a: int) -> tuple[int, ...]:
        got = cache.get(a)
        if got is None:
            got = tuple(b for b, _ in v.row(a) if b)
            cache[a] = got
        return got

    for c, row in v.nontrivial_rows().items():
        covers = [d for d, _ in row if d]
        for a in sorted(submasks(c)):
            if a == c:
                continue
            for b in targets(a):
                if not any(b & ~d == 0 for d in covers):
                    yield (a, b, c)


def is_monotonic(v: SpecializationMatrix) -> MonotonicityReport:
    """Check whether applying ``v`` preserves the specialization order."""
    for triple in monotonicity_violations(v):
        return MonotonicityReport(False, triple)
    return MonotonicityReport(True)


def violates_monotonicity(v: SpecializationMatrix, a: int, b: int, c: int) -> bool:
    """Whether the specific triple ``(A, B, C)`` is a monotonicity violation."""
    if not (is_subset(a, c) and v[a, b] > 0 and b):
        return False
    return not any(is_subset(b, d) for d, w in v.row(c) if w > 0)


# -- strong inclusion ---------------------------------------------------------


def strong_inclusion(s: MassDistribution, t: MassDistribution) -> bool:
    """Whether ``t``'s mass can be poured into ``s``'s focal sets losslessly.

    Every focal set of ``s`` must sit inside one of ``t``, every focal set
    of ``t`` must contain one of ``s``, and a transport plan along subset
    edges must move all of ``t`` onto exactly ``s`` with nothing sent to ∅.
    """
    same_frame(s.frame, t.frame)
    if not is_specialization(s, t):
        return False
    if not all(any(is_subset(b, a) for b in s.focal) for a in t.focal):
        return False
    got = _transport(list(t.focal), list(t.focal.values()), list(s.focal), list(s.focal.values()))
    return got.value >= 1.0 - get_epsilon()
