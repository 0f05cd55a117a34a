"""Encoding structural knowledge as specialization matrices.

Two encodings are supported: type-II compatibility relations between a
frame ``X`` and a frame ``Y`` (each nonempty focus ``T ⊆ X`` is related to
an associated set ``W ⊆ Y``), and prioritized implication rules over the
dimensions of a product frame.  Both compile to single-target rows, so the
result is always a valid specialization matrix; neither is guaranteed to be
monotonic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping, NamedTuple

import numpy as np

from .errors import EmptyFocus, FrameTooLargeForCheck, InvalidInput, InvalidRule
from .frame import Frame, Refinement, iter_bits, make_product_frame, product_refinement
from .specialization import MAX_CHECK_SIZE, SpecializationMatrix


@dataclass(frozen=True)
class CompatibilityRelation:
    """Type-II compatibility relation, stored as ``{T mask: W mask}``.

    Foci not listed are related to all of ``Y``.
    """

    x_frame: Frame
    y_frame: Frame
    pairs: Mapping[int, int] = field(default_factory=dict)
    x_name: str = "x"
    y_name: str = "y"

    def __post_init__(self) -> None:
        clean = {}
        for t, w in self.pairs.items():
            self.x_frame.check(t)
            self.y_frame.check(w)
            if t == 0:
                raise EmptyFocus("the empty set cannot be a focus")
            if w == 0:
                raise InvalidInput(f"focus {self.x_frame.format(t)} must relate to at least one y")
            clean[t] = w
        object.__setattr__(self, "pairs", dict(sorted(clean.items())))


def make_relation(
    x_frame: Frame,
    y_frame: Frame,
    pairs: Iterable[tuple[Iterable, object]],
    x_name: str = "x",
    y_name: str = "y",
) -> CompatibilityRelation:
    """Build a relation from ``(T labels, y label)`` pairs; repeated ``T`` accumulate."""
    table: dict[int, int] = {}
    for t, y in pairs:
        tm = x_frame.subset(t)
        if tm == 0:
            raise EmptyFocus("the empty set cannot be a focus")
        table[tm] = table.get(tm, 0) | y_frame.singleton(y)
    return CompatibilityRelation(x_frame, y_frame, table, x_name, y_name)


def associated_set(r: CompatibilityRelation, focus: int) -> int:
    """``W``: the y-values related to ``focus`` (all of ``Y`` if unlisted)."""
    r.x_frame.check(focus)
    if focus == 0:
        raise EmptyFocus("associated sets are defined for nonempty foci only")
    return r.pairs.get(focus, r.y_frame.full)


class Irregularity(NamedTuple):
    irregular: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.irregular


def is_irregular(r: CompatibilityRelation) -> Irregularity:
    """Search for foci ``T1, T2`` with ``W(T1 ∪ T2) ⊊ W(T1) ∪ W(T2)``.

    Exhaustive over all pairs of nonempty foci; the witness is the first
    pair ``(T1, T2)`` with ``T1 <= T2`` in mask order.
    """
    n = r.x_frame.size
    if n > MAX_CHECK_SIZE:
        raise FrameTooLargeForCheck(f"irregularity search needs |X| <= {MAX_CHECK_SIZE}")
    size = 1 << n
    w = np.full(size, r.y_frame.full, dtype=np.int64)
    for t, wt in r.pairs.items():
        w[t] = wt
    masks = np.arange(size, dtype=np.int64)
    for t1 in range(1, size):
        t2 = masks[t1:]
        union = w[t1] | w[t2]
        w3 = w[t1 | t2]
        hit = ((w3 & ~union) == 0) & (w3 != union)
        if hit.any():
            return Irregularity(True, (t1, int(t2[np.argmax(hit)])))
    return Irregularity(False)


def relation_frame(r: CompatibilityRelation) -> Frame:
    """The product frame ``X × Y`` the compiled matrix lives on."""
    return make_product_frame([(r.x_name, r.x_frame.labels), (r.y_name, r.y_frame.labels)])


def compatibility_to_matrix(r: CompatibilityRelation) -> SpecializationMatrix:
    """Row ``S ↦ S ∩ (D × W(D))`` where ``D`` is the x-projection of ``S``."""
    nx, ny = r.x_frame.size, r.y_frame.size
    if nx * ny > MAX_CHECK_SIZE:
        raise FrameTooLargeForCheck(f"|X x Y| = {nx * ny} exceeds {MAX_CHECK_SIZE}")
    frame = relation_frame(r)
    rows = {}
    for s in range(1, 1 << frame.size):
        d = 0
        for cell in iter_bits(s):
            d |= 1 << (cell // ny)
        wd = associated_set(r, d)
        keep = 0
        for x in iter_bits(d):
            keep |= wd << (x * ny)
        target = s & keep
        if target != s:
            rows[s] = ((target, 1.0),)
    return SpecializationMatrix(frame, rows, name="compatibility")


# -- implication rules --------------------------------------------------------


@dataclass(frozen=True)
class ImplicationRule:
    """``premise`` values of one dimension imply ``conclusion`` values of another.

    Lower ``priority`` fires first.
    """

    premise_dim: str
    premise: tuple
    conclusion_dim: str
    conclusion: tuple
    priority: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "premise", tuple(self.premise))
        object.__setattr__(self, "conclusion", tuple(self.conclusion))
        if not self.premise or not self.conclusion:
            raise InvalidRule("premise and conclusion must be nonempty")
        if self.premise_dim == self.conclusion_dim:
            raise InvalidRule("premise and conclusion must be on different dimensions")

    def removal_set(self, frame: Frame) -> int:
        """Cells that satisfy the premise but violate the conclusion."""
        d_conc = frame.dimension_index(self.conclusion_dim)
        values = frame.dimensions[d_conc][1]
        others = [v for v in values if v not in set(self.conclusion)]
        if len(others) + len(set(self.conclusion)) != len(values):
            raise InvalidRule(f"conclusion has labels outside dimension {self.conclusion_dim!r}")
        return frame.cylinder(self.premise_dim, self.premise) & frame.cylinder(self.conclusion_dim, others)


Trigger = Literal["contains", "meets"]


def rules_to_matrix(
    frame: Frame,
    rules: Iterable[ImplicationRule],
    trigger: Trigger = "contains",
) -> SpecializationMatrix:
    """Compile prioritized rules; the first applicable rule fixes each row.

    A rule with removal set ``H`` applies to ``A`` when ``A ⊇ H``
    (``trigger="contains"``) or when ``A ∩ H`` is nonempty
    (``trigger="meets"``); the row is then ``A ↦ A - H``.  Sets no rule
    applies to keep their mass.  Ties in priority keep the given order.
    """
    if not frame.is_product:
        raise InvalidInput("rules need a product frame")
    if frame.size > MAX_CHECK_SIZE:
        raise FrameTooLargeForCheck(f"rule compilation needs n <= {MAX_CHECK_SIZE}")
    if trigger not in ("contains", "meets"):
        raise InvalidInput(f"unknown trigger {trigger!r}")
    ordered = sorted(rules, key=lambda rule: rule.priority)
    removals = [rule.removal_set(frame) for rule in ordered]
    rows = {}
    for a in range(1 << frame.size):
        for h in removals:
            if not h:
                continue
            fires = (h & ~a == 0) if trigger == "contains" else bool(a & h)
            if fires:
                if a & ~h != a:
                    rows[a] = ((a & ~h, 1.0),)
                break
    return SpecializationMatrix(frame, rows, name="rules")


# -- the bird example ---------------------------------------------------------


class Tweety(NamedTuple):
    coarse: Frame
    fine: Frame
    refinement: Refinement
    birds_fly: SpecializationMatrix
    penguins_dont: SpecializationMatrix


def tweety() -> Tweety:
    """Birds fly, penguins don't.

    On the coarse frame ``{birds, fish} × {fly, not fly}`` the single rule
    "birds fly" removes the cell ``(birds, not fly)``.  On the refined frame
    with eagles and penguins, "birds fly" (removing both flightless bird
    cells, only when both are present) outranks "penguins don't fly"
    (removing ``(penguins, fly)``).
    """
    coarse = make_product_frame([("animals", ["birds", "fish"]), ("flight", ["fly", "not fly"])])
    fine = make_product_frame(
        [("animals", ["eagles", "penguins", "fish"]), ("flight", ["fly", "not fly"])]
    )
    refinement = product_refinement(
        coarse, fine, "animals", {"birds": ["eagles", "penguins"], "fish": ["fish"]}
    )
    v = rules_to_matrix(coarse, [ImplicationRule("animals", ["birds"], "flight", ["fly"])])
    v_fine = rules_to_matrix(
        fine,
        [
            ImplicationRule("animals", ["eagles", "penguins"], "flight", ["fly"], priority=1),
            ImplicationRule("animals", ["penguins"], "flight", ["not fly"], priority=2),
        ],
    )
    return Tweety(coarse, fine, refinement, v, v_fine)
