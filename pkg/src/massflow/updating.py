"""Conditioning and revision on a certain event."""

from __future__ import annotations

from typing import NamedTuple

from .errors import ConditioningUndefined, RevisionUndefined
from .mass import MassDistribution, _from_raw, belief, plausibility
from .tolerance import get_epsilon


class UpdateOutcome(NamedTuple):
    """Result of an update plus the mass it had to discard.

    ``belief_vanishes`` marks a revision where the event has zero belief but
    positive plausibility; revision is still defined there.
    """

    result: MassDistribution
    discarded: float
    belief_vanishes: bool = False


def condition(m: MassDistribution, event: int) -> UpdateOutcome:
    """Keep only focal elements inside ``event`` and renormalize by Bel(event).

    >>> from massflow import make_frame, make_mass
    >>> f = make_frame("ab")
    >>> m = make_mass(f, [(["a"], 0.4), (["a", "b"], 0.6)])
    >>> condition(m, f.subset(["a"])).result[f.subset(["a"])]
    1.0
    """
    bel_e = belief(m, event)
    if bel_e <= get_epsilon():
        raise ConditioningUndefined(
            f"belief of the event {m.frame.format(event)} is {bel_e:.3g}; conditioning needs it positive"
        )
    kept = {a: v for a, v in m.focal.items() if a & ~event == 0}
    return UpdateOutcome(_from_raw(m.frame, kept), 1.0 - bel_e)


def revise(m: MassDistribution, event: int) -> UpdateOutcome:
    """Move every focal element A to A ∩ event, drop what lands on ∅, renormalize.

    The normalizer is Pl(event); the operation is defined whenever it is
    positive.
    """
    pl_e = plausibility(m, event)
    if pl_e <= get_epsilon():
        raise RevisionUndefined(
            f"plausibility of the event {m.frame.format(event)} is {pl_e:.3g}; the evidence contradicts it totally"
        )
    moved: dict[int, float] = {}
    for a, v in m.focal.items():
        b = a & event
        if b:
            moved[b] = moved.get(b, 0.0) + v
    eps = get_epsilon()
    return UpdateOutcome(_from_raw(m.frame, moved), 1.0 - pl_e, belief(m, event) <= eps)


def _revision_plausibility(m: MassDistribution, event: int) -> float:
    pl_e = plausibility(m, event)
    if pl_e <= get_epsilon():
        raise RevisionUndefined(f"plausibility of the event {m.frame.format(event)} is {pl_e:.3g}")
    return pl_e


def revised_belief(m: MassDistribution, event: int, a: int) -> float:
    """Belief of ``a`` after revising on ``event``, straight from Bel of ``m``."""
    _revision_plausibility(m, event)
    not_e = m.frame.complement(event)
    bel_not_e = belief(m, not_e)
    return (belief(m, a | not_e) - bel_not_e) / (1.0 - bel_not_e)


def revised_plausibility(m: MassDistribution, event: int, a: int) -> float:
    """Plausibility of ``a`` after revising on ``event``, straight from Pl of ``m``."""
    pl_e = _revision_plausibility(m, event)
    return plausibility(m, a & event) / pl_e
