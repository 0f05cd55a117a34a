import numpy as np
import pytest

from helpers import letters, random_event, random_frame_mass, random_mass
from massflow import (
    ConditioningUndefined,
    RevisionUndefined,
    belief,
    condition,
    make_frame,
    make_mass,
    plausibility,
    revise,
    revised_belief,
    revised_plausibility,
    tables,
)
from massflow.frame import is_subset


@pytest.fixture
def abc():
    f = make_frame(["a", "b", "c"])
    return f, make_mass(f, [(["a"], 0.4), (["a", "b"], 0.6)])


def test_condition_examples(abc):
    f, m = abc
    out = condition(m, f.subset(["a"]))
    assert out.result.focal == {f.subset(["a"]): 1.0}  # 0.4 / 0.4
    assert out.discarded == pytest.approx(0.6)
    assert condition(m, f.full).result == m
    with pytest.raises(ConditioningUndefined):
        condition(m, f.subset(["b"]))


def test_revise_examples(abc):
    f, m = abc
    out = revise(m, f.subset(["b"]))
    assert out.result.focal == {f.subset(["b"]): 1.0}  # 0.6 / 0.6
    assert out.discarded == pytest.approx(0.4)
    # Bel({b}) = 0 < Pl({b}); revision is still defined and flagged
    assert out.belief_vanishes
    assert revise(m, f.subset(["a", "c"])).result.focal == {f.subset(["a"]): 1.0}
    single = make_mass(f, [(["a"], 1.0)])
    with pytest.raises(RevisionUndefined):
        revise(single, f.subset(["b"]))


def test_revised_closed_forms_examples(abc):
    f, m = abc
    b = f.subset(["b"])
    # (Bel({b} ∪ {a,c}) - Bel({a,c})) / (1 - Bel({a,c})) = (1 - 0.4) / (1 - 0.4)
    assert revised_belief(m, b, b) == pytest.approx(1.0)
    assert revised_belief(m, b, f.full) == pytest.approx(1.0)
    assert revised_plausibility(m, b, 0) == 0.0
    with pytest.raises(RevisionUndefined):
        revised_belief(make_mass(f, [(["a"], 1.0)]), b, b)


def test_closed_forms_match_tables():
    rng = np.random.default_rng(21)
    checked = 0
    while checked < 200:
        f, m = random_frame_mass(rng, 8)
        e = random_event(rng, f)
        if plausibility(m, e) <= 1e-9:
            continue
        t = tables(revise(m, e).result)
        for a in range(1 << f.size):
            assert abs(revised_belief(m, e, a) - t.bel[a]) <= 1e-9
            assert abs(revised_plausibility(m, e, a) - t.pl[a]) <= 1e-9
        checked += 1


def test_support_and_idempotence():
    rng = np.random.default_rng(4)
    for _ in range(300):
        f, m = random_frame_mass(rng, 6)
        e = random_event(rng, f)
        if plausibility(m, e) > 1e-9:
            r = revise(m, e).result
            assert all(is_subset(a, e) for a in r.focal)
            assert revise(r, e).result.isclose(r, 1e-12)
        if belief(m, e) > 1e-9:
            c = condition(m, e).result
            assert all(is_subset(a, e) and m[a] > 0 for a in c.focal)
            assert condition(c, e).result.isclose(c, 1e-12)


def test_condition_and_revise_agree_on_split_masses():
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        f = letters(n)
        e = random_event(rng, f)
        if e == f.full:
            continue
        inside = [a for a in range(1, 1 << n) if is_subset(a, e)]
        outside = [a for a in range(1, 1 << n) if a & e == 0]
        pool = inside + outside
        m = random_mass(rng, f, exclude=[a for a in range(1 << n) if a not in pool])
        if belief(m, e) <= 1e-9:
            continue
        assert condition(m, e).result.isclose(revise(m, e).result, 1e-12)
