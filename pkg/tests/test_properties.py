import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from splitgames.arena import Player, restrict_actions, size, subarena, validate
from splitgames.generate import random_arena, random_lasso
from splitgames.io import dumps_arena, loads_arena
from splitgames.preference import Comparison, Preference, compare, overtaking_compare
from splitgames.split import (
    check_separation, copy_arena, lift_history, lift_strategy, project_history, project_strategy,
    split,
)
from splitgames.strategy import ds_enumerate, equivalent

seeds = st.integers(min_value=0, max_value=2 ** 32)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)
PROPS = settings(max_examples=60, deadline=None)


def arena_of(seed, **kw):
    return random_arena(random.Random(seed), **kw)


@PROPS
@given(seeds)
def test_validate_and_round_trip(seed):
    a = arena_of(seed)
    validate(a)
    assert loads_arena(dumps_arena(a)) == a


@PROPS
@given(seeds)
def test_subarena_of_everything_is_identity(seed):
    a = arena_of(seed)
    assert subarena(a, [t.key for t in a.transitions]) == a


@PROPS
@given(seeds, st.data())
def test_restriction_does_not_grow(seed, data):
    a = arena_of(seed)
    s = data.draw(st.integers(0, len(a.states) - 1))
    acts = a.available(s)
    keep = data.draw(st.sets(st.sampled_from(acts), min_size=1))
    sub = restrict_actions(a, {s: keep})
    validate(sub)
    assert size(sub) == size(a) - (len(acts) - len(keep))


@PROPS
@given(seeds, st.data())
def test_split_properties(seed, data):
    a = arena_of(seed, max_states=4)
    omega = data.draw(st.integers(0, len(a.states) - 1))
    sr = split(a, omega)
    check_separation(sr)
    x = data.draw(st.sampled_from(sr.copies))
    # A random walk gives a history of the original arena.
    h = [data.draw(st.integers(0, len(a.states) - 1))]
    for _ in range(data.draw(st.integers(0, 5))):
        t = data.draw(st.sampled_from([t for t in a.transitions if t.source == h[-1]]))
        h += [t.action, t.target]
    lifted = lift_history(sr, x, h)
    assert project_history(sr, lifted) == tuple(h)
    anchor = sr.copy_index[lifted[0]]
    assert lift_history(sr, x if anchor is None else anchor, project_history(sr, lifted)) == lifted
    if len(a.available(omega)) >= 2:
        assert size(copy_arena(sr, x)) < size(a)


@PROPS
@given(seeds)
def test_strategy_project_of_lift(seed):
    a = arena_of(seed, max_states=4)
    sr = split(a, 0)
    for owner in Player:
        sigma = next(ds_enumerate(a, owner))
        lifted = lift_strategy(sr, sigma)
        for x in sr.copies:
            assert equivalent(project_strategy(sr, x, lifted), sigma, a)


@PROPS
@given(rationals, rationals, rationals)
def test_total_compare_is_an_order(x, y, z):
    pref = Preference("mean")
    assert compare(pref, x, x) is Comparison.EQUAL
    assert compare(pref, x, y) is compare(pref, y, x).flipped()
    if compare(pref, x, y) is not Comparison.LESS and compare(pref, y, z) is not Comparison.LESS:
        assert compare(pref, x, z) is not Comparison.LESS


@PROPS
@given(seeds)
def test_overtaking_is_a_partial_order(seed):
    rng = random.Random(seed)
    alphabet = (0, 1, Fraction(1, 2))
    u, v, w = (random_lasso(rng, alphabet) for _ in range(3))
    assert overtaking_compare(u, u) is Comparison.EQUAL
    assert overtaking_compare(u, v) is overtaking_compare(v, u).flipped()
    uv, vw = overtaking_compare(u, v), overtaking_compare(v, w)
    ge = (Comparison.GREATER, Comparison.EQUAL)
    if uv in ge and vw in ge:
        assert overtaking_compare(u, w) in ge
