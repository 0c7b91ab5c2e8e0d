from fractions import Fraction

import pytest

from conftest import arenas
from splitgames.arena import (
    Arena, Control, Player, TransitionKey, available_actions, is_deterministic, is_one_player,
    restrict_actions, size, subarena, validate,
)
from splitgames.errors import (
    DeadState, EmptyActionSet, NonPositiveProbability, PartialActionRemoval, ProbabilityMass,
    UnknownState, UnknownTransition,
)
from splitgames.gallery import OMEGA, horn_arena, overtaking_arena, split_demo_arena
from splitgames.split import split


def names(a, acts):
    return {a.actions[x] for x in acts}


def keys(a, *triples):
    return [TransitionKey(a.state_index(s), a.action_index(x), a.state_index(t))
            for s, x, t in triples]


def test_fig2_validates(fig2):
    validate(fig2)


def test_minimal_loop_validates(loop):
    validate(loop)


def test_mass_violation_reports_total():
    with pytest.raises(ProbabilityMass) as info:
        Arena.build([("s", "max"), (OMEGA, "min")], ["a", "b"],
                    [("s", "a", "s", 1), ("s", "b", OMEGA, 1),
                     (OMEGA, "a", "s", Fraction(1, 2)), (OMEGA, "a", OMEGA, Fraction(1, 3)),
                     (OMEGA, "b", "s", 1)])
    assert info.value.state == OMEGA and info.value.action == "a"
    assert info.value.total == Fraction(5, 6)


def test_state_without_actions():
    with pytest.raises(EmptyActionSet):
        Arena.build([("s", "max"), ("t", "max")], ["a"], [("s", "a", "s", 1)])


def test_nonpositive_probability():
    with pytest.raises(NonPositiveProbability):
        Arena.build([("s", "max")], ["a", "b"], [("s", "a", "s", 1), ("s", "b", "s", 0)])


def test_available_actions(fig2, loop):
    assert names(fig2, available_actions(fig2, OMEGA)) == {"a", "b"}
    assert names(fig2, available_actions(fig2, "s")) == {"a", "b"}
    assert names(loop, available_actions(loop, 0)) == {"l"}
    with pytest.raises(UnknownState):
        available_actions(fig2, "nowhere")


def test_subarena_removing_a_whole_action(fig2):
    keep = [t.key for t in fig2.transitions
            if not (fig2.states[t.source] == OMEGA and fig2.actions[t.action] == "b")]
    sub = subarena(fig2, keep)
    assert names(sub, available_actions(sub, OMEGA)) == {"a"}
    validate(sub)


def test_subarena_partial_removal(fig2):
    keep = [k for k in (t.key for t in fig2.transitions)
            if k not in keys(fig2, (OMEGA, "a", OMEGA))]
    with pytest.raises(PartialActionRemoval) as info:
        subarena(fig2, keep)
    assert (info.value.state, info.value.action) == (OMEGA, "a")


def test_subarena_empty_keep(fig2):
    with pytest.raises(DeadState):
        subarena(fig2, [])


def test_subarena_unknown_transition(fig2):
    with pytest.raises(UnknownTransition):
        subarena(fig2, [TransitionKey(0, 0, 1)])


def test_subarena_identity(fig2):
    assert subarena(fig2, [t.key for t in fig2.transitions]) == fig2


def test_sizes(fig2, loop):
    assert size(fig2) == 2
    assert size(loop) == 0
    # The split of the figure arena with omega restricted to a keeps both actions at s_a and s_b.
    sr = split(fig2, OMEGA)
    restricted = restrict_actions(sr.arena, {sr.omega_hat: {fig2.action_index("a")}})
    assert size(restricted) == 2


def test_control_classification(fig2, loop):
    assert is_one_player(loop) is Control.NO_CHOICE
    assert is_one_player(horn_arena()) is Control.MAX
    assert is_one_player(fig2) is Control.TWO_PLAYER
    all_min = Arena(fig2.states, fig2.actions, (Player.MIN, Player.MIN), fig2.transitions)
    assert is_one_player(all_min) is Control.MIN


def test_determinism(fig2, loop):
    assert not is_deterministic(fig2)
    assert is_deterministic(overtaking_arena())
    assert is_deterministic(loop)


def test_equality_ignores_display_name(fig2):
    renamed = Arena(fig2.states, fig2.actions, fig2.owner, fig2.transitions, fig2.priority, "x")
    assert renamed == fig2 and hash(renamed) == hash(fig2)


def test_restriction_never_grows_size():
    for a in arenas(60, seed=1):
        for s in range(len(a.states)):
            acts = a.available(s)
            if len(acts) < 2:
                continue
            sub = restrict_actions(a, {s: {acts[0]}})
            validate(sub)
            assert size(sub) == size(a) - (len(acts) - 1) < size(a)
