import pytest

from conftest import arenas
from splitgames.arena import Arena, Player, restrict_actions
from splitgames.errors import Incompatible, UnavailableAction
from splitgames.gallery import OMEGA
from splitgames.strategy import (
    DSStrategy, FMStrategy, as_fm, check_strategy, ds_count, ds_enumerate, equivalent, forced,
    minimize, restrict_choice, restrict_to_subarena, simplify,
)


def test_enumeration_count_fig2_single_owner(fig2):
    a = Arena(fig2.states, fig2.actions, (Player.MAX, Player.MAX), fig2.transitions)
    assert len(list(ds_enumerate(a, Player.MAX))) == 4 == ds_count(a, Player.MAX)


def test_enumeration_no_choice_and_no_states(loop):
    assert len(list(ds_enumerate(loop, Player.MAX))) == 1
    only = list(ds_enumerate(loop, Player.MIN))
    assert only == [DSStrategy(Player.MIN, (None,))]


def test_enumeration_is_lexicographic_and_complete():
    for a in arenas(40, seed=7):
        for owner in Player:
            strategies = list(ds_enumerate(a, owner))
            assert len(strategies) == len(set(strategies)) == ds_count(a, owner)
            owned = a.owned(owner)
            keys = [tuple(st.choice[s] for s in owned) for st in strategies]
            assert keys == sorted(keys)
            for st in strategies:
                check_strategy(a, st)


def test_from_names_rejects_unavailable(fig2):
    with pytest.raises(ValueError):
        DSStrategy.from_names(fig2, Player.MAX, {OMEGA: "a"})
    bad = DSStrategy(Player.MAX, (7, None))
    with pytest.raises(UnavailableAction):
        check_strategy(fig2, bad)


def test_restriction_to_action_subarena(fig2):
    w = fig2.state_index(OMEGA)
    a_, b_ = fig2.action_index("a"), fig2.action_index("b")
    sub = restrict_actions(fig2, {w: {a_}})
    ok = DSStrategy.from_names(fig2, Player.MIN, {OMEGA: "a"})
    assert restrict_to_subarena(ok, fig2, sub) == ok
    with pytest.raises(Incompatible):
        restrict_to_subarena(DSStrategy.from_names(fig2, Player.MIN, {OMEGA: "b"}), fig2, sub)
    assert b_ != a_


def test_fm_restriction_ignores_unreachable_memories(fig2):
    s, w = fig2.state_index("s"), fig2.state_index(OMEGA)
    a_, b_ = fig2.action_index("a"), fig2.action_index("b")
    # Memory 1 would play b at s but is never entered.
    fm = FMStrategy(Player.MAX, 0, ((a_, None), (b_, None)),
                    ((0,) * len(fig2.transitions), (1,) * len(fig2.transitions)))
    sub = restrict_actions(fig2, {s: {a_}})
    out = restrict_to_subarena(fm, fig2, sub)
    check_strategy(sub, out)
    assert equivalent(out, DSStrategy(Player.MAX, (a_, None)), sub)
    assert w == 1


def test_minimize_merges_duplicate_memories(fig2):
    s = fig2.state_index("s")
    a_ = fig2.action_index("a")
    n = len(fig2.transitions)
    fm = FMStrategy(Player.MAX, 0, ((a_, None), (a_, None), (a_, None)),
                    (tuple(1 for _ in range(n)), tuple(2 for _ in range(n)), (0,) * n))
    small = minimize(fm, fig2)
    assert small.memory_size == 1
    assert simplify(fm, fig2) == DSStrategy(Player.MAX, (a_, None))
    assert s == 0


def test_minimize_is_idempotent():
    for a in arenas(20, seed=8):
        for sigma in list(ds_enumerate(a, Player.MAX))[:3]:
            fm = as_fm(sigma, a)
            assert minimize(minimize(fm, a), a) == minimize(fm, a)


def test_restrict_choice_is_one_player(fig2):
    tau = DSStrategy.from_names(fig2, Player.MIN, {OMEGA: "b"})
    frozen = restrict_choice(fig2, tau)
    assert len(frozen.moves[fig2.state_index(OMEGA)]) == 1
    assert forced(frozen, Player.MIN) == tau
