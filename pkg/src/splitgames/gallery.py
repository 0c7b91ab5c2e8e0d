"""Worked examples with their expected facts.

Each entry bundles an arena, the payoff it is meant for, and checks that
reproduce the known facts about it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arena import Arena, Player
from .errors import NoSaddle, NoUniformOptimum
from .outcome import simple_parity_value
from .preference import Comparison, Preference, overtaking_compare
from .solver import brute_force_saddle, one_player_solve, two_player_solve, verify_saddle
from .split import check_separation, split
from .strategy import FMStrategy, Profile, ds_enumerate, forced
from .words import Lasso

OMEGA = "ω"


@dataclass(frozen=True)
class Fact:
    label: str
    ok: bool
    detail: str

    def __str__(self):
        return f"[{'ok' if self.ok else 'FAIL'}] {self.label}: {self.detail}"


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    arena: Arena
    payoff: str
    description: str
    check: Callable[[], list[Fact]]

    @property
    def preference(self) -> Preference:
        from .preference import parse_payoff
        return parse_payoff(self.payoff)


def split_demo_arena() -> Arena:
    """Two states ``s`` (Max) and omega (Min), each with actions ``a`` and ``b``."""
    return Arena.build(
        [("s", "max"), (OMEGA, "min")], ["a", "b"],
        [("s", "a", "s", 1, 1), ("s", "b", OMEGA, 1, 0),
         (OMEGA, "a", "s", Fraction(1, 2), 0), (OMEGA, "a", OMEGA, Fraction(1, 2), 0),
         (OMEGA, "b", "s", 1, 0)],
        name="split-demo")


def horn_arena() -> Arena:
    """Reconstruction of the counterexample for stochastic simple parity.

    From ``w`` Max may ``try``: with probability 1/2 the play visits ``g``
    (reward 1, even priority 2), otherwise ``b`` (reward 2, odd priority 3).
    ``idle`` loops at ``w``.  Priorities make "reward 1 seen and reward 2
    never seen" the simple-parity winning condition.
    """
    return Arena.build(
        [("w", "max", 1), ("g", "max", 2), ("b", "max", 3)], ["try", "idle", "back"],
        [("w", "try", "g", Fraction(1, 2), 1), ("w", "try", "b", Fraction(1, 2), 2),
         ("w", "idle", "w", 1, 0), ("g", "back", "w", 1, 0), ("b", "back", "w", 1, 0)],
        name="horn")


def horn_memory_strategy(a: Arena) -> FMStrategy:
    """Try once, then idle forever."""
    w, try_, idle, back = a.state_index("w"), a.action_index("try"), a.action_index("idle"), \
        a.action_index("back")
    first = tuple(try_ if s == w else back for s in range(len(a.states)))
    then = tuple(idle if s == w else back for s in range(len(a.states)))
    update = (tuple(1 if t.source == w and t.action == try_ else 0 for t in a.transitions),
              (1,) * len(a.transitions))
    return FMStrategy(Player.MAX, 0, (first, then), update)


def horn_mixture(q: Fraction) -> Arena:
    """The chain of the stationary strategy playing ``try`` with probability ``q`` at ``w``."""
    q = Fraction(q)
    trans = [("g", "back", "w", 1, 0), ("b", "back", "w", 1, 0)]
    if q > 0:
        trans += [("w", "mix", "g", q / 2, 1), ("w", "mix", "b", q / 2, 2)]
    if q < 1:
        trans.append(("w", "mix", "w", 1 - q, 0))
    return Arena.build([("w", "max", 1), ("g", "max", 2), ("b", "max", 3)], ["mix", "back"],
                       trans, name=f"horn mixture q={q}")


def horn_stationary_values(grid: int = 20) -> dict[Fraction, Fraction]:
    """Value from ``w`` of the stationary mixtures ``q = k/grid`` (q = 0 included)."""
    out = {}
    for k in range(grid + 1):
        q = Fraction(k, grid)
        m = horn_mixture(q)
        p = Profile(forced(m, Player.MAX), forced(m, Player.MIN))
        out[q] = simple_parity_value(m, "w", p)
    return out


def overtaking_arena() -> Arena:
    """Two simple cycles of length 4 through ``v0``, labelled 0,1,1,0 and 1,0,0,1."""
    trans = [("v0", "c1", "p1", 1, 0), ("p1", "go", "p2", 1, 1), ("p2", "go", "p3", 1, 1),
             ("p3", "go", "v0", 1, 0),
             ("v0", "c2", "q1", 1, 1), ("q1", "go", "q2", 1, 0), ("q2", "go", "q3", 1, 0),
             ("q3", "go", "v0", 1, 1)]
    states = [("v0", "max")] + [(n, "max") for n in ("p1", "p2", "p3", "q1", "q2", "q3")]
    return Arena.build(states, ["c1", "c2", "go"], trans, name="overtaking")


def _check_split_demo() -> list[Fact]:
    a = split_demo_arena()
    sr = split(a, OMEGA)
    check_separation(sr)
    hat = sr.arena
    got = sorted((hat.states[t.source], hat.actions[t.action], hat.states[t.target], t.prob)
                 for t in hat.transitions)
    want = sorted([(OMEGA, "a", "s_a", Fraction(1, 2)), (OMEGA, "a", OMEGA, Fraction(1, 2)),
                   (OMEGA, "b", "s_b", 1), ("s_a", "a", "s_a", 1), ("s_a", "b", OMEGA, 1),
                   ("s_b", "a", "s_b", 1), ("s_b", "b", OMEGA, 1)])
    facts = [Fact("split on omega", set(hat.states) == {OMEGA, "s_a", "s_b"} and got == want,
                  f"states {list(hat.states)}, {len(got)} transitions")]
    pref = Preference("mean")
    sol = two_player_solve(a, pref)
    s = a.state_index("s")
    facts.append(Fact("recursive solver", sol.max_strategy[s] == a.action_index("a")
                      and sol.values[s] == 1,
                      f"max plays {a.actions[sol.max_strategy[s]]} at s, value {sol.values[s]}"))
    oracle = brute_force_saddle(a, pref)
    facts.append(Fact("oracle agrees", oracle.values == sol.values,
                      f"oracle values {[str(v) for v in oracle.values]}"))
    facts.append(Fact("saddle verified", verify_saddle(a, pref, sol.max_strategy,
                                                       sol.min_strategy) is None, "no deviation"))
    return facts


def _check_horn() -> list[Fact]:
    a = horn_arena()
    w = a.state_index("w")
    tau = forced(a, Player.MIN)
    ds_values = {st.to_names(a)["w"]: simple_parity_value(a, w, Profile(st, tau))
                 for st in ds_enumerate(a, Player.MAX)}
    best_ds = max(ds_values.values())
    facts = [Fact("positional strategies", best_ds == 0,
                  ", ".join(f"{k}: {v}" for k, v in ds_values.items()))]
    mixtures = horn_stationary_values()
    facts.append(Fact("stationary mixtures (grid of 21 weights)",
                      max(mixtures.values()) == 0, f"max {max(mixtures.values())}"))
    v = simple_parity_value(a, w, Profile(horn_memory_strategy(a), tau))
    facts.append(Fact("2-memory strategy", v == Fraction(1, 2), f"value {v}"))
    try:
        one_player_solve(a, Player.MAX, Preference("simple-parity"))
        facts.append(Fact("no uniform positional optimum", False, "solver returned a strategy"))
    except NoUniformOptimum as exc:
        facts.append(Fact("no uniform positional optimum", True, str(exc)))
    return facts


def _check_overtaking() -> list[Fact]:
    a = overtaking_arena()
    pref = Preference("overtaking")
    try:
        brute_force_saddle(a, pref)
        facts = [Fact("no positional saddle", False, "oracle found a saddle")]
    except NoSaddle as exc:
        facts = [Fact("no positional saddle", True, str(exc))]
    c = overtaking_compare(Lasso.of([], [0, 1, 1, 0]), Lasso.of([], [1, 0, 0, 1]))
    facts.append(Fact("cycles incomparable", c is Comparison.INCOMPARABLE, c.value))
    return facts


GALLERY: dict[str, GalleryEntry] = {
    e.name: e for e in (
        GalleryEntry("split-demo", split_demo_arena(), "mean",
                     "two-state arena split on omega; Max keeps the reward-1 loop",
                     _check_split_demo),
        GalleryEntry("horn", horn_arena(), "simple-parity",
                     "stochastic simple parity needs memory (reconstructed topology)",
                     _check_horn),
        GalleryEntry("overtaking", overtaking_arena(), "overtaking",
                     "two 4-cycles that neither dominates the other",
                     _check_overtaking),
    )
}


def get(name: str) -> GalleryEntry:
    try:
        return GALLERY[name]
    except KeyError:
        raise KeyError(f"no gallery entry {name!r}; try one of {sorted(GALLERY)}") from None
