"""Solving games: one-player enumeration, the recursive split solver, and a brute-force oracle.

The recursive solver follows the size induction: a game where somebody has
a choice is reduced, for one separation state of each player, to the
games where that state keeps a single action.  The split arena then tells
which of those actions to keep, and the optimal strategy of the chosen
subgame is transported back through the split.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arena import Arena, Control, Player, is_deterministic, is_one_player, restrict_actions, size
from .errors import (
    EnumerationBoundExceeded, NoSaddle, NotOnePlayer, NoUniformOptimum,
    PreferenceNotTotalEnough,
)
from .preference import Comparison, Preference, compare
from .split import copy_arena, copy_strategy, extend_from_copy, project_strategy, split
from .strategy import (
    DSStrategy, FMStrategy, Profile, Strategy, ds_count, ds_enumerate, forced, restrict_choice,
)

DEFAULT_MAX_PROFILES = 10 ** 6
PROBE_LIMIT = 20_000


def fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


class Evaluator:
    """Per-state outcome statistics of profiles, cached on the transitions actually played.

    Two positional profiles that pick the same transitions everywhere induce
    the same chain, whichever subarena they were enumerated in.
    """

    def __init__(self, pref: Preference):
        self.pref = pref
        self._cache: dict = {}

    def values(self, a: Arena, sigma: Strategy, tau: Strategy) -> tuple:
        if isinstance(sigma, DSStrategy) and isinstance(tau, DSStrategy):
            key = (a.priority,) + tuple(
                a.moves[s][sigma.choice[s] if a.owner[s] is Player.MAX else tau.choice[s]]
                for s in range(len(a.states)))
            hit = self._cache.get(key)
            if hit is None:
                hit = self._cache[key] = tuple(self.pref.evaluate(a, Profile(sigma, tau)))
            return hit
        return tuple(self.pref.evaluate(a, Profile(sigma, tau)))


@dataclass(frozen=True)
class Solution:
    max_strategy: DSStrategy
    min_strategy: DSStrategy
    values: tuple

    def strategy(self, player: Player) -> DSStrategy:
        return self.max_strategy if player is Player.MAX else self.min_strategy

    def render(self, a: Arena) -> str:
        lines = ["values:"]
        lines += [f"  {name}: {fmt_value(v)}" for name, v in zip(a.states, self.values)]
        for label, strat in (("max strategy", self.max_strategy), ("min strategy", self.min_strategy)):
            lines.append(f"{label}:")
            lines += [f"  {s} -> {act}" for s, act in strat.to_names(a).items()]
        return "\n".join(lines)


@dataclass(frozen=True)
class TraceEntry:
    depth: int
    via: str
    size: int
    parent_size: int | None
    kind: str


@dataclass
class SolveReport:
    arena: Arena
    pref: Preference
    solution: Solution | None = None
    failure: str | None = None
    trace: list[TraceEntry] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    def render(self) -> str:
        lines = [f"arena: {self.arena.name or 'unnamed'}", f"payoff: {self.pref}"]
        if self.solution is not None:
            lines.append(self.solution.render(self.arena))
        if self.failure is not None:
            lines.append(f"failure: {self.failure}")
        lines.append("trace:")
        for t in self.trace:
            parent = "-" if t.parent_size is None else str(t.parent_size)
            lines.append(f"  {'  ' * t.depth}[{t.kind}] {t.via} size={t.size} parent={parent}")
        lines.append("stats: " + ", ".join(f"{k}={v}" for k, v in sorted(self.stats.items())))
        return "\n".join(lines) + "\n"


def _better(pref: Preference, owner: Player, a, b) -> Comparison:
    """Comparison of ``a`` against ``b`` from the viewpoint of ``owner`` (GREATER is preferred)."""
    c = compare(pref, a, b)
    return c if owner is Player.MAX else c.flipped()


def _switch_once(owner: Player, a: Arena, first: DSStrategy, then: DSStrategy,
                 trigger: int) -> FMStrategy:
    n = len(a.transitions)
    update = (tuple(1 if i == trigger else 0 for i in range(n)), (1,) * n)
    return FMStrategy(owner, 0, (first.choice, then.choice), update)


def _probe(a: Arena, owner: Player, pref: Preference, best: DSStrategy, values: Sequence,
           evaluator: Evaluator, strategies: Sequence[DSStrategy]) -> None:
    """Look for a two-memory strategy beating ``best`` somewhere.

    The probed family plays one positional strategy until a chosen transition
    of the owner is taken, then another one forever.
    """
    other = forced(a, owner.opponent)
    triggers = [i for i, t in enumerate(a.transitions) if a.owner[t.source] is owner]
    if len(strategies) ** 2 * len(triggers) > PROBE_LIMIT:
        return
    for first in strategies:
        for then in strategies:
            if then == first:
                continue
            for i in triggers:
                t = a.transitions[i]
                if first.choice[t.source] != t.action:
                    continue
                fm = _switch_once(owner, a, first, then, i)
                pair = (fm, other) if owner is Player.MAX else (other, fm)
                probe = evaluator.values(a, *pair)
                for s, (v, w) in enumerate(zip(values, probe)):
                    if _better(pref, owner, w, v) is Comparison.GREATER:
                        raise NoUniformOptimum(
                            f"best positional value from {a.states[s]} is {fmt_value(v)} "
                            f"while a 2-memory strategy achieves {fmt_value(w)}",
                            witness={"state": a.states[s], "positional": best,
                                     "positional_value": v, "memory_strategy": fm,
                                     "memory_value": w})


def one_player_solve(a: Arena, owner: Player, pref: Preference,
                     evaluator: Evaluator | None = None, *, probe: bool = True) -> DSStrategy:
    """Uniformly optimal positional strategy of ``owner`` when the opponent has no choice.

    Optimality is checked against every positional strategy; ties go to the
    lexicographically first one.  For payoffs without known positional
    one-player optima a family of two-memory strategies is probed as well.
    """
    control = is_one_player(a)
    if control not in (Control.NO_CHOICE, Control.MAX if owner is Player.MAX else Control.MIN):
        raise NotOnePlayer(f"{owner.opponent.value} has a choice in {a.name or 'the arena'}")
    evaluator = evaluator or Evaluator(pref)
    other = forced(a, owner.opponent)
    strategies = list(ds_enumerate(a, owner))

    def vals(st):
        return evaluator.values(a, *((st, other) if owner is Player.MAX else (other, st)))

    table = [vals(st) for st in strategies]
    best = None
    incomparable = False
    for i, row in enumerate(table):
        ok = True
        for other_row in table:
            for v, w in zip(row, other_row):
                c = _better(pref, owner, w, v)
                if c is Comparison.GREATER:
                    ok = False
                elif c is Comparison.INCOMPARABLE:
                    ok = False
                    incomparable = True
                if not ok:
                    break
            if not ok:
                break
        if ok:
            best = i
            break
    if best is None:
        if incomparable:
            raise PreferenceNotTotalEnough(
                f"no positional strategy of {owner.value} dominates all others under {pref}")
        raise NoUniformOptimum(f"no positional strategy of {owner.value} is optimal from every state")
    needs_probe = not pref.positional_one_player and not (
        pref.tag == "simple-parity" and is_deterministic(a))
    if probe and needs_probe and size(a) > 0:
        _probe(a, owner, pref, strategies[best], table[best], evaluator, strategies)
    return strategies[best]


class Solver:
    """Recursive split-based solver with memoized subgames."""

    def __init__(self, pref: Preference, *, check_sizes: bool = True):
        self.pref = pref
        self.evaluator = Evaluator(pref)
        self.memo: dict[Arena, Solution] = {}
        self.trace: list[TraceEntry] = []
        self.stats = {"subgames": 0, "memo_hits": 0, "one_player_calls": 0}
        self.check_sizes = check_sizes

    def solve(self, a: Arena) -> Solution:
        return self._solve(a, 0, "root", None)

    def _solve(self, a: Arena, depth: int, via: str, parent_size: int | None) -> Solution:
        n = size(a)
        if self.check_sizes and parent_size is not None and not n < parent_size:
            raise AssertionError(f"subgame size {n} does not decrease below {parent_size}")
        if a in self.memo:
            self.stats["memo_hits"] += 1
            self.trace.append(TraceEntry(depth, via, n, parent_size, "memo"))
            return self.memo[a]
        self.stats["subgames"] += 1
        control = is_one_player(a)
        self.trace.append(TraceEntry(depth, via, n, parent_size, control.value))
        if control is Control.NO_CHOICE:
            sigma, tau = forced(a, Player.MAX), forced(a, Player.MIN)
        elif control is Control.MAX:
            self.stats["one_player_calls"] += 1
            sigma = one_player_solve(a, Player.MAX, self.pref, self.evaluator)
            tau = forced(a, Player.MIN)
        elif control is Control.MIN:
            self.stats["one_player_calls"] += 1
            sigma = forced(a, Player.MAX)
            tau = one_player_solve(a, Player.MIN, self.pref, self.evaluator)
        else:
            sigma = self._pass(a, Player.MAX, depth)
            tau = self._pass(a, Player.MIN, depth)
        sol = Solution(sigma, tau, self.evaluator.values(a, sigma, tau))
        self.memo[a] = sol
        return sol

    def _pass(self, a: Arena, side: Player, depth: int) -> DSStrategy:
        """Optimal positional strategy of ``side`` through a split on its first choice state."""
        omega = next((s for s in a.owned(side) if len(a.moves[s]) > 1), None)
        if omega is None:
            return forced(a, side)
        n = size(a)
        subs = {}
        for x in a.available(omega):
            g_x = restrict_actions(a, {omega: {x}})
            subs[x] = self._solve(g_x, depth + 1,
                                  f"{side.value} {a.states[omega]}:{a.actions[x]}", n)
        sr = split(a, omega)
        hat = sr.arena
        opp = side.opponent
        # Opponent plays, in copy x, its optimal strategy of the subgame that fixed x.
        choice: list[int | None] = [None] * len(hat.states)
        for i, (s, x) in enumerate(zip(sr.projection, sr.copy_index)):
            if hat.owner[i] is opp:
                choice[i] = subs[x].strategy(opp)[s] if x is not None else _single(a, s)
        frozen = restrict_choice(hat, DSStrategy(opp, tuple(choice)))
        fsr = dataclasses.replace(sr, arena=frozen)
        # Copies only meet at omega, so the one-player game decomposes: the
        # value at omega is the best over x of the optimum inside copy x.
        best_x, best_v = None, None
        for x in sr.copies:
            cx = copy_arena(fsr, x)
            self.stats["one_player_calls"] += 1
            zeta = one_player_solve(cx, side, self.pref, self.evaluator)
            v = self.evaluator.values(cx, *((zeta, forced(cx, opp)) if side is Player.MAX
                                            else (forced(cx, opp), zeta)))[0]
            if best_x is None:
                best_x, best_v = x, v
                continue
            c = _better(self.pref, side, v, best_v)
            if c is Comparison.INCOMPARABLE:
                raise PreferenceNotTotalEnough(
                    f"outcomes from {a.states[omega]} under {a.actions[best_x]} and "
                    f"{a.actions[x]} are incomparable")
            if c is Comparison.GREATER:
                best_x, best_v = x, v
        e = best_x
        sigma_e = subs[e].strategy(side)
        ext = extend_from_copy(sr, copy_strategy(sr, e, sigma_e), e)
        projected = project_strategy(sr, e, ext)
        if not isinstance(projected, DSStrategy):
            raise AssertionError("projection of a copy-constant positional strategy must be positional")
        return projected


def _single(a: Arena, s: int) -> int:
    return next(iter(a.moves[s]))


def two_player_solve(a: Arena, pref: Preference) -> Solution:
    return Solver(pref).solve(a)


def solve_report(a: Arena, pref: Preference) -> SolveReport:
    solver = Solver(pref)
    report = SolveReport(a, pref)
    try:
        report.solution = solver.solve(a)
    except (NoUniformOptimum, PreferenceNotTotalEnough) as exc:
        report.failure = f"{type(exc).__name__}: {exc}"
    report.trace = solver.trace
    report.stats = dict(solver.stats)
    return report


# Brute-force oracle.

def _rows(args):
    a, pref, sigmas, taus = args
    ev = Evaluator(pref)
    return [[ev.values(a, s, t) for t in taus] for s in sigmas]


def value_table(a: Arena, pref: Preference, sigmas: Sequence[DSStrategy],
                taus: Sequence[DSStrategy], jobs: int = 1) -> list[list[tuple]]:
    if jobs <= 1 or len(sigmas) < 2:
        return _rows((a, pref, sigmas, taus))
    chunk = -(-len(sigmas) // jobs)
    parts = [(a, pref, sigmas[i:i + chunk], taus) for i in range(0, len(sigmas), chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return [row for part in pool.map(_rows, parts) for row in part]


def brute_force_saddle(a: Arena, pref: Preference, *, max_profiles: int = DEFAULT_MAX_PROFILES,
                       jobs: int = 1) -> Solution:
    """Lexicographically first positional pair that is a saddle from every state."""
    count = ds_count(a, Player.MAX) * ds_count(a, Player.MIN)
    if count > max_profiles:
        raise EnumerationBoundExceeded(count, max_profiles)
    sigmas = list(ds_enumerate(a, Player.MAX))
    taus = list(ds_enumerate(a, Player.MIN))
    table = value_table(a, pref, sigmas, taus, jobs)
    states = range(len(a.states))
    if pref.total:
        col_max = [[max(table[i][j][s] for i in range(len(sigmas))) for s in states]
                   for j in range(len(taus))]
        row_min = [[min(table[i][j][s] for j in range(len(taus))) for s in states]
                   for i in range(len(sigmas))]
        for i in range(len(sigmas)):
            for j in range(len(taus)):
                v = table[i][j]
                if all(v[s] == col_max[j][s] == row_min[i][s] for s in states):
                    return Solution(sigmas[i], taus[j], v)
    else:
        for i in range(len(sigmas)):
            for j in range(len(taus)):
                if _is_saddle(pref, table, i, j, len(sigmas), len(taus)):
                    return Solution(sigmas[i], taus[j], table[i][j])
    raise NoSaddle(f"no positional saddle under {pref} among {count} profiles")


def _is_saddle(pref, table, i, j, n_sigma, n_tau) -> bool:
    v = table[i][j]
    for s in range(len(v)):
        for k in range(n_sigma):
            if compare(pref, table[k][j][s], v[s]) not in (Comparison.LESS, Comparison.EQUAL):
                return False
        for k in range(n_tau):
            if compare(pref, v[s], table[i][k][s]) not in (Comparison.LESS, Comparison.EQUAL):
                return False
    return True


@dataclass(frozen=True)
class SaddleWitness:
    state: str
    side: Player
    deviation: DSStrategy
    value: object
    deviation_value: object

    def __str__(self):
        return (f"{self.side.value} improves from {self.state}: "
                f"{fmt_value(self.value)} -> {fmt_value(self.deviation_value)}")


def verify_saddle(a: Arena, pref: Preference, sigma: DSStrategy, tau: DSStrategy,
                  evaluator: Evaluator | None = None) -> SaddleWitness | None:
    """First profitable positional deviation of either player, or ``None``."""
    ev = evaluator or Evaluator(pref)
    base = ev.values(a, sigma, tau)
    for side, deviations in ((Player.MAX, ds_enumerate(a, Player.MAX)),
                             (Player.MIN, ds_enumerate(a, Player.MIN))):
        for dev in deviations:
            vals = ev.values(a, dev, tau) if side is Player.MAX else ev.values(a, sigma, dev)
            for s, (v, w) in enumerate(zip(base, vals)):
                if _better(pref, side, w, v) in (Comparison.GREATER, Comparison.INCOMPARABLE):
                    return SaddleWitness(a.states[s], side, dev, v, w)
    return None


def saddle_pairs(a: Arena, pref: Preference) -> Iterable[tuple[DSStrategy, DSStrategy]]:
    """Every positional saddle pair (used to check the exchange property)."""
    sigmas = list(ds_enumerate(a, Player.MAX))
    taus = list(ds_enumerate(a, Player.MIN))
    table = value_table(a, pref, sigmas, taus)
    for i in range(len(sigmas)):
        for j in range(len(taus)):
            if _is_saddle(pref, table, i, j, len(sigmas), len(taus)):
                yield sigmas[i], taus[j]


__all__ = [
    "Evaluator", "Solution", "TraceEntry", "SolveReport", "Solver", "one_player_solve",
    "two_player_solve", "solve_report", "brute_force_saddle", "verify_saddle",
    "SaddleWitness", "saddle_pairs", "value_table", "fmt_value", "DEFAULT_MAX_PROFILES",
]
