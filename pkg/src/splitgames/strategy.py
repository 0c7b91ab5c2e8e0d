"""Deterministic stationary and finite-memory deterministic strategies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Union

from .arena import Arena, Player
from .errors import Incompatible, UnavailableAction


@dataclass(frozen=True)
class DSStrategy:
    """Positional strategy: ``choice[s]`` is the action at owned state ``s``.

    Entries for states of the other player are ``None``.
    """

    owner: Player
    choice: tuple[int | None, ...]

    def __getitem__(self, s: int) -> int | None:
        return self.choice[s]

    @classmethod
    def from_names(cls, arena: Arena, owner: Player, mapping: Mapping[str, str]) -> "DSStrategy":
        choice: list[int | None] = [None] * len(arena.states)
        for s in arena.owned(owner):
            name = arena.states[s]
            if name in mapping:
                choice[s] = arena.action_index(mapping[name])
            elif len(arena.moves[s]) == 1:
                choice[s] = next(iter(arena.moves[s]))
            else:
                raise ValueError(f"no action given for state {name!r}")
        unknown = set(mapping) - {arena.states[s] for s in arena.owned(owner)}
        if unknown:
            raise ValueError(f"states not owned by {owner.value}: {sorted(unknown)}")
        strategy = cls(owner, tuple(choice))
        check_strategy(arena, strategy)
        return strategy

    def to_names(self, arena: Arena) -> dict[str, str]:
        return {arena.states[s]: arena.actions[a]
                for s, a in enumerate(self.choice) if a is not None}

    def dump(self, arena: Arena) -> str:
        return "\n".join(f"{s} -> {a}" for s, a in self.to_names(arena).items())


@dataclass(frozen=True)
class FMStrategy:
    """Deterministic strategy driven by a finite memory.

    ``choice[m][s]`` is the action played at owned state ``s`` in memory ``m``
    and ``update[m][i]`` the memory after the arena's ``i``-th transition.
    Memory is updated on every transition, whoever chose it.
    """

    owner: Player
    initial: int
    choice: tuple[tuple[int | None, ...], ...]
    update: tuple[tuple[int, ...], ...]

    @property
    def memory_size(self) -> int:
        return len(self.choice)

    def dump(self, arena: Arena) -> str:
        lines = [f"memory states: {self.memory_size}, initial m{self.initial}"]
        for m, row in enumerate(self.choice):
            for s, a in enumerate(row):
                if a is not None:
                    lines.append(f"m{m} {arena.states[s]} -> {arena.actions[a]}")
        for m, row in enumerate(self.update):
            for i, m2 in enumerate(row):
                if m2 != m:
                    lines.append(f"m{m} on {arena.describe_transition(arena.transitions[i])} -> m{m2}")
        return "\n".join(lines)


Strategy = Union[DSStrategy, FMStrategy]


class Profile(NamedTuple):
    max_strategy: Strategy
    min_strategy: Strategy


def check_strategy(arena: Arena, strategy: Strategy) -> None:
    rows = [strategy.choice] if isinstance(strategy, DSStrategy) else strategy.choice
    owned = set(arena.owned(strategy.owner))
    for row in rows:
        if len(row) != len(arena.states):
            raise ValueError("strategy does not match the arena's state count")
        for s, a in enumerate(row):
            if s in owned:
                if a not in arena.moves[s]:
                    name = arena.actions[a] if a is not None and 0 <= a < len(arena.actions) else a
                    raise UnavailableAction(arena.states[s], name)
            elif a is not None:
                raise ValueError(f"strategy prescribes an action at foreign state {arena.states[s]!r}")
    if isinstance(strategy, FMStrategy):
        if not 0 <= strategy.initial < strategy.memory_size:
            raise ValueError("initial memory out of range")
        for row in strategy.update:
            if len(row) != len(arena.transitions):
                raise ValueError("memory update must be total on the transition set")
            if any(not 0 <= m < strategy.memory_size for m in row):
                raise ValueError("memory update leaves the memory set")


def check_profile(arena: Arena, profile: Profile) -> None:
    if profile.max_strategy.owner is not Player.MAX or profile.min_strategy.owner is not Player.MIN:
        raise ValueError("profile strategies have the wrong owners")
    check_strategy(arena, profile.max_strategy)
    check_strategy(arena, profile.min_strategy)


def ds_enumerate(arena: Arena, owner: Player) -> Iterator[DSStrategy]:
    """Every positional strategy of ``owner``, lexicographically by (state, action)."""
    owned = arena.owned(owner)
    n = len(arena.states)
    for combo in itertools.product(*(arena.available(s) for s in owned)):
        choice: list[int | None] = [None] * n
        for s, a in zip(owned, combo):
            choice[s] = a
        yield DSStrategy(owner, tuple(choice))


def ds_count(arena: Arena, owner: Player) -> int:
    n = 1
    for s in arena.owned(owner):
        n *= len(arena.moves[s])
    return n


def forced(arena: Arena, owner: Player) -> DSStrategy:
    """The first positional strategy; the only one when ``owner`` has no choice."""
    return next(ds_enumerate(arena, owner))


def as_fm(strategy: Strategy, arena: Arena) -> FMStrategy:
    if isinstance(strategy, FMStrategy):
        return strategy
    return FMStrategy(strategy.owner, 0, (strategy.choice,),
                      ((0,) * len(arena.transitions),))


def restrict_to_subarena(strategy: Strategy, parent: Arena, sub: Arena) -> Strategy:
    """Restrict a strategy of ``parent`` to the subarena ``sub``.

    States and actions are matched by name, so ``sub`` may also be a
    state-restricted copy such as the per-action component of a split.
    """
    s_map = [parent.state_index(name) for name in sub.states]
    a_lookup = {parent.action_index(a): sub.action_index(a) for a in sub.actions}

    def row(parent_row):
        out: list[int | None] = []
        for s_sub, s_par in enumerate(s_map):
            if sub.owner[s_sub] is not strategy.owner:
                out.append(None)
                continue
            a = parent_row[s_par]
            a_sub = a_lookup.get(a)
            if a_sub is None or a_sub not in sub.moves[s_sub]:
                raise Incompatible(sub.states[s_sub], parent.actions[a])
            out.append(a_sub)
        return tuple(out)

    if isinstance(strategy, DSStrategy):
        return DSStrategy(strategy.owner, row(strategy.choice))

    t_map = [parent.transition_index[(s_map[t.source],
                                      parent.action_index(sub.actions[t.action]),
                                      s_map[t.target])]
             for t in sub.transitions]
    update = tuple(tuple(strategy.update[m][i] for i in t_map)
                   for m in range(strategy.memory_size))
    rows: list[tuple | None] = []
    failures: dict[int, Incompatible] = {}
    for m, r in enumerate(strategy.choice):
        try:
            rows.append(row(r))
        except Incompatible as exc:
            rows.append(None)
            failures[m] = exc
    # Memories that cannot be reached inside the subarena may prescribe removed actions.
    seen, stack = {strategy.initial}, [strategy.initial]
    while stack:
        m = stack.pop()
        if rows[m] is None:
            raise failures[m]
        for i, t in enumerate(sub.transitions):
            if sub.owner[t.source] is strategy.owner and rows[m][t.source] != t.action:
                continue
            if update[m][i] not in seen:
                seen.add(update[m][i])
                stack.append(update[m][i])
    filler = forced(sub, strategy.owner).choice
    choice = tuple(r if r is not None else filler for r in rows)
    return FMStrategy(strategy.owner, strategy.initial, choice, update)


def _reachable_memory(fm: FMStrategy, arena: Arena) -> set[int]:
    """Memories reachable along transitions consistent with the strategy itself."""
    seen = {fm.initial}
    stack = [fm.initial]
    while stack:
        m = stack.pop()
        row = fm.choice[m]
        for i, t in enumerate(arena.transitions):
            if arena.owner[t.source] is fm.owner and row[t.source] != t.action:
                continue
            m2 = fm.update[m][i]
            if m2 not in seen:
                seen.add(m2)
                stack.append(m2)
    return seen


def minimize(fm: FMStrategy, arena: Arena) -> FMStrategy:
    """Canonical minimal form: reachable part, then partition refinement.

    Reachability and refinement only follow transitions the strategy can
    actually take at its own states, so memories that differ only on
    self-inconsistent histories are merged.
    """
    reach = sorted(_reachable_memory(fm, arena))
    owned = arena.owned(fm.owner)

    def consistent(m):
        return [i for i, t in enumerate(arena.transitions)
                if arena.owner[t.source] is not fm.owner or fm.choice[m][t.source] == t.action]

    block = {}
    labels = {}
    for m in reach:
        sig = tuple(fm.choice[m][s] for s in owned)
        block[m] = labels.setdefault(sig, len(labels))
    while True:
        labels = {}
        new = {}
        for m in reach:
            sig = (block[m], tuple((i, block[fm.update[m][i]]) for i in consistent(m)))
            new[m] = labels.setdefault(sig, len(labels))
        if len(set(new.values())) == len(set(block.values())):
            block = new
            break
        block = new
    # Renumber blocks in breadth-first order from the initial memory.
    order: dict[int, int] = {}
    queue = [fm.initial]
    rep: dict[int, int] = {}
    while queue:
        m = queue.pop(0)
        b = block[m]
        if b in order:
            continue
        order[b] = len(order)
        rep[b] = m
        for i in consistent(m):
            queue.append(fm.update[m][i])
    n = len(order)
    choice = [None] * n
    update = [None] * n
    for b, k in order.items():
        m = rep[b]
        choice[k] = fm.choice[m]
        row = []
        cons = set(consistent(m))
        for i in range(len(arena.transitions)):
            row.append(order[block[fm.update[m][i]]] if i in cons else k)
        update[k] = tuple(row)
    return FMStrategy(fm.owner, 0, tuple(choice), tuple(update))


def simplify(strategy: Strategy, arena: Arena) -> Strategy:
    """Minimize and return a :class:`DSStrategy` when one memory state suffices."""
    if isinstance(strategy, DSStrategy):
        return strategy
    fm = minimize(strategy, arena)
    if fm.memory_size == 1:
        return DSStrategy(fm.owner, fm.choice[0])
    return fm


def equivalent(a: Strategy, b: Strategy, arena: Arena) -> bool:
    """Structural equality after minimization."""
    return a.owner is b.owner and minimize(as_fm(a, arena), arena) == minimize(as_fm(b, arena), arena)


def restrict_choice(arena: Arena, strategy: DSStrategy) -> Arena:
    """Subarena where the strategy's owner is forced to play ``strategy``."""
    from .arena import restrict_actions
    return restrict_actions(arena, {s: {a} for s, a in enumerate(strategy.choice) if a is not None})
