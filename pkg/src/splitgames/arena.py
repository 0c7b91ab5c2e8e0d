"""Finite perfect-information stochastic arenas with exact rational data.

States and actions are dense integer indices backed by name tables.
Transitions are kept sorted by ``(source, action, target)`` so every
iteration in the package is reproducible.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    DeadState,
    DuplicateTransition,
    EmptyActionSet,
    NonPositiveProbability,
    PartialActionRemoval,
    ProbabilityMass,
    UnknownState,
    UnknownTransition,
)


class Player(enum.Enum):
    MAX = "max"
    MIN = "min"

    @property
    def opponent(self) -> "Player":
        return Player.MIN if self is Player.MAX else Player.MAX


class Control(enum.Enum):
    MAX = "max-controlled"
    MIN = "min-controlled"
    TWO_PLAYER = "two-player"
    NO_CHOICE = "no-choice"


class TransitionKey(NamedTuple):
    source: int
    action: int
    target: int


class Transition(NamedTuple):
    source: int
    action: int
    target: int
    prob: Fraction
    reward: Fraction

    @property
    def key(self) -> TransitionKey:
        return TransitionKey(self.source, self.action, self.target)


@dataclass(frozen=True, eq=False)
class Arena:
    states: tuple[str, ...]
    actions: tuple[str, ...]
    owner: tuple[Player, ...]
    transitions: tuple[Transition, ...]
    priority: tuple[int, ...] | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(sorted(self.transitions)))

    # Equality and hashing ignore the display name.
    @cached_property
    def _key(self):
        return (self.states, self.actions, self.owner, self.transitions, self.priority)

    def __eq__(self, other):
        if not isinstance(other, Arena):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"Arena({self.name or 'unnamed'}: {len(self.states)} states, "
                f"{len(self.transitions)} transitions, size {size(self)})")

    @classmethod
    def build(cls, states: Sequence, actions: Sequence[str],
              transitions: Iterable[Sequence], *, name: str = "",
              check: bool = True) -> "Arena":
        """Build an arena from names.

        ``states`` holds ``(name, owner)`` or ``(name, owner, priority)``
        tuples; ``owner`` may be a :class:`Player` or ``"max"``/``"min"``.
        ``transitions`` holds ``(source, action, target, prob[, reward])``
        with probabilities and rewards given as anything
        :class:`fractions.Fraction` accepts.
        """
        names, owners, priorities = [], [], []
        for entry in states:
            names.append(entry[0])
            owners.append(Player(entry[1]) if not isinstance(entry[1], Player) else entry[1])
            priorities.append(entry[2] if len(entry) > 2 else None)
        if any(p is None for p in priorities):
            if any(p is not None for p in priorities):
                raise ValueError("priorities must be given for all states or none")
            prio = None
        else:
            prio = tuple(int(p) for p in priorities)
        s_index = {n: i for i, n in enumerate(names)}
        a_index = {n: i for i, n in enumerate(actions)}
        trans = []
        for t in transitions:
            src, act, dst, prob = t[:4]
            reward = t[4] if len(t) > 4 else 0
            for n in (src, dst):
                if n not in s_index:
                    raise UnknownState(n)
            if act not in a_index:
                raise ValueError(f"unknown action {act!r}")
            trans.append(Transition(s_index[src], a_index[act], s_index[dst],
                                    Fraction(prob), Fraction(reward)))
        arena = cls(tuple(names), tuple(actions), tuple(owners), tuple(trans), prio, name)
        if check:
            validate(arena)
        return arena

    @cached_property
    def moves(self) -> tuple[dict[int, tuple[Transition, ...]], ...]:
        """Per state, the transitions grouped by action."""
        table: list[dict[int, list[Transition]]] = [defaultdict(list) for _ in self.states]
        for t in self.transitions:
            table[t.source][t.action].append(t)
        return tuple({a: tuple(ts) for a, ts in sorted(d.items())} for d in table)

    @cached_property
    def transition_index(self) -> dict[TransitionKey, int]:
        return {t.key: i for i, t in enumerate(self.transitions)}

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise UnknownState(name) from None

    def action_index(self, name: str) -> int:
        try:
            return self.actions.index(name)
        except ValueError:
            raise ValueError(f"unknown action {name!r}") from None

    def available(self, s: int) -> tuple[int, ...]:
        return tuple(self.moves[s])

    def owned(self, player: Player) -> tuple[int, ...]:
        return tuple(s for s, o in enumerate(self.owner) if o is player)

    def describe_transition(self, t: TransitionKey | Transition) -> str:
        return f"({self.states[t[0]]}, {self.actions[t[1]]}, {self.states[t[2]]})"


def validate(a: Arena) -> None:
    """Raise an :class:`~splitgames.errors.ArenaError` unless ``a`` is a valid arena."""
    seen = set()
    for t in a.transitions:
        if t.key in seen:
            raise DuplicateTransition(a.describe_transition(t))
        seen.add(t.key)
        if not 0 < t.prob <= 1:
            raise NonPositiveProbability(a.describe_transition(t))
    for s, acts in enumerate(a.moves):
        if not acts:
            raise EmptyActionSet(a.states[s])
        for act, ts in acts.items():
            total = sum((t.prob for t in ts), Fraction(0))
            if total != 1:
                raise ProbabilityMass(a.states[s], a.actions[act], total)
    if len(a.owner) != len(a.states):
        raise ValueError("owner map must cover every state")
    if a.priority is not None:
        if len(a.priority) != len(a.states) or any(p < 0 for p in a.priority):
            raise ValueError("priorities must be nonnegative and cover every state")


def available_actions(a: Arena, s: int | str) -> frozenset[int]:
    if isinstance(s, str):
        s = a.state_index(s)
    if not 0 <= s < len(a.states):
        raise UnknownState(s)
    return frozenset(a.moves[s])


def subarena(a: Arena, keep: Iterable[TransitionKey | Sequence[int]]) -> Arena:
    """Return the unique subarena of ``a`` whose transition set is ``keep``."""
    keep = {TransitionKey(*k[:3]) for k in keep}
    index = a.transition_index
    for k in keep:
        if k not in index:
            raise UnknownTransition(a.describe_transition(k) if _in_range(a, k) else k)
    kept = [a.transitions[index[k]] for k in sorted(keep)]
    groups: dict[tuple[int, int], int] = defaultdict(int)
    for t in kept:
        groups[t.source, t.action] += 1
    for (s, act), n in groups.items():
        if n != len(a.moves[s][act]):
            raise PartialActionRemoval(a.states[s], a.actions[act])
    alive = {s for s, _ in groups}
    for s in range(len(a.states)):
        if s not in alive:
            raise DeadState(a.states[s])
    return Arena(a.states, a.actions, a.owner, tuple(kept), a.priority, a.name)


def _in_range(a: Arena, k) -> bool:
    return 0 <= k[0] < len(a.states) and 0 <= k[1] < len(a.actions) and 0 <= k[2] < len(a.states)


def restrict_actions(a: Arena, allowed: Mapping[int, Iterable[int]]) -> Arena:
    """Subarena keeping, at each listed state, only the given actions."""
    allowed = {s: set(acts) for s, acts in allowed.items()}
    keep = [t.key for t in a.transitions
            if t.source not in allowed or t.action in allowed[t.source]]
    return subarena(a, keep)


def size(a: Arena) -> int:
    return sum(len(m) - 1 for m in a.moves)


def is_one_player(a: Arena) -> Control:
    if size(a) == 0:
        return Control.NO_CHOICE
    choice = {p: any(len(a.moves[s]) > 1 for s in a.owned(p)) for p in Player}
    if not choice[Player.MIN]:
        return Control.MAX
    if not choice[Player.MAX]:
        return Control.MIN
    return Control.TWO_PLAYER


def is_deterministic(a: Arena) -> bool:
    return all(t.prob == 1 for t in a.transitions)
