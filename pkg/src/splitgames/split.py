"""Splitting an arena on a separation state.

The split remembers, in every state other than the separation state
``omega``, which action was last chosen at ``omega``.  Its states are
``omega`` followed by the copies ``s_x`` for each ``x`` available at
``omega`` (copies grouped by action, states in original order).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .arena import Arena, Transition
from .errors import InvalidHistory, SeparationViolated, UnavailableAction, UnknownState
from .strategy import DSStrategy, FMStrategy, Strategy, as_fm, simplify

History = tuple[int, ...]


@dataclass(frozen=True)
class SplitResult:
    arena: Arena
    original: Arena
    omega: int
    projection: tuple[int, ...]
    copy_index: tuple[int | None, ...]

    @cached_property
    def _lift(self) -> dict[tuple[int, int], int]:
        return {(s, x): i for i, (s, x) in enumerate(zip(self.projection, self.copy_index))
                if x is not None}

    @property
    def omega_hat(self) -> int:
        return self.copy_index.index(None)

    @property
    def copies(self) -> tuple[int, ...]:
        """Actions available at the separation state, i.e. the copy labels."""
        return self.original.available(self.omega)

    def state(self, s: int, x: int) -> int:
        """Index of ``s_x`` in the split (``omega_x`` is ``omega`` itself)."""
        if s == self.omega:
            return self.omega_hat
        return self._lift[s, x]

    def copy_states(self, x: int) -> tuple[int, ...]:
        return tuple(i for i, y in enumerate(self.copy_index) if y == x)


def split(a: Arena, omega: int | str) -> SplitResult:
    if isinstance(omega, str):
        omega = a.state_index(omega)
    if not 0 <= omega < len(a.states):
        raise UnknownState(omega)
    xs = a.available(omega)
    proj = [omega]
    copy: list[int | None] = [None]
    for x in xs:
        for s in range(len(a.states)):
            if s != omega:
                proj.append(s)
                copy.append(x)
    index = {(s, x): i for i, (s, x) in enumerate(zip(proj, copy))}

    def node(s, x):
        return 0 if s == omega else index[s, x]

    names = [a.states[omega] if x is None else f"{a.states[s]}_{a.actions[x]}"
             for s, x in zip(proj, copy)]
    trans = []
    for t in a.transitions:
        if t.source == omega:
            trans.append(Transition(0, t.action, node(t.target, t.action), t.prob, t.reward))
        else:
            for x in xs:
                trans.append(Transition(index[t.source, x], t.action, node(t.target, x),
                                        t.prob, t.reward))
    prio = None if a.priority is None else tuple(a.priority[s] for s in proj)
    hat = Arena(tuple(names), a.actions, tuple(a.owner[s] for s in proj), tuple(trans), prio,
                f"{a.name or 'arena'} split on {a.states[omega]}")
    return SplitResult(hat, a, omega, tuple(proj), tuple(copy))


def _check_history(a: Arena, h: Sequence[int]) -> None:
    if len(h) % 2 != 1:
        raise InvalidHistory(tuple(h), "must alternate states and actions")
    for i in range(0, len(h) - 1, 2):
        if (h[i], h[i + 1], h[i + 2]) not in a.transition_index:
            raise InvalidHistory(tuple(h), f"no transition at position {i}")
    for s in h[::2]:
        if not 0 <= s < len(a.states):
            raise InvalidHistory(tuple(h), "unknown state")


def project_history(sr: SplitResult, h: Sequence[int]) -> History:
    _check_history(sr.arena, h)
    return tuple(sr.projection[v] if i % 2 == 0 else v for i, v in enumerate(h))


def lift_history(sr: SplitResult, x: int, h: Sequence[int]) -> History:
    """The unique history of the split starting in ``s_x`` that projects to ``h``."""
    if x not in sr.copies:
        raise UnavailableAction(sr.original.states[sr.omega], x)
    _check_history(sr.original, h)
    cur = x
    out = [sr.state(h[0], cur)]
    for i in range(1, len(h), 2):
        a, t = h[i], h[i + 1]
        if h[i - 1] == sr.omega:
            cur = a
        out += [a, sr.state(t, cur)]
    return tuple(out)


def lift_strategy(sr: SplitResult, sigma: Strategy) -> Strategy:
    """Composition with the projection: play as ``sigma`` would on the projected history."""
    if isinstance(sigma, DSStrategy):
        return DSStrategy(sigma.owner, tuple(sigma.choice[s] for s in sr.projection))
    orig = sr.original
    t_map = [orig.transition_index[(sr.projection[t.source], t.action, sr.projection[t.target])]
             for t in sr.arena.transitions]
    choice = tuple(tuple(row[s] for s in sr.projection) for row in sigma.choice)
    update = tuple(tuple(row[i] for i in t_map) for row in sigma.update)
    return FMStrategy(sigma.owner, sigma.initial, choice, update)


def project_strategy(sr: SplitResult, x: int, sigma_hat: Strategy) -> Strategy:
    """Composition with the lifting anchored at copy ``x``.

    The result tracks the last action chosen at the separation state
    (initially ``x``) together with ``sigma_hat``'s own memory, and is
    returned in minimal form: a :class:`DSStrategy` whenever one memory
    state suffices, which is always the case when ``sigma_hat`` is
    positional and plays ``x`` at the separation state.
    """
    if x not in sr.copies:
        raise UnavailableAction(sr.original.states[sr.omega], x)
    orig = sr.original
    if isinstance(sigma_hat, DSStrategy) and (
            orig.owner[sr.omega] is sigma_hat.owner and sigma_hat[sr.omega_hat] == x):
        return DSStrategy(sigma_hat.owner,
                          tuple(sigma_hat[sr.state(s, x)] for s in range(len(orig.states))))
    fm = as_fm(sigma_hat, sr.arena)
    xs = sr.copies
    k = fm.memory_size
    # Memory (copy position, inner memory) flattened as pos * k + inner.
    choice = []
    update = []
    for pos, y in enumerate(xs):
        for m in range(k):
            choice.append(tuple(fm.choice[m][sr.state(s, y)] for s in range(len(orig.states))))
    hat_index = sr.arena.transition_index
    for pos, y in enumerate(xs):
        for m in range(k):
            row = []
            for t in orig.transitions:
                y2 = t.action if t.source == sr.omega else y
                key = (sr.state(t.source, y), t.action, sr.state(t.target, y2))
                m2 = fm.update[m][hat_index[key]]
                row.append(xs.index(y2) * k + m2)
            update.append(tuple(row))
    projected = FMStrategy(fm.owner, xs.index(x) * k + fm.initial, tuple(choice), tuple(update))
    return simplify(projected, orig)


def check_separation(sr: SplitResult) -> None:
    """Every path between two distinct copies must visit the separation state."""
    hat = sr.arena
    succ: list[set[int]] = [set() for _ in hat.states]
    for t in hat.transitions:
        succ[t.source].add(t.target)
    omega = sr.omega_hat
    for start, x in enumerate(sr.copy_index):
        if x is None:
            continue
        parent = {start: None}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in sorted(succ[u]):
                if v == omega or v in parent:
                    continue
                parent[v] = u
                if sr.copy_index[v] != x:
                    path = [v]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    raise SeparationViolated([hat.states[i] for i in reversed(path)])
                queue.append(v)


def copy_arena(sr: SplitResult, x: int) -> Arena:
    """The component of the split reached by playing ``x`` at the separation state.

    States are ``omega`` and the copies ``s_x``; only ``x`` remains available at
    ``omega``.  It is isomorphic to the original arena with ``omega`` restricted
    to ``x``, hence strictly smaller whenever ``omega`` has two or more actions.
    """
    if x not in sr.copies:
        raise UnavailableAction(sr.original.states[sr.omega], x)
    hat = sr.arena
    keep = [sr.omega_hat, *sr.copy_states(x)]
    new = {old: i for i, old in enumerate(keep)}
    trans = [Transition(new[t.source], t.action, new[t.target], t.prob, t.reward)
             for t in hat.transitions
             if t.source in new and (t.source != sr.omega_hat or t.action == x)]
    prio = None if hat.priority is None else tuple(hat.priority[i] for i in keep)
    return Arena(tuple(hat.states[i] for i in keep), hat.actions,
                 tuple(hat.owner[i] for i in keep), tuple(trans), prio,
                 f"{hat.name} copy {hat.actions[x]}")


def copy_strategy(sr: SplitResult, x: int, sigma: DSStrategy) -> DSStrategy:
    """Transport a positional strategy of the restricted original onto ``copy_arena(sr, x)``."""
    keep = [sr.omega_hat, *sr.copy_states(x)]
    return DSStrategy(sigma.owner, tuple(sigma[sr.projection[i]] for i in keep))


def extend_from_copy(sr: SplitResult, sigma_e: DSStrategy, e: int) -> DSStrategy:
    """Extend a positional strategy of copy ``e`` to the whole split, constant across copies."""
    if e not in sr.copies:
        raise UnavailableAction(sr.original.states[sr.omega], e)
    keep = [sr.omega_hat, *sr.copy_states(e)]
    at = {sr.projection[i]: sigma_e[j] for j, i in enumerate(keep)}
    choice = []
    for i, s in enumerate(sr.projection):
        if sr.arena.owner[i] is not sigma_e.owner:
            choice.append(None)
        elif i == sr.omega_hat:
            choice.append(e)
        else:
            choice.append(at[s])
    return DSStrategy(sigma_e.owner, tuple(choice))


def to_dot(sr: SplitResult) -> str:
    palette = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
               "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd"]
    hat = sr.arena
    lines = [f'digraph "{hat.name}" {{', "  rankdir=LR;"]
    for i, name in enumerate(hat.states):
        shape = "box" if hat.owner[i].value == "max" else "ellipse"
        x = sr.copy_index[i]
        if x is None:
            attrs = 'shape=doubleoctagon, style=filled, fillcolor="#ffffff"'
        else:
            color = palette[sr.copies.index(x) % len(palette)]
            attrs = f'shape={shape}, style=filled, fillcolor="{color}"'
        lines.append(f'  "{name}" [{attrs}];')
    for t in hat.transitions:
        label = f"{hat.actions[t.action]}, {t.prob}, r={t.reward}"
        lines.append(f'  "{hat.states[t.source]}" -> "{hat.states[t.target]}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "SplitResult", "split", "project_history", "lift_history", "lift_strategy",
    "project_strategy", "check_separation", "copy_arena", "copy_strategy",
    "extend_from_copy", "to_dot",
]
