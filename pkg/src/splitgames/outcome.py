"""Exact outcome evaluation through the Markov chain induced by a profile.

A deterministic finite-memory profile turns the arena into a finite Markov
chain on ``(state, max memory, min memory)``.  Every implemented payoff is a
statistic of that chain: bottom strongly connected components are the
recurrent classes, absorption probabilities come from one exact linear
solve, and long-run averages from the stationary distribution of each class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import networkx as nx

from .arena import Arena, is_deterministic
from .errors import MissingPriorities, NotDeterministic, UnknownState
from .linalg import solve, solve_vector
from .strategy import DSStrategy, Profile, Strategy
from .words import Lasso

Node = tuple[int, int, int]


class Edge(NamedTuple):
    target: int
    prob: Fraction
    reward: Fraction


@dataclass(frozen=True)
class ProfileChain:
    """Reachable product of an arena with both players' memories.

    ``nodes[i]`` is ``(state, max memory, min memory)``; ``step[i]`` lists the
    outgoing edges of node ``i``.  ``roots[k]`` is the node of the ``k``-th
    initial state that was requested.
    """

    arena: Arena
    nodes: tuple[Node, ...]
    step: tuple[tuple[Edge, ...], ...]
    roots: tuple[int, ...]

    @property
    def initial(self) -> int:
        return self.roots[0]

    def state_of(self, i: int) -> int:
        return self.nodes[i][0]


@dataclass(frozen=True)
class ChainAnalysis:
    chain: ProfileChain
    recurrent_classes: tuple[tuple[int, ...], ...]
    absorption: dict[int, tuple[Fraction, ...]]
    stationary: tuple[dict[int, Fraction], ...]
    class_gain: tuple[Fraction, ...] = field(default=())

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {n: k for k, cls in enumerate(self.recurrent_classes) for n in cls}


def _play(strategy: Strategy, memory: int, s: int) -> int:
    if isinstance(strategy, DSStrategy):
        return strategy.choice[s]
    return strategy.choice[memory][s]


def _next_memory(strategy: Strategy, memory: int, t_index: int) -> int:
    if isinstance(strategy, DSStrategy):
        return 0
    return strategy.update[memory][t_index]


def _initial_memory(strategy: Strategy) -> int:
    return 0 if isinstance(strategy, DSStrategy) else strategy.initial


def build_chain(a: Arena, s0: int | str | Iterable[int] | None, p: Profile) -> ProfileChain:
    """Chain reachable from ``s0``; pass ``None`` or several states for a multi-root chain."""
    if s0 is None:
        starts = list(range(len(a.states)))
    elif isinstance(s0, str):
        starts = [a.state_index(s0)]
    elif isinstance(s0, int):
        starts = [s0]
    else:
        starts = list(s0)
    for s in starts:
        if not 0 <= s < len(a.states):
            raise UnknownState(s)
    smax, smin = p.max_strategy, p.min_strategy
    index: dict[Node, int] = {}
    nodes: list[Node] = []
    step: list[tuple[Edge, ...]] = []
    t_index = a.transition_index

    def intern(node: Node) -> int:
        if node not in index:
            index[node] = len(nodes)
            nodes.append(node)
        return index[node]

    m0 = (_initial_memory(smax), _initial_memory(smin))
    roots = tuple(intern((s, *m0)) for s in starts)
    i = 0
    while i < len(nodes):
        s, mx, mn = nodes[i]
        act = _play(smax, mx, s) if a.owner[s].value == "max" else _play(smin, mn, s)
        edges = []
        for t in a.moves[s][act]:
            k = t_index[t.key]
            target = intern((t.target, _next_memory(smax, mx, k), _next_memory(smin, mn, k)))
            edges.append(Edge(target, t.prob, t.reward))
        step.append(tuple(edges))
        i += 1
    return ProfileChain(a, tuple(nodes), tuple(step), roots)


def _graph(c: ProfileChain) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(c.nodes)))
    g.add_edges_from((i, e.target) for i, edges in enumerate(c.step) for e in edges)
    return g


def _stationary(c: ProfileChain, cls: Sequence[int]) -> dict[int, Fraction]:
    if len(cls) == 1:
        return {cls[0]: Fraction(1)}
    pos = {n: k for k, n in enumerate(cls)}
    n = len(cls)
    # Balance equations pi (P - I) = 0 with the last one replaced by normalization.
    m = [[Fraction(0)] * n for _ in range(n)]
    for j, node in enumerate(cls):
        for e in c.step[node]:
            m[pos[e.target]][j] += e.prob
        m[j][j] -= 1
    m[n - 1] = [Fraction(1)] * n
    rhs = [Fraction(0)] * (n - 1) + [Fraction(1)]
    return dict(zip(cls, solve_vector(m, rhs)))


def analyze(c: ProfileChain) -> ChainAnalysis:
    g = _graph(c)
    cond = nx.condensation(g)
    classes = []
    for k in cond.nodes:
        if cond.out_degree(k) == 0:
            classes.append(tuple(sorted(cond.nodes[k]["members"])))
    classes.sort()
    class_of = {n: k for k, cls in enumerate(classes) for n in cls}
    transient = [i for i in range(len(c.nodes)) if i not in class_of]
    absorption: dict[int, tuple[Fraction, ...]] = {}
    for n, k in class_of.items():
        absorption[n] = tuple(Fraction(int(j == k)) for j in range(len(classes)))
    if transient:
        pos = {n: i for i, n in enumerate(transient)}
        size = len(transient)
        m = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
        rhs = [[Fraction(0)] * len(classes) for _ in range(size)]
        for i, n in enumerate(transient):
            for e in c.step[n]:
                if e.target in pos:
                    m[i][pos[e.target]] -= e.prob
                else:
                    rhs[i][class_of[e.target]] += e.prob
        for n, row in zip(transient, solve(m, rhs)):
            absorption[n] = tuple(row)
    stationary = tuple(_stationary(c, cls) for cls in classes)
    gains = tuple(
        sum((pi[n] * sum((e.prob * e.reward for e in c.step[n]), Fraction(0)) for n in cls),
            Fraction(0))
        for cls, pi in zip(classes, stationary))
    return ChainAnalysis(c, tuple(classes), absorption, stationary, gains)


def _weighted(an: ChainAnalysis, root: int, class_values: Sequence[Fraction]) -> Fraction:
    return sum((w * v for w, v in zip(an.absorption[root], class_values)), Fraction(0))


def _need_priorities(a: Arena) -> tuple[int, ...]:
    if a.priority is None:
        raise MissingPriorities()
    return a.priority


# Per-root evaluators on an already built chain.  The public single-state
# functions below and the all-states evaluation used by the solvers share them.

def chain_mean(c: ProfileChain) -> list[Fraction]:
    an = analyze(c)
    return [_weighted(an, r, an.class_gain) for r in c.roots]


def chain_parity(c: ProfileChain) -> list[Fraction]:
    prio = _need_priorities(c.arena)
    an = analyze(c)
    wins = [Fraction(int(max(prio[c.state_of(n)] for n in cls) % 2 == 0))
            for cls in an.recurrent_classes]
    return [_weighted(an, r, wins) for r in c.roots]


def chain_simple_parity(c: ProfileChain) -> list[Fraction]:
    """Probability that the largest priority ever seen is even.

    Runs on the chain augmented with the running maximum, which starts at
    the priority of the initial state.
    """
    prio = _need_priorities(c.arena)
    index: dict[tuple[int, int], int] = {}
    nodes: list[tuple[int, int]] = []
    step: list[tuple[Edge, ...]] = []

    def intern(key):
        if key not in index:
            index[key] = len(nodes)
            nodes.append(key)
        return index[key]

    roots = tuple(intern((r, prio[c.state_of(r)])) for r in c.roots)
    i = 0
    while i < len(nodes):
        n, top = nodes[i]
        step.append(tuple(Edge(intern((e.target, max(top, prio[c.state_of(e.target)]))),
                               e.prob, e.reward) for e in c.step[n]))
        i += 1
    aug = ProfileChain(c.arena, tuple((c.nodes[n][0], top, 0) for n, top in nodes),
                       tuple(step), roots)
    an = analyze(aug)
    wins = [Fraction(int(nodes[cls[0]][1] % 2 == 0)) for cls in an.recurrent_classes]
    return [_weighted(an, r, wins) for r in roots]


def chain_discounted(c: ProfileChain, beta: Fraction) -> list[Fraction]:
    beta = Fraction(beta)
    n = len(c.nodes)
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rhs = [Fraction(0)] * n
    for i, edges in enumerate(c.step):
        for e in edges:
            m[i][e.target] -= beta * e.prob
            rhs[i] += e.prob * e.reward
    v = solve_vector(m, rhs)
    return [v[r] for r in c.roots]


def chain_lassos(c: ProfileChain) -> list[Lasso]:
    if any(len(edges) != 1 for edges in c.step):
        raise NotDeterministic("the induced chain branches; lassos need a deterministic outcome")
    out = []
    for r in c.roots:
        seen: dict[int, int] = {}
        word: list[Fraction] = []
        n = r
        while n not in seen:
            seen[n] = len(word)
            e = c.step[n][0]
            word.append(e.reward)
            n = e.target
        out.append(Lasso.of(word[:seen[n]], word[seen[n]:]))
    return out


def mean_payoff_value(a: Arena, s0, p: Profile) -> Fraction:
    return chain_mean(build_chain(a, s0, p))[0]


def parity_value(a: Arena, s0, p: Profile) -> Fraction:
    _need_priorities(a)
    return chain_parity(build_chain(a, s0, p))[0]


def simple_parity_value(a: Arena, s0, p: Profile) -> Fraction:
    _need_priorities(a)
    return chain_simple_parity(build_chain(a, s0, p))[0]


def discounted_value(a: Arena, s0, p: Profile, beta) -> Fraction:
    beta = Fraction(beta)
    if not 0 < beta < 1:
        raise ValueError("discount factor must lie strictly between 0 and 1")
    return chain_discounted(build_chain(a, s0, p), beta)[0]


def lasso_of(a: Arena, s0, p: Profile) -> Lasso:
    """Reward word of the unique play of a deterministic arena."""
    if not is_deterministic(a):
        raise NotDeterministic("lassos are defined for deterministic arenas only")
    return chain_lassos(build_chain(a, s0, p))[0]


__all__ = [
    "Edge", "ProfileChain", "ChainAnalysis", "build_chain", "analyze",
    "chain_mean", "chain_parity", "chain_simple_parity", "chain_discounted", "chain_lassos",
    "mean_payoff_value", "parity_value", "simple_parity_value", "discounted_value", "lasso_of",
]
