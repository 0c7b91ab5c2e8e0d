"""Seeded random arenas and words for property tests and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .arena import Arena, Player, Transition, validate
from .words import GrowingWord, Lasso

ACTION_NAMES = ("a", "b", "c", "d", "e")


def _composition(rng: random.Random, parts: int, den: int) -> list[Fraction]:
    """Random split of 1 into ``parts`` positive multiples of ``1/den``."""
    cuts = sorted(rng.sample(range(1, den), parts - 1))
    bounds = [0, *cuts, den]
    return [Fraction(bounds[i + 1] - bounds[i], den) for i in range(parts)]


def random_arena(rng: random.Random, *, max_states: int = 5, max_actions: int = 3,
                 max_den: int = 4, max_succ: int = 3, priorities: bool = True,
                 rewards: tuple = (0, Fraction(1, 2), 1, 2), name: str = "") -> Arena:
    """A valid arena with at most the given numbers of states and actions per state.

    Probabilities are multiples of ``1/d`` for a random ``d <= max_den``.
    """
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    actions = ACTION_NAMES[:max_actions]
    owner = tuple(rng.choice((Player.MAX, Player.MIN)) for _ in range(n))
    trans = []
    for s in range(n):
        k = rng.randint(1, max_actions)
        for act in sorted(rng.sample(range(max_actions), k)):
            den = rng.randint(1, max_den)
            m = rng.randint(1, min(n, max_succ, den))
            targets = sorted(rng.sample(range(n), m))
            for t, p in zip(targets, _composition(rng, m, den)):
                trans.append(Transition(s, act, t, p, Fraction(rng.choice(rewards))))
    prio = tuple(rng.randint(0, 3) for _ in range(n)) if priorities else None
    arena = Arena(states, actions, owner, tuple(trans), prio, name)
    validate(arena)
    return arena


def random_lasso(rng: random.Random, alphabet, *, max_prefix: int = 3, max_cycle: int = 4) -> Lasso:
    prefix = [rng.choice(alphabet) for _ in range(rng.randint(0, max_prefix))]
    cycle = [rng.choice(alphabet) for _ in range(rng.randint(1, max_cycle))]
    return Lasso.of(prefix, cycle)


def random_growing(rng: random.Random, alphabet, growth: int, *, max_prefix: int = 2,
                   max_blocks: int = 3) -> GrowingWord:
    prefix = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_prefix)))
    blocks = tuple((rng.choice(alphabet), rng.randint(1, 2))
                   for _ in range(rng.randint(1, max_blocks)))
    return GrowingWord(prefix, blocks, growth, rng.randint(0, 1))


def alphabet_for(payoff: str) -> tuple:
    if payoff in ("parity", "simple-parity"):
        return (0, 1, 2, 3)
    return (0, Fraction(1, 2), 1, 2)


def word_samples(rng: random.Random, n: int, payoff: str) -> tuple[list, list]:
    """``n`` single words and ``n`` pairs; half lassos, half growing words.

    Discounted payoffs only see lassos.
    """
    alphabet = alphabet_for(payoff)
    lassos_only = payoff.startswith("discounted")
    singles, pairs = [], []
    for i in range(n):
        if lassos_only or i % 2 == 0:
            singles.append(random_lasso(rng, alphabet))
            pairs.append((random_lasso(rng, alphabet), random_lasso(rng, alphabet)))
        else:
            g = rng.choice((2, 3, 4))
            singles.append(random_growing(rng, alphabet, g))
            pairs.append((random_growing(rng, alphabet, g), random_growing(rng, alphabet, g)))
    return singles, pairs
