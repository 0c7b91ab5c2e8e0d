"""Preferences over evaluated outcomes and testers for payoff properties.

An outcome is represented by the statistic its preference needs: an exact
rational for payoff-induced preferences, a :class:`~splitgames.words.Lasso`
for the overtaking preorder on deterministic outcomes.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence, Union

from .arena import Arena
from .errors import TagMismatch
from .outcome import (
    ProfileChain, build_chain, chain_discounted, chain_lassos, chain_mean, chain_parity,
    chain_simple_parity,
)
from .strategy import Profile
from . import words
from .words import GrowingWord, Lasso, Word


class Comparison(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "Comparison":
        return {Comparison.LESS: Comparison.GREATER,
                Comparison.GREATER: Comparison.LESS}.get(self, self)


class Evaluated(NamedTuple):
    """An outcome statistic tagged with the preference that produced it."""

    tag: str
    value: Union[Fraction, Lasso]


TAGS = ("mean", "parity", "simple-parity", "discounted", "overtaking")


@dataclass(frozen=True)
class Preference:
    tag: str
    beta: Fraction | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown payoff {self.tag!r}")
        if (self.tag == "discounted") != (self.beta is not None):
            raise ValueError("a discount factor goes with the discounted payoff only")
        if self.beta is not None:
            object.__setattr__(self, "beta", Fraction(self.beta))
            if not 0 < self.beta < 1:
                raise ValueError("discount factor must lie strictly between 0 and 1")

    def __str__(self):
        return f"discounted:{self.beta}" if self.tag == "discounted" else self.tag

    @property
    def total(self) -> bool:
        return self.tag != "overtaking"

    @property
    def positional_one_player(self) -> bool:
        """Whether one-player games of this payoff are known to admit positional optima."""
        return self.tag in ("mean", "parity", "discounted")

    def evaluate_chain(self, c: ProfileChain) -> list:
        if self.tag == "mean":
            return chain_mean(c)
        if self.tag == "parity":
            return chain_parity(c)
        if self.tag == "simple-parity":
            return chain_simple_parity(c)
        if self.tag == "discounted":
            return chain_discounted(c, self.beta)
        return chain_lassos(c)

    def evaluate(self, a: Arena, p: Profile, states: Iterable[int] | None = None) -> list:
        """Outcome statistic from each state (all states by default)."""
        return self.evaluate_chain(build_chain(a, states, p))

    def tagged(self, value) -> Evaluated:
        return Evaluated(str(self), value)


def parse_payoff(text: str) -> Preference:
    text = text.strip()
    if text.startswith("discounted:"):
        try:
            beta = Fraction(text.split(":", 1)[1])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad discount factor in {text!r}") from None
        return Preference("discounted", beta)
    if text == "discounted":
        raise ValueError("discounted payoff needs a factor, e.g. discounted:1/2")
    return Preference(text)


def _unwrap(pref: Preference, o):
    if isinstance(o, Evaluated):
        if o.tag != str(pref):
            raise TagMismatch(f"outcome evaluated under {o.tag}, compared under {pref}")
        o = o.value
    if pref.tag == "overtaking":
        if not isinstance(o, Lasso):
            raise TagMismatch("overtaking compares lassos")
    elif not isinstance(o, (Fraction, int)):
        raise TagMismatch(f"{pref} compares rational statistics, got {type(o).__name__}")
    return o


def compare(pref: Preference, o1, o2) -> Comparison:
    v1, v2 = _unwrap(pref, o1), _unwrap(pref, o2)
    if pref.tag == "overtaking":
        return overtaking_compare(v1, v2)
    if v1 < v2:
        return Comparison.LESS
    if v1 > v2:
        return Comparison.GREATER
    return Comparison.EQUAL


def overtaking_compare(l1: Lasso, l2: Lasso) -> Comparison:
    """Eventual domination of partial sums between two ultimately periodic words."""
    avg1 = sum(l1.cycle) / len(l1.cycle)
    avg2 = sum(l2.cycle) / len(l2.cycle)
    if avg1 != avg2:
        return Comparison.GREATER if avg1 > avg2 else Comparison.LESS
    # With equal averages the difference of partial sums is periodic from
    # the longer prefix on, with period dividing the lcm of the cycle lengths.
    start = max(len(l1.prefix), len(l2.prefix))
    period = math.lcm(len(l1.cycle), len(l2.cycle))
    diff = Fraction(0)
    window = []
    for k in range(start + 2 * period):
        diff += l1.letter(k) - l2.letter(k)
        if k + 1 >= start:
            window.append(diff)
    if all(d == 0 for d in window):
        return Comparison.EQUAL
    if all(d <= 0 for d in window):
        return Comparison.LESS
    if all(d >= 0 for d in window):
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


# Payoffs on words, for the property testers.

WordPayoff = Callable[[Word], Fraction]


def word_payoff(name: str) -> WordPayoff:
    if name == "mean":
        return words.limsup_average
    if name == "liminf-mean":
        return words.liminf_average
    if name == "parity":
        return words.parity
    if name == "simple-parity":
        return words.simple_parity
    if name.startswith("discounted:"):
        return words.discounted(Fraction(name.split(":", 1)[1]))
    raise ValueError(f"no word payoff named {name!r}")


WORD_PAYOFFS = ("mean", "liminf-mean", "parity", "simple-parity")


@dataclass(frozen=True)
class Witness:
    property: str
    words: tuple
    detail: str
    values: tuple[Fraction, ...]

    def __str__(self):
        ws = "; ".join(str(w) for w in self.words)
        vs = ", ".join(str(v) for v in self.values)
        return f"{self.property} violated: {self.detail} on [{ws}] with values ({vs})"


def _as_payoff(f) -> WordPayoff:
    return word_payoff(f) if isinstance(f, str) else f


def prefix_independent(f, samples: Iterable[Word], drop: int) -> Witness | None:
    """First word whose value changes when up to ``drop`` letters are removed."""
    f = _as_payoff(f)
    for w in samples:
        base = f(w)
        for k in range(1, drop + 1):
            try:
                v = f(w.drop(k))
            except TypeError:
                break
            if v != base:
                return Witness("prefix independence", (w,), f"dropping {k} letters",
                               (base, v))
    return None


def lasso_patterns(bound: int) -> Iterable[tuple[int, ...]]:
    """Primitive interleaving patterns of length at most ``bound`` using both words."""
    for n in range(2, bound + 1):
        for pat in itertools.product((0, 1), repeat=n):
            if 0 in pat and 1 in pat and _primitive(pat):
                yield pat


def _primitive(pat: Sequence[int]) -> bool:
    n = len(pat)
    return not any(n % d == 0 and tuple(pat) == tuple(pat[:d]) * (n // d) for d in range(1, n))


def block_orders(p: int, q: int, bound: int) -> Iterable[tuple[int, ...]]:
    """Up to ``bound`` round merge orders of ``p`` blocks of one word with ``q`` of another."""
    for positions in itertools.islice(itertools.combinations(range(p + q), p), bound):
        chosen = set(positions)
        yield tuple(0 if i in chosen else 1 for i in range(p + q))


def shuffles(u: Word, v: Word, bound: int) -> Iterable[tuple[tuple[int, ...], Word]]:
    if isinstance(u, Lasso) and isinstance(v, Lasso):
        for pat in lasso_patterns(bound):
            yield pat, words.interleave_lassos(u, v, pat)
    elif isinstance(u, GrowingWord) and isinstance(v, GrowingWord):
        if u.growth != v.growth:
            return
        for order in block_orders(len(u.blocks), len(v.blocks), 2 ** bound):
            yield order, words.interleave_growing(u, v, order)


def sub_mixing(f, pairs: Iterable[tuple[Word, Word]], shuffles_bound: int = 4) -> Witness | None:
    """Search for a shuffle whose value exceeds both of its components.

    Lasso pairs are merged along every primitive periodic pattern up to the
    bound; growing words along every round merge order.  Finding nothing is
    evidence, not proof.
    """
    f = _as_payoff(f)
    for u, v in pairs:
        top = max(f(u), f(v))
        for how, w in shuffles(u, v, shuffles_bound):
            val = f(w)
            if val > top:
                return Witness("sub-mixing", (u, v, w), f"merge {''.join(map(str, how))}",
                               (f(u), f(v), val))
    return None


__all__ = [
    "Comparison", "Evaluated", "Preference", "TAGS", "parse_payoff", "compare",
    "overtaking_compare", "word_payoff", "WORD_PAYOFFS", "Witness", "prefix_independent",
    "sub_mixing", "shuffles", "lasso_patterns", "block_orders",
]
