"""Infinite reward words with finite descriptions.

Two shapes are supported:

* :class:`Lasso` -- ultimately periodic, ``prefix . cycle^omega``.
* :class:`GrowingWord` -- ``prefix`` followed by rounds ``j = start, start+1, ...``
  where round ``j`` is the block pattern ``c_0^(m_0 g^j) ... c_(p-1)^(m_(p-1) g^j)``.
  With growth ``g >= 2`` the running averages oscillate forever, which is
  what separates limsup from liminf averages.

Payoffs on words return exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union


@dataclass(frozen=True)
class Lasso:
    prefix: tuple[Fraction, ...]
    cycle: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")
        object.__setattr__(self, "prefix", tuple(Fraction(v) for v in self.prefix))
        object.__setattr__(self, "cycle", tuple(Fraction(v) for v in self.cycle))

    @classmethod
    def of(cls, prefix: Sequence, cycle: Sequence) -> "Lasso":
        return cls(tuple(prefix), tuple(cycle)).normalized()

    def normalized(self) -> "Lasso":
        """Minimal cycle (primitive root), then minimal prefix."""
        c = list(self.cycle)
        n = len(c)
        for d in range(1, n + 1):
            if n % d == 0 and c == c[:d] * (n // d):
                c = c[:d]
                break
        p = list(self.prefix)
        while p and p[-1] == c[-1]:
            p.pop()
            c = c[-1:] + c[:-1]
        return Lasso(tuple(p), tuple(c))

    def letter(self, i: int) -> Fraction:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def letters(self) -> Iterator[Fraction]:
        i = 0
        while True:
            yield self.letter(i)
            i += 1

    def drop(self, k: int) -> "Lasso":
        if k <= len(self.prefix):
            return Lasso(self.prefix[k:], self.cycle)
        shift = (k - len(self.prefix)) % len(self.cycle)
        return Lasso((), self.cycle[shift:] + self.cycle[:shift])

    def __str__(self):
        fmt = lambda w: " ".join(str(v) for v in w)  # noqa: E731
        return f"({fmt(self.prefix)})({fmt(self.cycle)})^w"


@dataclass(frozen=True)
class GrowingWord:
    prefix: tuple[Fraction, ...]
    blocks: tuple[tuple[Fraction, int], ...]
    growth: int
    start: int = 0

    def __post_init__(self):
        if self.growth < 2:
            raise ValueError("growth must be at least 2; use a Lasso for periodic words")
        if not self.blocks or any(m <= 0 for _, m in self.blocks):
            raise ValueError("blocks need positive base lengths")
        object.__setattr__(self, "prefix", tuple(Fraction(v) for v in self.prefix))
        object.__setattr__(self, "blocks", tuple((Fraction(c), int(m)) for c, m in self.blocks))

    def round(self, j: int) -> list[Fraction]:
        return [c for c, m in self.blocks for _ in range(m * self.growth ** j)]

    def letters(self) -> Iterator[Fraction]:
        yield from self.prefix
        j = self.start
        while True:
            yield from self.round(j)
            j += 1

    def drop(self, k: int) -> "GrowingWord":
        prefix, start = list(self.prefix), self.start
        while len(prefix) < k:
            prefix += self.round(start)
            start += 1
        return GrowingWord(tuple(prefix[k:]), self.blocks, self.growth, start)

    def boundary_averages(self) -> list[Fraction]:
        """Limits of the running average at the block boundaries of late rounds.

        Inside a constant block the running average moves monotonically, so
        the limsup and liminf of the averages are attained among these values.
        """
        total = sum(c * m for c, m in self.blocks)
        length = sum(m for _, m in self.blocks)
        g1 = self.growth - 1
        out = [total / length]
        acc_sum, acc_len = Fraction(0), 0
        for c, m in self.blocks:
            acc_sum += c * m
            acc_len += m
            out.append((total + g1 * acc_sum) / (length + g1 * acc_len))
        return out

    def __str__(self):
        pre = " ".join(str(v) for v in self.prefix)
        body = " ".join(f"{c}^{m}" for c, m in self.blocks)
        return f"({pre})[{body}]*{self.growth}^j (j>={self.start})"


Word = Union[Lasso, GrowingWord]


def limsup_average(w: Word) -> Fraction:
    if isinstance(w, Lasso):
        return sum(w.cycle) / len(w.cycle)
    return max(w.boundary_averages())


def liminf_average(w: Word) -> Fraction:
    if isinstance(w, Lasso):
        return sum(w.cycle) / len(w.cycle)
    return min(w.boundary_averages())


def recurring_letters(w: Word) -> set[Fraction]:
    if isinstance(w, Lasso):
        return set(w.cycle)
    return {c for c, _ in w.blocks}


def parity(w: Word) -> Fraction:
    """1 when the largest letter seen infinitely often is even, else 0."""
    return Fraction(int(max(recurring_letters(w)) % 2 == 0))


def simple_parity(w: Word) -> Fraction:
    """1 when the largest letter seen at all is even, else 0."""
    return Fraction(int(max(set(w.prefix) | recurring_letters(w)) % 2 == 0))


def discounted(beta: Fraction) -> Callable[[Word], Fraction]:
    beta = Fraction(beta)

    def f(w: Word) -> Fraction:
        if not isinstance(w, Lasso):
            raise TypeError("discounted payoff is evaluated on lassos only")
        head = sum(beta ** i * r for i, r in enumerate(w.prefix))
        loop = sum(beta ** i * r for i, r in enumerate(w.cycle))
        return head + beta ** len(w.prefix) * loop / (1 - beta ** len(w.cycle))

    return f


def interleave_lassos(u: Lasso, v: Lasso, pattern: Sequence[int]) -> Lasso:
    """Merge two lassos along a periodic pattern (0 takes from ``u``, 1 from ``v``).

    The pattern must use both letters so that both positions sets are infinite.
    """
    if set(pattern) != {0, 1}:
        raise ValueError("pattern must use both words")

    def norm(w: Lasso, i: int) -> int:
        if i < len(w.prefix):
            return i
        return len(w.prefix) + (i - len(w.prefix)) % len(w.cycle)

    iu = iv = ip = 0
    seen: dict[tuple[int, int, int], int] = {}
    out: list[Fraction] = []
    while (iu, iv, ip) not in seen:
        seen[iu, iv, ip] = len(out)
        if pattern[ip] == 0:
            out.append(u.letter(iu))
            iu = norm(u, iu + 1)
        else:
            out.append(v.letter(iv))
            iv = norm(v, iv + 1)
        ip = (ip + 1) % len(pattern)
    start = seen[iu, iv, ip]
    return Lasso.of(out[:start], out[start:])


def interleave_growing(u: GrowingWord, v: GrowingWord, order: Sequence[int]) -> GrowingWord:
    """Merge two growing words round by round.

    ``order`` lists, for one round, which word (0 or 1) supplies the next
    block; each word's blocks keep their own order.  Prefixes come first.
    """
    if u.growth != v.growth:
        raise ValueError("growing words must share their growth factor")
    if sorted(order) != [0] * len(u.blocks) + [1] * len(v.blocks):
        raise ValueError("order must use every block of both words exactly once")
    # Align starting rounds by unrolling the earlier one into its prefix.
    while u.start < v.start:
        u = GrowingWord(u.prefix + tuple(u.round(u.start)), u.blocks, u.growth, u.start + 1)
    while v.start < u.start:
        v = GrowingWord(v.prefix + tuple(v.round(v.start)), v.blocks, v.growth, v.start + 1)
    iu, iv = iter(u.blocks), iter(v.blocks)
    blocks = tuple(next(iu) if k == 0 else next(iv) for k in order)
    return GrowingWord(u.prefix + v.prefix, blocks, u.growth, u.start)

