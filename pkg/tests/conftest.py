import random
from fractions import Fraction

import pytest

from splitgames.arena import Arena
from splitgames.gallery import OMEGA, split_demo_arena
from splitgames.generate import random_arena

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {criterion} [{'PASS' if ok else 'FAIL'}] {title}"
    if detail:
        line += f" -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def fig2() -> Arena:
    return split_demo_arena()


@pytest.fixture
def loop() -> Arena:
    return Arena.build([("x", "max", 0)], ["l"], [("x", "l", "x", 1, Fraction(3, 4))], name="loop")


def omega() -> str:
    return OMEGA


def arenas(n: int, seed: int = 0, **kw):
    for i in range(n):
        yield random_arena(random.Random(seed * 100_003 + i), name=f"random-{seed}-{i}", **kw)
