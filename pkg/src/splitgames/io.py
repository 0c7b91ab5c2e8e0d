"""JSON documents for arenas and reports.

Rationals travel as strings such as ``"1/2"`` or ``"3"``; floating point
numbers are rejected so that a document always denotes exact data.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .arena import Arena, Player, Transition, validate
from .errors import ArenaFormatError
from .solver import Solution, SolveReport, fmt_value

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def parse_rational(value: Any, what: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ArenaFormatError(f"{what} must be an exact rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise ArenaFormatError(f"{what} must look like 'num/den', got {value!r}")
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError:
        raise ArenaFormatError(f"{what} has a zero denominator: {value!r}") from None


def rational_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ArenaFormatError(f"{where} needs a {key!r} field")
    return obj[key]


def arena_from_doc(doc: Any, name: str = "") -> Arena:
    if not isinstance(doc, dict):
        raise ArenaFormatError("arena document must be a JSON object")
    states = _field(doc, "states", "arena")
    actions = _field(doc, "actions", "arena")
    transitions = _field(doc, "transitions", "arena")
    if not all(isinstance(x, list) for x in (states, actions, transitions)):
        raise ArenaFormatError("states, actions and transitions must be arrays")
    names, owners, prios = [], [], []
    for i, st in enumerate(states):
        names.append(str(_field(st, "name", f"state #{i}")))
        try:
            owners.append(Player(_field(st, "owner", f"state {names[-1]!r}")))
        except ValueError:
            raise ArenaFormatError(f"owner of {names[-1]!r} must be 'max' or 'min'") from None
        p = st.get("priority")
        if p is not None and (not isinstance(p, int) or isinstance(p, bool) or p < 0):
            raise ArenaFormatError(f"priority of {names[-1]!r} must be a nonnegative integer")
        prios.append(p)
    if len(set(names)) != len(names):
        raise ArenaFormatError("state names must be distinct")
    if any(p is None for p in prios) and any(p is not None for p in prios):
        raise ArenaFormatError("priorities must be given for all states or none")
    actions = [str(a) for a in actions]
    if len(set(actions)) != len(actions):
        raise ArenaFormatError("action names must be distinct")
    s_index = {n: i for i, n in enumerate(names)}
    a_index = {n: i for i, n in enumerate(actions)}
    trans = []
    for i, t in enumerate(transitions):
        where = f"transition #{i}"
        src, act, dst = (_field(t, k, where) for k in ("from", "action", "to"))
        for n in (src, dst):
            if n not in s_index:
                raise ArenaFormatError(f"{where} mentions unknown state {n!r}")
        if act not in a_index:
            raise ArenaFormatError(f"{where} mentions unknown action {act!r}")
        prob = parse_rational(_field(t, "prob", where), f"{where} probability")
        reward = parse_rational(t.get("reward", "0"), f"{where} reward")
        trans.append(Transition(s_index[src], a_index[act], s_index[dst], prob, reward))
    prio = None if not prios or prios[0] is None else tuple(prios)
    arena = Arena(tuple(names), tuple(actions), tuple(owners), tuple(trans), prio,
                  str(doc.get("name", name)))
    validate(arena)
    return arena


def arena_to_doc(a: Arena) -> dict:
    states = []
    for i, n in enumerate(a.states):
        entry = {"name": n, "owner": a.owner[i].value}
        if a.priority is not None:
            entry["priority"] = a.priority[i]
        states.append(entry)
    doc = {"states": states, "actions": list(a.actions),
           "transitions": [{"from": a.states[t.source], "action": a.actions[t.action],
                            "to": a.states[t.target], "prob": rational_str(t.prob),
                            "reward": rational_str(t.reward)} for t in a.transitions]}
    if a.name:
        doc = {"name": a.name, **doc}
    return doc


def loads_arena(text: str, name: str = "") -> Arena:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArenaFormatError(f"not valid JSON: {exc}") from None
    return arena_from_doc(doc, name)


def dumps_arena(a: Arena) -> str:
    return json.dumps(arena_to_doc(a), indent=2, ensure_ascii=False) + "\n"


def solution_to_doc(a: Arena, solution: Solution) -> dict:
    return {
        "values": {n: fmt_value(v) for n, v in zip(a.states, solution.values)},
        "max_strategy": solution.max_strategy.to_names(a),
        "min_strategy": solution.min_strategy.to_names(a),
    }


def report_to_doc(report: SolveReport) -> dict:
    doc: dict = {"arena": report.arena.name, "payoff": str(report.pref)}
    if report.solution is not None:
        doc["solution"] = solution_to_doc(report.arena, report.solution)
    if report.failure is not None:
        doc["failure"] = report.failure
    doc["trace"] = [{"depth": t.depth, "via": t.via, "kind": t.kind, "size": t.size,
                     "parent_size": t.parent_size} for t in report.trace]
    doc["stats"] = dict(sorted(report.stats.items()))
    return doc


def arena_to_dot(a: Arena) -> str:
    lines = [f'digraph "{a.name or "arena"}" {{', "  rankdir=LR;"]
    for i, n in enumerate(a.states):
        shape = "box" if a.owner[i] is Player.MAX else "ellipse"
        lines.append(f'  "{n}" [shape={shape}];')
    for t in a.transitions:
        label = f"{a.actions[t.action]}, {t.prob}, r={t.reward}"
        lines.append(f'  "{a.states[t.source]}" -> "{a.states[t.target]}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
