"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 no optimum or no saddle,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import gallery
from .arena import Player
from .errors import (
    ArenaError, EnumerationBoundExceeded, NoSaddle, NoUniformOptimum, PreferenceNotTotalEnough,
    SeparationViolated,
)
from .generate import word_samples
from .io import arena_to_dot, dumps_arena, loads_arena, report_to_doc, solution_to_doc
from .preference import WORD_PAYOFFS, parse_payoff, prefix_independent, sub_mixing
from .solver import (
    DEFAULT_MAX_PROFILES, brute_force_saddle, fmt_value, solve_report, verify_saddle,
)
from .split import check_separation, split, to_dot
from .strategy import DSStrategy

EXIT_OK, EXIT_INPUT, EXIT_NO_OPTIMUM, EXIT_BREACH = 0, 2, 3, 4


class InputError(Exception):
    pass


def load_arena(spec: str):
    if spec.startswith("gallery:"):
        try:
            return gallery.get(spec.split(":", 1)[1]).arena
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    try:
        text = Path(spec).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    return loads_arena(text, Path(spec).stem)


def _payoff(text: str):
    try:
        return parse_payoff(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(args, text: str, doc) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False) if args.json else text.rstrip("\n"))


def cmd_solve(args) -> int:
    a = load_arena(args.file)
    pref = _payoff(args.payoff)
    mode = args.mode
    code = EXIT_OK
    out_text, out_doc = [], {}
    recursive = None
    if mode in ("recursive", "both"):
        report = solve_report(a, pref)
        out_text.append(report.render())
        out_doc["recursive"] = report_to_doc(report)
        if report.solution is None:
            code = EXIT_NO_OPTIMUM
        recursive = report.solution
    if mode in ("oracle", "both"):
        try:
            sol = brute_force_saddle(a, pref, max_profiles=args.max_profiles, jobs=args.jobs)
            out_text.append("oracle:\n" + sol.render(a))
            out_doc["oracle"] = solution_to_doc(a, sol)
            if recursive is not None and recursive.values != sol.values:
                out_text.append("MISMATCH between recursive and oracle values")
                out_doc["agree"] = False
                code = EXIT_BREACH
            elif recursive is not None:
                out_text.append("recursive and oracle values agree")
                out_doc["agree"] = True
        except NoSaddle as exc:
            out_text.append(f"oracle: NoSaddle: {exc}")
            out_doc["oracle"] = {"failure": f"NoSaddle: {exc}"}
            code = max(code, EXIT_NO_OPTIMUM)
    _emit(args, "\n".join(out_text), out_doc)
    return code


def cmd_oracle(args) -> int:
    args.mode = "oracle"
    return cmd_solve(args)


def _read_strategy(a, path: str):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        return (DSStrategy.from_names(a, Player.MAX, doc.get("max", {})),
                DSStrategy.from_names(a, Player.MIN, doc.get("min", {})))
    except (OSError, json.JSONDecodeError, ValueError, ArenaError) as exc:
        raise InputError(f"bad strategy file {path}: {exc}") from None


def cmd_verify(args) -> int:
    a = load_arena(args.file)
    pref = _payoff(args.payoff)
    if args.strategies:
        sigma, tau = _read_strategy(a, args.strategies)
        breach = EXIT_NO_OPTIMUM
    else:
        report = solve_report(a, pref)
        if report.solution is None:
            print(report.failure)
            return EXIT_NO_OPTIMUM
        sigma, tau = report.solution.max_strategy, report.solution.min_strategy
        breach = EXIT_BREACH
    witness = verify_saddle(a, pref, sigma, tau)
    if witness is None:
        print("saddle verified: no profitable positional deviation")
        return EXIT_OK
    print(f"not a saddle: {witness}")
    print("deviation:\n" + witness.deviation.dump(a))
    return breach


def cmd_split(args) -> int:
    a = load_arena(args.file)
    if args.state not in a.states:
        raise InputError(f"unknown state {args.state!r}")
    sr = split(a, args.state)
    check_separation(sr)
    if args.out:
        base = Path(args.out)
        base.with_suffix(".json").write_text(dumps_arena(sr.arena), encoding="utf-8")
        base.with_suffix(".dot").write_text(to_dot(sr), encoding="utf-8")
        print(f"wrote {base.with_suffix('.json')} and {base.with_suffix('.dot')}")
    elif args.dot:
        print(to_dot(sr), end="")
    else:
        print(dumps_arena(sr.arena), end="")
    return EXIT_OK


def cmd_props(args) -> int:
    if args.payoff not in WORD_PAYOFFS and not args.payoff.startswith("discounted:"):
        raise InputError(f"props supports {', '.join(WORD_PAYOFFS)} and discounted:<q>")
    rng = random.Random(args.seed)
    singles, pairs = word_samples(rng, args.samples, args.payoff)
    lines = [f"payoff: {args.payoff}", f"seed: {args.seed}", f"samples: {args.samples}"]
    w1 = prefix_independent(args.payoff, singles, args.drop)
    lines.append("prefix independence: " + ("pass" if w1 is None else f"witness\n  {w1}"))
    w2 = sub_mixing(args.payoff, pairs, args.bound)
    lines.append("sub-mixing: " + ("pass" if w2 is None else f"witness\n  {w2}"))
    print("\n".join(lines))
    return EXIT_OK


def cmd_gallery(args) -> int:
    if args.action == "list":
        for e in gallery.GALLERY.values():
            print(f"{e.name:12} {e.payoff:14} {e.description}")
        return EXIT_OK
    if not args.name:
        raise InputError(f"gallery {args.action} needs an entry name")
    try:
        entry = gallery.get(args.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if args.action == "export":
        print(dumps_arena(entry.arena), end="")
        return EXIT_OK
    if args.action == "dot":
        print(arena_to_dot(entry.arena), end="")
        return EXIT_OK
    facts = entry.check()
    print(f"{entry.name}: {entry.description}")
    for f in facts:
        print(f"  {f}")
    return EXIT_OK if all(f.ok for f in facts) else EXIT_BREACH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitgames",
                                description="Exact solver for perfect-information stochastic games.")
    sub = p.add_subparsers(dest="command", required=True)

    def game_args(sp, modes=True):
        sp.add_argument("file", help="arena JSON file or gallery:<name>")
        sp.add_argument("--payoff", required=True,
                        help="mean | parity | simple-parity | discounted:<num/den> | overtaking")
        if modes:
            sp.add_argument("--mode", choices=("recursive", "oracle", "both"), default="recursive")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--max-profiles", type=int, default=DEFAULT_MAX_PROFILES)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("solve", help="solve a game")
    game_args(sp)
    sp.set_defaults(func=cmd_solve)
    sp = sub.add_parser("oracle", help="brute-force saddle search")
    game_args(sp, modes=False)
    sp.set_defaults(func=cmd_oracle)
    sp = sub.add_parser("verify", help="check a strategy pair against all positional deviations")
    game_args(sp, modes=False)
    sp.add_argument("--strategies", help='JSON {"max": {state: action}, "min": {...}}')
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("split", help="split an arena on a state")
    sp.add_argument("file")
    sp.add_argument("state")
    sp.add_argument("--out", help="write <out>.json and <out>.dot")
    sp.add_argument("--dot", action="store_true", help="print DOT instead of JSON")
    sp.set_defaults(func=cmd_split)
    sp = sub.add_parser("props", help="test prefix independence and sub-mixing on random words")
    sp.add_argument("--payoff", required=True, help=f"{' | '.join(WORD_PAYOFFS)} | discounted:<q>")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--drop", type=int, default=3)
    sp.add_argument("--bound", type=int, default=4, help="longest periodic interleaving pattern")
    sp.set_defaults(func=cmd_props)
    sp = sub.add_parser("gallery", help="worked examples")
    sp.add_argument("action", choices=("list", "run", "export", "dot"))
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_gallery)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ArenaError, EnumerationBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NoUniformOptimum, NoSaddle, PreferenceNotTotalEnough) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NO_OPTIMUM
    except (SeparationViolated, AssertionError) as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
