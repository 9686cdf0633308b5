"""Command-line front end.

Exit codes: 0 success (or the check holds), 1 usage error, 2 unreadable or
malformed network file, 3 oracle mismatch, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib.resources import files
from pathlib import Path

from .invariant import CapExceededError, lris_with_rounds
from .model import NetworkFormatError, SwitchingSignal, load_network, trajectory
from .oracle import DEFAULT_PATTERN_CAP, simulate_random, verify_counts
from .reach import reachability_matrix_bool, reachability_matrix_weighted, self_reachable_set, stg_dot
from .sets import StateSet
from .stability import analyze, parse_pdv, ratio_vector

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve(path: str) -> Path:
    p = Path(path)
    if not p.exists() and p.parent == Path("."):
        bundled = files("ldstab") / "data" / p.name
        if bundled.is_file():
            return Path(str(bundled))
    return p


def _load(args):
    return load_network(_resolve(args.path))


def _state_list(n: int, text: str, what: str) -> StateSet:
    try:
        return StateSet.parse(n, text)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _target(args, net, required=True):
    if getattr(args, "target", None):
        return _state_list(net.lds.n, args.target, "--target")
    if net.target is None and required:
        raise UsageError("no target set: give --target or add \"target\" to the network file")
    return net.target


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _check_state(net, x: int, flag: str):
    if not 1 <= x <= net.lds.n:
        raise UsageError(f"{flag} {x} outside [1..{net.lds.n}]")


def cmd_analyze(args) -> int:
    net = _load(args)
    report = analyze(net.lds, _target(args, net))
    print(report.to_json() if args.format == "json" else report.render_text())
    return EXIT_OK


HIGHLIGHTS = ("target", "c0", "lris")


def cmd_stg(args) -> int:
    net = _load(args)
    wanted = set()
    if args.highlight:
        for item in args.highlight.split(","):
            item = item.strip().lower()
            if item not in HIGHLIGHTS:
                raise UsageError(f"unknown highlight set {item!r}; choose from {', '.join(HIGHLIGHTS)}")
            wanted.add(item)
    if args.highlight_target:
        wanted.add("target")
    if args.highlight_c0:
        wanted.add("c0")
    if args.highlight_lris:
        wanted.add("lris")
    target = _target(args, net, required=bool(wanted & {"target", "lris"}))
    text = stg_dot(
        net.lds,
        target=target if "target" in wanted else None,
        self_reachable=self_reachable_set(net.lds) if "c0" in wanted else None,
        lris=lris_with_rounds(net.lds, target)[0] if "lris" in wanted else None,
    )
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_OK


def cmd_ratio(args) -> int:
    net = _load(args)
    target = _target(args, net)
    vec = ratio_vector(net.lds, target, args.k)
    if args.x0 is not None:
        _check_state(net, args.x0, "--x0")
        states = [args.x0]
    else:
        states = range(1, net.lds.n + 1)
    if args.format == "json":
        print(json.dumps({"k": args.k, "target": target.sorted(),
                          "ratios": {str(x): f"{vec[x].numerator}/{vec[x].denominator}" for x in states}},
                         indent=2))
    else:
        for x in states:
            v = vec[x]
            print(f"x0={x}  {v.numerator}/{v.denominator}  ({float(v):.6f})")
    return EXIT_OK


def cmd_oracle(args) -> int:
    net = _load(args)
    report = verify_counts(net.lds, args.k, cap=args.cap, workers=args.workers)
    if args.format == "json":
        print(json.dumps({"k": report.k, "equal": report.equal,
                          "first_mismatch": report.first_mismatch,
                          "enumerated": report.enumerated.to_rows(),
                          "matrix_power": report.matrix_power.to_rows()}, indent=2))
    else:
        print(report.render_text())
    return EXIT_OK if report.equal else EXIT_MISMATCH


def cmd_simulate(args) -> int:
    net = _load(args)
    _check_state(net, args.x0, "--x0")
    if args.random:
        if args.signal:
            raise UsageError("--signal and --random are mutually exclusive")
        if args.steps is None:
            raise UsageError("--random needs --steps")
        try:
            pdv = parse_pdv(args.pdv.split(",")) if args.pdv else None
            traj = simulate_random(net.lds, args.x0, pdv, args.steps, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if not args.signal:
            raise UsageError("give --signal or --random")
        try:
            word = [int(t) for t in args.signal.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"invalid --signal {args.signal!r}") from None
        if any(not 1 <= j <= net.lds.m for j in word):
            raise UsageError(f"--signal values must lie in [1..{net.lds.m}]")
        signal = SwitchingSignal.periodic(word) if args.periodic else SwitchingSignal.finite(word)
        steps = len(word) if args.steps is None else args.steps
        try:
            traj = trajectory(net.lds, args.x0, signal, steps)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps({"states": list(traj.states), "signal": list(traj.signal)}))
    else:
        print(" ".join(map(str, traj.states)))
    return EXIT_OK


def cmd_lris(args) -> int:
    net = _load(args)
    target = _target(args, net)
    inv, rounds = lris_with_rounds(net.lds, target)
    if args.format == "json":
        print(json.dumps({"target": target.sorted(), "lris": inv.sorted(), "rounds": rounds}))
    else:
        print(f"I({target}) = {inv}  ({rounds} shrinking rounds)")
    return EXIT_OK


def cmd_reach(args) -> int:
    net = _load(args)
    lds = net.lds
    c0 = self_reachable_set(lds)
    if args.weighted:
        rows = reachability_matrix_weighted(lds)
        if args.format == "json":
            print(json.dumps({"weighted": [[f"{v.numerator}/{v.denominator}" for v in row] for row in rows],
                              "self_reachable": c0.sorted()}, indent=2))
        else:
            for row in rows:
                print(" ".join(f"{float(v):6.2f}" for v in row))
            print(f"self-reachable states C0 = {c0}")
    else:
        r = reachability_matrix_bool(lds)
        if args.format == "json":
            print(json.dumps({"reach": r.to_rows(), "self_reachable": c0.sorted()}))
        else:
            print(r)
            print(f"self-reachable states C0 = {c0}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ldstab", description="Robust set stability of switched logic dynamical systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, target=True, fmt=True):
        p.add_argument("path", help="network JSON file (bundled e1.json, e2.json, e3.json also resolve)")
        if target:
            p.add_argument("--target", help="target set as a comma list; overrides the file")
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("analyze", help="all stability verdicts with witnesses")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("stg", help="state transition graph as DOT")
    common(p, fmt=False)
    p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
    p.add_argument("--highlight", help="comma list from: target, c0, lris")
    p.add_argument("--highlight-target", action="store_true")
    p.add_argument("--highlight-c0", action="store_true")
    p.add_argument("--highlight-lris", action="store_true")
    p.set_defaults(func=cmd_stg)

    p = sub.add_parser("ratio", help="exact k-step reachable pattern ratios")
    common(p)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--x0", type=int)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("oracle", help="compare pattern enumeration with Q^k")
    common(p, target=False)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--cap", type=_positive, default=DEFAULT_PATTERN_CAP, help="maximum m^k patterns")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("simulate", help="trajectory under a given or random switching signal")
    common(p, target=False)
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--signal", help="switching values as a comma list")
    p.add_argument("--periodic", action="store_true", help="repeat --signal periodically")
    p.add_argument("--random", action="store_true", help="i.i.d. random switching")
    p.add_argument("--pdv", help="switching probabilities, e.g. 1/3,2/3 (default uniform)")
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--steps", type=_nonnegative)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("lris", help="largest robustly invariant subset of the target")
    common(p)
    p.set_defaults(func=cmd_lris)

    p = sub.add_parser("reach", help="reachability matrix and self-reachable states")
    common(p, target=False)
    p.add_argument("--weighted", action="store_true", help="exact weighted sum Gamma + ... + Gamma^n")
    p.set_defaults(func=cmd_reach)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ldstab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NetworkFormatError as exc:
        print(f"ldstab {args.command}: invalid network: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as exc:
        print(f"ldstab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
