"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 circuit parse/validation
error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from typing import Optional

from . import __version__
from .dsl import BS, CircuitError, compile_and_run, load, parse_number
from .scenarios import PhasePair, ScenarioKind, marginals, phase_convention_map, scenario_numeric
from .single import Port, mz_probabilities
from .source import concurrence_of_pure_state, correlated_pair_state, state_from_concurrence
from .sweep import (
    DEFAULT_ALPHA, DEFAULT_THETA, AxisRange, SweepRequest,
    concurrence_csv, concurrence_json, sweep_grid,
)
from .verify import run_suites

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _angle(text: str) -> float:
    try:
        return parse_number(text)
    except CircuitError as e:
        raise argparse.ArgumentTypeError(f"bad number {text!r}: {e.message}") from None


def _range(text: str) -> AxisRange:
    """``lo:hi:steps`` or a single value for a one-point axis."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return AxisRange.point(_angle(parts[0]))
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"range must be lo:hi:steps, got {text!r}")
        return AxisRange(_angle(parts[0]), _angle(parts[1]), int(parts[2]))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def fmt(p: float) -> str:
    """Probability with 12 significant digits, rounding away float dust."""
    return f"{round(p, 12) + 0.0:.12g}"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pathent", description="Path-entanglement interferometry simulator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("single", help="one quanton through a Mach-Zehnder interferometer")
    p.add_argument("--alpha", type=_angle, required=True, help="emission angle (radians, pi forms allowed)")
    p.add_argument("--theta", type=_angle, default=0.0, help="retarder phase")
    p.add_argument("--port", default="u", help="input port: u/up or d/down")

    p = sub.add_parser("scenario", help="joint detection for the P-BS or BS-P-BS experiment")
    p.add_argument("kind", help="pbs or bspbs")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--alpha", type=_angle, help="drive the source by emission angle")
    src.add_argument("--c", type=_angle, help="drive the source by concurrence")
    p.add_argument("--theta-r", type=_angle, default=0.0)
    p.add_argument("--theta-l", type=_angle, default=0.0)
    p.add_argument(
        "--closed-form-phases", action="store_true",
        help="interpret phases in the closed-form convention (P-BS: physical = 2x)",
    )

    p = sub.add_parser("sweep", help="write a probability grid (CSV or JSON)")
    p.add_argument("kind", nargs="?", default="pbs", help="pbs or bspbs (ignored for --quantity concurrence)")
    axis = p.add_mutually_exclusive_group()
    axis.add_argument("--alpha", type=_range, help="alpha range lo:hi:steps")
    axis.add_argument("--c", type=_range, help="concurrence range lo:hi:steps")
    p.add_argument("--theta", type=_range, default=DEFAULT_THETA, help="theta range lo:hi:steps or one value")
    p.add_argument("--quantity", choices=("probabilities", "concurrence"), default="probabilities")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("run", help="run a .mzc circuit file")
    p.add_argument("path")

    p = sub.add_parser("verify", help="check closed forms against the oracle on a grid")
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--tol", type=float, default=None, help="tolerance ceiling for all suites")
    return parser


def _print_joint(jp, c: float, out) -> None:
    print(f"P(D0,D0')={fmt(jp.p00)} P(D1,D1')={fmt(jp.p11)} P(D0,D1')={fmt(jp.p01)} P(D1,D0')={fmt(jp.p10)}", file=out)
    print(f"concurrence={fmt(c)}", file=out)
    right, left = marginals(jp)
    print(f"right: P(D0)={fmt(right.p_d0)} P(D1)={fmt(right.p_d1)}", file=out)
    print(f"left:  P(D0')={fmt(left.p_d0)} P(D1')={fmt(left.p_d1)}", file=out)


def cmd_single(args, out) -> int:
    pair = mz_probabilities(args.alpha, args.theta, Port.parse(args.port))
    print(f"P(D0)={fmt(pair.p_d0)} P(D1)={fmt(pair.p_d1)}", file=out)
    return EXIT_OK


def cmd_scenario(args, out) -> int:
    kind = ScenarioKind.parse(args.kind)
    if args.alpha is not None:
        source = correlated_pair_state(args.alpha)
        label = f"correlated_pair_state(alpha={args.alpha:.12g})"
    else:
        source = state_from_concurrence(args.c)
        label = f"state_from_concurrence(c={args.c:.12g})"
    if args.closed_form_phases:
        phases = phase_convention_map(kind, args.theta_r, args.theta_l)
    else:
        phases = PhasePair(args.theta_r, args.theta_l)
    _, jp = scenario_numeric(kind, source, phases)
    print(f"scenario={kind.value} source={label}", file=out)
    print(f"retarder phases: theta_R={phases.theta_r:.12g} theta_L={phases.theta_l:.12g}", file=out)
    _print_joint(jp, concurrence_of_pure_state(source), out)
    return EXIT_OK


def _write(text: str, dest: str, out) -> None:
    if dest == "-":
        out.write(text)
        return
    with open(dest, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_sweep(args, out) -> int:
    if args.quantity == "concurrence":
        alphas = (args.alpha or AxisRange(0.0, math.pi, 201)).values()
        text = concurrence_csv(alphas) if args.format == "csv" else concurrence_json(alphas)
    else:
        kind = ScenarioKind.parse(args.kind)
        if args.c is not None:
            req = SweepRequest(kind, "c", args.c, args.theta)
        else:
            req = SweepRequest(kind, "alpha", args.alpha or DEFAULT_ALPHA, args.theta)
        grid = sweep_grid(req)
        text = grid.to_csv() if args.format == "csv" else grid.to_json()
    _write(text, args.output, out)
    return EXIT_OK


def _describe(spec) -> str:
    def arm(a):
        return "[" + ", ".join("bs" if isinstance(e, BS) else f"phase({e.theta:.12g})" for e in a) + "]"

    src = f"alpha={spec.alpha:.12g}" if spec.alpha is not None else f"concurrence={spec.concurrence:.12g}"
    kind = spec.kind.value if spec.kind else "custom"
    lines = [f"title: {spec.title}"] if spec.title else []
    lines += [f"layout: {kind}  source: {src}", f"right = {arm(spec.right_arm)}", f"left  = {arm(spec.left_arm)}"]
    return "\n".join(lines)


def cmd_run(args, out) -> int:
    spec = load(args.path)
    print(_describe(spec), file=out)
    _, jp = compile_and_run(spec)
    if spec.alpha is not None:
        c = concurrence_of_pure_state(correlated_pair_state(spec.alpha))
    else:
        c = spec.concurrence
    _print_joint(jp, c, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    t0 = time.perf_counter()
    results = run_suites(grid=args.grid, tol=args.tol)
    for r in results:
        print(r.line(), file=out)
    ok = all(r.passed for r in results)
    print(f"{'all suites passed' if ok else 'VERIFICATION FAILED'} (grid {args.grid}, {time.perf_counter() - t0:.2f}s)", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"single": cmd_single, "scenario": cmd_scenario, "sweep": cmd_sweep, "run": cmd_run, "verify": cmd_verify}


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except CircuitError as e:
        path = getattr(args, "path", None)
        print(e.render(path), file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"pathent: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"pathent: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
