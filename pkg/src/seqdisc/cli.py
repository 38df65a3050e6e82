"""Command-line front end.

Subcommands: optimal, sweep, correlations, simulate, verify.
Exit codes: 0 ok, 2 usage or constraint violation, 3 I/O failure,
4 statistical check failure, 5 certification failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from .core import ConstraintError, DomainError, Scenario
from .correlations import CorrelationInput, correlation_report
from .oracle import GridSpec, certify
from .protocols import (
    at_least_one_protocol3,
    at_least_one_ssd,
    protocol1_optimal,
    protocol2_optimal,
    protocol3_optimal,
)
from .simulate import run_ssd_trials
from .ssd import joint_optimal, joint_success, solve_q_star
from .sweeps import (
    FIGURE_PRESETS,
    SweepSpec,
    available_quantities,
    run_figure,
    run_sweep,
    write_csv,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_STATISTICAL = 4
EXIT_CERTIFICATION = 5


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _print_result(name: str, res) -> None:
    parts = [f"{name:<22} {_fmt(res.value):<18} {res.case_label.value}"]
    if res.boundary_prior is not None:
        parts.append(f"boundary_p1={_fmt(res.boundary_prior)}")
    args = " ".join(f"{k}={_fmt(v)}" for k, v in res.argmax.items())
    if args:
        parts.append(args)
    print("  ".join(parts))


def cmd_optimal(args: argparse.Namespace) -> int:
    sc = Scenario(args.s, args.p1)
    print(f"# scenario: s={_fmt(sc.s)} p1={_fmt(sc.p1)}")
    print(f"{'quantity':<22} {'value':<18} case")
    _print_result("ssd_joint", joint_optimal(sc))
    _print_result("protocol1", protocol1_optimal(sc))
    _print_result("protocol2", protocol2_optimal(sc))
    _print_result("protocol3", protocol3_optimal(sc))
    _print_result("at_least_one_ssd", at_least_one_ssd(sc))
    _print_result("at_least_one_p3", at_least_one_protocol3(sc))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.figure:
        header, rows = run_figure(args.figure)
    else:
        if not (args.variable and args.quantities):
            raise DomainError("sweep needs either --figure or --variable plus --quantities")
        if args.start is None or args.stop is None:
            raise DomainError("custom sweeps need --start and --stop")
        fixed = {}
        if args.s is not None:
            fixed["s"] = args.s
        if args.p1 is not None:
            fixed["p1"] = args.p1
        if args.t is not None:
            fixed["t"] = args.t
        spec = SweepSpec(
            variable=args.variable,
            start=args.start,
            stop=args.stop,
            steps=args.steps,
            fixed=fixed,
            quantities=tuple(args.quantities.split(",")),
        )
        header, rows = run_sweep(spec)
    if args.out == "-":
        write_csv(header, rows, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(header, rows, fh)
    return EXIT_OK


def cmd_correlations(args: argparse.Namespace) -> int:
    sc = Scenario(args.s, args.p1)
    if args.t < sc.s or args.t <= 0.0:
        raise DomainError(f"overlap t={args.t} outside [s, 1] = [{sc.s}, 1]")
    rep = correlation_report(CorrelationInput(sc.p1, args.t, sc.s / args.t))
    print(f"# correlations: s={_fmt(sc.s)} p1={_fmt(sc.p1)} t={_fmt(args.t)} r={_fmt(sc.s / args.t)}")
    for name in ("tau_abe", "tau_a_be", "tau_b_ae", "tau_e_ab", "d_right", "d_left", "d_symm"):
        print(f"{name:<12} {_fmt(getattr(rep, name))}")
    for name in ("prop_left", "prop_right"):
        val = getattr(rep, name)
        print(f"{name:<12} {'undefined' if val is None else _fmt(val)}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    sc = Scenario(args.s, args.p1)
    t = args.t if args.t is not None else math.sqrt(sc.s)
    q_star = solve_q_star(sc) if 0.0 < sc.s < 1.0 else 0.0
    q1b = args.q1b if args.q1b is not None else q_star
    q1c = args.q1c if args.q1c is not None else q_star
    summary = run_ssd_trials(sc, t, q1b, q1c, args.n, args.seed)
    expected = joint_success(sc, t, q1b, q1c)
    sigma = math.sqrt(max(expected * (1.0 - expected), 0.0) / args.n)
    rate = summary.joint_success_rate
    print(f"# simulate: s={_fmt(sc.s)} p1={_fmt(sc.p1)} t={_fmt(t)} q1b={_fmt(q1b)} q1c={_fmt(q1c)}")
    print(f"n_trials             {summary.n_trials}")
    print(f"seed                 {summary.seed}")
    for i in (1, 2):
        for b in (1, 0):
            for c in (1, 0):
                label = f"state{i}_bob_{'ok' if b else 'fail'}_charlie_{'ok' if c else 'fail'}"
                print(f"{label:<38} {int(summary.counts[i - 1, b, c])}")
    print(f"error_count          {summary.error_count}")
    print(f"joint_success_rate   {_fmt(rate)}")
    print(f"expected_joint       {_fmt(expected)}")
    print(f"deviation_sigmas     {_fmt(abs(rate - expected) / sigma if sigma > 0 else 0.0)}")
    if summary.error_count != 0:
        print("FAIL: erroneous declarations occurred", file=sys.stderr)
        return EXIT_STATISTICAL
    if sigma > 0 and abs(rate - expected) > 5.0 * sigma:
        print("FAIL: joint success rate outside 5 sigma of the analytic value", file=sys.stderr)
        return EXIT_STATISTICAL
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    spec = GridSpec(tolerance=args.tolerance)
    quantities = args.quantity.split(",") if args.quantity else None
    rows = certify(quantities=quantities, spec=spec)
    print(f"{'quantity':<18} {'worst gap':<14} {'at (s, p1)':<16} status")
    failed = False
    for row in rows:
        status = "PASS" if row.passed else "FAIL"
        failed = failed or not row.passed
        at = f"({row.worst_scenario[0]:g}, {row.worst_scenario[1]:g})"
        print(f"{row.quantity:<18} {row.worst_gap:<14.3e} {at:<16} {status}")
    return EXIT_CERTIFICATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqdisc",
        description="Sequential unambiguous discrimination of two nonorthogonal qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimal", help="all optimal success probabilities for one scenario")
    p_opt.add_argument("--s", type=float, required=True, help="state overlap in [0, 1]")
    p_opt.add_argument("--p1", type=float, required=True, help="prior of state 1 in (0, 1/2]")
    p_opt.set_defaults(fn=cmd_optimal)

    p_sweep = sub.add_parser("sweep", help="CSV parameter sweeps, including figure presets")
    p_sweep.add_argument("--figure", choices=sorted(FIGURE_PRESETS), help="figure preset")
    p_sweep.add_argument("--variable", choices=("P1", "s", "t"))
    p_sweep.add_argument("--start", type=float)
    p_sweep.add_argument("--stop", type=float)
    p_sweep.add_argument("--steps", type=int, default=200)
    p_sweep.add_argument("--s", type=float)
    p_sweep.add_argument("--p1", type=float)
    p_sweep.add_argument("--t", type=float)
    p_sweep.add_argument(
        "--quantities", help="comma-separated: " + ",".join(available_quantities())
    )
    p_sweep.add_argument("--out", required=True, help="output CSV path ('-' for stdout)")
    p_sweep.set_defaults(fn=cmd_sweep)

    p_corr = sub.add_parser("correlations", help="tangles, discords and proportions")
    p_corr.add_argument("--s", type=float, required=True)
    p_corr.add_argument("--p1", type=float, required=True)
    p_corr.add_argument("--t", type=float, required=True, help="post-measurement overlap in [s, 1]")
    p_corr.set_defaults(fn=cmd_correlations)

    p_sim = sub.add_parser("simulate", help="seeded Monte Carlo through the measurement chain")
    p_sim.add_argument("--s", type=float, required=True)
    p_sim.add_argument("--p1", type=float, required=True)
    p_sim.add_argument("--t", type=float, help="default sqrt(s)")
    p_sim.add_argument("--q1b", type=float, help="default q* of the joint optimum")
    p_sim.add_argument("--q1c", type=float, help="default q* of the joint optimum")
    p_sim.add_argument("--n", type=int, default=1_000_000)
    p_sim.add_argument("--seed", type=int, default=42)
    p_sim.set_defaults(fn=cmd_simulate)

    p_ver = sub.add_parser("verify", help="certify closed forms against brute-force oracles")
    p_ver.add_argument("--quantity", help="comma-separated subset of quantities")
    p_ver.add_argument("--tolerance", type=float, default=1e-6)
    p_ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, ConstraintError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
