"""Command-line driver: solve, sweep, fk and oracle subcommands.

Angles are degrees on the command line and in printed summaries, radians
inside. Exit codes: 0 success, 2 the joint cannot realize a legal request
(invalid configuration), 3 bad arguments, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional

from .arm import ControlTriple, NoIntersectionError, AmbiguousSphereError
from .full_joint import (
    ALL_BRANCH_IDS,
    BranchId,
    DegenerateFoldError,
    reconstruct,
    solve_fk,
)
from .geometry import GeometryError
from .joint import JointError, JointParams, p_bounds, theta_max
from .oracles import format_oracle_table, run_oracle_suite
from .workspace import SweepSpec, coverage, export_cloud, sweep_broken_arm

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BAD_ARGS = 3
EXIT_IO = 4

DEG = math.pi / 180.0


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on bad flags; the contract says 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_ARGS, f"{self.prog}: error: {message}\n")


def _params_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--ell", type=float, required=True, help="half-arm length (> 0)")
    sub.add_argument("--b", type=float, required=True, help="hinge spacing (> 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="canfield", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", parents=[], help="reconstruct the joint at one control triple")
    _params_args(solve)
    solve.add_argument("--theta-deg", type=float, required=True)
    solve.add_argument("--p", type=float, required=True)
    solve.add_argument("--phi-deg", type=float, required=True)
    solve.add_argument("--branch", choices=[b.label for b in ALL_BRANCH_IDS], default=None,
                       help="restrict output to one branch")

    sweep = subs.add_parser("sweep", help="broken-arm workspace sweep and export")
    _params_args(sweep)
    sweep.add_argument("--theta-deg", type=float, required=True)
    sweep.add_argument("--p-samples", type=int, default=100)
    sweep.add_argument("--phi-samples", type=int, default=100)
    sweep.add_argument("--p-min", type=float, default=None)
    sweep.add_argument("--p-max", type=float, default=None)
    sweep.add_argument("--phi-min-deg", type=float, default=None)
    sweep.add_argument("--phi-max-deg", type=float, default=None)
    sweep.add_argument("--branch", choices=[b.label for b in ALL_BRANCH_IDS], default=None)
    sweep.add_argument("--format", choices=["csv", "ply", "json"], default="csv")
    sweep.add_argument("--out", required=True, help="output file path")
    sweep.add_argument("--bins", type=int, default=1024, help="coverage estimator bins")

    fk = subs.add_parser("fk", help="solve (theta1,theta2,theta3) -> (p, phi, branch)")
    _params_args(fk)
    fk.add_argument("--theta1-deg", type=float, required=True)
    fk.add_argument("--theta2-deg", type=float, required=True)
    fk.add_argument("--theta3-deg", type=float, required=True)

    oracle = subs.add_parser("oracle", help="run the brute-force oracle cross-checks")
    oracle.add_argument("--cases", type=int, default=5)
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--grid", type=int, default=2000, help="oracle grid resolution per axis")
    return parser


def _wrap_deg(angle_deg: float) -> float:
    return (angle_deg % 360.0) * DEG


def _cmd_solve(args) -> int:
    try:
        params = JointParams(ell=args.ell, b=args.b)
    except JointError as exc:
        print(f"canfield: bad parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    ctrl = ControlTriple(_wrap_deg(args.theta_deg), args.p, args.phi_deg * DEG)
    bounds = {
        "p_bounds": list(p_bounds(params)),
    }
    try:
        ctrl.validate(params)
    except JointError as exc:
        print(f"canfield: bad control values: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    bounds["theta_max_deg"] = theta_max(ctrl.p, params) / DEG
    try:
        report = reconstruct(params, ctrl)
    except (NoIntersectionError, AmbiguousSphereError, DegenerateFoldError, GeometryError) as exc:
        doc = {"valid": False, "configurations": [], "failures": [str(exc)], "bounds": bounds}
        print(json.dumps(doc, indent=2))
        return EXIT_INVALID
    configs = report.configurations
    if args.branch is not None:
        configs = tuple(c for c in configs if c.branch.label == args.branch)
    doc = {
        "valid": bool(configs),
        "configurations": [c.to_dict() for c in configs],
        "failures": list(report.diagnostics),
        "arm_status": [s.value for s in report.arm_status],
        "bounds": bounds,
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK if configs else EXIT_INVALID


def _cmd_sweep(args) -> int:
    try:
        params = JointParams(ell=args.ell, b=args.b)
        p_range = None
        if (args.p_min is None) != (args.p_max is None):
            raise JointError("--p-min and --p-max must be given together")
        if args.p_min is not None:
            p_range = (args.p_min, args.p_max)
        phi_range = None
        if (args.phi_min_deg is None) != (args.phi_max_deg is None):
            raise JointError("--phi-min-deg and --phi-max-deg must be given together")
        if args.phi_min_deg is not None:
            phi_range = (args.phi_min_deg * DEG, args.phi_max_deg * DEG)
        spec = SweepSpec(
            theta_fixed=_wrap_deg(args.theta_deg),
            p_samples=args.p_samples,
            phi_samples=args.phi_samples,
            p_range=p_range,
            phi_range=phi_range,
            branch=BranchId.from_label(args.branch) if args.branch else None,
        )
        spec.validate(params)
    except JointError as exc:
        print(f"canfield: bad sweep spec: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS

    cloud = sweep_broken_arm(params, spec)
    summary = {
        "samples": len(cloud.samples),
        "rejected": cloud.rejected,
        "empty": not cloud.samples,
        "out": args.out,
        "format": args.format,
    }
    if cloud.samples:
        summary["coverage"] = coverage(cloud, args.bins).to_dict()
    try:
        export_cloud(cloud, args.format, args.out)
    except OSError as exc:
        print(f"canfield: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def _cmd_fk(args) -> int:
    try:
        params = JointParams(ell=args.ell, b=args.b)
    except JointError as exc:
        print(f"canfield: bad parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    targets = (
        _wrap_deg(args.theta1_deg),
        _wrap_deg(args.theta2_deg),
        _wrap_deg(args.theta3_deg),
    )
    fold = False
    try:
        solutions = solve_fk(params, targets)
    except DegenerateFoldError:
        solutions = []
        fold = True
    doc = {
        "solutions": [
            {"p": s.control.p, "phi_deg": s.control.phi / DEG, "branch": s.branch.label}
            for s in solutions
        ],
        "degenerate_fold": fold,
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    rows = run_oracle_suite(
        seed=args.seed, cases=args.cases, theta_samples=args.grid, p_samples=args.grid
    )
    print(format_oracle_table(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_INVALID


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "solve": _cmd_solve,
        "sweep": _cmd_sweep,
        "fk": _cmd_fk,
        "oracle": _cmd_oracle,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
