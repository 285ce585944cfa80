"""Command-line interface: batch scene verification and catalog listing.

Exit codes: 0 all checks passed, 1 at least one check failed or an identity
was violated, 2 invalid input (bad scene file, unknown keys, bad parameters).
"""

from __future__ import annotations

import argparse
import sys

from .contact import ambient_catalog
from .errors import SceneError, WarpcheckError
from .immersion import chart_immersion_catalog
from .numeric import Tolerance
from .scenes import check_names, emit, parse_scene, run
from .warped import chart_catalog


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="warpcheck",
        description="verify warped-product curvature inequalities on declarative scenes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the checks declared in a scene file")
    verify.add_argument("scene", help="path to a JSON scene file")
    verify.add_argument("--tol-algebraic", type=float, default=None, metavar="R")
    verify.add_argument("--tol-fd", type=float, default=None, metavar="R")
    verify.add_argument("--samples", type=int, default=None, metavar="N")
    verify.add_argument("--seed", type=int, default=None, metavar="S")
    verify.add_argument("--output", choices=("json", "text"), default="text")
    verify.add_argument("--out", default=None, metavar="PATH", help="write the report here instead of stdout")

    sub.add_parser("catalog", help="list named ambients, charts, immersions and checks")
    return parser


def _cmd_verify(args) -> int:
    spec = parse_scene(args.scene)
    tol = None
    if args.tol_algebraic is not None or args.tol_fd is not None:
        tol = Tolerance(
            algebraic=args.tol_algebraic
            if args.tol_algebraic is not None
            else float(spec.tolerances.get("algebraic", 1e-10)),
            finite_difference=args.tol_fd
            if args.tol_fd is not None
            else float(spec.tolerances.get("finite_difference", 1e-4)),
            equality_gap=float(spec.tolerances.get("equality_gap", 1e-6)),
        )
    report = run(spec, tolerances=tol, seed=args.seed, samples=args.samples)
    payload = emit(report, args.output)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
    return 0 if report.all_passed else 1


def _cmd_catalog() -> int:
    print("ambients:")
    for key in sorted(ambient_catalog()):
        print(f"  {key}")
    print("warped charts:")
    for key in sorted(chart_catalog()):
        print(f"  {key}")
    print("immersions:")
    for key in sorted(chart_immersion_catalog()):
        print(f"  {key}")
    print("  dplus-leaf")
    print("warping functions:")
    print("  const(a), cos, exp, polynomial(coeffs), sum(terms), product(terms)")
    print("checks:")
    for key in check_names():
        print(f"  {key}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_catalog()
    except SceneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WarpcheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
