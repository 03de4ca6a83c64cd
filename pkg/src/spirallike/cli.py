"""Command-line front end: radius tables, boundary maxima, image curves, verification runs.

Exit codes: 0 success (or verification passed), 1 verification failed,
2 usage or domain error.  All numeric output uses 17 significant digits so
that parsing and re-serializing is byte-exact for 64-bit floats; CSV goes
out with a header row, UTF-8, LF line endings.  Tilt angles are radians
unless --degrees is given.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import Angle, DomainError, caratheodory_disc, p_lambda, q_lambda
from .radii import radius_r1, radius_r2, radius_table
from .subordination import psi
from .verify import (
    verify_differential_identity,
    verify_lemma1,
    verify_nunokawa_bound,
    verify_theorem1,
    verify_theorem2,
)

LAMBDA_CLIP = np.pi / 2 - 1e-9

_CLAIM_CHOICES = ("lemma1", "theorem1", "corollary1", "theorem2", "differential-identity", "nunokawa")


def fmt(x: float) -> str:
    """17-significant-digit decimal form; round-trips any 64-bit float."""
    return format(float(x), ".17g")


def parse_grid(spec: str) -> list[float]:
    """start:end:count with inclusive endpoints, clipped into the open tilt interval."""
    try:
        start_s, end_s, count_s = spec.split(":")
        start, end, count = float(start_s), float(end_s), int(count_s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid spec must be start:end:count, got {spec!r}") from exc
    if count < 1:
        raise argparse.ArgumentTypeError(f"grid count must be >= 1, got {count}")
    values = np.linspace(start, end, count) if count > 1 else np.array([start])
    return list(np.clip(values, -LAMBDA_CLIP, LAMBDA_CLIP))


def _angles_from_args(args) -> list[Angle]:
    values: list[float]
    if getattr(args, "lambda_grid", None) is not None:
        values = parse_grid(args.lambda_grid)
    elif args.lam is not None:
        values = [args.lam]
    else:
        raise DomainError("one of --lambda / --lambda-grid is required")
    if getattr(args, "degrees", False):
        values = [v * np.pi / 180.0 for v in values]
    return [Angle(v) for v in values]


def _emit(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list[str]], header: list[str]) -> str:
    return "\n".join([",".join(header)] + [",".join(r) for r in rows]) + "\n"


def cmd_radius(args) -> int:
    angles = _angles_from_args(args)
    if args.format == "json":
        reports = []
        for a in angles:
            if args.kind in ("r1", "both"):
                reports.append(radius_r1(a, args.tol).to_json_obj())
            if args.kind in ("r2", "both"):
                reports.append(radius_r2(a).to_json_obj())
        _emit(args, json.dumps(reports) + "\n")
        return 0
    header = {"r1": ["lambda", "r1"], "r2": ["lambda", "r2"], "both": ["lambda", "r1", "r2"]}[args.kind]
    rows = []
    for a in angles:
        row = [fmt(a.lam)]
        if args.kind in ("r1", "both"):
            row.append(fmt(radius_r1(a, args.tol).value))
        if args.kind in ("r2", "both"):
            row.append(fmt(radius_r2(a).value))
        rows.append(row)
    _emit(args, _csv(rows, header))
    return 0


def cmd_table(args) -> int:
    angles = _angles_from_args(args)
    rows = radius_table(angles, args.tol)
    if args.format == "json":
        _emit(args, json.dumps([{"lambda": l, "r1": r1, "r2": r2} for l, r1, r2 in rows]) + "\n")
    else:
        _emit(args, _csv([[fmt(l), fmt(r1), fmt(r2)] for l, r1, r2 in rows], ["lambda", "r1", "r2"]))
    return 0


def cmd_psi(args) -> int:
    if not 0.0 <= args.r < 1.0:
        raise DomainError(f"--r must satisfy 0 <= r < 1, got {args.r!r}")
    (a,) = _angles_from_args(args)
    value, witness = psi(a, args.r, args.grid_n, args.refine_tol)
    if args.format == "json":
        _emit(
            args,
            json.dumps({"lambda": a.lam, "r": args.r, "psi": value, "witness_theta": witness}) + "\n",
        )
    else:
        _emit(args, _csv([[fmt(a.lam), fmt(args.r), fmt(value), fmt(witness)]],
                         ["lambda", "r", "psi", "witness_theta"]))
    return 0


def cmd_curve(args) -> int:
    (a,) = _angles_from_args(args)
    if not 0.0 <= args.rho < 1.0:
        raise DomainError(f"--rho must satisfy 0 <= rho < 1, got {args.rho!r}")
    if args.kind == "disc":
        d = caratheodory_disc(a, args.rho)
        if args.format == "json":
            _emit(args, json.dumps({"r": args.rho, "center_re": d.center.real,
                                    "center_im": d.center.imag, "radius": d.radius}) + "\n")
        else:
            _emit(args, _csv([[fmt(args.rho), fmt(d.center.real), fmt(d.center.imag), fmt(d.radius)]],
                             ["r", "center_re", "center_im", "radius"]))
        return 0
    thetas = np.linspace(0.0, 2.0 * np.pi, args.n, endpoint=False)
    fn = q_lambda if args.kind == "q_lambda" else p_lambda
    values = fn(a, args.rho * np.exp(1j * thetas))
    if args.format == "json":
        _emit(args, json.dumps([{"theta": float(t), "re": float(v.real), "im": float(v.imag)}
                                for t, v in zip(thetas, values)]) + "\n")
    else:
        _emit(args, _csv([[fmt(t), fmt(v.real), fmt(v.imag)] for t, v in zip(thetas, values)],
                         ["theta", "re", "im"]))
    return 0


def cmd_verify(args) -> int:
    claim = args.claim
    if claim == "nunokawa":
        grid = np.array(parse_nunokawa_grid(args.a_grid))
        report = verify_nunokawa_bound(grid)
    else:
        (a,) = _angles_from_args(args)
        if claim == "lemma1":
            report = verify_lemma1(a, args.trials, args.seed)
        elif claim == "theorem1":
            report = verify_theorem1(a, args.trials, args.seed, args.safety)
        elif claim == "corollary1":
            report = verify_theorem1(a, args.trials, args.seed, args.safety, subordination=True)
        elif claim == "theorem2":
            report = verify_theorem2(a, args.trials, args.seed, args.safety, radius=args.radius)
        else:
            report = verify_differential_identity(a, args.grid_n)
    _emit(args, report.to_json() + "\n")
    return 0 if report.passed else 1


def parse_nunokawa_grid(spec: str) -> list[float]:
    """start:end:count over positive values, mirrored to the negatives."""
    try:
        start_s, end_s, count_s = spec.split(":")
        start, end, count = float(start_s), float(end_s), int(count_s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid spec must be start:end:count, got {spec!r}") from exc
    if start <= 0 or end <= start or count < 2:
        raise argparse.ArgumentTypeError("nunokawa grid needs 0 < start < end and count >= 2")
    pos = np.linspace(start, end, count)
    return list(np.concatenate([-pos[::-1], pos]))


def _add_common(sub, *, lam: bool = True, grid: bool = True) -> None:
    if lam:
        sub.add_argument("--lambda", dest="lam", type=float, default=None,
                         help="tilt angle (radians unless --degrees)")
        sub.add_argument("--degrees", action="store_true", help="interpret tilt angles as degrees")
    if grid:
        sub.add_argument("--lambda-grid", default=None, metavar="START:END:COUNT",
                         help="inclusive grid of tilt angles, clipped into (-pi/2, pi/2)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default="-", help="output path ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spirallike",
        description="Radii of spirallikeness/starlikeness for tilted Robertson-type classes, "
                    "with a seeded verification harness.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("radius", help="compute R1/R2 for one tilt or a grid")
    sp.add_argument("--kind", choices=("r1", "r2", "both"), default="both")
    sp.add_argument("--tol", type=float, default=1e-10, help="bisection bracket width for R1")
    _add_common(sp)
    sp.set_defaults(func=cmd_radius)

    sp = subs.add_parser("table", help="R1/R2 sweep over a tilt grid")
    sp.add_argument("--tol", type=float, default=1e-10)
    _add_common(sp)
    sp.set_defaults(func=cmd_table)

    sp = subs.add_parser("psi", help="boundary maximum of the pullback modulus at one radius")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--grid-n", type=int, default=2048)
    sp.add_argument("--refine-tol", type=float, default=1e-12)
    _add_common(sp, grid=False)
    sp.set_defaults(func=cmd_psi)

    sp = subs.add_parser("curve", help="emit an image curve or the enclosing disc parameters")
    sp.add_argument("--kind", choices=("q_lambda", "p_lambda", "disc"), required=True)
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--n", type=int, default=256)
    _add_common(sp, grid=False)
    sp.set_defaults(func=cmd_curve)

    sp = subs.add_parser("verify", help="run one verification harness and write its JSON report")
    sp.add_argument("--claim", choices=_CLAIM_CHOICES, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--safety", type=float, default=0.999)
    sp.add_argument("--radius", type=float, default=None,
                    help="override the test circle for theorem2 (falsification mode beyond R2)")
    sp.add_argument("--grid-n", type=int, default=64, help="polar grid size for differential-identity")
    sp.add_argument("--a-grid", default="0.05:5:1000", metavar="START:END:COUNT",
                    help="positive grid for nunokawa, mirrored to negatives")
    _add_common(sp, grid=False)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (DomainError, argparse.ArgumentTypeError) as exc:
        print(f"spirallike: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"spirallike: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
