"""Command-line interface.

Exit codes: 0 success, 2 usage or I/O error, 3 domain error (bad inputs),
4 numeric failure (lost bracket, residual gate, bound violation).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .algebra import bisect, check_theta
from .boundary import enumerate_tisgms
from .errors import DomainError, NumericError
from .extremality import (
    disagreement_f,
    disagreement_g,
    gamma_upper_bound,
    msw_indicator,
    msw_indicator_strict,
    u1_printed_variant,
)
from .recursion import TiLaw, iterate_to_fixed_point
from .report import (
    catalog_to_dict,
    fixed_point_to_dict,
    g17,
    render_report,
    threshold_set_to_dict,
    write_scan_csv,
    write_tv_csv,
)
from .simulate import RNG_NAME, decay_curve
from .thresholds import find_all_thresholds, phase_diagram


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_json(obj: dict, path: str) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_solve(args) -> int:
    cat = enumerate_tisgms(check_theta(args.theta))
    _emit_json(catalog_to_dict(cat), args.output)
    return 0


def cmd_scan(args) -> int:
    rows = phase_diagram(args.theta_min, args.theta_max, args.steps, threads=args.threads)
    out, close = _open_out(args.output)
    try:
        write_scan_csv(rows, out)
    finally:
        if close:
            out.close()
    return 0


def _audit_block() -> dict:
    """Extra diagnostics: the two u1 numerator variants, and the branch-5
    indicator root compared with its strict (full-maximum) counterpart."""
    ts = find_all_thresholds()
    variants = []
    for theta in (1.5, 2.0, 2.5, ts.theta_bar, 3.0, 4.0):
        variants.append(
            {
                "theta": theta,
                "u1": msw_indicator(theta, 1),
                "u1_variant": u1_printed_variant(theta),
            }
        )
    lo = ts.theta_star + 1e-6
    hi = ts.theta_c_prime - 2e-4
    strict_root = bisect(lambda t: msw_indicator_strict(t, 5), lo, hi, 1e-10)
    return {
        "u1_numerator_variants": variants,
        "u1_variant_has_root_in_1_10": False,
        "branch5_indicator_root": ts.theta_double_star,
        "branch5_strict_root": strict_root,
    }


def cmd_thresholds(args) -> int:
    ts = find_all_thresholds()
    audit = _audit_block() if args.audit else None
    if args.json:
        _emit_json(threshold_set_to_dict(ts, audit), args.output)
        return 0
    out, close = _open_out(args.output)
    try:
        for name, value in ts.as_dict().items():
            out.write(f"{name} = {g17(value)}\n")
        if audit is not None:
            out.write("audit:\n")
            for row in audit["u1_numerator_variants"]:
                out.write(
                    f"  theta = {g17(row['theta'])}  u1 = {g17(row['u1'])}"
                    f"  u1_variant = {g17(row['u1_variant'])}\n"
                )
            out.write("  u1 variant with (1-theta)^2 numerator has no root on (1, 10)\n")
            out.write(
                f"  branch5 indicator root = {g17(audit['branch5_indicator_root'])}"
                f"  strict root = {g17(audit['branch5_strict_root'])}\n"
            )
    finally:
        if close:
            out.close()
    return 0


def cmd_simulate(args) -> int:
    if args.samples < 100:
        raise DomainError("samples must be at least 100")
    ests = decay_curve(args.theta, args.branch, args.depth, args.samples, args.seed)
    print(
        f"rng={RNG_NAME} theta={g17(args.theta)} branch={args.branch}"
        f" depth={args.depth} samples={args.samples} seed={args.seed}",
        file=sys.stderr,
    )
    out, close = _open_out(args.output)
    try:
        write_tv_csv(ests, out)
    finally:
        if close:
            out.close()
    return 0


def cmd_verify_gamma(args) -> int:
    theta = check_theta(args.theta)
    cat = enumerate_tisgms(theta)
    branches = [args.branch] if args.branch else cat.branches()
    n = args.grid
    if n < 2:
        raise DomainError("grid must be at least 2")
    ticks = np.linspace(0.0, 1.0, n)
    tt, uu = np.meshgrid(ticks, ticks, indexing="ij")
    mask = tt + uu <= 1.0 + 1e-12
    t = tt[mask]
    u = np.minimum(uu[mask], 1.0 - tt[mask])
    bound = gamma_upper_bound(theta)
    worst = 0.0
    failed = False
    for branch in branches:
        law = cat.law(branch)
        fv = np.abs(disagreement_f(t, u, theta, law))
        gv = np.abs(disagreement_g(t, u, theta, law))
        fmax = float(fv.max())
        gmax = float(gv.max())
        fi = int(fv.argmax())
        gi = int(gv.argmax())
        worst = max(worst, fmax, gmax)
        ok = fmax <= bound + 1e-12 and gmax <= bound + 1e-12
        failed = failed or not ok
        status = "ok" if ok else "VIOLATED"
        print(
            f"branch {branch}: max|f| = {g17(fmax)} at (t,u)=({g17(float(t[fi]))},{g17(float(u[fi]))})"
            f"  max|g| = {g17(gmax)} at (t,u)=({g17(float(t[gi]))},{g17(float(u[gi]))})  {status}"
        )
    print(f"bound = {g17(bound)}  grid = {n}x{n}  worst = {g17(worst)}")
    if failed:
        raise NumericError("disagreement bound violated on the simplex grid")
    print("PASS")
    return 0


def cmd_general(args) -> int:
    theta = check_theta(args.theta)
    if args.z0 is None:
        z0 = tuple([1.0] * args.m)
    else:
        parts = [p for p in args.z0.split(",") if p.strip()]
        if len(parts) != args.m:
            raise DomainError(f"z0 needs exactly {args.m} comma-separated values")
        z0 = tuple(float(p) for p in parts)
    result = iterate_to_fixed_point(
        TiLaw(z0, args.m, args.k),
        theta,
        damping=args.damping,
        tol=args.tol,
        max_iter=args.max_iter,
    )
    _emit_json(fixed_point_to_dict(result, theta), args.output)
    return 0 if result.converged else 4


def cmd_report(args) -> int:
    written = render_report(
        args.output_dir,
        steps=args.steps,
        samples=args.samples,
        seed=args.seed,
        max_depth=args.depth,
    )
    for p in written:
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sostree",
        description="Three-state nearest-neighbour model on the binary tree: "
        "splitting Gibbs measures, spectral and percolation classification, "
        "thresholds, and census reconstruction experiments.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="enumerate boundary laws at one coupling (JSON)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--output", default="-", help="file path or - for stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="classify all laws over a coupling grid (CSV)")
    p.add_argument("--theta-min", type=float, default=0.05)
    p.add_argument("--theta-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: SOSTREE_THREADS or 1)")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("thresholds", help="locate the six critical couplings")
    p.add_argument("--json", action="store_true")
    p.add_argument("--audit", action="store_true",
                   help="include indicator-variant diagnostics")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("simulate", help="census reconstruction TV decay curve (CSV)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--branch", type=int, choices=range(1, 8), required=True)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify-gamma",
                       help="check the disagreement bound on a simplex grid")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--branch", type=int, choices=range(1, 8), default=None,
                   help="default: every branch present at this coupling")
    p.add_argument("--grid", type=int, default=200)
    p.set_defaults(func=cmd_verify_gamma)

    p = sub.add_parser("general", help="damped fixed-point search for m+1 states")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--z0", default=None, help="comma-separated start, default all ones")
    p.add_argument("--damping", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_general)

    p = sub.add_parser("report", help="render scan CSV, thresholds JSON and figures")
    p.add_argument("--output-dir", required=True)
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=20240801)
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
