"""Command-line front end.

Subcommands: norm, modulus, bestapprox, jackson, inverse, classes,
verify-all.  Exit codes: 0 all checks passed, 1 some check failed,
2 configuration or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .approximation import best_approx_profile, best_approximation
from .certificates import Certificate
from .errors import AptrigError, ConfigError
from .inverse import (bari_condition_check, class_membership_report,
                      parse_majorant, sharpness_ratio_scan, verify_inverse)
from .jackson import (WeightFunction, jackson_integral, sharp_constant_lp,
                      verify_weighted_direct)
from .orlicz import OrliczFamily, orlicz_norm
from .report import RunConfig, emit_csv, emit_plots, run_suite
from .signal import load_signal
from .smoothness import ModulusCurve, parse_phi
from .fixtures import builtin_signal, uniform_spectrum


def _family_from_arg(text: str | None) -> OrliczFamily:
    if text is None or text == "l1":
        return OrliczFamily.l1()
    if text.startswith("p:"):
        return OrliczFamily.lp(float(text.split(":", 1)[1]))
    return OrliczFamily.from_config(text)


def _signal_from_arg(token: str):
    if token.startswith("builtin:"):
        return builtin_signal(token.split(":", 1)[1])
    return load_signal(token)


def _weight_from_arg(text: str, tau: float) -> WeightFunction:
    if text == "one_minus_cos":
        return WeightFunction.one_minus_cos()
    if text == "identity":
        return WeightFunction.identity(tau)
    if text.startswith("power:"):
        return WeightFunction.power_weight(int(text.split(":", 1)[1]))
    if text.startswith("grid:"):
        return WeightFunction.from_file(text.split(":", 1)[1])
    raise ConfigError(f"unknown weight spec {text!r}")


def _print_certificates(rows: list[Certificate]) -> bool:
    print("suite,theorem,signal,family,phi,n,lhs,rhs,margin,pass")
    for c in rows:
        print(",".join([c.suite, c.theorem, c.signal, c.family, c.phi, str(c.n),
                        f"{c.lhs:.17g}", f"{c.rhs:.17g}", f"{c.margin:.17g}",
                        "true" if c.passed else "false"]))
    return all(c.passed for c in rows)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aptrig",
                                 description="Orlicz-norm approximation toolkit "
                                             "for almost periodic trigonometric polynomials")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, with_n=True):
        p.add_argument("--signal", required=True,
                       help="signal file path or builtin:<name>")
        p.add_argument("--family", default="l1",
                       help="family config: 'l1', 'p:<p>', JSON text, or a JSON file path")
        if with_n:
            p.add_argument("--n", type=int, default=None, help="cut order (default K//2)")

    p = sub.add_parser("norm", help="Orlicz norm of a signal")
    add_common(p, with_n=False)

    p = sub.add_parser("modulus", help="generalized modulus of smoothness")
    add_common(p, with_n=False)
    p.add_argument("--phi", default="sine_power:2.0")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--grid", type=int, default=512)

    p = sub.add_parser("bestapprox", help="best approximation by truncation")
    add_common(p)
    p.add_argument("--profile", metavar="CSV", default=None,
                   help="write the full E_n profile to this CSV")

    p = sub.add_parser("jackson", help="direct-theorem certificates and constants")
    add_common(p)
    p.add_argument("--phi", default="sine_power:2.0")
    p.add_argument("--weight", default="one_minus_cos",
                   help="one_minus_cos | identity | power:m | grid:<file>")
    p.add_argument("--tau", type=float, default=math.pi)
    p.add_argument("--k-window", type=int, default=None)
    p.add_argument("--lp-grid", type=int, default=None,
                   help="also solve the sharp-constant LP on this grid size")

    p = sub.add_parser("inverse", help="inverse-theorem certificates")
    add_common(p)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--phi", default=None)
    p.add_argument("--scan", type=int, default=None, metavar="K0",
                   help="sharpness ratio scan for the probe at this index")

    p = sub.add_parser("classes", help="majorant-class membership evidence")
    add_common(p)
    p.add_argument("--majorant", default="power:1.0", help="power:<r>")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--s", type=float, default=None,
                   help="growth exponent of the partial-sum condition (default alpha)")
    p.add_argument("--n-max", type=int, default=1000)

    p = sub.add_parser("verify-all", help="run the configured verification suites")
    p.add_argument("--config", default=None, help="JSON run configuration")
    p.add_argument("--outdir", default=None, help="output directory override")

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (AptrigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "verify-all":
        return _cmd_verify_all(args)

    f = _signal_from_arg(args.signal)
    family = _family_from_arg(args.family)
    n = getattr(args, "n", None)
    if n is None:
        n = max(1, f.size // 2)

    if args.command == "norm":
        print(f"{orlicz_norm(f, family):.17g}")
        return 0

    if args.command == "modulus":
        phi = parse_phi(args.phi)
        curve = ModulusCurve(f, phi, family, grid=args.grid)
        lo, hi = curve.bracket(args.delta)
        print(f"{lo:.17g}")
        print(f"# upper estimate {hi:.17g}", file=sys.stderr)
        return 0

    if args.command == "bestapprox":
        if args.profile:
            profile = best_approx_profile(f, family, args.signal)
            profile.to_csv(args.profile)
            print(f"wrote {args.profile}")
        else:
            print(f"{best_approximation(f, n, family):.17g}")
        return 0

    if args.command == "jackson":
        phi = parse_phi(args.phi)
        weight = _weight_from_arg(args.weight, args.tau)
        rows = verify_weighted_direct(f, n, phi, weight, family, k_window=args.k_window)
        ok = _print_certificates(rows)
        value, argmin = jackson_integral(n, phi, weight, f.spectrum, args.k_window)
        print(f"# weighted integral {value:.17g} at argmin k={argmin}", file=sys.stderr)
        if args.lp_grid:
            sc = sharp_constant_lp(n, phi, weight.tau, f.spectrum, grid_points=args.lp_grid,
                                   k_window=args.k_window)
            print(f"# lp sharp constant {sc.value:.17g} "
                  f"presets {json.dumps(sc.preset_ratios)}", file=sys.stderr)
        return 0 if ok else 1

    if args.command == "inverse":
        if args.scan is not None:
            orders = [k for k in (2, 5, 10, 50, 100, 500, 1000) if k >= args.scan]
            scan = sharpness_ratio_scan(args.scan, args.alpha or 2.0, family,
                                        orders, uniform_spectrum(max(orders)))
            for nn, ratio in scan:
                print(f"{nn},{ratio:.17g}")
            return 0
        phi = parse_phi(args.phi) if args.phi else None
        rows = verify_inverse(f, n, family, alpha=args.alpha, phi=phi)
        return 0 if _print_certificates(rows) else 1

    if args.command == "classes":
        majorant = parse_majorant(args.majorant)
        s = args.s if args.s is not None else args.alpha
        bari = bari_condition_check(majorant, f.spectrum, s, args.n_max)
        rep = class_membership_report(f, args.alpha, majorant, family, args.n_max)
        print(json.dumps({
            "class": rep.class_label,
            "sup_tail_ratio": rep.sup_direct,
            "sup_modulus_ratio": rep.sup_modulus,
            "partial_sum_condition": {"stabilized": bari.bounded,
                                      "sup_ratio": bari.sup_ratio},
            "note": rep.note,
        }, indent=2))
        return 0

    raise ConfigError(f"unknown command {args.command!r}")


def _cmd_verify_all(args) -> int:
    try:
        config = RunConfig.from_file(args.config) if args.config else RunConfig(
            signals=("builtin:extremal", "builtin:probe", "builtin:random1"))
        outdir = args.outdir or os.environ.get("APTRIG_OUTDIR") or config.outdir
        report = run_suite(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    csv_path = emit_csv(report, Path(outdir) / "report.csv")
    if config.plots:
        emit_plots(report, Path(outdir) / "plots")
    summary = report.summary()
    print(f"checks={summary['checks']} passed={summary['passed']} "
          f"failed={summary['failed']} warnings={summary['warnings']}")
    for err in report.errors:
        print(f"warning: {err}", file=sys.stderr)
    print(f"wrote {csv_path}")
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
