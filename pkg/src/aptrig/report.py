"""Run configurations, batch verification suites, and CSV/SVG emission.

Reports are deterministic: certificate rows are re-sorted before emission,
floats are printed with 17 significant digits, line endings are LF, and the
SVG backend is salted with a fixed hash seed.
"""
from __future__ import annotations

import json
import math
import platform
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .approximation import best_approx_profile
from .certificates import Certificate
from .errors import ConfigError
from .fixtures import builtin_signal, uniform_spectrum
from .inverse import sharpness_ratio_scan, verify_inverse
from .jackson import (WeightFunction, verify_mean_direct, verify_steklov_direct,
                      verify_uniform_direct, verify_weighted_direct)
from .orlicz import OrliczFamily, centered_norm
from .signal import APPolynomial, load_signal
from .smoothness import ModulusCurve, SinePower, parse_phi

_PKG_VERSION = "0.1.0"

ALL_SUITES = ("direct_weighted", "direct_uniform", "direct_tau_mean",
              "steklov", "inverse", "sharpness")

CSV_COLUMNS = ("suite", "theorem", "signal", "family", "phi", "n", "lhs",
               "rhs", "margin", "pass")


@dataclass(frozen=True)
class Series:
    """One plottable line: tail-norm decay, modulus curve, or ratio scan."""

    name: str
    kind: str
    x: tuple[float, ...]
    y: tuple[float, ...]


@dataclass
class VerificationReport:
    certificates: list[Certificate] = field(default_factory=list)
    series: list[Series] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    seed: int = 0
    environment: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def summary(self) -> dict:
        total = len(self.certificates)
        passed = sum(1 for c in self.certificates if c.passed)
        return {"checks": total, "passed": passed, "failed": total - passed,
                "warnings": len(self.errors)}


@dataclass(frozen=True)
class RunConfig:
    signals: tuple[str, ...] = ()
    family_config: dict | None = None
    phi_spec: str = "sine_power:2.0"
    alpha: float = 2.0
    steklov_order: int = 1
    suites: tuple[str, ...] = ALL_SUITES
    n: int | None = None
    tau: float = 0.75 * math.pi
    weight: str = "one_minus_cos"
    sharpness_orders: tuple[int, ...] = (2, 5, 10, 50, 100, 500, 1000)
    margin_tol: float = 1e-9
    modulus_grid: int = 512
    integral_grid: int = 4097
    outdir: str = "out"
    seed: int = 12345
    plots: bool = False
    schema_version: int = 1

    @staticmethod
    def from_file(path: str | Path) -> "RunConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return RunConfig.from_dict(raw)

    @staticmethod
    def from_dict(raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        version = raw.get("schema_version", 1)
        if version != 1:
            raise ConfigError(f"unsupported config schema version {version}")
        known = {f.name for f in RunConfig.__dataclass_fields__.values()}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cleaned = dict(raw)
        for key in ("signals", "suites", "sharpness_orders"):
            if key in cleaned:
                cleaned[key] = tuple(cleaned[key])
        cfg = RunConfig(**cleaned)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        bad = [s for s in self.suites if s not in ALL_SUITES]
        if bad:
            raise ConfigError(f"unknown suites: {bad}")
        if self.margin_tol <= 0:
            raise ConfigError("margin tolerance must be positive")
        if self.modulus_grid < 64 or self.integral_grid < 64:
            raise ConfigError("grids must have at least 64 points")
        if self.alpha <= 0 or self.steklov_order < 1:
            raise ConfigError("alpha must be positive and the order >= 1")

    def family(self) -> OrliczFamily:
        if self.family_config is None:
            return OrliczFamily.l1()
        return OrliczFamily.from_config(self.family_config)

    def weight_function(self) -> WeightFunction:
        text = self.weight
        if text == "one_minus_cos":
            return WeightFunction.one_minus_cos()
        if text == "identity":
            return WeightFunction.identity(self.tau)
        if text.startswith("power:"):
            return WeightFunction.power_weight(int(text.split(":", 1)[1]))
        if text.startswith("grid:"):
            return WeightFunction.from_file(text.split(":", 1)[1])
        raise ConfigError(f"unknown weight spec {text!r}")


def _resolve_signal(token: str) -> APPolynomial:
    if token.startswith("builtin:"):
        return builtin_signal(token.split(":", 1)[1])
    return load_signal(token)


def _suite_rows(config: RunConfig, token: str, f: APPolynomial) -> tuple[list[Certificate], list[Series]]:
    family = config.family()
    phi = parse_phi(config.phi_spec)
    n = config.n if config.n is not None else max(1, f.size // 2)
    n = min(n, f.size)
    rows: list[Certificate] = []
    series: list[Series] = []
    for suite in config.suites:
        if suite == "sharpness":
            continue  # signal-independent, handled once per run
        if suite == "direct_weighted":
            rows += [c.tagged(suite, token, tol=config.margin_tol) for c in verify_weighted_direct(
                f, n, phi, config.weight_function(), family, grid=config.integral_grid)]
        elif suite == "direct_uniform":
            if centered_norm(f, family) == 0.0:
                continue
            rows += [c.tagged(suite, token, tol=config.margin_tol) for c in verify_uniform_direct(
                f, n, config.alpha, family)]
        elif suite == "direct_tau_mean":
            if config.alpha >= 1.0:
                rows += [c.tagged(suite, token, tol=config.margin_tol) for c in verify_mean_direct(
                    f, n, config.alpha, config.tau, family, grid=config.integral_grid)]
        elif suite == "steklov":
            rows += [c.tagged(suite, token, tol=config.margin_tol) for c in verify_steklov_direct(
                f, n, config.steklov_order, family, grid=config.integral_grid)]
        elif suite == "inverse":
            rows += [c.tagged(suite, token, tol=config.margin_tol) for c in verify_inverse(
                f, n, family, alpha=config.alpha)]
    if config.plots:
        profile = best_approx_profile(f, family, token)
        series.append(Series(f"decay:{token}", "decay",
                             tuple(float(r[0]) for r in profile.rows),
                             tuple(r[2] for r in profile.rows)))
        curve = ModulusCurve(f, SinePower(config.alpha), family, grid=config.modulus_grid)
        deltas = np.linspace(0.0, math.pi / f.spectrum.exponent(max(1, n)), 33)
        series.append(Series(f"modulus:{token}", "modulus",
                             tuple(float(d) for d in deltas),
                             tuple(curve.value(float(d)) for d in deltas)))
    return rows, series


def _sharpness_rows(config: RunConfig) -> tuple[list[Certificate], list[Series]]:
    orders = tuple(sorted(config.sharpness_orders))
    K = max(orders)
    spectrum = uniform_spectrum(K)
    scan = sharpness_ratio_scan(1, config.alpha, config.family(), orders, spectrum)
    rows = [Certificate("inverse_sharpness_ratio", n=nn, lhs=ratio, rhs=1.0,
                        phi=f"sine_power:{config.alpha:g}", family=config.family().label,
                        signal="builtin:probe", suite="sharpness",
                        tol=config.margin_tol)
            for nn, ratio in scan]
    last_n, last_ratio = scan[-1]
    rows.append(Certificate("inverse_sharpness_limit", n=last_n,
                            lhs=1.0 - 1e-3, rhs=last_ratio,
                            phi=f"sine_power:{config.alpha:g}",
                            family=config.family().label,
                            signal="builtin:probe", suite="sharpness"))
    series = []
    if config.plots:
        series.append(Series("sharpness_ratio", "ratio",
                             tuple(float(nn) for nn, _ in scan),
                             tuple(r for _, r in scan)))
    return rows, series


def run_suite(config: RunConfig) -> VerificationReport:
    """Execute the configured verifier suites over the configured signals."""
    report = VerificationReport(seed=config.seed)
    report.environment = {
        "package": _PKG_VERSION,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "platform": sys.platform,
        "seed": config.seed,
    }
    jobs = []
    for token in config.signals:
        try:
            f = _resolve_signal(token)
        except (OSError, ValueError) as exc:
            report.errors.append(f"{token}: {exc}")
            continue
        jobs.append((token, f))
    results: list[tuple[list[Certificate], list[Series]]] = []
    if jobs:
        with ThreadPoolExecutor(max_workers=min(4, len(jobs))) as pool:
            results = list(pool.map(lambda tf: _suite_rows(config, *tf), jobs))
    if "sharpness" in config.suites:
        results.append(_sharpness_rows(config))
    for rows, series in results:
        report.certificates.extend(rows)
        report.series.extend(series)
    report.certificates.sort(key=lambda c: (c.suite, c.signal, c.n, c.theorem))
    report.series.sort(key=lambda s: s.name)
    return report


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_csv(report: VerificationReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(CSV_COLUMNS)]
    for c in report.certificates:
        lines.append(",".join([
            c.suite, c.theorem, c.signal, c.family, c.phi, str(c.n),
            _fmt(c.lhs), _fmt(c.rhs), _fmt(c.margin),
            "true" if c.passed else "false",
        ]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def emit_plots(report: VerificationReport, outdir: str | Path) -> list[Path]:
    """One SVG line chart per series; byte-deterministic for a fixed report."""
    from matplotlib import rc_context
    from matplotlib.figure import Figure

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for series in report.series:
        fig = Figure(figsize=(6.0, 4.0))
        ax = fig.add_subplot(111)
        if len(series.x):
            ax.plot(series.x, series.y, marker="o", markersize=2.5, linewidth=1.0)
        ax.set_title(series.name)
        ax.set_xlabel("n" if series.kind in ("decay", "ratio") else "delta")
        ax.set_ylabel(series.kind)
        ax.grid(True, alpha=0.3)
        name = series.name.replace(":", "_").replace("/", "_") + ".svg"
        target = outdir / name
        with rc_context({"svg.hashsalt": "aptrig"}):
            fig.savefig(target, format="svg", metadata={"Date": None})
        written.append(target)
    return written
