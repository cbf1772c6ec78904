"""Direct approximation bounds: weighted integrals, sharp constants, verifiers.

The central quantity is the weighted multiplier integral

    I_n(phi, v) = inf_{k >= n} integral_0^tau phi(lambda_k t / lambda_n) dv(t)

over nondecreasing weights v on [0, tau].  Tail norms of a signal are bounded
by (1/I_n) integral of the modulus against dv, and by the mass/I_n multiple of
the modulus at tau/lambda_n; the best constant over all weights is a covering
LP once v is discretized to grid increments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from .approximation import best_approximation
from .certificates import Certificate
from .errors import DegeneratePhiError, PreconditionError
from .orlicz import OrliczFamily, centered_norm
from .quadrature import adaptive_simpson, composite_simpson
from .signal import APPolynomial, Spectrum
from .simplex import LPInfeasibleError, solve_cover_lp
from .smoothness import ModulusCurve, PhiFunction, SincPower, SinePower


# ---------------------------------------------------------------------------
# Weight functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightFunction:
    """Nondecreasing weight on [0, tau]: closed form or grid increments."""

    tau: float
    tag: str
    grid: np.ndarray | None = None
    increments: np.ndarray | None = None
    vfun: Callable[[np.ndarray], np.ndarray] | None = None
    vprime: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("weight support must have positive length")
        if self.grid is not None:
            g = np.asarray(self.grid, dtype=float)
            w = np.asarray(self.increments, dtype=float)
            if g.ndim != 1 or g.shape != w.shape:
                raise ValueError("weight grid and increments must match")
            if g[0] != 0.0 or abs(g[-1] - self.tau) > 1e-12 * max(1.0, self.tau):
                raise ValueError("weight grid must run from 0 to tau")
            if np.any(np.diff(g) <= 0):
                raise ValueError("weight grid must be strictly increasing")
            if np.any(w < 0):
                raise ValueError("weight increments must be nonnegative")
            if w.sum() <= 0:
                raise ValueError("weight must differ from a constant")
            object.__setattr__(self, "grid", g)
            object.__setattr__(self, "increments", w)
        elif self.vfun is None or self.vprime is None:
            raise ValueError("weight needs either a grid or closed-form v and v'")

    @property
    def is_grid(self) -> bool:
        return self.grid is not None

    @property
    def total_mass(self) -> float:
        if self.is_grid:
            return float(self.increments.sum())
        return float(self.vfun(self.tau) - self.vfun(0.0))

    @staticmethod
    def one_minus_cos() -> "WeightFunction":
        return WeightFunction(math.pi, "one_minus_cos",
                              vfun=lambda u: 1.0 - np.cos(u),
                              vprime=np.sin)

    @staticmethod
    def identity(tau: float) -> "WeightFunction":
        return WeightFunction(tau, "identity",
                              vfun=lambda u: np.asarray(u, dtype=float),
                              vprime=lambda u: np.ones_like(np.asarray(u, dtype=float)))

    @staticmethod
    def power_weight(m: int, tau: float = math.pi) -> "WeightFunction":
        if m < 0:
            raise ValueError("power weight order must be nonnegative")
        return WeightFunction(tau, f"power:{m}",
                              vfun=lambda u: np.asarray(u, dtype=float) ** (m + 1),
                              vprime=lambda u: (m + 1.0) * np.asarray(u, dtype=float) ** m)

    @staticmethod
    def from_grid(grid, increments, tag: str = "grid") -> "WeightFunction":
        g = np.asarray(grid, dtype=float)
        return WeightFunction(float(g[-1]), tag, grid=g,
                              increments=np.asarray(increments, dtype=float))

    @staticmethod
    def from_file(path: str | Path) -> "WeightFunction":
        gs, ws = [], []
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 't w' pairs")
            gs.append(float(parts[0]))
            ws.append(float(parts[1]))
        return WeightFunction.from_grid(gs, ws, tag=f"grid:{Path(path).name}")

    def discretize(self, points: int) -> "WeightFunction":
        """Grid version with increments v(t_j) - v(t_{j-1}) on a uniform grid."""
        if self.is_grid:
            return self
        t = np.linspace(0.0, self.tau, points + 1)
        v = np.asarray(self.vfun(t), dtype=float)
        w = np.concatenate([[0.0], np.diff(v)])
        return WeightFunction.from_grid(t, w, tag=f"{self.tag}~{points}")


# ---------------------------------------------------------------------------
# Weighted multiplier integrals and constants
# ---------------------------------------------------------------------------

def _window(n: int, spectrum: Spectrum, k_window: int | None) -> list[int]:
    K = len(spectrum)
    if not (1 <= n <= K):
        raise ValueError(f"order n={n} outside spectrum of size {K}")
    if k_window is not None and k_window < 1:
        raise ValueError("window size must be >= 1")
    hi = K if k_window is None else min(K, n + int(k_window))
    return list(range(n, hi + 1))


def jackson_integral(n: int, phi: PhiFunction, weight: WeightFunction,
                     spectrum: Spectrum, k_window: int | None = None,
                     tol: float = 1e-10) -> tuple[float, int]:
    """Minimum over the index window of the weighted multiplier integral.

    Returns (value, argmin_k).  Grid weights use the exact jump sum; closed
    forms use adaptive Simpson at the given absolute tolerance.
    """
    ks = _window(n, spectrum, k_window)
    if not ks:
        raise ValueError("empty index window")
    lam_n = spectrum.exponent(n)
    vals = []
    for k in ks:
        ratio = spectrum.exponent(k) / lam_n
        if weight.is_grid:
            vals.append(float(np.asarray(phi(ratio * weight.grid), dtype=float)
                              @ weight.increments))
        else:
            vals.append(adaptive_simpson(
                lambda t: float(phi(ratio * t)) * float(weight.vprime(t)),
                0.0, weight.tau, tol=tol))
    best_val = min(vals)
    # exact mathematical ties happen (e.g. all odd ratios for the squared
    # sine multiplier); report the smallest index within quadrature noise
    tie = max(tol, 1e-12 * abs(best_val))
    best_k = next(k for k, v in zip(ks, vals) if v <= best_val + tie)
    return best_val, best_k


def sine_power_mean(alpha: float, x: float, tol: float = 1e-10) -> float:
    """(1/x) * integral_0^x |sin t|**alpha dt."""
    if x <= 0:
        raise ValueError("mean length must be positive")
    return adaptive_simpson(lambda t: abs(math.sin(t)) ** alpha, 0.0, x, tol=tol) / x


def km_constant(m: int, tol: float = 1e-12) -> float:
    """K(m) = (integral_0^pi u**(2m) sin u du) / (2m)!."""
    if m < 1:
        raise ValueError("order must be >= 1")
    integral = adaptive_simpson(lambda u: u ** (2 * m) * math.sin(u), 0.0, math.pi, tol=tol)
    return integral / math.factorial(2 * m)


def km_constant_closed(m: int) -> float:
    """Exact value of K(m) from the integration-by-parts recursion.

    I_N = pi**N - N (N-1) I_{N-2} with I_0 = 2, so K(m) = I_{2m} / (2m)!.
    """
    val = 2.0
    for j in range(1, m + 1):
        val = math.pi ** (2 * j) - (2 * j) * (2 * j - 1) * val
    return val / math.factorial(2 * m)


def km_constant_series(m: int) -> float:
    """Alternating series sometimes quoted for K(m).

    Disagrees with the integral definition (already at m = 1, where it gives
    -1 instead of (pi**2 - 4)/2); retained only as a diagnostic.
    """
    s = sum((-1.0) ** j * math.pi ** (2 * m - 2 * j) / math.factorial(2 * m - 2 * j)
            for j in range(m + 1))
    return s + math.pi ** (2 * m) / math.factorial(2 * m) * (-1.0) ** m


def in_lower_bound(s: float) -> float:
    """Window-uniform lower bound for the sine-weight multiplier integral."""
    if s >= 1.0:
        return 2.0
    return 1.0 + 2.0 ** (s - 1.0)


def uniform_direct_constant(alpha: float) -> float:
    """Constant 4 / (3 * 2**(alpha/2)) from the uniform integral bound 3/2."""
    return 2.0 / (2.0 ** (alpha / 2.0) * 1.5)


def uniform_direct_constant_integer(m: int) -> float:
    """Sharper constant (4 - 2 sqrt 2) / 2**(m/2) from the bound 1 + 1/sqrt 2."""
    return 2.0 / (2.0 ** (m / 2.0) * (1.0 + 1.0 / math.sqrt(2.0)))


# ---------------------------------------------------------------------------
# Sharp constant as a covering LP over grid weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SharpConstant:
    """LP optimum over grid weights plus preset-weight sanity ratios."""

    value: float
    weight: WeightFunction
    preset_ratios: Mapping[str, float]
    window: tuple[int, ...]


def _grid_ratio(A: np.ndarray, w: np.ndarray) -> float:
    cover = A @ w
    worst = float(np.min(cover))
    if worst <= 0:
        return math.inf
    return float(w.sum()) / worst


def sharp_constant_lp(n: int, phi: PhiFunction, tau: float, spectrum: Spectrum,
                      grid_points: int = 128, k_window: int | None = None) -> SharpConstant:
    """Best mass/integral ratio over grid weights: min 1'w : A w >= 1, w >= 0.

    The optimum is an upper approximation of the true sharp constant
    restricted to the index window and the grid.
    """
    if grid_points < 8:
        raise ValueError("LP grid needs at least 8 points")
    ks = _window(n, spectrum, k_window)
    lam_n = spectrum.exponent(n)
    t = np.linspace(0.0, tau, grid_points + 1)[1:]
    ratios = np.asarray([spectrum.exponent(k) / lam_n for k in ks])
    A = np.asarray(phi(np.multiply.outer(ratios, t)), dtype=float)
    if np.any(A.max(axis=1) <= 1e-14):
        raise DegeneratePhiError("phi vanishes at every grid point for some window index")
    try:
        value, w, _ = solve_cover_lp(A)
    except LPInfeasibleError as exc:
        raise DegeneratePhiError(str(exc)) from exc
    weight = WeightFunction.from_grid(np.concatenate([[0.0], t]),
                                      np.concatenate([[0.0], w]),
                                      tag="lp_optimum")

    presets = [WeightFunction.identity(tau), WeightFunction.power_weight(1, tau),
               WeightFunction.power_weight(2, tau)]
    if abs(tau - math.pi) <= 1e-12:
        presets.append(WeightFunction.one_minus_cos())
    preset_ratios = {}
    for preset in presets:
        v = np.asarray(preset.vfun(np.concatenate([[0.0], t])), dtype=float)
        preset_ratios[preset.tag] = _grid_ratio(A, np.diff(v))
    return SharpConstant(value, weight, preset_ratios, tuple(ks))


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------

def weighted_modulus_integral(curve: ModulusCurve, lam_n: float,
                              weight: WeightFunction, grid: int = 4097) -> float:
    """integral_0^tau omega(f, u/lambda_n) dv(u) from the modulus curve."""
    if weight.is_grid:
        omega = curve.running_max_on(weight.grid / lam_n)
        return float(omega @ weight.increments)
    pts = grid + 1 if grid % 2 == 0 else grid
    u = np.linspace(0.0, weight.tau, pts)
    omega = curve.running_max_on(u / lam_n)
    vals = omega * np.asarray(weight.vprime(u), dtype=float)
    return float(composite_simpson(vals, u[1] - u[0]))


def _mode_gap(curve: ModulusCurve, delta: float, mode: str) -> float:
    if mode == "refined":
        return 0.0
    if mode == "upper":
        return curve.resolution_gap(delta)
    raise ValueError(f"unknown modulus mode {mode!r}")


def verify_weighted_direct(f: APPolynomial, n: int, phi: PhiFunction,
                           weight: WeightFunction, family: OrliczFamily,
                           k_window: int | None = None, grid: int = 4097,
                           mode: str = "refined") -> list[Certificate]:
    """Tail norm vs the weighted modulus integral and its constant form."""
    lhs = best_approximation(f, n, family)
    integral_min, kmin = jackson_integral(n, phi, weight, f.spectrum, k_window)
    if integral_min <= 0:
        raise DegeneratePhiError("weighted multiplier integral vanished")
    lam_n = f.spectrum.exponent(n)
    curve = ModulusCurve(f, phi, family)
    delta = weight.tau / lam_n
    omega_int = weighted_modulus_integral(curve, lam_n, weight, grid)
    gap = _mode_gap(curve, delta, mode)
    rhs_int = (omega_int + gap * weight.total_mass) / integral_min
    rhs_const = (weight.total_mass / integral_min) * (curve.value(delta) + gap)
    common = dict(n=n, phi=phi.name, family=family.label)
    return [
        Certificate("direct_weighted_integral", lhs=lhs, rhs=rhs_int,
                    note=f"argmin_k={kmin};weight={weight.tag}", **common),
        Certificate("direct_weighted_constant", lhs=lhs, rhs=rhs_const,
                    note=f"weight={weight.tag}", **common),
    ]


def verify_uniform_direct(f: APPolynomial, n: int, alpha: float,
                          family: OrliczFamily, mode: str = "refined") -> list[Certificate]:
    """Strict n-uniform constant bounds on the tail norm."""
    if centered_norm(f, family) == 0.0:
        raise PreconditionError("signal must differ from its mean")
    lhs = best_approximation(f, n, family)
    phi = SinePower(alpha)
    curve = ModulusCurve(f, phi, family)
    delta = math.pi / f.spectrum.exponent(n)
    omega = curve.value(delta) + _mode_gap(curve, delta, mode)
    rows = [Certificate("direct_uniform", n=n, lhs=lhs,
                        rhs=uniform_direct_constant(alpha) * omega,
                        phi=phi.name, family=family.label, strict=True)]
    if float(alpha).is_integer():
        rows.append(Certificate("direct_uniform_integer", n=n, lhs=lhs,
                                rhs=uniform_direct_constant_integer(int(alpha)) * omega,
                                phi=phi.name, family=family.label, strict=True))
    return rows


def verify_mean_direct(f: APPolynomial, n: int, alpha: float, tau: float,
                       family: OrliczFamily, grid: int = 4097,
                       mode: str = "refined") -> list[Certificate]:
    """Tail norm vs the plain averaged modulus on (0, 3pi/4]."""
    if not (0.0 < tau <= 0.75 * math.pi + 1e-12):
        raise ValueError("tau must lie in (0, 3*pi/4]")
    if alpha < 1.0:
        raise ValueError("alpha must be >= 1 for the averaged bound")
    lhs = best_approximation(f, n, family)
    lam_n = f.spectrum.exponent(n)
    phi = SinePower(alpha)
    denom = 2.0 ** alpha * adaptive_simpson(
        lambda t: math.sin(0.5 * t) ** alpha, 0.0, tau, tol=1e-12)
    curve = ModulusCurve(f, phi, family)
    omega_int = weighted_modulus_integral(curve, lam_n, WeightFunction.identity(tau), grid)
    gap = _mode_gap(curve, tau / lam_n, mode)
    rhs = (omega_int + gap * tau) / denom
    return [Certificate("direct_tau_mean", n=n, lhs=lhs, rhs=rhs,
                        phi=phi.name, family=family.label, note=f"tau={tau:.12g}")]


def verify_steklov_direct(f: APPolynomial, n: int, m: int, family: OrliczFamily,
                          grid: int = 4097, mode: str = "refined") -> list[Certificate]:
    """Tail norm vs the two sliding-average modulus bounds (at tau = pi)."""
    if m < 1:
        raise ValueError("order must be >= 1")
    lhs = best_approximation(f, n, family)
    lam_n = f.spectrum.exponent(n)
    phi = SincPower(m)
    curve = ModulusCurve(f, phi, family)
    gap = _mode_gap(curve, math.pi / lam_n, mode)

    sine_int = weighted_modulus_integral(curve, lam_n, WeightFunction.one_minus_cos(), grid)
    const_sine = math.pi ** (2 * m) / (math.factorial(2 * m) * km_constant(m))
    rhs_sine = const_sine * (sine_int + gap * 2.0)

    pts = grid + 1 if grid % 2 == 0 else grid
    h = np.linspace(0.0, math.pi / lam_n, pts)
    omega = curve.running_max_on(h) + gap
    power_int = float(composite_simpson(omega * h ** m, h[1] - h[0]))
    const_power = math.pi ** (m - 1) * (2.0 * lam_n / (math.pi ** 2 - 4.0)) ** m * lam_n
    rhs_power = const_power * power_int

    common = dict(n=n, phi=phi.name, family=family.label)
    return [
        Certificate("steklov_sine_weight", lhs=lhs, rhs=rhs_sine, **common),
        Certificate("steklov_power_weight", lhs=lhs, rhs=rhs_power, **common),
    ]
