"""Smoothness multipliers and the generalized modulus of smoothness.

A multiplier profile ``phi`` is an even, bounded, continuous, nonnegative
function with ``phi(0) = 0`` whose zero set carries no interval.  The
generalized modulus of a signal is

    omega_phi(f, delta) = sup_{0 <= h <= delta} || { phi(lambda_k h) |A_k| } ||_M,

a supremum this module reports as a refined grid maximum (a guaranteed lower
bound) together with a certified resolution gap, so that inequality checks
can pick the sound side.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidPhiError
from .orlicz import OrliczFamily, sequence_norm, sequence_norm_batch
from .signal import APPolynomial, ThetaCollection, sinc

# t* with tan(t*) = t* in (pi, 3pi/2): the first interior extremum of sinc,
# hence the maximizer of 1 - sinc on [0, t*].
SINC_DIP_ARG = float(brentq(lambda t: t * math.cos(t) - math.sin(t), math.pi + 1e-9,
                            1.5 * math.pi - 1e-9, xtol=1e-15))
SINC_DIP_DEPTH = 1.0 - math.sin(SINC_DIP_ARG) / SINC_DIP_ARG
# coarse global bound on |d sinc / dt| (true max is about 0.4361)
SINC_SLOPE_BOUND = 0.5


class PhiFunction:
    """Base class for smoothness multipliers."""

    name = "phi"
    even = True

    def __call__(self, t):
        raise NotImplementedError

    @property
    def sup_value(self) -> float:
        raise NotImplementedError

    @property
    def sup_argument(self) -> float:
        """Smallest maximizer of phi."""
        raise NotImplementedError

    def variation_bound(self, dt: float) -> float:
        """Upper bound for |phi(s) - phi(t)| whenever |s - t| <= dt."""
        raise NotImplementedError

    def is_nondecreasing_on(self, hi: float, samples: int = 2048) -> bool:
        t = np.linspace(0.0, hi, samples)
        vals = np.asarray(self(t), dtype=float)
        return bool(np.all(np.diff(vals) >= -1e-12 * max(1.0, self.sup_value)))

    def validate(self, span: float = 8.0 * math.pi, samples: int = 4096) -> None:
        t = np.linspace(0.0, span, samples)
        vals = np.asarray(self(t), dtype=float)
        if abs(vals[0]) > 1e-12:
            raise InvalidPhiError("phi(0) must be 0")
        if np.any(vals < -1e-12):
            raise InvalidPhiError("phi must be nonnegative")
        if np.any(np.abs(np.asarray(self(-t), dtype=float) - vals) > 1e-9 * max(1.0, self.sup_value)):
            raise InvalidPhiError("phi must be even")
        zero = np.abs(vals) <= 1e-14
        run = 0
        for z in zero[1:]:
            run = run + 1 if z else 0
            if run >= 3:
                raise InvalidPhiError("phi appears to vanish on an interval")


class SinePower(PhiFunction):
    """phi(t) = 2**alpha * |sin(t/2)|**alpha, the classical-order multiplier."""

    def __init__(self, alpha: float):
        if alpha <= 0:
            raise InvalidPhiError("sine power order must be positive")
        self.alpha = float(alpha)
        self.name = f"sine_power:{self.alpha:g}"

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return 2.0 ** self.alpha * np.abs(np.sin(0.5 * t)) ** self.alpha

    @property
    def sup_value(self) -> float:
        return 2.0 ** self.alpha

    @property
    def sup_argument(self) -> float:
        return math.pi

    def variation_bound(self, dt: float) -> float:
        a = self.alpha
        if a >= 1.0:
            bound = 2.0 ** (a - 1.0) * a * dt
        else:
            bound = 2.0 ** a * (0.5 * dt) ** a
        return min(bound, self.sup_value)


class SincPower(PhiFunction):
    """phi(t) = (1 - sinc t)**m, the sliding-average difference multiplier."""

    def __init__(self, m: int):
        if m < 1 or int(m) != m:
            raise InvalidPhiError("sinc power order must be a positive integer")
        self.m = int(m)
        self.name = f"sinc_power:{self.m}"

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return (1.0 - sinc(t)) ** self.m

    @property
    def sup_value(self) -> float:
        return SINC_DIP_DEPTH ** self.m

    @property
    def sup_argument(self) -> float:
        return SINC_DIP_ARG

    def variation_bound(self, dt: float) -> float:
        bound = self.m * SINC_DIP_DEPTH ** (self.m - 1) * SINC_SLOPE_BOUND * dt
        return min(bound, self.sup_value)


class FromTheta(PhiFunction):
    """phi(t) = |sum_j theta_j exp(-i j t)| for a real zero-sum collection."""

    def __init__(self, theta: ThetaCollection):
        if not theta.is_real:
            raise InvalidPhiError("multiplier evenness requires real theta collections")
        self.theta = theta
        self.name = "theta:[" + ",".join(f"{t.real:g}" for t in theta.thetas) + "]"
        # phi is 2pi-periodic; locate the smallest maximizer on one period
        grid = np.linspace(0.0, 2.0 * math.pi, 16385)
        vals = np.abs(theta.multiplier(grid))
        j = int(np.argmax(vals))
        lo, hi = grid[max(j - 1, 0)], grid[min(j + 1, len(grid) - 1)]
        fine = np.linspace(lo, hi, 4097)
        fvals = np.abs(theta.multiplier(fine))
        self._sup = float(np.max(fvals))
        self._arg = float(fine[int(np.argmax(fvals))])

    def __call__(self, t):
        return np.abs(self.theta.multiplier(t))

    @property
    def sup_value(self) -> float:
        return self._sup

    @property
    def sup_argument(self) -> float:
        return self._arg

    def variation_bound(self, dt: float) -> float:
        L = sum(j * abs(th) for j, th in enumerate(self.theta.thetas))
        return min(L * dt, self.sup_value)


class CustomPhi(PhiFunction):
    """User-supplied multiplier; undeclared bounds are estimated on a grid."""

    def __init__(self, fn, sup_value: float | None = None, sup_argument: float | None = None,
                 lipschitz: float | None = None, span: float = 8.0 * math.pi, name: str = "custom"):
        self.fn = fn
        self.name = name
        self.span = float(span)
        if sup_value is None or sup_argument is None:
            # 10x oversampled grid estimate of the peak
            grid = np.linspace(0.0, self.span, 40961)
            vals = np.asarray(fn(grid), dtype=float)
            j = int(np.argmax(vals))
            sup_value = float(vals[j]) if sup_value is None else sup_value
            sup_argument = float(grid[j]) if sup_argument is None else sup_argument
        self._sup = float(sup_value)
        self._arg = float(sup_argument)
        if lipschitz is None:
            grid = np.linspace(0.0, self.span, 8193)
            vals = np.asarray(fn(grid), dtype=float)
            lipschitz = 1.5 * float(np.max(np.abs(np.diff(vals)))) / (grid[1] - grid[0])
        self._lip = float(lipschitz)

    def __call__(self, t):
        return np.asarray(self.fn(np.asarray(t, dtype=float)), dtype=float)

    @property
    def sup_value(self) -> float:
        return self._sup

    @property
    def sup_argument(self) -> float:
        return self._arg

    def variation_bound(self, dt: float) -> float:
        # grid-estimated slope: a heuristic, not a certificate, for custom phi
        return min(self._lip * dt, self.sup_value)


def parse_phi(text: str) -> PhiFunction:
    """Parse CLI multiplier specs: sine_power:A, sinc_power:M, theta:[...]."""
    head, _, arg = text.partition(":")
    if head == "sine_power":
        return SinePower(float(arg))
    if head == "sinc_power":
        return SincPower(int(arg))
    if head == "theta":
        return FromTheta(ThetaCollection(tuple(json.loads(arg))))
    raise InvalidPhiError(f"unknown phi spec: {text!r}")


def phi_value(phi: PhiFunction, t: float) -> float:
    return float(phi(t))


def phi_difference_norm(f: APPolynomial, phi: PhiFunction, h: float,
                        family: OrliczFamily) -> float:
    """Norm of the multiplied magnitude sequence { phi(lambda_k h) |A_k| }."""
    mags = {k: float(phi(f.spectrum.exponent(k) * h)) * v
            for k, v in f.magnitudes().items()}
    return sequence_norm(mags, family)


@dataclass(frozen=True)
class ModulusRequest:
    """Inputs of one modulus evaluation."""

    f: APPolynomial
    phi: PhiFunction
    delta: float
    family: OrliczFamily
    h_grid_points: int = 512

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        if self.h_grid_points < 64:
            raise ValueError("modulus grid needs at least 64 points")


class ModulusCurve:
    """Shared sample cache for omega_phi(f, .) under one (f, phi, family).

    Every evaluation adds its grid to the cache, so values reported at
    nested deltas are nondecreasing by construction.
    """

    def __init__(self, f: APPolynomial, phi: PhiFunction, family: OrliczFamily,
                 grid: int = 512, refine_iters: int = 40):
        self.f = f
        self.phi = phi
        self.family = family
        self.grid = int(grid)
        self.refine_iters = int(refine_iters)
        self._indices = sorted(f.magnitudes())
        self._mags = np.asarray([f.magnitudes()[k] for k in self._indices])
        self._lams = np.asarray([f.spectrum.exponent(k) for k in self._indices])
        self._hs = np.asarray([0.0])
        self._vals = np.asarray([0.0])
        mags0 = {k: v for k, v in f.magnitudes().items() if k != 0}
        self._norm0 = sequence_norm(mags0, family)
        # the resolution gap scales with the largest exponent actually present
        active = [abs(f.spectrum.exponent(k)) for k, v in mags0.items() if v > 0]
        self._lam_max = max(active, default=0.0)

    def _norm_batch(self, hs: np.ndarray) -> np.ndarray:
        if len(self._indices) == 0:
            return np.zeros(len(hs))
        weights = np.asarray(self.phi(np.multiply.outer(hs, self._lams)), dtype=float)
        return sequence_norm_batch(self._indices, weights * self._mags, self.family)

    def difference_norm(self, h: float) -> float:
        return float(self._norm_batch(np.asarray([abs(h)]))[0])

    def _absorb(self, hs: np.ndarray, vals: np.ndarray) -> None:
        allh = np.concatenate([self._hs, hs])
        allv = np.concatenate([self._vals, vals])
        order = np.argsort(allh, kind="stable")
        allh, allv = allh[order], allv[order]
        keep = np.concatenate([[True], np.diff(allh) > 0])
        self._hs, self._vals = allh[keep], allv[keep]

    def ensure(self, delta: float) -> None:
        if delta < 0:
            raise ValueError("delta must be nonnegative")
        if delta == 0.0:
            return
        hs = np.linspace(0.0, delta, self.grid)
        vals = self._norm_batch(hs)
        self._absorb(hs, vals)
        self._refine(delta)

    def _refine(self, delta: float) -> None:
        sel = self._hs <= delta
        if sel.sum() < 3:
            return
        hs, vals = self._hs[sel], self._vals[sel]
        j = int(np.argmax(vals))
        lo = hs[max(j - 1, 0)]
        hi = hs[min(j + 1, len(hs) - 1)]
        if hi <= lo:
            return
        r = (math.sqrt(5.0) - 1.0) / 2.0
        x1 = hi - r * (hi - lo)
        x2 = lo + r * (hi - lo)
        new_h, new_v = [], []

        def ev(x: float) -> float:
            v = float(self._norm_batch(np.asarray([x]))[0])
            new_h.append(x)
            new_v.append(v)
            return v

        f1, f2 = ev(x1), ev(x2)
        for _ in range(self.refine_iters):
            if f1 > f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - r * (hi - lo)
                f1 = ev(x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + r * (hi - lo)
                f2 = ev(x2)
        self._absorb(np.asarray(new_h), np.asarray(new_v))

    def value(self, delta: float) -> float:
        """Refined grid supremum: a lower bound of the true modulus."""
        self.ensure(delta)
        sel = self._hs <= delta
        return float(np.max(self._vals[sel])) if sel.any() else 0.0

    def resolution_gap(self, delta: float) -> float:
        """Certified bound on the sup lost between adjacent samples."""
        if delta == 0.0 or self._norm0 == 0.0:
            return 0.0
        self.ensure(delta)
        sel = self._hs <= delta
        hs = self._hs[sel]
        spacing = float(np.max(np.diff(hs))) if len(hs) > 1 else delta
        spacing = max(spacing, delta - hs[-1])
        return self.phi.variation_bound(self._lam_max * spacing * 0.5) * self._norm0

    def bracket(self, delta: float) -> tuple[float, float]:
        lo = self.value(delta)
        return lo, lo + self.resolution_gap(delta)

    def running_max_on(self, h_grid: np.ndarray) -> np.ndarray:
        """Modulus values at each point of a sorted nonnegative h grid."""
        h_grid = np.asarray(h_grid, dtype=float)
        vals = self._norm_batch(h_grid)
        self._absorb(h_grid, vals)
        if h_grid.size:
            self._refine(float(h_grid[-1]))
        pos = np.searchsorted(self._hs, h_grid, side="right")
        cummax = np.maximum.accumulate(self._vals)
        return np.where(pos > 0, cummax[np.maximum(pos - 1, 0)], 0.0)


def modulus(request: ModulusRequest) -> float:
    """omega_phi(f, delta): refined grid supremum over |h| <= delta."""
    curve = ModulusCurve(request.f, request.phi, request.family,
                         grid=request.h_grid_points)
    return curve.value(request.delta)


def modulus_bracket(f: APPolynomial, phi: PhiFunction, delta: float,
                    family: OrliczFamily, grid: int = 512) -> tuple[float, float]:
    """(lower, upper) enclosure of the modulus at one delta."""
    return ModulusCurve(f, phi, family, grid=grid).bracket(delta)


def classical_modulus(f: APPolynomial, m: float, delta: float,
                      family: OrliczFamily) -> float:
    """Classical order-m modulus via the sine-power multiplier."""
    return modulus(ModulusRequest(f, SinePower(m), delta, family))


def steklov_modulus(f: APPolynomial, m: int, delta: float,
                    family: OrliczFamily) -> float:
    """Sliding-average modulus via the sinc-power multiplier."""
    return modulus(ModulusRequest(f, SincPower(m), delta, family))
