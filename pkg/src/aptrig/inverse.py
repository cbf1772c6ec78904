"""Inverse bounds: moduli controlled by weighted sums of tail norms.

For a multiplier phi that is nondecreasing up to its smallest maximizer
tau, the modulus at tau/lambda_n is bounded by the telescoping sum of
phi-increments against the best-approximation sequence.  The sine-power
case sharpens to the power-difference sum with the pi**alpha constant,
which is asymptotically exact on single-harmonic probes.  A majorant class
check built on these bounds reports finite-range sup-ratios only; big-O
claims are never decided from finite data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .approximation import best_approximation
from .certificates import Certificate
from .errors import InvalidPhiError, SpectrumGapError
from .orlicz import OrliczFamily
from .signal import APPolynomial, Spectrum
from .smoothness import ModulusCurve, PhiFunction, SinePower


# ---------------------------------------------------------------------------
# Majorants
# ---------------------------------------------------------------------------

class Majorant:
    """Continuous nondecreasing omega on [0, 1] with omega(0) = 0, positive off 0."""

    def __call__(self, t):
        raise NotImplementedError

    label = "majorant"


class PowerLaw(Majorant):
    def __init__(self, r: float):
        if r <= 0:
            raise ValueError("power-law exponent must be positive")
        self.r = float(r)
        self.label = f"power:{self.r:g}"

    def __call__(self, t):
        return np.asarray(t, dtype=float) ** self.r


class TabulatedMajorant(Majorant):
    def __init__(self, points: Sequence[Sequence[float]]):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("tabulated majorant needs >= 2 (t, omega) pairs")
        ts, ws = pts[:, 0], pts[:, 1]
        if ts[0] != 0.0 or abs(ts[-1] - 1.0) > 1e-12:
            raise ValueError("tabulated majorant must cover [0, 1]")
        if ws[0] != 0.0:
            raise ValueError("majorant must vanish at 0")
        if np.any(np.diff(ts) <= 0) or np.any(np.diff(ws) < 0):
            raise ValueError("majorant must be nondecreasing on an increasing grid")
        if np.any(ws[1:] <= 0):
            raise ValueError("majorant must be positive away from 0")
        self.ts, self.ws = ts, ws
        self.label = "tabulated"

    def __call__(self, t):
        return np.interp(np.asarray(t, dtype=float), self.ts, self.ws)


def parse_majorant(text: str) -> Majorant:
    head, _, arg = text.partition(":")
    if head == "power":
        return PowerLaw(float(arg))
    raise ValueError(f"unknown majorant spec: {text!r}")


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------

def _tail_norms(f: APPolynomial, n: int, family: OrliczFamily) -> np.ndarray:
    return np.asarray([best_approximation(f, nu, family) for nu in range(1, n + 1)])


def inverse_bound_phi(f: APPolynomial, n: int, phi: PhiFunction,
                      family: OrliczFamily) -> float:
    """Telescoping bound sum_nu (phi increments at tau lambda_nu / lambda_n) E_nu."""
    tau = phi.sup_argument
    if not phi.is_nondecreasing_on(tau):
        raise InvalidPhiError("phi must be nondecreasing up to its maximizer")
    lam_n = f.spectrum.exponent(n)
    lams = np.asarray([f.spectrum.exponent(nu) for nu in range(0, n + 1)])
    vals = np.asarray(phi(tau * lams / lam_n), dtype=float)
    increments = np.diff(vals)
    return float(increments @ _tail_norms(f, n, family))


def inverse_bound_power(f: APPolynomial, n: int, alpha: float,
                        family: OrliczFamily) -> float:
    """(pi/lambda_n)**alpha * sum_nu (lambda_nu**alpha - lambda_{nu-1}**alpha) E_nu."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    lam_n = f.spectrum.exponent(n)
    lams = np.asarray([f.spectrum.exponent(nu) for nu in range(0, n + 1)])
    increments = np.diff(lams ** alpha)
    return (math.pi / lam_n) ** alpha * float(increments @ _tail_norms(f, n, family))


@dataclass(frozen=True)
class GapFormBounds:
    """Derivative-form inverse bounds with and without the uniform-gap constant."""

    direct: float        # alpha (pi/lambda_n)**alpha sum lambda**(alpha-1) dlambda E
    uniform_gap: float   # C alpha (pi/lambda_n)**alpha sum lambda**(alpha-1) E
    legacy: float        # same as direct with the older (2 pi)**alpha constant


def inverse_bound_gap(f: APPolynomial, n: int, alpha: float, family: OrliczFamily,
                      C: float) -> GapFormBounds:
    """Corollary-style sums; requires spectrum gaps bounded by C."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if C <= 0:
        raise ValueError("gap constant must be positive")
    gap = f.spectrum.max_gap()
    if gap > C + 1e-12:
        raise SpectrumGapError(f"spectrum gap {gap:.6g} exceeds declared bound {C:.6g}")
    lam_n = f.spectrum.exponent(n)
    lams = np.asarray([f.spectrum.exponent(nu) for nu in range(0, n + 1)])
    E = _tail_norms(f, n, family)
    terms = lams[1:] ** (alpha - 1.0) * np.diff(lams) * E
    direct = alpha * (math.pi / lam_n) ** alpha * float(terms.sum())
    uniform = C * alpha * (math.pi / lam_n) ** alpha * float(
        (lams[1:] ** (alpha - 1.0) * E).sum())
    legacy = alpha * (2.0 * math.pi / lam_n) ** alpha * float(terms.sum())
    return GapFormBounds(direct, uniform, legacy)


def verify_inverse(f: APPolynomial, n: int, family: OrliczFamily,
                   alpha: float | None = None, phi: PhiFunction | None = None,
                   gap_constant: float | None = None,
                   mode: str = "refined") -> list[Certificate]:
    """Modulus against every applicable inverse bound.

    The general bound is an exact equality on single-harmonic probes, so the
    default uses the refined modulus value; the certified enclosure width is
    recorded in each row's note.
    """
    if (alpha is None) == (phi is None):
        raise ValueError("specify exactly one of alpha or phi")
    use_phi = phi if phi is not None else SinePower(alpha)
    lam_n = f.spectrum.exponent(n)
    curve = ModulusCurve(f, use_phi, family)
    delta = use_phi.sup_argument / lam_n
    gap = curve.resolution_gap(delta)
    lhs = curve.value(delta) + (gap if mode == "upper" else 0.0)
    note = f"enclosure_gap={gap:.3e}"
    rows = [Certificate("inverse_phi", n=n, lhs=lhs,
                        rhs=inverse_bound_phi(f, n, use_phi, family),
                        phi=use_phi.name, family=family.label, note=note)]
    if alpha is None:
        return rows
    rows.append(Certificate("inverse_power", n=n, lhs=lhs,
                            rhs=inverse_bound_power(f, n, alpha, family),
                            phi=use_phi.name, family=family.label, note=note))
    C = gap_constant if gap_constant is not None else f.spectrum.max_gap()
    bounds = inverse_bound_gap(f, n, alpha, family, C)
    rows.append(Certificate("inverse_gap_direct", n=n, lhs=lhs, rhs=bounds.direct,
                            phi=use_phi.name, family=family.label, note=note))
    rows.append(Certificate("inverse_gap_uniform", n=n, lhs=lhs, rhs=bounds.uniform_gap,
                            phi=use_phi.name, family=family.label,
                            note=f"C={C:.12g};{note}"))
    return rows


# ---------------------------------------------------------------------------
# Sharpness of the pi**alpha constant
# ---------------------------------------------------------------------------

def sharpness_ratio_scan(k0: int, alpha: float, family: OrliczFamily,
                         n_list: Sequence[int], spectrum: Spectrum) -> list[tuple[int, float]]:
    """lhs/rhs ratios for the single-harmonic probe at lambda_{k0}.

    For the probe, the modulus at pi/lambda_n is 2**alpha |sin(pi lambda_k0 /
    (2 lambda_n))|**alpha and the power-difference bound telescopes to
    (pi lambda_k0 / lambda_n)**alpha, so the ratio has the closed form below;
    it increases to 1 along n, witnessing that the constant cannot shrink.
    """
    out = []
    lam_k0 = spectrum.exponent(k0)
    for n in n_list:
        if not (k0 <= n <= len(spectrum)):
            raise ValueError("scan orders must satisfy k0 <= n <= K")
        lam_n = spectrum.exponent(n)
        lhs = 2.0 ** alpha * abs(math.sin(math.pi * lam_k0 / (2.0 * lam_n))) ** alpha
        rhs = (math.pi * lam_k0 / lam_n) ** alpha
        out.append((int(n), lhs / rhs))
    return out


# ---------------------------------------------------------------------------
# Majorant classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BariCheck:
    """Finite-range evidence for the partial-sum growth condition."""

    bounded: bool
    sup_ratio: float
    ratios: tuple[float, ...]
    note: str = ("stabilization heuristic: last-quartile max <= 1.05 * "
                 "last-quartile median; finite-range evidence only")


def bari_condition_check(omega: Majorant, spectrum: Spectrum, s: float,
                         n_max: int) -> BariCheck:
    """Ratios of sum_{v<=n} lambda_v**(s-1) omega(1/lambda_v) to its target scale."""
    if s <= 0:
        raise ValueError("growth exponent must be positive")
    n_max = min(int(n_max), len(spectrum))
    lams = np.asarray(spectrum.exponents[:n_max])
    terms = lams ** (s - 1.0) * np.asarray(omega(1.0 / lams), dtype=float)
    partial = np.cumsum(terms)
    scale = lams ** s * np.asarray(omega(1.0 / lams), dtype=float)
    ratios = partial / scale
    q = max(1, len(ratios) // 4)
    tail = ratios[-q:]
    stabilized = bool(np.max(tail) <= 1.05 * np.median(tail))
    return BariCheck(stabilized, float(np.max(ratios)), tuple(float(r) for r in ratios))


@dataclass(frozen=True)
class ClassMembershipReport:
    """Finite-range sup-ratios for a smoothness-class membership question."""

    class_label: str
    direct_ratios: tuple[tuple[int, float], ...]    # (n, E_n / omega(1/lambda_n))
    modulus_ratios: tuple[tuple[float, float], ...]  # (delta, omega_alpha / omega)
    sup_direct: float
    sup_modulus: float
    direct_bounded: bool | None
    modulus_bounded: bool | None
    note: str = "finite-range evidence; asymptotic claims are not decided"


def class_membership_report(f: APPolynomial, alpha: float, omega: Majorant,
                            family: OrliczFamily, n_max: int,
                            bound_constant: float | None = None,
                            delta_points: int = 24) -> ClassMembershipReport:
    """Sup-ratios linking tail-norm decay and modulus growth for one signal."""
    n_max = min(int(n_max), f.size)
    phi = SinePower(alpha)
    curve = ModulusCurve(f, phi, family)
    direct = []
    for n in range(1, n_max + 1):
        lam = f.spectrum.exponent(n)
        direct.append((n, best_approximation(f, n, family) / float(omega(1.0 / lam))))
    deltas = np.geomspace(1.0 / f.spectrum.top, 1.0, delta_points)
    mod = [(float(d), curve.value(float(d)) / float(omega(d))) for d in deltas]
    sup_d = max((r for _, r in direct), default=0.0)
    sup_m = max((r for _, r in mod), default=0.0)
    if isinstance(omega, PowerLaw):
        label = f"power-majorant class (alpha={alpha:g}, r={omega.r:g})"
    else:
        label = f"majorant class (alpha={alpha:g}, {omega.label})"
    return ClassMembershipReport(
        label, tuple(direct), tuple(mod), sup_d, sup_m,
        None if bound_constant is None else sup_d <= bound_constant,
        None if bound_constant is None else sup_m <= bound_constant)
