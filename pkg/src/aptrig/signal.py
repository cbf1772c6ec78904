"""Almost periodic trigonometric polynomials and their basic transforms.

A signal is a finite sum ``f(x) = sum_k A_k exp(i lambda_k x)`` over the
symmetric index set ``k in {-K, ..., K}`` with ``lambda_0 = 0`` and
``lambda_{-k} = -lambda_k``.  Only the positive exponents are stored; the
negative half is implied.  All transforms below act coefficientwise and are
exact up to float rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from .quadrature import composite_simpson

PRUNE_TOL = 1e-15
THETA_SUM_TOL = 1e-12


def sinc(t):
    """sin(t)/t with the continuous value 1 at t = 0."""
    return np.sinc(np.asarray(t, dtype=float) / np.pi)


@dataclass(frozen=True)
class Spectrum:
    """Strictly increasing positive exponents lambda_1 < ... < lambda_K."""

    exponents: tuple[float, ...]

    def __post_init__(self):
        exps = tuple(float(x) for x in self.exponents)
        object.__setattr__(self, "exponents", exps)
        arr = np.asarray(exps)
        if arr.size == 0:
            raise ValueError("spectrum must contain at least one exponent")
        if not np.all(arr > 0):
            raise ValueError("spectrum exponents must be strictly positive")
        if not np.all(np.diff(arr) > 0):
            raise ValueError("spectrum exponents must be strictly increasing")

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def top(self) -> float:
        return self.exponents[-1]

    def exponent(self, k: int) -> float:
        """lambda_k for signed k, with lambda_0 = 0 and lambda_{-k} = -lambda_k."""
        if k == 0:
            return 0.0
        if abs(k) > len(self.exponents):
            raise IndexError(f"harmonic index {k} outside spectrum of size {len(self)}")
        lam = self.exponents[abs(k) - 1]
        return lam if k > 0 else -lam

    def index_of(self, lam: float, tol: float = 1e-12) -> int | None:
        """Signed index whose exponent matches lam, or None if off-spectrum."""
        if abs(lam) <= tol:
            return 0
        arr = np.asarray(self.exponents)
        j = int(np.argmin(np.abs(arr - abs(lam))))
        if abs(arr[j] - abs(lam)) <= tol * max(1.0, abs(lam)):
            return (j + 1) if lam > 0 else -(j + 1)
        return None

    def max_gap(self) -> float:
        """Largest gap between consecutive exponents (lambda_1 counts from 0)."""
        arr = np.concatenate(([0.0], np.asarray(self.exponents)))
        return float(np.max(np.diff(arr)))


@dataclass(frozen=True)
class APPolynomial:
    """Finite trigonometric polynomial over a symmetric spectrum."""

    spectrum: Spectrum
    coeffs: Mapping[int, complex]

    def __post_init__(self):
        K = len(self.spectrum)
        clean = {}
        for k, a in self.coeffs.items():
            k = int(k)
            if abs(k) > K:
                raise ValueError(f"coefficient index {k} outside spectrum of size {K}")
            clean[k] = complex(a)
        object.__setattr__(self, "coeffs", clean)

    @property
    def size(self) -> int:
        return len(self.spectrum)

    def coefficient(self, k: int) -> complex:
        return self.coeffs.get(int(k), 0.0 + 0.0j)

    def indices(self) -> list[int]:
        return sorted(self.coeffs)

    def magnitudes(self) -> dict[int, float]:
        """|A_k| keyed by signed index, for norm computations."""
        return {k: abs(a) for k, a in self.coeffs.items()}

    def evaluate(self, x):
        """Exact pointwise sum; x may be a scalar or an ndarray."""
        x = np.asarray(x, dtype=float)
        acc = np.zeros(x.shape, dtype=complex)
        for k, a in self.coeffs.items():
            acc += a * np.exp(1j * self.spectrum.exponent(k) * x)
        return acc if acc.shape else complex(acc)

    def map_coefficients(self, fn: Callable[[int, float, complex], complex]) -> "APPolynomial":
        new = {k: fn(k, self.spectrum.exponent(k), a) for k, a in self.coeffs.items()}
        return APPolynomial(self.spectrum, new)

    def prune(self, tol: float = PRUNE_TOL) -> "APPolynomial":
        """Drop harmonic pairs with |A_k| + |A_{-k}| below tol (float hygiene)."""
        keep: dict[int, complex] = {}
        for k, a in self.coeffs.items():
            pair = abs(a) + abs(self.coeffs.get(-k, 0.0))
            if k == 0:
                if abs(a) > tol:
                    keep[k] = a
            elif pair > tol:
                keep[k] = a
        return APPolynomial(self.spectrum, keep)

    def __add__(self, other: "APPolynomial") -> "APPolynomial":
        if other.spectrum != self.spectrum:
            raise ValueError("cannot add signals with different spectra")
        keys = set(self.coeffs) | set(other.coeffs)
        return APPolynomial(self.spectrum,
                            {k: self.coefficient(k) + other.coefficient(k) for k in keys})

    def __sub__(self, other: "APPolynomial") -> "APPolynomial":
        return self + (-1.0) * other

    def __rmul__(self, c: complex) -> "APPolynomial":
        return APPolynomial(self.spectrum, {k: c * a for k, a in self.coeffs.items()})


@dataclass(frozen=True)
class ThetaCollection:
    """Difference-operator coefficients theta_0..theta_m with zero sum."""

    thetas: tuple[complex, ...]

    def __post_init__(self):
        ts = tuple(complex(t) for t in self.thetas)
        object.__setattr__(self, "thetas", ts)
        if not ts or all(abs(t) == 0.0 for t in ts):
            raise ValueError("theta collection must contain a nonzero entry")
        if abs(sum(ts)) > THETA_SUM_TOL:
            raise ValueError("theta collection must sum to zero")

    @property
    def order(self) -> int:
        return len(self.thetas) - 1

    @property
    def is_real(self) -> bool:
        return all(abs(t.imag) <= THETA_SUM_TOL for t in self.thetas)

    def multiplier(self, t):
        """sum_j theta_j exp(-i j t), vectorized over t."""
        t = np.asarray(t, dtype=float)
        acc = np.zeros(t.shape, dtype=complex)
        for j, th in enumerate(self.thetas):
            acc += th * np.exp(-1j * j * t)
        return acc if acc.shape else complex(acc)

    @staticmethod
    def classical(m: int) -> "ThetaCollection":
        """Alternating binomial collection of the order-m forward difference."""
        if m < 1:
            raise ValueError("difference order must be >= 1")
        return ThetaCollection(tuple((-1.0) ** j * math.comb(m, j) for j in range(m + 1)))


@dataclass(frozen=True)
class HarmonicMagnitudes:
    """H_nu = |A_nu| + |A_{-nu}| for nu >= 1, plus H_0 = |A_0|."""

    values: Mapping[int, float]

    def __post_init__(self):
        object.__setattr__(self, "values", {int(k): float(v) for k, v in self.values.items()})

    def __getitem__(self, nu: int) -> float:
        return self.values.get(nu, 0.0)


def evaluate(f: APPolynomial, x):
    return f.evaluate(x)


def _check_mean_args(T: float, step: float) -> None:
    if T <= 0:
        raise ValueError("averaging length T must be positive")
    if step <= 0:
        raise ValueError("quadrature step must be positive")
    if step > T / 10.0:
        raise ValueError("quadrature step must be at most T/10")


def _simpson_grid(T: float, step: float) -> tuple[np.ndarray, float]:
    n = int(np.ceil(T / step))
    n += n % 2
    return np.linspace(0.0, T, n + 1), T / n


def empirical_mean(f: APPolynomial, T: float, step: float) -> complex:
    """(1/T) * integral of f over [0, T] by fixed-step composite Simpson."""
    _check_mean_args(T, step)
    x, h = _simpson_grid(T, step)
    return composite_simpson(f.evaluate(x), h) / T


def empirical_mean_abs2(f: APPolynomial, T: float, step: float) -> float:
    """Time average of |f|^2; converges to the coefficient power sum."""
    _check_mean_args(T, step)
    x, h = _simpson_grid(T, step)
    vals = np.abs(f.evaluate(x)) ** 2
    return float(composite_simpson(vals, h).real) / T


def fourier_coefficient(f: APPolynomial, lam: float, empirical: bool = False,
                        T: float = 1e4, step: float = 0.05) -> complex:
    """Coefficient at exponent lam: exact lookup, or the averaged estimate."""
    if not empirical:
        k = f.spectrum.index_of(lam)
        return f.coefficient(k) if k is not None else 0.0 + 0.0j
    _check_mean_args(T, step)
    x, h = _simpson_grid(T, step)
    vals = f.evaluate(x) * np.exp(-1j * lam * x)
    return composite_simpson(vals, h) / T


def difference_theta(f: APPolynomial, theta: ThetaCollection, h: float) -> APPolynomial:
    """Difference operator sum_j theta_j f(. - j h), acting on coefficients."""
    return f.map_coefficients(lambda k, lam, a: a * theta.multiplier(lam * h))


def steklov(f: APPolynomial, h: float) -> APPolynomial:
    """Sliding average over windows of radius h; multiplies A_k by sinc(lambda_k h)."""
    if h <= 0:
        raise ValueError("Steklov radius must be positive")
    return f.map_coefficients(lambda k, lam, a: a * float(sinc(lam * h)))


def steklov_difference(f: APPolynomial, h: float, m: int) -> APPolynomial:
    """m-th power of (sliding average minus identity) on coefficients."""
    if h <= 0:
        raise ValueError("Steklov radius must be positive")
    if m < 1:
        raise ValueError("difference order must be >= 1")
    return f.map_coefficients(lambda k, lam, a: a * (float(sinc(lam * h)) - 1.0) ** m)


def harmonic_magnitudes(f: APPolynomial) -> HarmonicMagnitudes:
    out: dict[int, float] = {0: abs(f.coefficient(0))}
    for nu in range(1, f.size + 1):
        out[nu] = abs(f.coefficient(nu)) + abs(f.coefficient(-nu))
    return HarmonicMagnitudes(out)


# ---------------------------------------------------------------------------
# Signal files: one harmonic per line, "lambda re+ im+ re- im-",
# '#' comments, lambda strictly increasing, optional "0 re im 0 0" line
# carrying the mean coefficient.
# ---------------------------------------------------------------------------

def load_signal(path: str | Path) -> APPolynomial:
    lams: list[float] = []
    rows: list[tuple[complex, complex]] = []
    a0 = 0.0 + 0.0j
    seen_zero = False
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected 5 fields, got {len(parts)}")
        try:
            lam, rp, ip, rn, im = (float(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: non-numeric field") from exc
        if lam == 0.0:
            if seen_zero:
                raise ValueError(f"{path}:{lineno}: duplicate mean line")
            a0 = complex(rp, ip)
            seen_zero = True
            continue
        if lam < 0:
            raise ValueError(f"{path}:{lineno}: exponents must be positive")
        if lams and lam <= lams[-1]:
            raise ValueError(f"{path}:{lineno}: exponents must be strictly increasing")
        lams.append(lam)
        rows.append((complex(rp, ip), complex(rn, im)))
    if not lams and not seen_zero:
        raise ValueError(f"{path}: no harmonics found")
    if not lams:
        # pure constant: represent on a one-point placeholder spectrum
        return APPolynomial(Spectrum((1.0,)), {0: a0})
    coeffs: dict[int, complex] = {}
    if seen_zero:
        coeffs[0] = a0
    for j, (ap, an) in enumerate(rows, 1):
        coeffs[j] = ap
        coeffs[-j] = an
    return APPolynomial(Spectrum(tuple(lams)), coeffs).prune()


def save_signal(f: APPolynomial, path: str | Path) -> None:
    lines = ["# lambda re+ im+ re- im-"]
    a0 = f.coefficient(0)
    if a0 != 0:
        lines.append(f"0 {a0.real!r} {a0.imag!r} 0 0")
    for k in range(1, f.size + 1):
        ap, an = f.coefficient(k), f.coefficient(-k)
        if abs(ap) + abs(an) == 0.0:
            continue
        lam = f.spectrum.exponent(k)
        lines.append(f"{lam!r} {ap.real!r} {ap.imag!r} {an.real!r} {an.imag!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
