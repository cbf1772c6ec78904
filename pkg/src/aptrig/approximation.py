"""Partial sums, best approximation by spectral truncation, and test signals.

The distance from a signal to the set of signals with spectrum inside
(-lambda_n, lambda_n) equals the Orlicz norm of the coefficient tail
{A_k : |k| >= n}; truncation of the Fourier series attains it, so the tail
norm is used as the definition in code.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .orlicz import OrliczFamily, sequence_norm
from .signal import APPolynomial, Spectrum


def partial_sum(f: APPolynomial, n: int) -> APPolynomial:
    """Harmonics with |k| < n; n = 1 keeps only the mean coefficient."""
    if n < 1:
        raise ValueError("partial sum order must be >= 1")
    return APPolynomial(f.spectrum, {k: a for k, a in f.coeffs.items() if abs(k) < n})


def tail_magnitudes(f: APPolynomial, n: int) -> dict[int, float]:
    return {k: v for k, v in f.magnitudes().items() if abs(k) >= n}


def best_approximation(f: APPolynomial, n: int, family: OrliczFamily) -> float:
    """E_n(f): Orlicz norm of the coefficient tail {A_k : |k| >= n}."""
    if n < 1:
        raise ValueError("best approximation order must be >= 1")
    return sequence_norm(tail_magnitudes(f, n), family)


def best_approximation_at_cutoff(f: APPolynomial, lam: float, family: OrliczFamily) -> float:
    """Tail norm over harmonics with |lambda_k| >= lam (frequency threshold)."""
    mags = {k: v for k, v in f.magnitudes().items()
            if abs(f.spectrum.exponent(k)) >= lam}
    return sequence_norm(mags, family)


@dataclass(frozen=True)
class BestApproxProfile:
    """E_n for n = 1..K+1 with the matching exponents; nonincreasing in n."""

    rows: tuple[tuple[int, float, float], ...]  # (n, lambda_n, E)
    family_label: str
    signal_label: str

    def __post_init__(self):
        es = [e for _, _, e in self.rows]
        if any(b > a + 1e-12 for a, b in zip(es, es[1:])):
            raise ValueError("best approximation profile must be nonincreasing")

    def values(self) -> list[float]:
        return [e for _, _, e in self.rows]

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n", "lambda_n", "E"])
            for n, lam, e in self.rows:
                writer.writerow([n, f"{lam:.17g}", f"{e:.17g}"])


def best_approx_profile(f: APPolynomial, family: OrliczFamily,
                        signal_label: str = "signal") -> BestApproxProfile:
    K = f.size
    rows = []
    for n in range(1, K + 2):
        lam = f.spectrum.exponent(n) if n <= K else float("inf")
        rows.append((n, lam, best_approximation(f, n, family)))
    return BestApproxProfile(tuple(rows), family.label, signal_label)


def extremal_function(n: int, gamma: complex, beta: complex, delta: complex,
                      spectrum: Spectrum) -> APPolynomial:
    """Three-term signal gamma + beta e^{-i lambda_n x} + delta e^{i lambda_n x}."""
    if not (1 <= n <= len(spectrum)):
        raise ValueError(f"order {n} outside spectrum of size {len(spectrum)}")
    return APPolynomial(spectrum, {0: gamma, -n: beta, n: delta})


def sharpness_probe(k0: int, spectrum: Spectrum) -> APPolynomial:
    """Unit single harmonic at lambda_{k0}: tail norms are 1 up to k0, then 0."""
    if not (1 <= k0 <= len(spectrum)):
        raise ValueError(f"index {k0} outside spectrum of size {len(spectrum)}")
    return APPolynomial(spectrum, {k0: 1.0 + 0.0j})
