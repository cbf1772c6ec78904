"""Bundled spectra and signals used by the verification suites and tests."""
from __future__ import annotations

import numpy as np

from .approximation import extremal_function, sharpness_probe
from .signal import APPolynomial, Spectrum


def uniform_spectrum(K: int) -> Spectrum:
    """lambda_k = k."""
    return Spectrum(tuple(float(k) for k in range(1, K + 1)))


def power_spectrum(K: int, gamma: float = 1.1) -> Spectrum:
    """lambda_k = k**gamma."""
    return Spectrum(tuple(float(k) ** gamma for k in range(1, K + 1)))


def wobble_spectrum(K: int) -> Spectrum:
    """lambda_k = k + 0.3 sin k, monotonized for safety."""
    raw = np.arange(1, K + 1) + 0.3 * np.sin(np.arange(1, K + 1))
    return Spectrum(tuple(np.maximum.accumulate(raw)))


def random_signal(spectrum: Spectrum, rng: np.random.Generator,
                  support: int | None = None, scale: float = 1.0,
                  with_mean: bool = True) -> APPolynomial:
    """Random complex coefficients on a random subset of the spectrum."""
    K = len(spectrum)
    support = K if support is None else min(support, K)
    picks = rng.choice(np.arange(1, K + 1), size=support, replace=False)
    coeffs: dict[int, complex] = {}
    for k in picks:
        for idx in (int(k), -int(k)):
            if rng.uniform() < 0.85:
                coeffs[idx] = scale * complex(rng.normal(), rng.normal())
    if not any(abs(v) > 0 for v in coeffs.values()):
        coeffs[int(picks[0])] = scale * (1.0 + 0.5j)
    if with_mean and rng.uniform() < 0.5:
        coeffs[0] = scale * complex(rng.normal(), rng.normal())
    return APPolynomial(spectrum, coeffs).prune()


def planted_decay_signal(spectrum: Spectrum, r: float) -> APPolynomial:
    """Positive coefficients whose l1 tail norms are exactly lambda_n**(-r)."""
    K = len(spectrum)
    lams = np.asarray(spectrum.exponents)
    coeffs: dict[int, complex] = {}
    for nu in range(1, K):
        coeffs[nu] = complex(lams[nu - 1] ** (-r) - lams[nu] ** (-r))
    coeffs[K] = complex(lams[K - 1] ** (-r))
    return APPolynomial(spectrum, coeffs)


_BUILTIN_SEEDS = {"random1": 101, "random2": 202, "random3": 303}


def builtin_signal(name: str) -> APPolynomial:
    """Fixtures addressable as builtin:<name> in run configurations."""
    if name == "extremal":
        return extremal_function(5, 0.5 + 0.25j, 1.0 - 0.5j, 0.75 + 1.0j,
                                 uniform_spectrum(8))
    if name == "probe":
        return sharpness_probe(2, uniform_spectrum(10))
    if name == "decay":
        return planted_decay_signal(uniform_spectrum(12), 1.5)
    if name in _BUILTIN_SEEDS:
        rng = np.random.default_rng(_BUILTIN_SEEDS[name])
        return random_signal(uniform_spectrum(10), rng, support=6)
    raise ValueError(f"unknown builtin signal {name!r}")
