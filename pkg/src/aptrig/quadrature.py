"""Simpson quadrature: composite fixed-step and adaptive variants.

Both routines target smooth integrands.  The composite rule is used for
long-interval time averages (predictable cost, vectorizable sampling); the
adaptive rule serves short-interval weighted integrals at tight absolute
tolerances.
"""
from __future__ import annotations

from typing import Callable

import numpy as np


def composite_simpson(values: np.ndarray, step: float):
    """Integrate uniformly spaced samples; len(values) must be odd."""
    values = np.asarray(values)
    if values.ndim != 1 or len(values) < 3 or len(values) % 2 == 0:
        raise ValueError("composite_simpson needs an odd number (>=3) of samples")
    acc = values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-2:2].sum()
    return acc * (step / 3.0)


def simpson_mean(fn: Callable[[np.ndarray], np.ndarray], a: float, b: float, step: float):
    """(1/(b-a)) * integral of fn over [a, b] with a fixed-step composite rule."""
    if b <= a:
        raise ValueError("empty integration interval")
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(np.ceil((b - a) / step))
    n += n % 2
    x = np.linspace(a, b, n + 1)
    return composite_simpson(fn(x), (b - a) / n) / (b - a)


def adaptive_simpson(fn: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10, max_depth: int = 32,
                     initial_panels: int = 9) -> float:
    """Adaptive Simpson integration of a scalar function to absolute tolerance.

    The interval is pre-split into `initial_panels` panels before the dyadic
    recursion.  An odd panel count keeps periodic integrands from aligning
    their zeros with every sample point, which would stall the refinement.
    """
    if b < a:
        raise ValueError("reversed integration interval")
    if b == a:
        return 0.0

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        xm = 0.5 * (x0 + x2)
        xl = 0.5 * (x0 + xm)
        xr = 0.5 * (xm + x2)
        fl = fn(xl)
        fr = fn(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        if depth >= max_depth or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return (recurse(x0, xm, f0, fl, f1, left, eps / 2.0, depth + 1)
                + recurse(xm, x2, f1, fr, f2, right, eps / 2.0, depth + 1))

    edges = np.linspace(a, b, initial_panels + 1)
    total = 0.0
    for x0, x2 in zip(edges[:-1], edges[1:]):
        xm = 0.5 * (x0 + x2)
        f0, f1, f2 = fn(x0), fn(xm), fn(x2)
        whole = simpson(x0, x2, f0, f1, f2)
        total += recurse(x0, x2, f0, f1, f2, whole, tol / initial_panels, 0)
    return total
