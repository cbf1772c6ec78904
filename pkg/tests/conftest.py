import numpy as np
import pytest

from aptrig import (CustomTabulated, Linear, OrliczFamily, PowerScaled,
                    StepanetsPower)
from aptrig.fixtures import uniform_spectrum


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def l1():
    return OrliczFamily.l1()


@pytest.fixture
def l2():
    return OrliczFamily.lp(2.0)


@pytest.fixture
def spectrum8():
    return uniform_spectrum(8)


def lp_norm(mags: dict[int, float], p: float) -> float:
    """Closed-form lp oracle over an index->magnitude map."""
    return float(sum(abs(v) ** p for v in mags.values()) ** (1.0 / p))


def tabulated_power(c: float, p: float, u_max: float = 8.0, knots: int = 320) -> CustomTabulated:
    """Smoothly sampled convex table of c*u**p, a genuine custom member."""
    us = np.linspace(0.0, u_max, knots)
    return CustomTabulated(np.column_stack([us, c * us ** p]))


def random_family(rng: np.random.Generator, allow_custom: bool = True) -> OrliczFamily:
    """Random default member plus occasional index overrides."""
    def member():
        kinds = ["linear", "power", "stepanets"] + (["custom"] if allow_custom else [])
        kind = rng.choice(kinds)
        if kind == "linear":
            return Linear()
        if kind == "power":
            return PowerScaled(float(rng.uniform(0.3, 2.0)), float(rng.uniform(1.0, 4.0)))
        if kind == "stepanets":
            return StepanetsPower(float(rng.uniform(1.2, 5.0)))
        return tabulated_power(float(rng.uniform(0.4, 1.5)), float(rng.uniform(1.2, 2.6)))

    overrides = {}
    for k in range(-3, 4):
        if rng.uniform() < 0.2:
            overrides[k] = member()
    return OrliczFamily(member(), overrides, label="random")
