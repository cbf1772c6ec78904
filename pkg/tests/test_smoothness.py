import math

import numpy as np
import pytest

from aptrig import (APPolynomial, FromTheta, InvalidPhiError, ModulusCurve,
                    ModulusRequest, SincPower, SinePower,
                    Spectrum, ThetaCollection, classical_modulus,
                    difference_theta, modulus, modulus_bracket, orlicz_norm,
                    parse_phi, phi_difference_norm, phi_value, sinc,
                    steklov_difference, steklov_modulus)
from aptrig.smoothness import SINC_DIP_ARG, SINC_SLOPE_BOUND, CustomPhi
from aptrig.fixtures import random_signal, uniform_spectrum
from aptrig import extremal_function, centered_norm


def test_sine_power_values():
    phi = SinePower(1.0)
    assert phi_value(phi, math.pi) == pytest.approx(2.0)
    assert phi_value(phi, 0.0) == 0.0
    assert SinePower(2.0).sup_value == pytest.approx(4.0)
    assert SinePower(2.0).sup_argument == pytest.approx(math.pi)


def test_sinc_power_values():
    for m in (1, 2, 3):
        phi = SincPower(m)
        assert phi_value(phi, 0.0) == 0.0
        # the peak sits where tan t = t, at depth 1 - sinc there
        assert phi.sup_value == pytest.approx((1.0 - float(sinc(SINC_DIP_ARG))) ** m)
        grid = np.linspace(0.0, 2.5 * math.pi, 20001)
        assert float(np.max(phi(grid))) <= phi.sup_value + 1e-12


def test_sinc_slope_bound_holds_on_grid():
    # oracle for the packaged constant: finite differences of sinc
    t = np.linspace(0.0, 40.0, 400001)
    slopes = np.abs(np.diff(sinc(t))) / (t[1] - t[0])
    assert float(np.max(slopes)) < SINC_SLOPE_BOUND


def test_from_theta_matches_sine_power():
    grid = np.linspace(-2.0 * math.pi, 2.0 * math.pi, 10001)
    for m in (1, 2, 3):
        phi_t = FromTheta(ThetaCollection.classical(m))
        phi_s = SinePower(float(m))
        assert float(np.max(np.abs(phi_t(grid) - phi_s(grid)))) <= 1e-10


def test_from_theta_requires_real_collection():
    with pytest.raises(InvalidPhiError):
        FromTheta(ThetaCollection((1.0j, -1.0j, 0.0)))


def test_parse_phi_specs():
    assert isinstance(parse_phi("sine_power:2.0"), SinePower)
    assert isinstance(parse_phi("sinc_power:3"), SincPower)
    phi = parse_phi("theta:[1,-2,1]")
    assert isinstance(phi, FromTheta)
    with pytest.raises(InvalidPhiError):
        parse_phi("nope:1")


def test_phi_validation_catches_bad_functions():
    with pytest.raises(InvalidPhiError):
        CustomPhi(lambda t: np.maximum(np.abs(t) - 1.0, 0.0)).validate()  # flat zero run
    with pytest.raises(InvalidPhiError):
        CustomPhi(lambda t: np.sin(t)).validate()  # odd and negative
    SinePower(2.0).validate()
    SincPower(2).validate()


def test_phi_difference_norm_zero_step(l1):
    f = random_signal(uniform_spectrum(4), np.random.default_rng(0))
    assert phi_difference_norm(f, SinePower(2.0), 0.0, l1) == 0.0


def test_phi_difference_norm_extremal_closed_form(l1):
    sp = uniform_spectrum(6)
    n, beta, delta = 4, 1.0 - 0.5j, 0.25j
    f = extremal_function(n, 0.3, beta, delta, sp)
    lam_n = sp.exponent(n)
    for alpha in (1.0, 2.0, 3.0):
        for u in (0.3, 1.0, 2.2):
            val = phi_difference_norm(f, SinePower(alpha), u / lam_n, l1)
            expect = 2.0 ** (alpha / 2.0) * (abs(beta) + abs(delta)) \
                * (1.0 - math.cos(u)) ** (alpha / 2.0)
            assert val == pytest.approx(expect, rel=1e-10)


def test_phi_difference_norm_matches_difference_operator(l1):
    # oracle route: build the difference signal and take its norm
    lam, h = 1.6, 0.7
    f = APPolynomial(Spectrum((lam,)), {1: 1.0})
    theta = ThetaCollection((1.0, -1.0))
    via_phi = phi_difference_norm(f, FromTheta(theta), h, l1)
    via_op = orlicz_norm(difference_theta(f, theta, h), l1)
    assert via_phi == pytest.approx(via_op, rel=1e-12)
    assert via_phi == pytest.approx(2.0 * abs(math.sin(lam * h / 2.0)), rel=1e-12)


def test_modulus_zero_delta(l1):
    f = random_signal(uniform_spectrum(4), np.random.default_rng(1))
    assert modulus(ModulusRequest(f, SinePower(2.0), 0.0, l1)) == 0.0


def test_modulus_extremal_at_pi(l1):
    sp = uniform_spectrum(5)
    beta, delta = 2.0, 1.0j
    f = extremal_function(3, 1.0, beta, delta, sp)
    lam_n = sp.exponent(3)
    for alpha in (1.0, 2.0, 4.0):
        val = classical_modulus(f, alpha, math.pi / lam_n, l1)
        assert val == pytest.approx(2.0 ** alpha * (abs(beta) + abs(delta)), rel=1e-9)


def test_modulus_single_harmonic_brute_force(l1):
    lam = 1.3
    f = APPolynomial(Spectrum((lam,)), {1: 1.0})
    for delta in (0.4, 1.1, math.pi / lam):
        val = classical_modulus(f, 1.0, delta, l1)
        # dense independent grid oracle
        hs = np.linspace(0.0, delta, 20001)
        brute = float(np.max(2.0 * np.abs(np.sin(lam * hs / 2.0))))
        assert val == pytest.approx(2.0 * math.sin(lam * delta / 2.0), rel=1e-9)
        assert val >= brute - 1e-9


def test_modulus_monotone_in_delta(l1, rng):
    f = random_signal(uniform_spectrum(6), rng)
    curve = ModulusCurve(f, SinePower(2.0), l1)
    deltas = np.linspace(0.0, 2.0, 17)
    vals = [curve.value(float(d)) for d in deltas]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_modulus_bounded_by_sup_times_centered_norm(rng):
    from conftest import random_family
    for _ in range(5):
        fam = random_family(rng, allow_custom=False)
        f = random_signal(uniform_spectrum(5), rng)
        phi = SinePower(float(rng.uniform(0.5, 3.0)))
        delta = float(rng.uniform(0.1, 4.0))
        val = modulus(ModulusRequest(f, phi, delta, fam))
        assert val <= phi.sup_value * centered_norm(f, fam) + 1e-9


def test_modulus_homogeneity(l2, rng):
    f = random_signal(uniform_spectrum(5), rng)
    c = 2.7
    v1 = classical_modulus(c * f, 2.0, 0.8, l2)
    v2 = c * classical_modulus(f, 2.0, 0.8, l2)
    assert v1 == pytest.approx(v2, rel=1e-9)


def test_modulus_bracket_contains_value(l1, rng):
    f = random_signal(uniform_spectrum(6), rng)
    lo, hi = modulus_bracket(f, SinePower(2.0), 1.3, l1)
    assert lo <= hi
    dense = ModulusCurve(f, SinePower(2.0), l1, grid=8192).value(1.3)
    assert lo <= dense + 1e-12 <= hi + 1e-9


def test_steklov_modulus_single_harmonic(l1):
    f = APPolynomial(Spectrum((1.0,)), {1: 1.0})
    val = steklov_modulus(f, 1, math.pi, l1)
    # 1 - sinc is increasing on [0, pi], so the sup sits at the endpoint
    assert val == pytest.approx(1.0 - float(sinc(math.pi)), rel=1e-10)
    assert val == pytest.approx(1.0, rel=1e-10)
    assert steklov_modulus(f, 1, 0.0, l1) == 0.0


def test_steklov_modulus_matches_operator_route(rng, l1):
    # operator route: m-fold average-minus-identity, then the norm
    sp = uniform_spectrum(5)
    for _ in range(20):
        f = random_signal(sp, rng)
        m = int(rng.integers(1, 4))
        h = float(rng.uniform(0.05, 2.5))
        via_op = orlicz_norm(steklov_difference(f, h, m), l1)
        via_phi = phi_difference_norm(f, SincPower(m), h, l1)
        assert via_op == pytest.approx(via_phi, abs=1e-10, rel=1e-10)


def test_modulus_request_validation(l1):
    f = APPolynomial(Spectrum((1.0,)), {1: 1.0})
    with pytest.raises(ValueError):
        ModulusRequest(f, SinePower(1.0), -0.1, l1)
    with pytest.raises(ValueError):
        ModulusRequest(f, SinePower(1.0), 0.1, l1, h_grid_points=32)


def test_multiplier_identity_exact(rng, l1):
    sp = uniform_spectrum(6)
    for _ in range(10):
        f = random_signal(sp, rng)
        raw = rng.normal(size=3)
        raw[0] -= raw.sum()
        theta = ThetaCollection(tuple(raw))
        phi = FromTheta(theta)
        h = float(rng.uniform(0.0, 3.0))
        g = difference_theta(f, theta, h)
        for k in f.indices():
            lam = sp.exponent(k)
            assert abs(abs(g.coefficient(k))
                       - float(phi(lam * h)) * abs(f.coefficient(k))) <= 1e-12
