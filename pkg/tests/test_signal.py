import math

import numpy as np
import pytest

from aptrig import (APPolynomial, Spectrum, ThetaCollection, difference_theta,
                    empirical_mean, empirical_mean_abs2, evaluate,
                    fourier_coefficient, harmonic_magnitudes, load_signal,
                    save_signal, sinc, steklov, steklov_difference)
from aptrig.fixtures import random_signal, uniform_spectrum
from aptrig.quadrature import adaptive_simpson


def unit_harmonic(lam=1.0):
    return APPolynomial(Spectrum((lam,)), {1: 1.0})


def test_spectrum_validation():
    with pytest.raises(ValueError):
        Spectrum((2.0, 1.0))
    with pytest.raises(ValueError):
        Spectrum((-1.0, 2.0))
    sp = Spectrum((0.5, 1.5))
    assert sp.exponent(0) == 0.0
    assert sp.exponent(-2) == -1.5
    assert sp.index_of(1.5) == 2
    assert sp.index_of(-0.5) == -1
    assert sp.index_of(0.77) is None


def test_evaluate_unit_harmonic_at_origin():
    assert evaluate(unit_harmonic(), 0.0) == pytest.approx(1.0)


def test_evaluate_zero_signal():
    z = APPolynomial(Spectrum((1.0,)), {})
    assert evaluate(z, 1.234) == 0.0


def test_evaluate_three_term_at_origin():
    sp = uniform_spectrum(4)
    g, b, d = 0.3 + 0.1j, -1.0 + 2.0j, 0.5 - 0.25j
    f = APPolynomial(sp, {0: g, -3: b, 3: d})
    assert evaluate(f, 0.0) == pytest.approx(g + b + d)


def test_empirical_mean_constant():
    f = APPolynomial(Spectrum((1.0,)), {0: 1.0})
    assert abs(empirical_mean(f, 100.0, 0.05) - 1.0) < 1e-10


def closed_form_mean(f: APPolynomial, T: float) -> complex:
    """Oracle: (1/T) integral of each harmonic is (e^{i lam T} - 1)/(i lam T)."""
    total = 0.0 + 0.0j
    for k, a in f.coeffs.items():
        lam = f.spectrum.exponent(k)
        if lam == 0.0:
            total += a
        else:
            total += a * (np.exp(1j * lam * T) - 1.0) / (1j * lam * T)
    return total


def test_empirical_mean_single_harmonic():
    f = unit_harmonic()
    T = 2.0 * math.pi * 1000.0
    val = empirical_mean(f, T, 0.05)
    assert abs(val - closed_form_mean(f, T)) < 1e-6
    assert abs(val) < 1e-3


def test_empirical_mean_offset_harmonic():
    sp = Spectrum((2.0,))
    f = APPolynomial(sp, {0: 3.0, 1: 1.0})
    val = empirical_mean(f, 1e4, 0.05)
    assert abs(val - 3.0) < 1e-3
    assert abs(val - closed_form_mean(f, 1e4)) < 1e-6


def test_empirical_mean_argument_errors():
    f = unit_harmonic()
    with pytest.raises(ValueError):
        empirical_mean(f, -1.0, 0.01)
    with pytest.raises(ValueError):
        empirical_mean(f, 10.0, 0.0)
    with pytest.raises(ValueError):
        empirical_mean(f, 10.0, 2.0)  # step above T/10


def test_fourier_coefficient_lookup_and_off_spectrum():
    f = APPolynomial(Spectrum((2.0,)), {1: 5.0})
    assert fourier_coefficient(f, 2.0) == pytest.approx(5.0)
    assert fourier_coefficient(f, 3.0) == 0.0
    assert fourier_coefficient(f, -2.0) == 0.0


def test_fourier_coefficient_empirical():
    f = APPolynomial(Spectrum((2.0,)), {1: 5.0})
    val = fourier_coefficient(f, 2.0, empirical=True, T=1e4, step=0.05)
    assert abs(val - 5.0) < 1e-3


def test_fourier_coefficient_empirical_matches_exact_on_random_signal(rng):
    f = random_signal(uniform_spectrum(5), rng, support=5)
    T = 1e4
    for k in f.indices():
        lam = f.spectrum.exponent(k)
        est = fourier_coefficient(f, lam, empirical=True, T=T, step=0.05)
        # averaging oracle: every other harmonic contributes at most 2/(gap*T)
        bound = sum(2.0 * abs(a) / (abs(f.spectrum.exponent(j) - lam) * T)
                    for j, a in f.coeffs.items() if j != k) + 1e-6
        assert abs(est - f.coefficient(k)) <= bound


def test_difference_theta_single_harmonic_algebra(rng):
    theta = ThetaCollection((1.0, -1.0))
    lam, h = 1.7, 0.33
    f = APPolynomial(Spectrum((lam,)), {1: 1.0})
    g = difference_theta(f, theta, h)
    assert g.coefficient(1) == pytest.approx(1.0 - np.exp(-1j * lam * h))


def test_difference_theta_zero_step():
    theta = ThetaCollection((1.0, -2.0, 1.0))
    f = APPolynomial(Spectrum((1.0, 2.5)), {1: 2.0, -2: 1.0j})
    g = difference_theta(f, theta, 0.0)
    assert all(abs(a) < 1e-12 for a in g.coeffs.values())


def test_difference_theta_multiplier_identity(rng):
    sp = uniform_spectrum(6)
    for _ in range(20):
        f = random_signal(sp, rng)
        raw = rng.normal(size=4) + 1j * rng.normal(size=4)
        raw[0] -= raw.sum()
        theta = ThetaCollection(tuple(raw))
        h = float(rng.uniform(-2.0, 2.0))
        g = difference_theta(f, theta, h)
        for k in f.indices():
            lam = sp.exponent(k)
            expect = abs(f.coefficient(k)) * abs(theta.multiplier(lam * h))
            assert abs(abs(g.coefficient(k)) - expect) <= 1e-12 * max(1.0, expect)


def test_theta_collection_validation():
    with pytest.raises(ValueError):
        ThetaCollection((1.0, -0.5))
    with pytest.raises(ValueError):
        ThetaCollection((0.0, 0.0))
    assert ThetaCollection.classical(2).thetas == (1.0, -2.0, 1.0)


def test_steklov_constant_unchanged():
    f = APPolynomial(Spectrum((1.0,)), {0: 2.5})
    assert steklov(f, 0.7).coefficient(0) == pytest.approx(2.5)


def test_steklov_zero_at_pi():
    f = unit_harmonic()
    assert abs(steklov(f, math.pi).coefficient(1)) < 1e-15


def test_steklov_half_pi_coefficient():
    f = unit_harmonic()
    assert steklov(f, math.pi / 2).coefficient(1) == pytest.approx(2.0 / math.pi)


def test_steklov_matches_direct_integration(rng):
    # oracle: (1/2h) integral_{t-h}^{t+h} f(u) du computed by quadrature
    sp = Spectrum((1.0, 2.3))
    f = APPolynomial(sp, {1: 1.0 + 0.5j, -2: 0.75})
    h, t = 0.8, 0.7
    smoothed = steklov(f, h)
    re = adaptive_simpson(lambda u: f.evaluate(u).real, t - h, t + h, tol=1e-12)
    im = adaptive_simpson(lambda u: f.evaluate(u).imag, t - h, t + h, tol=1e-12)
    assert abs(smoothed.evaluate(t) - (re + 1j * im) / (2 * h)) < 1e-10


def test_steklov_difference_small_h_vanishes():
    f = unit_harmonic()
    val = steklov_difference(f, 1e-6, 1).coefficient(1)
    assert abs(val) < 1e-9


def test_steklov_difference_pi_second_order():
    f = unit_harmonic()
    assert steklov_difference(f, math.pi, 2).coefficient(1) == pytest.approx(1.0)


def test_steklov_difference_constant_is_zero():
    f = APPolynomial(Spectrum((1.0,)), {0: 4.0})
    for m in (1, 2, 3):
        assert steklov_difference(f, 0.5, m).coefficient(0) == 0.0


def test_steklov_difference_composition(rng):
    sp = uniform_spectrum(5)
    f = random_signal(sp, rng)
    h, m = 0.43, 3
    direct = steklov_difference(f, h, m)
    composed = f
    for _ in range(m):
        composed = steklov_difference(composed, h, 1)
    for k in f.indices():
        assert abs(direct.coefficient(k) - composed.coefficient(k)) <= 1e-12


def test_operations_are_linear(rng):
    sp = uniform_spectrum(4)
    f = random_signal(sp, rng)
    g = random_signal(sp, rng)
    c = 2.0 - 1.5j
    theta = ThetaCollection.classical(2)
    h = 0.37
    lhs = difference_theta(c * f + g, theta, h)
    rhs = c * difference_theta(f, theta, h) + difference_theta(g, theta, h)
    for k in set(f.indices()) | set(g.indices()):
        assert abs(lhs.coefficient(k) - rhs.coefficient(k)) <= 1e-12
    lhs = steklov(c * f + g, h)
    rhs = c * steklov(f, h) + steklov(g, h)
    for k in set(f.indices()) | set(g.indices()):
        assert abs(lhs.coefficient(k) - rhs.coefficient(k)) <= 1e-12


def test_harmonic_magnitudes_three_term():
    sp = uniform_spectrum(4)
    f = APPolynomial(sp, {0: 1.0, -3: 2.0j, 3: 1.0 - 1.0j})
    H = harmonic_magnitudes(f)
    assert H[3] == pytest.approx(2.0 + math.sqrt(2.0))
    assert H[1] == 0.0 and H[2] == 0.0 and H[4] == 0.0


def test_harmonic_magnitudes_zero_and_pythagorean():
    sp = Spectrum((1.0,))
    assert all(v == 0 for v in harmonic_magnitudes(APPolynomial(sp, {})).values.values())
    f = APPolynomial(sp, {1: 3.0 + 4.0j})
    assert harmonic_magnitudes(f)[1] == pytest.approx(5.0)


def test_parseval_time_average(rng):
    for _ in range(3):
        f = random_signal(uniform_spectrum(5), rng, support=5, scale=0.4)
        power = sum(abs(a) ** 2 for a in f.coeffs.values())
        est = empirical_mean_abs2(f, 1e4, 0.05)
        assert abs(est - power) < 1e-3


def test_sinc_values():
    assert sinc(0.0) == pytest.approx(1.0)
    assert abs(sinc(math.pi)) < 1e-15
    assert sinc(math.pi / 2) == pytest.approx(2.0 / math.pi)


def test_signal_file_roundtrip(tmp_path, rng):
    f = random_signal(uniform_spectrum(6), rng)
    path = tmp_path / "sig.txt"
    save_signal(f, path)
    g = load_signal(path)
    assert g.spectrum.exponents == tuple(
        f.spectrum.exponent(k) for k in range(1, f.size + 1)
        if abs(f.coefficient(k)) + abs(f.coefficient(-k)) > 0)
    for k in g.indices():
        lam = g.spectrum.exponent(k)
        assert g.coefficient(k) == pytest.approx(
            f.coefficient(f.spectrum.index_of(lam)), abs=1e-15)


def test_signal_file_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1.0 1 0 0\n")  # four fields
    with pytest.raises(ValueError):
        load_signal(bad)
    bad.write_text("2.0 1 0 0 0\n1.0 1 0 0 0\n")  # decreasing exponents
    with pytest.raises(ValueError):
        load_signal(bad)
    bad.write_text("# only comments\n")
    with pytest.raises(ValueError):
        load_signal(bad)


def test_prune_drops_noise():
    sp = Spectrum((1.0, 2.0))
    f = APPolynomial(sp, {1: 1e-20, -1: 0.0, 2: 1.0})
    g = f.prune()
    assert g.indices() == [2]
