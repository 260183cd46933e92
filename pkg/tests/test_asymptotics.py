"""Symbol-side analysis of symmetric stable polynomials: the exact second
moment tau, the grid envelope checks, Laplace-style concentration of the
max coefficient of powers, and Fourier-coefficient quadrature against the
exact convolution powers."""

from fractions import Fraction

import pytest
from mpmath import mp

from hurwitzint import catalog
from hurwitzint.asymptotics import (
    envelope_checks,
    fourier_coefficient_bound,
    fourier_coefficient_quadrature,
    max_coefficient_bound_check,
    max_coefficient_of_power,
    symbol_profile,
)
from hurwitzint.polycore import int_poly, power, reverse


def c20():
    return catalog.get("c20")


# ---------------------------------------------------------------------------
# the symbol f(x) = c_M + 2 sum c_{M-d} cos(dx) and its exact second moment


def test_tau_exact_for_the_degree20_witness():
    prof = symbol_profile(c20())
    assert prof.sigma == 7167
    assert prof.tau == Fraction(26313, 7167)
    assert Fraction(7, 2) < prof.tau < Fraction(37, 10)


def test_tau_by_hand_on_a_tiny_square():
    # (z+1)^2: f(x) = 2 + 2 cos x, sigma = 4, and the Taylor expansion
    # f(x)/sigma = 1 - x^2/4 + ... pins tau = 1/4
    prof = symbol_profile(int_poly([1, 2, 1]))
    assert prof.sigma == 4
    assert prof.tau == Fraction(1, 4)


def test_symbol_normalization_and_symmetry():
    for name in ("c20", "b20", "b10", "a8"):
        p = catalog.get(name)
        prof = symbol_profile(p, grid_points=4001)
        center = len(prof.xs) // 2
        assert prof.xs[center] == 0.0
        assert abs(prof.ratios[center] - 1.0) < 1e-12  # f(0) = sigma
        # even function of x
        assert max(abs(prof.ratios - prof.ratios[::-1])) < 1e-12
        assert prof.sigma == sum(p.coeffs)


def test_symbol_profile_rejects_nonsymmetric_and_odd_inputs():
    with pytest.raises(ValueError):
        symbol_profile(int_poly([1, 2, 5, 7, 7, 6, 2, 1]))  # odd degree
    with pytest.raises(ValueError):
        symbol_profile(int_poly([1, 2, 3, 2, 2]))  # not symmetric
    with pytest.raises(ValueError):
        symbol_profile(c20(), grid_points=10)  # grid too coarse


# ---------------------------------------------------------------------------
# the proof's envelope on a dense grid


def test_envelope_holds_for_the_degree20_witness():
    env = envelope_checks(symbol_profile(c20(), grid_points=100001))
    assert env.inner_positive
    assert env.inner_gaussian
    assert env.outer_band
    assert env.positive_everywhere
    assert env.inner_margin >= 0.0
    assert 0.0 < env.outer_max_abs < 0.5


def test_envelope_discriminates():
    # a flat symbol violates both the gaussian cap and the outer band
    env = envelope_checks(symbol_profile(int_poly([1, 2, 1]), grid_points=20001))
    assert not env.inner_gaussian
    assert not env.outer_band


# ---------------------------------------------------------------------------
# Laplace concentration: max coefficient of c20^k vs sigma^k / sqrt(4 pi tau k)


def test_power_max_small_cases_exact():
    rep = max_coefficient_of_power(c20(), 1)
    assert rep.exact_max == 1525
    q2 = power(c20(), 2)
    assert max_coefficient_of_power(c20(), 2).exact_max == max(q2.coeffs)


def test_laplace_ratio_window_and_trend():
    ratios = {}
    for k in (20, 30, 40):
        rep = max_coefficient_of_power(c20(), k)
        r = float(rep.ratio)
        ratios[k] = r
        assert 0.9 <= r <= 1.1
    assert abs(ratios[40] - 1) < abs(ratios[20] - 1)


def test_power_max_rejects_zero_curvature():
    # a single monomial power has tau = 0 and no concentration statement
    with pytest.raises(ValueError):
        max_coefficient_of_power(int_poly([1]), 5)


def test_explicit_upper_bound_along_the_power_family():
    for n in range(20, 801, 20):
        rep = max_coefficient_bound_check(n)
        assert rep.holds
        assert 0 < float(rep.ratio_to_upper) < 1
        assert float(rep.lower_context) < float(rep.upper_bound)
    with pytest.raises(ValueError):
        max_coefficient_bound_check(10)
    with pytest.raises(ValueError):
        max_coefficient_bound_check(25)
    with pytest.raises(ValueError):
        max_coefficient_bound_check(820)


# ---------------------------------------------------------------------------
# Fourier quadrature against the exact convolution powers
#
# The quadrature tolerance is pinned on the normalized integrand (f/sigma)^k,
# so agreement is asserted relative to the scale sigma^k; tail coefficients
# of magnitude ~1 sit twenty orders below that scale at k = 5 and no fixed
# tolerance can resolve them to a fraction of themselves.


def test_exact_vs_quadrature_all_harmonics_small_k():
    p = c20()
    sigma = sum(p.coeffs)
    for k in (1, 2, 3):
        q = power(p, k)
        center = 10 * k
        for j in range(10 * k + 1):
            quad = fourier_coefficient_quadrature(p, k, j)
            err = abs(float(quad) - q.coeffs[center + j])
            assert err <= 1e-6 * float(sigma) ** k, (k, j)
    # at k = 1 the dominant coefficients are also pinned in true relative terms
    q1 = c20()
    for j in range(11):
        quad = fourier_coefficient_quadrature(p, 1, j)
        exact = q1.coeffs[10 + j]
        assert abs(float(quad) - exact) <= 1e-6 * exact


def test_exact_vs_quadrature_sampled_harmonics_k45():
    p = c20()
    sigma = sum(p.coeffs)
    for k in (4, 5):
        q = power(p, k)
        center = 10 * k
        for j in (0, 1, k, 5 * k, 10 * k):
            quad = fourier_coefficient_quadrature(p, k, j)
            err = abs(float(quad) - q.coeffs[center + j])
            assert err <= 1e-6 * float(sigma) ** k, (k, j)


def test_quadrature_respects_harmonic_range():
    with pytest.raises(ValueError):
        fourier_coefficient_quadrature(c20(), 2, 21)
    with pytest.raises(ValueError):
        fourier_coefficient_quadrature(c20(), 0, 0)


def test_fourier_magnitude_bound():
    p = c20()
    for k, j in ((1, 0), (2, 3), (3, 17), (4, 40)):
        rep = fourier_coefficient_bound(p, k, j)
        assert rep.holds
        assert rep.exact <= float(rep.bound) * (1 + 1e-9)
    # the bound is uniform in j, so the extreme harmonic also satisfies it
    rep = fourier_coefficient_bound(p, 2, 20)
    assert rep.holds and rep.exact == 1


def test_symmetric_products_keep_symmetric_symbols():
    # powers and reversals of symmetric polynomials stay in the domain
    p = catalog.get("a4")
    assert reverse(p).coeffs == p.coeffs
    prof = symbol_profile(power(p, 3), grid_points=2001)
    assert prof.sigma == sum(p.coeffs) ** 3
