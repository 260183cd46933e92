"""Exact Hurwitz certification and numeric root finding.

Oracles:
  * quadratic/cubic closed-form criteria over full small boxes,
  * numpy.roots cross-check for the Aberth solver,
  * the integer (fraction-free) Routh scheme against the rational one.
"""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from hurwitzint import catalog
from hurwitzint.constructors import mobius_ell
from hurwitzint.polycore import int_poly, multiply, power, rat_poly, reverse
from hurwitzint.stability import (
    MAX_ROOTFIND_DEGREE,
    StabilityReport,
    Verdict,
    _routh_verdict_fraction,
    _routh_verdict_int,
    find_zeros,
    is_hurwitz_exact,
    spectral_abscissa,
    stability_oracle_check,
)


def rand_coeffs(rng, degree, hi):
    c = [rng.randint(1, hi) for _ in range(degree + 1)]
    return c


def test_degree_one_and_two():
    assert is_hurwitz_exact(int_poly([1, 1])) is Verdict.STABLE
    assert is_hurwitz_exact(int_poly([3, 7])) is Verdict.STABLE
    # every monic-positive quadratic is stable
    for b, c in itertools.product(range(1, 10), repeat=2):
        assert is_hurwitz_exact(int_poly([1, b, c])) is Verdict.STABLE


def test_positive_coefficients_required():
    assert is_hurwitz_exact(int_poly([1, 0, 1])) is Verdict.UNSTABLE
    assert is_hurwitz_exact(int_poly([1, 2, -1, 1])) is Verdict.UNSTABLE
    assert is_hurwitz_exact(int_poly([1, 1, 1, 0])) is Verdict.UNSTABLE
    with pytest.raises(ValueError):
        is_hurwitz_exact(int_poly([-1, -1]))
    with pytest.raises(ValueError):
        is_hurwitz_exact(int_poly([5]))


def test_cubic_closed_form_oracle():
    # p3 z^3 + p2 z^2 + p1 z + p0 with positive coefficients is stable
    # iff p2*p1 > p3*p0.
    for c in itertools.product(range(1, 4), repeat=4):
        p3, p2, p1, p0 = c
        want = Verdict.STABLE if p2 * p1 > p3 * p0 else (
            Verdict.BOUNDARY if p2 * p1 == p3 * p0 else Verdict.UNSTABLE
        )
        assert is_hurwitz_exact(int_poly(list(c))) is want, c
    rng = random.Random(33)
    for _ in range(2000):
        c = rand_coeffs(rng, 3, 30)
        p3, p2, p1, p0 = c
        d = p2 * p1 - p3 * p0
        want = Verdict.STABLE if d > 0 else (Verdict.BOUNDARY if d == 0 else Verdict.UNSTABLE)
        assert is_hurwitz_exact(int_poly(c)) is want, c


def test_boundary_detection_is_exact():
    assert is_hurwitz_exact(int_poly([1, 1, 1, 1])) is Verdict.BOUNDARY  # (z+1)(z^2+1)
    assert is_hurwitz_exact(int_poly([1, 2, 2, 2, 1])) is Verdict.BOUNDARY  # (z^2+1)(z+1)^2
    assert is_hurwitz_exact(int_poly([1, 2, 2, 1])) is Verdict.STABLE  # (z+1)(z^2+z+1)
    # scaling by a positive rational cannot change the verdict
    p = rat_poly([Fraction(1, 3), Fraction(2, 3), Fraction(2, 3), Fraction(2, 3), Fraction(1, 3)])
    assert is_hurwitz_exact(p) is Verdict.BOUNDARY


def test_catalog_entries_are_stable():
    for name in catalog.named_polynomials():
        assert is_hurwitz_exact(catalog.get(name)) is Verdict.STABLE, name


def test_mobius_family_is_stable():
    for n in range(1, 33):
        assert is_hurwitz_exact(mobius_ell(n)) is Verdict.STABLE, n


def test_q20_is_unstable_with_six_rhp_zeros():
    q = catalog.q20()
    assert is_hurwitz_exact(q) is Verdict.UNSTABLE
    rep = spectral_abscissa(q)
    assert rep.verdict is Verdict.UNSTABLE
    assert rep.rhp_zero_count == 6
    assert rep.abscissa > 0
    # while the unrounded parent (z^2 + z/5 + 1)^10 is stable
    parent = power(rat_poly([Fraction(1), Fraction(1, 5), Fraction(1)]), 10)
    assert is_hurwitz_exact(parent) is Verdict.STABLE
    # and q20 really is its coefficient-wise rounding to 4 decimals
    for qc, pc in zip(q.coeffs, parent.coeffs):
        assert qc == Fraction(round(pc * 10000), 10000)


def test_reversal_preserves_stability():
    # zeros of the reversed polynomial are the reciprocals of the originals,
    # and 1/z lies in the same half-plane as z
    rng = random.Random(5)
    for _ in range(500):
        c = rand_coeffs(rng, rng.randint(1, 8), 9)
        p = int_poly(c)
        assert (is_hurwitz_exact(p) is Verdict.STABLE) == (
            is_hurwitz_exact(reverse(p)) is Verdict.STABLE
        )


def test_products_of_stable_are_stable():
    rng = random.Random(17)
    names = sorted(catalog.named_polynomials())
    for _ in range(40):
        a = catalog.get(rng.choice(names))
        b = catalog.get(rng.choice(names))
        if a.degree + b.degree > 40:
            continue
        assert is_hurwitz_exact(multiply(a, b)) is Verdict.STABLE


def test_integer_routh_matches_fraction_routh():
    rng = random.Random(271828)
    for _ in range(20000):
        deg = rng.randint(1, 10)
        c = tuple(rng.randint(1, 60) for _ in range(deg + 1))
        assert _routh_verdict_int(c) is _routh_verdict_fraction(c), c


def match_zero_sets(got, want, tol):
    """Greedy nearest-neighbour pairing; order-insensitive multiset compare."""
    pool = list(want)
    for g in got:
        j = min(range(len(pool)), key=lambda i: abs(g - pool[i]))
        if abs(g - pool[j]) >= tol:
            return False
        pool.pop(j)
    return True


def test_find_zeros_against_numpy_roots():
    rng = random.Random(99)
    for _ in range(300):
        deg = rng.randint(1, 12)
        p = int_poly(rand_coeffs(rng, deg, 9))
        got = find_zeros(p)
        want = np.roots([float(c) for c in reversed(p.coeffs)])
        assert len(got) == deg
        assert match_zero_sets(got, want, 1e-7), p


def test_zero_conjugate_symmetry_and_abscissa():
    for name in ("a4", "c7", "b20", "a32"):
        p = catalog.get(name)
        zs = find_zeros(p)
        assert len(zs) == p.degree
        # real coefficients: zero set closed under conjugation
        for z in zs:
            assert any(abs(z.conjugate() - w) < 1e-9 for w in zs)
        rep = spectral_abscissa(p)
        assert rep.abscissa == pytest.approx(max(z.real for z in zs), abs=1e-12)
        assert rep.verdict is Verdict.STABLE and rep.rhp_zero_count == 0


def test_abscissa_matches_catalog_four_decimals():
    for name, entry in catalog.named_polynomials().items():
        if entry.abscissa is None:
            continue
        rep = spectral_abscissa(entry.poly)
        assert rep.abscissa == pytest.approx(entry.abscissa, abs=5e-4), name


def test_degree_cap_and_errors():
    big = int_poly([1] * (MAX_ROOTFIND_DEGREE + 2))
    with pytest.raises(ValueError):
        find_zeros(big)
    with pytest.raises(ValueError):
        find_zeros(int_poly([3]))


def test_exact_verdict_ignores_sign_normalization():
    # spectral_abscissa must agree with is_hurwitz_exact even when the
    # numeric route sees scaled coefficients
    p = rat_poly([Fraction(1, 7), Fraction(2, 7), Fraction(2, 7), Fraction(2, 7), Fraction(1, 7)])
    assert spectral_abscissa(p).verdict is Verdict.BOUNDARY


def test_random_oracle_has_no_discrepancies():
    rep = stability_oracle_check(trials=2000, max_degree=8, max_coeff=9, seed=1)
    assert rep.trials == 2000
    assert rep.discrepancies == ()
    rep2 = stability_oracle_check(trials=300, max_degree=12, max_coeff=50, seed=42)
    assert rep2.discrepancies == ()


def test_report_shape():
    rep = spectral_abscissa(catalog.get("a2"))
    assert isinstance(rep, StabilityReport)
    assert rep.abscissa == pytest.approx(-0.5, abs=1e-12)
    assert rep.zeros[0].imag == pytest.approx(-np.sqrt(3) / 2, abs=1e-12)
