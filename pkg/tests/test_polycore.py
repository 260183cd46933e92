"""Exact polynomial arithmetic: parsing, products, evaluation, symmetry."""

import json
import random
from fractions import Fraction

import numpy as np
import pytest

from hurwitzint import catalog
from hurwitzint.polycore import (
    IntPolynomial,
    coeff_stats,
    coeffs_desc,
    clear_denominators,
    evaluate_at_integer,
    evaluate_at_rational,
    int_poly,
    is_symmetric,
    multiply,
    parse_poly_text,
    poly_from_json,
    poly_to_json,
    poly_to_text,
    power,
    rat_poly,
    reverse,
)


def rand_poly(rng, max_degree=10, lo=1, hi=9):
    n = rng.randint(0, max_degree)
    c = [rng.randint(lo, hi) for _ in range(n + 1)]
    if c[-1] == 0:
        c[-1] = 1
    return IntPolynomial(tuple(c))


def test_construction_validation():
    with pytest.raises(ValueError):
        IntPolynomial(())
    with pytest.raises(ValueError):
        int_poly([0, 1, 1])  # leading zero
    assert int_poly([7]).degree == 0
    assert int_poly([1, 2, 3]).coeffs == (3, 2, 1)


def test_text_round_trip():
    p = int_poly([1, 1, 3, 1, 1])
    assert poly_to_text(p) == "[1 1 3 1 1]"
    assert parse_poly_text("[1 1 3 1 1]") == p
    assert parse_poly_text("1, 1, 3, 1, 1") == p
    assert parse_poly_text("  1 1 3 1 1  ") == p


def test_parse_rational_and_decimal():
    q = parse_poly_text("[1 11.8000 3/2]")
    assert q.coeffs == (Fraction(3, 2), Fraction(59, 5), Fraction(1))
    assert poly_to_text(q) == "[1 59/5 3/2]"
    with pytest.raises(ValueError):
        parse_poly_text("[]")
    with pytest.raises(ValueError):
        parse_poly_text("[1 x 3]")


def test_json_round_trip():
    p = catalog.get("a32")
    blob = poly_to_json(p)
    obj = json.loads(blob)
    assert obj["coeffs_desc"][0] == "1" and obj["coeffs_desc"][16] == "222621"
    assert poly_from_json(blob) == p
    q = catalog.q20()
    assert poly_from_json(poly_to_json(q)) == q


def test_multiply_against_convolution_oracle():
    rng = random.Random(101)
    for _ in range(300):
        a, b = rand_poly(rng), rand_poly(rng)
        got = multiply(a, b)
        want = np.convolve(np.array(a.coeffs, dtype=object), np.array(b.coeffs, dtype=object))
        assert list(got.coeffs) == list(want)


def test_multiply_commutes_and_associates():
    rng = random.Random(7)
    for _ in range(1000):
        a, b, c = rand_poly(rng, 6), rand_poly(rng, 6), rand_poly(rng, 6)
        assert multiply(a, b) == multiply(b, a)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        # coefficient sums are multiplicative
        assert sum(multiply(a, b).coeffs) == sum(a.coeffs) * sum(b.coeffs)


def test_products_match_catalog():
    b10, a2, b18, a4 = (catalog.get(n) for n in ("b10", "a2", "b18", "a4"))
    assert multiply(b10, b10) == catalog.get("b10_squared")
    assert multiply(a2, b18) == catalog.get("a2_times_b18")
    assert multiply(a4, a4) == catalog.get("b8")


def test_power():
    p = catalog.get("b10")
    assert power(p, 1) == p
    assert power(p, 2) == multiply(p, p)
    assert power(p, 5) == multiply(power(p, 4), p)
    with pytest.raises(ValueError):
        power(p, 0)


def test_evaluation():
    a4 = catalog.get("a4")
    assert evaluate_at_integer(a4, 1) == 7
    assert evaluate_at_integer(a4, 2) == 39
    assert evaluate_at_rational(int_poly([1, 1]), Fraction(3, 2)) == Fraction(5, 2)
    a32 = catalog.get("a32")
    v = evaluate_at_integer(a32, 2)
    assert str(v).startswith("12791") and 1.2790e12 < v < 1.2792e12


def test_reverse():
    assert reverse(int_poly([1, 2, 3])) == int_poly([3, 2, 1])
    rng = random.Random(11)
    for _ in range(200):
        p = rand_poly(rng)
        assert reverse(reverse(p)) == p
        assert reverse(p).degree == p.degree
    with pytest.raises(ValueError):
        reverse(IntPolynomial((0, 1)))


def test_is_symmetric():
    assert is_symmetric(int_poly([1, 2, 1]))
    assert is_symmetric(catalog.get("c20"))
    assert is_symmetric(int_poly([5]))
    assert not is_symmetric(int_poly([1, 1]))  # odd degree
    assert not is_symmetric(int_poly([1, 2, 3]))


def test_coeff_stats():
    assert coeff_stats(catalog.get("c20")) == (1525, 7167)
    assert coeff_stats(catalog.get("b20")) == (1349, 8037)
    assert coeff_stats(catalog.get("a32")) == (222621, 1242471)
    assert coeff_stats(catalog.get("b10_squared")) == (1667, 11449)
    assert coeff_stats(catalog.get("a2_times_b18")) == (1525, 10209)


def test_clear_denominators():
    q = catalog.q20()
    p, d = clear_denominators(q)
    assert d == 10000
    assert all(Fraction(c, d) == qc for c, qc in zip(p.coeffs, q.coeffs))


def test_coeffs_desc_display_order():
    p = int_poly([1, 2, 8, 2, 3])
    assert coeffs_desc(p) == (1, 2, 8, 2, 3)
    assert p.coeffs == (3, 2, 8, 2, 1)
