"""Möbius family, coefficient doubling, and symmetry-order extraction."""

import random
from fractions import Fraction

import pytest

from hurwitzint import catalog
from hurwitzint.constructors import (
    a_family,
    coefficient_sum_after_doubling,
    double,
    doubling_chain,
    kfold_symmetry_order,
    mobius_ell,
    undouble,
)
from hurwitzint.polycore import (
    IntPolynomial,
    coeff_stats,
    evaluate_at_integer,
    int_poly,
    is_symmetric,
)
from hurwitzint.stability import Verdict, is_hurwitz_exact


def test_mobius_ell_matches_table():
    table = catalog.ell_table()
    for n_str, want in table.items():
        assert mobius_ell(int(n_str)) == want, n_str
    assert mobius_ell(1) == int_poly([1, 3])
    assert mobius_ell(2) == int_poly([1, 1, 2])
    assert mobius_ell(3) == int_poly([1, 7, 3, 5])
    assert mobius_ell(4) == int_poly([1, 2, 8, 2, 3])


def test_mobius_ell_structure():
    # degree-n entry, all coefficients positive, constant/leading pattern
    for n in range(1, 40):
        p = mobius_ell(n)
        assert p.degree == n
        assert all(c > 0 for c in p.coeffs)
    # growth stays under 2^n (the family exists because of this)
    assert max(mobius_ell(20).coeffs) == 268736 < 2**20
    with pytest.raises(ValueError):
        mobius_ell(0)


def test_doubling_matches_catalog():
    pairs = [
        ("c5", "b10"), ("d6", "b12"), ("d7", "b14"), ("c8", "b16"),
        ("b5", "c10"), ("c10", "c20"), ("b10", "b20"), ("a1", "a2"),
        ("a2", "a4"), ("a4", "a8"), ("a8", "a16"), ("a16", "a32"),
    ]
    for base, doubled in pairs:
        assert double(catalog.get(base)) == catalog.get(doubled), (base, doubled)


def test_doubling_small_cases_by_hand():
    # z * ((z + 1/z) + 1) = z^2 + z + 1
    assert double(int_poly([1, 1])) == int_poly([1, 1, 1])
    # z^2 * ((z+1/z)^2 + (z+1/z) + 1) = z^4 + z^3 + 3 z^2 + z + 1
    assert double(int_poly([1, 1, 1])) == int_poly([1, 1, 3, 1, 1])
    assert double(int_poly([5])) == int_poly([5])


def test_a_family_chain():
    chain = a_family(5)
    assert chain.sums == (2, 3, 7, 39, 1231, 1242471)
    assert chain.result == catalog.get("a32")
    assert chain.steps == 5
    assert a_family(2).result == catalog.get("a4")
    assert a_family(3).result == catalog.get("a8")


def test_doubling_coefficient_sum_identity():
    rng = random.Random(4)
    for _ in range(500):
        q = IntPolynomial(tuple(rng.randint(1, 9) for _ in range(rng.randint(1, 13))))
        assert sum(double(q).coeffs) == coefficient_sum_after_doubling(q) == evaluate_at_integer(q, 2)


def test_a32_coefficient_sum():
    v = evaluate_at_integer(catalog.get("a32"), 1)
    assert v == 1242471
    a64 = double(catalog.get("a32"))
    assert sum(a64.coeffs) == evaluate_at_integer(catalog.get("a32"), 2)
    assert str(sum(a64.coeffs)).startswith("12791")


def test_undouble_round_trip():
    rng = random.Random(12)
    for _ in range(1000):
        deg = rng.randint(0, 12)
        c = [rng.randint(-9, 9) for _ in range(deg + 1)]
        c[-1] = rng.randint(1, 9)
        q = IntPolynomial(tuple(c))
        assert undouble(double(q)) == q


def test_undouble_requires_symmetry():
    with pytest.raises(ValueError):
        undouble(int_poly([1, 1]))
    with pytest.raises(ValueError):
        undouble(int_poly([1, 2, 3]))
    assert undouble(int_poly([1, 2, 1])) == int_poly([1, 2])


def test_doubling_preserves_stability_both_ways():
    # z -> z + 1/z maps each open half-plane into itself and the imaginary
    # axis to itself, so double(q) is stable iff q is.  Only the
    # stable/non-stable split transfers: the boundary/unstable refinement is
    # a property of the Routh recursion, not of the zero set.
    rng = random.Random(88)
    for _ in range(300):
        deg = rng.randint(1, 7)
        q = IntPolynomial(tuple(rng.randint(1, 9) for _ in range(deg + 1)))
        assert (is_hurwitz_exact(double(q)) is Verdict.STABLE) == (
            is_hurwitz_exact(q) is Verdict.STABLE
        )


def test_kfold_symmetry_order():
    assert kfold_symmetry_order(catalog.get("c20")) == 2
    assert kfold_symmetry_order(catalog.get("a32")) == 5
    assert kfold_symmetry_order(catalog.get("b12")) == 2
    assert kfold_symmetry_order(catalog.get("b10")) == 1
    assert kfold_symmetry_order(catalog.get("a1")) == 0
    assert kfold_symmetry_order(int_poly([1, 2, 1])) == 1
    assert kfold_symmetry_order(int_poly([5])) == 0


def test_doubling_chain_records_each_step():
    ch = doubling_chain(int_poly([1, 1]), 4)
    assert ch.base == int_poly([1, 1])
    assert ch.result == catalog.get("a16")
    assert ch.sums[0] == 2
    assert len(ch.sums) == 5
    for k in range(1, 5):
        assert kfold_symmetry_order(doubling_chain(int_poly([1, 1]), k).result) == k


def test_stats_along_a_family():
    # max coefficient and sum both explode doubly exponentially
    stats = [coeff_stats(doubling_chain(int_poly([1, 1]), k).result) for k in range(6)]
    sums = [s.coeff_sum for s in stats]
    assert sums == [2, 3, 7, 39, 1231, 1242471]
    assert stats[5].max_coeff == 222621
