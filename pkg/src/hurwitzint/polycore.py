"""Exact polynomial arithmetic for the stability toolkit.

Polynomials are immutable coefficient tuples stored in ascending order
(constant term first).  Two flavours exist: IntPolynomial over Python
integers and RatPolynomial over fractions.Fraction.  All arithmetic here
is exact; nothing in this module touches floating point.

The canonical display/text form is descending (leading coefficient
first), whitespace separated inside square brackets: "[1 1 3 1 1]".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; coeffs[k] is the coefficient of z**k."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("empty coefficient sequence")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise TypeError("IntPolynomial coefficients must be int")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient is zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        return poly_to_text(self)


@dataclass(frozen=True)
class RatPolynomial:
    """Rational polynomial; coeffs[k] is the coefficient of z**k."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("empty coefficient sequence")
        if not all(isinstance(c, Fraction) for c in self.coeffs):
            raise TypeError("RatPolynomial coefficients must be Fraction")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient is zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        return poly_to_text(self)


Polynomial = Union[IntPolynomial, RatPolynomial]


class CoeffStats(NamedTuple):
    max_coeff: int
    coeff_sum: int


def int_poly(coeffs_desc) -> IntPolynomial:
    """Build an IntPolynomial from descending coefficients (display order)."""
    return IntPolynomial(tuple(int(c) for c in reversed(tuple(coeffs_desc))))


def rat_poly(coeffs_desc) -> RatPolynomial:
    """Build a RatPolynomial from descending coefficients (display order)."""
    return RatPolynomial(tuple(Fraction(c) for c in reversed(tuple(coeffs_desc))))


def coeffs_desc(p: Polynomial) -> tuple:
    """Coefficients in display order, leading first."""
    return tuple(reversed(p.coeffs))


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact schoolbook product.  Integer inputs give an integer result."""
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            out[i + j] += ca * cb
    if isinstance(a, IntPolynomial) and isinstance(b, IntPolynomial):
        return IntPolynomial(tuple(out))
    return RatPolynomial(tuple(Fraction(c) for c in out))


def power(p: Polynomial, k: int) -> Polynomial:
    """Exact k-th power by square and multiply; k >= 1."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    base = p
    while True:
        if k & 1:
            result = base if result is None else multiply(result, base)
        k >>= 1
        if k == 0:
            return result
        base = multiply(base, base)


def evaluate_at_integer(p: IntPolynomial, x: int) -> int:
    """Horner evaluation over the integers."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def evaluate_at_rational(p: Polynomial, x: Fraction) -> Fraction:
    """Horner evaluation over the rationals."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def reverse(p: Polynomial) -> Polynomial:
    """The reversed polynomial z**deg(p) * p(1/z).

    Requires a nonzero constant term so the degree is preserved and
    reverse(reverse(p)) == p holds.
    """
    if p.coeffs[0] == 0:
        raise ValueError("constant coefficient is zero; reversal drops degree")
    cls = type(p)
    return cls(tuple(reversed(p.coeffs)))


def is_symmetric(p: Polynomial) -> bool:
    """True iff the degree is even and the coefficient sequence is palindromic."""
    return p.degree % 2 == 0 and p.coeffs == tuple(reversed(p.coeffs))


def coeff_stats(p: IntPolynomial) -> CoeffStats:
    """Largest coefficient and coefficient sum (the two optimality measures)."""
    return CoeffStats(max(p.coeffs), sum(p.coeffs))


def clear_denominators(p: RatPolynomial) -> tuple[IntPolynomial, int]:
    """Scale p by the least common positive denominator; returns (q, d) with q = d*p.

    Scaling by a positive constant preserves the zero set, so stability
    queries on p may be answered on q.
    """
    d = 1
    for c in p.coeffs:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return IntPolynomial(tuple(int(c * d) for c in p.coeffs)), d


def poly_to_text(p: Polynomial) -> str:
    """Canonical bracketed text form, descending coefficients."""
    return "[" + " ".join(_coeff_str(c) for c in coeffs_desc(p)) + "]"


def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def parse_poly_text(text: str) -> Polynomial:
    """Parse the canonical text form (descending coefficients).

    Brackets are optional; separators are whitespace and/or commas.  Tokens
    may be integers, fractions like 3/2, or decimal literals like 11.8000
    (read exactly, not via float).  An all-integer input yields an
    IntPolynomial, anything else a RatPolynomial.
    """
    stripped = text.strip()
    if stripped.startswith("[") and stripped.endswith("]"):
        stripped = stripped[1:-1]
    tokens = stripped.replace(",", " ").split()
    if not tokens:
        raise ValueError("no coefficients found")
    vals = [Fraction(tok) for tok in tokens]
    if all(v.denominator == 1 for v in vals):
        return int_poly([int(v) for v in vals])
    return rat_poly(vals)


def poly_to_json(p: Polynomial) -> str:
    """JSON object form {"coeffs_desc": [...]} with string coefficients."""
    return json.dumps({"coeffs_desc": [_coeff_str(c) for c in coeffs_desc(p)]})


def poly_from_json(text: str) -> Polynomial:
    """Inverse of poly_to_json."""
    obj = json.loads(text)
    if not isinstance(obj, dict) or "coeffs_desc" not in obj:
        raise ValueError("expected an object with a coeffs_desc field")
    vals = [Fraction(str(tok)) for tok in obj["coeffs_desc"]]
    if not vals:
        raise ValueError("coeffs_desc is empty")
    if all(v.denominator == 1 for v in vals):
        return int_poly([int(v) for v in vals])
    return rat_poly(vals)
