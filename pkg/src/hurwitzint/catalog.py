"""Access to the packaged reference tables (the golden/ JSON fixtures).

The catalog names a set of low-coefficient stable polynomials (a1, b3,
..., c20, a32, products) with their printed spectral abscissas and
coefficient sums, the Mobius family table, the per-degree optima, and
the digit tables for the growth-constant bounds.  The reproduce command
and the test suite both diff recomputed results against these.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from .polycore import IntPolynomial, RatPolynomial, int_poly, rat_poly


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    poly: IntPolynomial
    sigma: int
    abscissa: Optional[float] = None
    construction: Optional[tuple[str, ...]] = None


def _load(name: str) -> dict:
    with resources.files("hurwitzint.golden").joinpath(name).open() as f:
        return json.load(f)


@lru_cache(maxsize=None)
def named_polynomials() -> dict[str, CatalogEntry]:
    raw = _load("named_polynomials.json")["polynomials"]
    out = {}
    for name, rec in raw.items():
        out[name] = CatalogEntry(
            name=name,
            poly=int_poly([int(c) for c in rec["coeffs_desc"]]),
            sigma=rec["sigma"],
            abscissa=rec.get("abscissa"),
            construction=tuple(rec["construction"]) if "construction" in rec else None,
        )
    return out


def get(name: str) -> IntPolynomial:
    return named_polynomials()[name].poly


@lru_cache(maxsize=None)
def q20() -> RatPolynomial:
    raw = _load("q20.json")
    return rat_poly([Fraction(tok) for tok in raw["coeffs_desc"]])


@lru_cache(maxsize=None)
def ell_table() -> dict[int, IntPolynomial]:
    raw = _load("ell_table.json")["table"]
    return {int(k): int_poly([int(c) for c in v]) for k, v in raw.items()}


@lru_cache(maxsize=None)
def optimal_tables() -> dict:
    return _load("optimal_tables.json")


@lru_cache(maxsize=None)
def pmax_sigma() -> dict:
    return _load("pmax_sigma.json")


@lru_cache(maxsize=None)
def bounds_digits() -> dict:
    return _load("bounds_digits.json")


@lru_cache(maxsize=None)
def search_ground_truth() -> dict:
    """Search results recorded by this repository's own exhaustive runs."""
    return _load("search_ground_truth.json")
