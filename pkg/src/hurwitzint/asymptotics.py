"""Coefficient asymptotics of powers of a symmetric stable polynomial.

A symmetric p of even degree 2M factors through its symbol
f(x) = c_M + 2*sum_{d=1}^{M} c_{M-d} cos(dx), the restriction of
p(e^{ix})/e^{iMx} to the unit circle.  Coefficients of p^k are Fourier
coefficients of f^k, so the central coefficients obey a local limit law:
max coeff of p^k ~ sigma^k / sqrt(4 pi tau k), where sigma = f(0) is the
coefficient sum and tau is the exact rational curvature
tau = (1/sigma) * sum_{d=1}^{M} d^2 c_{M-d}   (from f(x)/sigma = 1 - tau x^2 + O(x^4)).

Everything count-like is exact: powers use exact convolution, tau comes
from the half-coefficients, and the quadrature is only ever compared
against exact integers (never the other way around).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np
from mpmath import mp

from . import catalog
from .polycore import IntPolynomial, is_symmetric, multiply

DEFAULT_GRID_POINTS = 100001
QUAD_TOL = 1e-10
_SIMPSON_MAX_DEPTH = 30


# ---------------------------------------------------------------------------
# the symbol

@dataclass(frozen=True)
class SymbolProfile:
    """Half-coefficients, exact curvature and a sampled symbol.

    ``half_coeffs`` is (c_0, ..., c_M) in ascending order, the lower half
    of the symmetric coefficient vector including the middle.  ``xs`` and
    ``ratios`` sample f(x)/sigma on a uniform grid over [-pi, pi].
    """

    base: IntPolynomial
    half_coeffs: tuple[int, ...]
    sigma: int
    tau: Fraction
    xs: np.ndarray
    ratios: np.ndarray

    @property
    def samples(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.xs.tolist(), self.ratios.tolist()))


def _half_coeffs(p: IntPolynomial) -> tuple[int, ...]:
    if not is_symmetric(p):
        raise ValueError("polynomial must be symmetric")
    if p.degree % 2 != 0:
        raise ValueError("degree must be even")
    M = p.degree // 2
    return tuple(int(c) for c in p.coeffs[: M + 1])


def symbol_profile(p: IntPolynomial, grid_points: int = DEFAULT_GRID_POINTS) -> SymbolProfile:
    # an odd count keeps x = 0 on the grid, where f/sigma = 1 exactly
    if grid_points < 101 or grid_points % 2 == 0:
        raise ValueError("grid_points must be odd and >= 101")
    half = _half_coeffs(p)
    M = len(half) - 1
    sigma = half[M] + 2 * sum(half[:M])
    if sigma != sum(p.coeffs):
        raise RuntimeError("half-coefficient bookkeeping is wrong")
    tau = Fraction(sum(d * d * half[M - d] for d in range(1, M + 1)), sigma)

    xs = np.linspace(-math.pi, math.pi, grid_points)
    f = np.full_like(xs, float(half[M]))
    for d in range(1, M + 1):
        f += (2.0 * half[M - d]) * np.cos(d * xs)
    ratios = f / float(sigma)
    if np.max(np.abs(ratios)) > 1.0 + 1e-12:
        raise RuntimeError("symbol exceeded its triangle-inequality range")
    return SymbolProfile(p, half, int(sigma), tau, xs, ratios)


class EnvelopeReport(NamedTuple):
    """Grid checks of the symbol's decay profile (dense grid, not a
    certified enclosure; the inequalities hold with visible margin)."""

    inner_positive: bool        # f/sigma > 0 on |x| < 1
    inner_gaussian: bool        # f/sigma <= exp(-3.5 x^2) on |x| < 1
    outer_band: bool            # |f/sigma| < 1/2 on 1 <= |x| <= pi
    positive_everywhere: bool   # observed on the grid; reported, not used
    inner_margin: float         # min of envelope - ratio on the inner grid
    outer_max_abs: float


def envelope_checks(profile: SymbolProfile) -> EnvelopeReport:
    xs, r = profile.xs, profile.ratios
    inner = np.abs(xs) < 1.0
    outer = ~inner
    env = np.exp(-3.5 * xs[inner] ** 2)
    # 1e-12 of slack absorbs summation roundoff at x = 0 where the
    # inequality is an equality
    gap = env - r[inner]
    return EnvelopeReport(
        inner_positive=bool(np.all(r[inner] > 0.0)),
        inner_gaussian=bool(np.all(gap >= -1e-12)),
        outer_band=bool(np.max(np.abs(r[outer])) < 0.5),
        positive_everywhere=bool(np.all(r > 0.0)),
        inner_margin=float(np.min(gap)),
        outer_max_abs=float(np.max(np.abs(r[outer]))),
    )


# ---------------------------------------------------------------------------
# exact powers and the local limit estimate

_POWER_CACHE: dict[tuple, IntPolynomial] = {}


def _int_power(p: IntPolynomial, k: int) -> IntPolynomial:
    """p^k by cached incremental exact convolution (sweeps over k reuse
    every intermediate power)."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    key = (p.coeffs, k)
    got = _POWER_CACHE.get(key)
    if got is None:
        got = p if k == 1 else multiply(_int_power(p, k - 1), p)
        _POWER_CACHE[key] = got
    return got


class PowerMaxReport(NamedTuple):
    exact_max: int
    estimate: object  # mpf: sigma^k / sqrt(4 pi tau k)
    ratio: object     # mpf: exact / estimate


def max_coefficient_of_power(p: IntPolynomial, k: int) -> PowerMaxReport:
    """Exact max coefficient of p^k next to its local-limit estimate."""
    half = _half_coeffs(p)
    M = len(half) - 1
    sigma = half[M] + 2 * sum(half[:M])
    tau = Fraction(sum(d * d * half[M - d] for d in range(1, M + 1)), sigma)
    if tau == 0:
        raise ValueError("constant symbol has no concentration scale")
    q = _int_power(p, k)
    exact_max = max(q.coeffs)
    with mp.workprec(96):
        est = mp.mpf(sigma) ** k / mp.sqrt(
            4 * mp.pi * k * mp.mpf(tau.numerator) / tau.denominator
        )
        ratio = mp.mpf(exact_max) / est
    return PowerMaxReport(int(exact_max), est, ratio)


class PowerBoundReport(NamedTuple):
    N: int
    witness_max: int           # exact max coefficient of the degree-N witness
    upper_bound: object        # mpf: 1.56^N (0.68/sqrt(N) + 0.97^N)
    lower_context: object      # mpf: 1.41^N / N (bounds the true optimum)
    holds: bool
    ratio_to_upper: object


def max_coefficient_bound_check(N: int) -> PowerBoundReport:
    """Check the degree-N power witness against the two-sided growth bound.

    The witness is the (N/20)-th power of the degree-20 doubled
    polynomial with sigma 7167; its exact max coefficient must stay under
    1.56^N (0.68/sqrt(N) + 0.97^N).  The companion 1.41^N/N bounds the
    (unknown) true minimal max coefficient, not this witness, and is
    reported for context only.
    """
    if N % 20 != 0 or not 20 <= N <= 800:
        raise ValueError("N must be a multiple of 20 in 20..800")
    base = catalog.get("c20")
    q = _int_power(base, N // 20)
    witness = max(q.coeffs)
    with mp.workprec(96):
        upper = mp.mpf("1.56") ** N * (
            mp.mpf("0.68") / mp.sqrt(N) + mp.mpf("0.97") ** N
        )
        lower = mp.mpf("1.41") ** N / N
        ratio = mp.mpf(witness) / upper
    return PowerBoundReport(N, int(witness), upper, lower, witness < upper, ratio)


# ---------------------------------------------------------------------------
# Fourier coefficients: exact integers vs quadrature

def _symbol_ratio_fn(half: tuple[int, ...], sigma: int) -> Callable[[float], float]:
    M = len(half) - 1
    mid = half[M]

    def g(x: float) -> float:
        acc = float(mid)
        for d in range(1, M + 1):
            acc += 2.0 * half[M - d] * math.cos(d * x)
        return acc / sigma

    return g


def _adaptive_simpson(fn, a, b, tol):
    fa, fb = fn(a), fn(b)
    m = 0.5 * (a + b)
    fm = fn(m)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0

    def recurse(a, fa, b, fb, m, fm, whole, tol, depth):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = fn(lm), fn(rm)
        left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
        right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
        if depth >= _SIMPSON_MAX_DEPTH or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return (
            recurse(a, fa, m, fm, lm, flm, left, tol / 2.0, depth + 1)
            + recurse(m, fm, b, fb, rm, frm, right, tol / 2.0, depth + 1)
        )

    return recurse(a, fa, b, fb, m, fm, whole, tol, 0)


def fourier_coefficient_quadrature(p: IntPolynomial, k: int, j: int,
                                   tol: float = QUAD_TOL):
    """(1/2pi) * integral of f(x)^k cos(jx) over [-pi, pi] as an mpf,
    computed on the f/sigma scale to absolute tolerance ``tol`` and
    rescaled by sigma^k exactly."""
    if k < 1:
        raise ValueError("power must be >= 1")
    half = _half_coeffs(p)
    if abs(j) > (len(half) - 1) * k:
        raise ValueError(f"harmonic index must satisfy |j| <= {(len(half) - 1) * k}")
    sigma = half[-1] + 2 * sum(half[:-1])
    g = _symbol_ratio_fn(half, sigma)
    integrand = (lambda x: g(x) ** k) if j == 0 else (
        lambda x: g(x) ** k * math.cos(j * x)
    )
    val = _adaptive_simpson(integrand, -math.pi, math.pi, tol)
    with mp.workprec(96):
        return mp.mpf(sigma) ** k * mp.mpf(val) / (2 * mp.pi)


class FourierBoundReport(NamedTuple):
    exact: int
    bound: object  # mpf: sigma^k * (1/2pi) integral |f/sigma|^k
    holds: bool


def fourier_coefficient_bound(p: IntPolynomial, k: int, j: int) -> FourierBoundReport:
    """Exact coefficient c_j of p^k (offset j from the middle) against the
    magnitude bound (1/2pi) * integral |f|^k."""
    if k < 1:
        raise ValueError("power must be >= 1")
    half = _half_coeffs(p)
    M = len(half) - 1
    center = M * k
    if abs(j) > center:
        raise ValueError(f"harmonic index must satisfy |j| <= {center}")
    q = _int_power(p, k)
    exact = int(q.coeffs[center + j])
    sigma = half[M] + 2 * sum(half[:M])
    g = _symbol_ratio_fn(half, sigma)
    val = _adaptive_simpson(lambda x: abs(g(x)) ** k, -math.pi, math.pi, QUAD_TOL)
    with mp.workprec(96):
        bound = mp.mpf(sigma) ** k * mp.mpf(val) / (2 * mp.pi)
        holds = mp.mpf(exact) <= bound * (1 + mp.mpf("1e-9"))
    if not holds:
        raise RuntimeError(
            f"exact coefficient {exact} exceeds its integral bound {bound}"
        )
    return FourierBoundReport(exact, bound, bool(holds))
