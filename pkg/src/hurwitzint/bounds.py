"""Growth bounds for stable polynomials with positive integer coefficients.

The machinery here is exact wherever a verdict depends on it:

* ``beauzamy_check`` decides p(v)^2 >= (v^2+1)^N in rational arithmetic
  (the squared form avoids the irrational (v^2+1)^(N/2)).
* ``v_sequence`` computes v_0 = 1, v_{j+1} = v_j + 1/v_j.  The reduced
  numerator doubles in bit length every step, so entries are stored as
  exact rationals only up to ``V_EXACT_LIMIT``; beyond that the sequence
  carries certified dyadic enclosures [lo_j, hi_j] (outward-rounded to
  ``ENCLOSURE_BITS`` bits; x + 1/x is increasing and contracting on x > 1,
  so the enclosures stay ~2^-250 wide).  The growth inequalities
  sqrt(j+1) < v_j < 2 sqrt(j) and v_j > sqrt(2j) are still decided
  exactly, by comparing squared endpoints as rationals.
* ``gamma_table`` forms the partial sums gamma_k = sum_{j<k} log(v_j)/2^(j+1)
  in high-precision floating point and brackets the limit gamma with a
  rigorous two-sided tail bar derived from the proven growth inequalities.
* ``beta_bounds`` assembles the interval table for the growth constant
  beta = lim sigma(N)^(1/N) and its k-fold-symmetric analogues.  Both
  endpoints of every row are roots of explicit integers (e.g. the row-k
  lower bound is num(v_{k+1})^(1/2^(k+2)/...): lower_k^(2^(k+1)) and
  upper_k^(2^k) are integers), so all orderings in the table are checked
  in integer arithmetic; floating point only renders digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from mpmath import mp

from . import catalog
from .constructors import a_family
from .polycore import IntPolynomial, evaluate_at_integer, evaluate_at_rational
from .stability import Verdict, is_hurwitz_exact

V_EXACT_LIMIT = 20  # v_20's reduced numerator is ~650k bits; enough for all tables
V_MAX_INDEX = 64
ENCLOSURE_BITS = 256
DEFAULT_PRECISION_BITS = 192
GAMMA_TAIL_HORIZON = V_MAX_INDEX  # enclosures cover the tail this far


# ---------------------------------------------------------------------------
# evaluation lower bound

class BeauzamyResult(NamedTuple):
    holds: bool
    margin: Fraction  # p(v)^2 - (v^2+1)^N, exact
    lhs: Fraction     # p(v)^2
    rhs: Fraction     # (v^2+1)^N


def beauzamy_check(p: IntPolynomial, v: Union[int, Fraction]) -> BeauzamyResult:
    """Decide p(v)^2 >= (v^2+1)^deg(p) exactly for a certified-stable p.

    The hypotheses (even degree, unit-or-larger end coefficients, Hurwitz
    stability) are mandatory: violating any of them raises instead of
    returning a meaningless verdict.
    """
    v = Fraction(v)
    if v < 1:
        raise ValueError("evaluation point must be >= 1")
    n = p.degree
    if n % 2 != 0 or n == 0:
        raise ValueError("degree must be even and positive")
    if p.coeffs[-1] < 1 or p.coeffs[0] < 1:
        raise ValueError("leading and constant coefficients must be >= 1")
    if is_hurwitz_exact(p) is not Verdict.STABLE:
        raise ValueError("polynomial must certify stable")
    lhs = Fraction(evaluate_at_rational(p, v)) ** 2
    rhs = (v * v + 1) ** n
    return BeauzamyResult(lhs >= rhs, lhs - rhs, lhs, rhs)


def even_degree_pmax_floor(N: int) -> Fraction:
    """Exact lower bound 2^(N/2)/(N+1) for the largest coefficient of any
    degree-N stable polynomial (N even)."""
    if N < 2 or N % 2 != 0:
        raise ValueError("N must be even and >= 2")
    return Fraction(2 ** (N // 2), N + 1)


# ---------------------------------------------------------------------------
# the v recursion

@dataclass(frozen=True)
class VSequence:
    """v_0..v_n with exact values up to V_EXACT_LIMIT and certified dyadic
    enclosures lo_j <= v_j <= hi_j throughout."""

    n: int
    exact: tuple[Fraction, ...]
    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    growth_checked_through: int

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.exact

    def enclosure(self, j: int) -> tuple[Fraction, Fraction]:
        return self.lo[j], self.hi[j]


def _dyadic_down(x: Fraction, bits: int = ENCLOSURE_BITS) -> Fraction:
    return Fraction(x.numerator * (1 << bits) // x.denominator, 1 << bits)


def _dyadic_up(x: Fraction, bits: int = ENCLOSURE_BITS) -> Fraction:
    return Fraction(-((-x.numerator * (1 << bits)) // x.denominator), 1 << bits)


def v_sequence(n: int) -> VSequence:
    if not 0 <= n <= V_MAX_INDEX:
        raise ValueError(f"index must be in 0..{V_MAX_INDEX}")
    return _v_sequence_cached(n)


def _v_sequence_build(n: int) -> VSequence:
    exact = [Fraction(1)]
    for _ in range(min(n, V_EXACT_LIMIT)):
        v = exact[-1]
        exact.append(v + 1 / v)

    lo = [Fraction(1)]
    hi = [Fraction(1)]
    for _ in range(n):
        # x + 1/x is increasing on x >= 1, so endpoints map to endpoints
        lo.append(_dyadic_down(lo[-1] + 1 / lo[-1]))
        hi.append(_dyadic_up(hi[-1] + 1 / hi[-1]))
    for j in range(len(exact)):
        if not lo[j] <= exact[j] <= hi[j]:
            raise RuntimeError(f"enclosure {j} excludes the exact value")

    for j in range(2, n + 1):
        if j < len(exact):
            sq_lo = sq_hi = exact[j] ** 2
        else:
            sq_lo, sq_hi = lo[j] ** 2, hi[j] ** 2
        if not (sq_lo > j + 1 and sq_lo > 2 * j and sq_hi < 4 * j):
            raise RuntimeError(f"growth inequality failed at index {j}")
    return VSequence(n, tuple(exact), tuple(lo), tuple(hi), n if n >= 2 else 0)


_V_CACHE: dict[int, VSequence] = {}


def _v_sequence_cached(n: int) -> VSequence:
    if n not in _V_CACHE:
        _V_CACHE[n] = _v_sequence_build(n)
    return _V_CACHE[n]


# ---------------------------------------------------------------------------
# gamma partial sums and limit

@dataclass(frozen=True)
class GammaTable:
    """gamma_k = sum_{j=0}^{k-1} log(v_j)/2^(j+1) and the bracketed limit.

    ``radicands[k-1]`` is the exact rational R_k with e^(gamma_k) =
    R_k^(1/2^k); the first few are the integers 1, 2, 10, 290.
    ``gamma_limit`` carries a rigorous symmetric error bar
    ``gamma_error`` (tail bracketing via the proven sqrt(2j) < v_j <
    2 sqrt(j) plus enclosure slack).
    """

    k_max: int
    precision_bits: int
    partials: tuple
    exp_partials: tuple
    gamma_limit: object
    gamma_error: object
    exp_gamma: object
    exp_gamma_error: object
    radicands: tuple[Fraction, ...]


def _log_fraction(x: Fraction):
    return mp.log(x.numerator) - mp.log(x.denominator)


def gamma_table(k_max: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> GammaTable:
    if not 1 <= k_max <= V_MAX_INDEX:
        raise ValueError(f"k_max must be in 1..{V_MAX_INDEX}")
    if precision_bits < 128:
        raise ValueError("precision must be at least 128 bits")
    vs = v_sequence(GAMMA_TAIL_HORIZON)
    with mp.workprec(precision_bits + 32):
        partials = []
        acc = mp.mpf(0)
        slack = mp.mpf(0)
        for k in range(1, k_max + 1):
            j = k - 1
            if j < len(vs.exact):
                term = _log_fraction(vs.exact[j])
            else:
                term = (_log_fraction(vs.lo[j]) + _log_fraction(vs.hi[j])) / 2
                width = Fraction(vs.hi[j] - vs.lo[j], vs.lo[j])
                slack += mp.mpf(width.numerator) / width.denominator / 2 ** (j + 1)
            acc += term / mp.mpf(2) ** (j + 1)
            partials.append(+acc)

        # bracket the tail sum_{j >= k_max} log(v_j)/2^(j+1) with the
        # certified enclosures out to the horizon, then bound the rest by
        # log(v_j) <= log(2 sqrt(j)) <= j, so sum_{j>=K} j/2^(j+1) = (K+1)/2^K
        tail_lo = mp.mpf(0)
        tail_hi = mp.mpf(0)
        for j in range(k_max, GAMMA_TAIL_HORIZON + 1):
            tail_lo += _log_fraction(vs.lo[j]) / mp.mpf(2) ** (j + 1)
            tail_hi += _log_fraction(vs.hi[j]) / mp.mpf(2) ** (j + 1)
        rest = GAMMA_TAIL_HORIZON + 2
        tail_hi += mp.mpf(rest) / mp.mpf(2) ** (rest - 1)

        gamma_lo = partials[-1] + tail_lo - slack
        gamma_hi = partials[-1] + tail_hi + slack
        gamma_limit = (gamma_lo + gamma_hi) / 2
        gamma_error = (gamma_hi - gamma_lo) / 2
        exp_partials = tuple(mp.exp(g) for g in partials)
        exp_gamma = mp.exp(gamma_limit)
        exp_gamma_error = exp_gamma * mp.expm1(gamma_error)

    radicands = []
    R = Fraction(1)
    for k in range(1, min(k_max, V_EXACT_LIMIT) + 1):
        if k > 1:
            R = R * R * vs.exact[k - 1]
        radicands.append(R)
        # cross-check: R_k collapses to the denominator of v_k
        if R != Fraction(vs.exact[k].denominator):
            raise RuntimeError(f"radicand identity failed at k={k}")
    return GammaTable(
        k_max=k_max,
        precision_bits=precision_bits,
        partials=tuple(partials),
        exp_partials=exp_partials,
        gamma_limit=gamma_limit,
        gamma_error=gamma_error,
        exp_gamma=exp_gamma,
        exp_gamma_error=exp_gamma_error,
        radicands=tuple(radicands),
    )


def a_family_identity_check(n: int) -> bool:
    """Exact check of the closed form for the doubled family's value at 1:
    a_{2^n}(1) = (v_n + 1) * prod_{j<n} v_j^(2^(n-j-1)), all in rationals."""
    if not 0 <= n <= 6:
        raise ValueError("n must be in 0..6")
    chain = a_family(n)
    lhs = Fraction(evaluate_at_integer(chain.result, 1))
    vs = v_sequence(n)
    rhs = vs.exact[n] + 1
    for j in range(n):
        rhs *= vs.exact[j] ** (2 ** (n - j - 1))
    return lhs == rhs


# ---------------------------------------------------------------------------
# beta and beta_k interval tables

@dataclass(frozen=True)
class BetaRow:
    """Bounds for the k-fold-symmetric growth exponent: lower <=
    sigma_k(N)^(1/N) <= upper for all admissible N, with
    lower = lower_radicand^(1/2^(k+1)) and upper = upper_radicand^(1/2^k)
    exactly (lower_radicand = num(v_{k+1}), upper_radicand = num+den of
    v_k = a_{2^k}(1))."""

    k: int
    lower: object
    upper: object
    lower_radicand: int
    upper_radicand: int


@dataclass(frozen=True)
class BoundsTable:
    beta_lower: object          # sqrt(2), attained floor from even-degree sums
    beta_upper: object          # a_32(1)^(1/32) = 1242471^(1/32)
    beta_upper_radicand: int
    e_gamma: object             # limit upper bound for every beta_k
    e_gamma_error: object
    rows: tuple[BetaRow, ...]
    empirical: tuple[tuple[int, object], ...]  # (k, sigma(k)^(1/k)) where known


def _known_sigma() -> dict[int, int]:
    table = {int(k): int(v) for k, v in catalog.pmax_sigma()["sigma"].items()}
    for k, rec in catalog.search_ground_truth()["sigma_exact"].items():
        table[int(k)] = int(rec["sigma"])
    return table


def beta_bounds(k_max: int = 3) -> BoundsTable:
    if not 1 <= k_max <= 8:
        raise ValueError("k_max must be in 1..8")
    vs = v_sequence(k_max + 1)
    gt = gamma_table(max(k_max, 40))

    rows = []
    prev_low_rad = None
    with mp.workprec(DEFAULT_PRECISION_BITS):
        for k in range(0, k_max + 1):
            vk = vs.exact[k]
            vk1 = vs.exact[k + 1]
            low_rad = vk1.numerator          # = (v_k^2+1) * den(v_k)^2
            up_rad = vk.numerator + vk.denominator
            if (vk * vk + 1) * vk.denominator ** 2 != low_rad:
                raise RuntimeError(f"lower radicand mismatch at k={k}")
            # ordering is decided on the integers, not on rounded roots:
            # lower_k <= upper_k  <=>  low_rad <= up_rad^2
            if low_rad > up_rad * up_rad:
                raise RuntimeError(f"row {k} lower exceeds upper")
            # lower_{k-1} <= lower_k  <=>  prev^2 <= low_rad
            if prev_low_rad is not None and prev_low_rad * prev_low_rad > low_rad:
                raise RuntimeError(f"lower bounds not monotone at k={k}")
            prev_low_rad = low_rad
            rows.append(
                BetaRow(
                    k=k,
                    lower=mp.root(low_rad, 2 ** (k + 1)),
                    upper=mp.root(up_rad, 2 ** k),
                    lower_radicand=low_rad,
                    upper_radicand=up_rad,
                )
            )

        a32_sum = evaluate_at_integer(a_family(5).result, 1)
        beta_lower = mp.sqrt(2)
        beta_upper = mp.root(a32_sum, 32)
        if 2 ** 16 > a32_sum:  # sqrt(2) <= a32_sum^(1/32), exactly
            raise RuntimeError("beta interval is empty")
        empirical = tuple(
            (k, mp.root(s, k)) for k, s in sorted(_known_sigma().items())
        )
    for row in rows:
        if not row.lower < gt.exp_gamma + gt.exp_gamma_error:
            raise RuntimeError(f"row {row.k} lower bound exceeds e^gamma")
    return BoundsTable(
        beta_lower=beta_lower,
        beta_upper=beta_upper,
        beta_upper_radicand=int(a32_sum),
        e_gamma=gt.exp_gamma,
        e_gamma_error=gt.exp_gamma_error,
        rows=tuple(rows),
        empirical=empirical,
    )
