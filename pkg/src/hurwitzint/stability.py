"""Stability certification: exact Routh test and a double-precision root finder.

Two independent routes to the same question.

* is_hurwitz_exact: the Routh scheme in exact arithmetic.  The verdict is
  one of "stable" / "unstable" / "boundary"; "boundary" arises only from a
  zero first-column entry in the exact scheme and is terminal (degenerate
  rows are never patched up with epsilon tricks here).
* spectral_abscissa / find_zeros: Aberth-Ehrlich simultaneous iteration in
  double precision, giving zeros, the spectral abscissa (max real part)
  and the count of zeros in the open right half-plane.

stability_oracle_check cross-validates the two routes on random inputs.

The integer fast path inside is_hurwitz_exact is a fraction-free Routh:
rows 2 and 3 are plain cross-multiplications, and from row 4 on each row
is exactly divisible by the first entry of the row three above.  Early
exit at the first non-positive pivot keeps every performed division's
divisor positive, so verdicts are bit-identical to the Fraction scheme
(property-tested against it).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from .polycore import (
    IntPolynomial,
    Polynomial,
    RatPolynomial,
    clear_denominators,
    coeffs_desc,
)

MAX_ROOTFIND_DEGREE = 64  # double precision is vouched for only up to here
_ABERTH_MAX_ITER = 500
_ABERTH_TOL = 1e-13
_ABERTH_STALL_TOL = 1e-5  # steps this small that stop improving = fp floor
# (multiplicity-m zeros pin double-precision steps near eps^(1/m), so the
# floor sits around 1e-8 for m = 2 and higher still for m = 3)
_POLISH_DPS = 50
_BACKWARD_TOL = "1e-20"  # |p(z)| <= tol * sum |a_i| max(1,|z|)^i after polish


class Verdict(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    BOUNDARY = "boundary"


class RootFinderError(RuntimeError):
    pass


@dataclass(frozen=True)
class StabilityReport:
    verdict: Verdict
    abscissa: Optional[float] = None
    rhp_zero_count: Optional[int] = None
    zeros: Optional[tuple[complex, ...]] = None


@dataclass(frozen=True)
class OracleReport:
    trials: int
    skipped: int
    discrepancies: tuple


def _routh_verdict_int(cd: list[int]) -> Verdict:
    """Fraction-free Routh verdict for descending integer coefficients, all > 0."""
    n = len(cd) - 1
    if n == 0:
        return Verdict.STABLE
    rows = [cd[0::2], cd[1::2]]
    for i in range(2, n + 1):
        upper, lower = rows[i - 2], rows[i - 1]
        div = rows[i - 3][0] if i >= 4 else 1
        u0, l0 = upper[0], lower[0]
        width = len(upper) - 1
        new = []
        for j in range(width):
            l1 = lower[j + 1] if j + 1 < len(lower) else 0
            num = l0 * upper[j + 1] - u0 * l1
            q = num // div
            if q * div != num:
                # divisibility is expected to be exact; fall back to the
                # Fraction scheme rather than trust a floored quotient
                return _routh_verdict_fraction(cd)
            new.append(q)
        rows.append(new)
        if new[0] <= 0:
            return Verdict.UNSTABLE if new[0] < 0 else Verdict.BOUNDARY
    return Verdict.STABLE


def _routh_verdict_fraction(cd: list) -> Verdict:
    """Classic Routh array over Fractions; reference implementation."""
    n = len(cd) - 1
    if n == 0:
        return Verdict.STABLE
    rows = [[Fraction(c) for c in cd[0::2]], [Fraction(c) for c in cd[1::2]]]
    for i in range(2, n + 1):
        upper, lower = rows[i - 2], rows[i - 1]
        width = len(upper) - 1
        new = []
        for j in range(width):
            l1 = lower[j + 1] if j + 1 < len(lower) else Fraction(0)
            new.append((lower[0] * upper[j + 1] - upper[0] * l1) / lower[0])
        rows.append(new)
        if new[0] <= 0:
            return Verdict.UNSTABLE if new[0] < 0 else Verdict.BOUNDARY
    return Verdict.STABLE


def is_hurwitz_exact(p: Polynomial) -> Verdict:
    """Exact stability verdict.

    Requires degree >= 1 and a positive leading coefficient.  A Hurwitz
    polynomial with positive leading coefficient has all coefficients
    positive, so any coefficient <= 0 short-circuits to "unstable".
    """
    if p.degree == 0:
        raise ValueError("constant polynomial has no stability verdict")
    if p.coeffs[-1] <= 0:
        raise ValueError("leading coefficient must be positive")
    if any(c <= 0 for c in p.coeffs):
        return Verdict.UNSTABLE
    if isinstance(p, RatPolynomial):
        q, _ = clear_denominators(p)
    else:
        q = p
    cd = list(coeffs_desc(q))
    return _routh_verdict_int(cd)


def _scaled_double_coeffs(p: Polynomial) -> np.ndarray:
    """Ascending coefficients as doubles, scaled by the largest magnitude."""
    exact = [Fraction(c) for c in p.coeffs]
    scale = max(abs(c) for c in exact)
    return np.array([float(c / scale) for c in exact], dtype=np.float64)


def _polish_and_certify(p: Polynomial, z: np.ndarray) -> np.ndarray:
    """Newton-polish each approximate zero at high precision, then require a
    tiny backward error: |p(z)| <= tol * sum_i |a_i| max(1,|z|)^i.

    The backward gate stays meaningful at (near-)multiple zeros, where the
    forward |p|/|p'| measure blows up.
    """
    import mpmath as mp

    exact = [Fraction(c) for c in p.coeffs]
    scale = max(abs(c) for c in exact)
    with mp.workdps(_POLISH_DPS):
        asc = [mp.mpf(c.numerator) / mp.mpf(c.denominator)
               for c in (c / scale for c in exact)]
        desc = asc[::-1]
        dd = [c * k for c, k in zip(desc[:-1], range(len(asc) - 1, 0, -1))]
        tol = mp.mpf(_BACKWARD_TOL)
        out = []
        for z0 in z:
            w = mp.mpc(z0)
            for _ in range(60):
                dw = mp.polyval(dd, w)
                if dw == 0:
                    break
                step = mp.polyval(desc, w) / dw
                w -= step
                if abs(step) < mp.mpf("1e-30") * max(1, abs(w)):
                    break
            m = max(mp.mpf(1), abs(w))
            bound = tol * mp.fsum(abs(c) * m**i for i, c in enumerate(asc))
            if abs(mp.polyval(desc, w)) > bound:
                raise RootFinderError(
                    f"root finder failed: backward error above {_BACKWARD_TOL} at {complex(w)}"
                )
            out.append(complex(w))
    return np.array(out, dtype=np.complex128)


def find_zeros(p: Polynomial) -> tuple[complex, ...]:
    """All zeros, sorted by (real, imag).

    Aberth-Ehrlich simultaneous iteration in double precision, then a
    per-zero Newton polish at 50 significant digits with a backward-error
    certificate.  Degree is capped at MAX_ROOTFIND_DEGREE; beyond that the
    double-precision stage cannot be vouched for, so it refuses rather than
    degrade silently.
    """
    n = p.degree
    if n < 1:
        raise ValueError("constant polynomial has no zeros")
    if n > MAX_ROOTFIND_DEGREE:
        raise ValueError(f"degree {n} exceeds root-finder cap {MAX_ROOTFIND_DEGREE}")
    a = _scaled_double_coeffs(p)
    if a[-1] == 0.0:
        raise RootFinderError("root finder failed: leading coefficient underflow")

    # Fujiwara bound: 2 * max_k |a_{n-k}/a_n|^(1/k), constant term halved.
    # Tight enough to start the iteration near the root annulus even when
    # interior coefficients dwarf the leading one.
    ratios = np.abs(a[:-1]) / abs(a[-1])
    ratios[0] *= 0.5
    radius = max(1e-3, 2.0 * np.max(ratios ** (1.0 / (n - np.arange(n)))))
    k = np.arange(n)
    z = radius * np.exp(1j * (2.0 * np.pi * k / n + 0.7))

    deriv = a[1:] * np.arange(1, n + 1)
    converged = False
    best = np.inf
    stall = 0
    for _ in range(_ABERTH_MAX_ITER):
        pv = np.zeros_like(z)
        for c in a[::-1]:
            pv = pv * z + c
        dv = np.zeros_like(z)
        for c in deriv[::-1]:
            dv = dv * z + c
        dv = np.where(dv == 0, 1e-300, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1.0, denom)
        step = w / denom
        z = z - step
        rel = np.max(np.abs(step) / np.maximum(1.0, np.abs(z)))
        if rel < _ABERTH_TOL:
            converged = True
            break
        # clustered zeros can pin the step size at the double-precision
        # floor; treat "small and no longer improving" as converged and let
        # the polish stage finish the job
        if rel < 0.9 * best:
            best = rel
            stall = 0
        else:
            stall += 1
        if rel < _ABERTH_STALL_TOL and stall >= 12:
            converged = True
            break
    if not converged:
        raise RootFinderError("root finder failed: no convergence within iteration cap")

    z = _polish_and_certify(p, z)
    order = np.lexsort((z.imag, z.real))
    return tuple(complex(v) for v in z[order])


def spectral_abscissa(p: Polynomial) -> StabilityReport:
    """Exact verdict plus numeric zeros, abscissa and right-half-plane count.

    The verdict comes from is_hurwitz_exact (sign-normalized); the numeric
    fields come from the independent Aberth route.
    """
    if p.coeffs[-1] < 0:
        cls = type(p)
        flipped = cls(tuple(-c for c in p.coeffs))
        verdict = is_hurwitz_exact(flipped)
    else:
        verdict = is_hurwitz_exact(p)
    zeros = find_zeros(p)
    abscissa = max(z.real for z in zeros)
    rhp = sum(1 for z in zeros if z.real > 0)
    return StabilityReport(
        verdict=verdict, abscissa=abscissa, rhp_zero_count=rhp, zeros=zeros
    )


def stability_oracle_check(
    trials: int, max_degree: int, max_coeff: int, seed: int
) -> OracleReport:
    """Cross-validate the exact verdict against the numeric abscissa sign.

    Random positive-integer polynomials, per-trial RNG derived from the
    seed and trial index (stable under any execution order).  Trials whose
    |abscissa| < 1e-6 are skipped as numerically undecidable.
    """
    skipped = 0
    discrepancies = []
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        degree = rng.randint(1, max_degree)
        coeffs = [rng.randint(1, max_coeff) for _ in range(degree + 1)]
        p = IntPolynomial(tuple(coeffs))
        report = spectral_abscissa(p)
        if abs(report.abscissa) < 1e-6:
            skipped += 1
            continue
        exact_stable = report.verdict == Verdict.STABLE
        numeric_stable = report.abscissa < 0
        if exact_stable != numeric_stable:
            discrepancies.append((coeffs, report.verdict.value, report.abscissa))
    return OracleReport(
        trials=trials, skipped=skipped, discrepancies=tuple(discrepancies)
    )
