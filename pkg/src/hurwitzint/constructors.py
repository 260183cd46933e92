"""Constructions that produce stable integer polynomials of every degree.

* mobius_ell: closed-form family with small coefficients at every degree,
  obtained by pushing 2 + z + ... + z**N through the right-half-plane
  Mobius substitution z -> (1+z)/(1-z) and clearing denominators (for
  even N all coefficients are even and get halved).
* double / undouble: the substitution q(z) -> z**deg(q) * q(z + 1/z),
  which preserves stability in both directions, doubles the degree, and
  sends the coefficient sum to q(2).  Its image is exactly the symmetric
  (palindromic, even-degree) polynomials, and undouble inverts it.
* a_family: repeated doubling of z + 1, the minimal-sum chain.
* kfold_symmetry_order: how many undoublings a polynomial admits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .polycore import IntPolynomial, evaluate_at_integer, is_symmetric


@dataclass(frozen=True)
class DoublingChain:
    """A doubling chain: base, number of steps, final polynomial.

    sums[0] is the coefficient sum of the base and sums[i+1] the sum after
    i+1 doublings; the doubling identity makes sums[i+1] equal to the
    previous polynomial evaluated at 2.
    """

    base: IntPolynomial
    steps: int
    result: IntPolynomial
    sums: tuple[int, ...]


def mobius_ell(degree: int) -> IntPolynomial:
    """The degree-N member of the Mobius family.

    Ascending coefficient j is binom(N+1, j+1) + binom(N, j) for even j
    and binom(N, j) for odd j; for even N everything is divisible by 2
    and is halved.  Stable for every N >= 1 with max coefficient growing
    only like 2**N / sqrt(N) (certified stable in the tests rather than
    assumed).
    """
    n = degree
    if n < 1:
        raise ValueError("degree must be >= 1")
    asc = []
    for j in range(n + 1):
        c = comb(n, j)
        if j % 2 == 0:
            c += comb(n + 1, j + 1)
        asc.append(c)
    if n % 2 == 0:
        asc = [c // 2 for c in asc]
    return IntPolynomial(tuple(asc))


def double(q: IntPolynomial) -> IntPolynomial:
    """z**deg(q) * q(z + 1/z), exactly; degree doubles, symmetry is gained."""
    n = q.degree
    out = [0] * (2 * n + 1)
    # q_j z^(n-j) (z^2+1)^j contributes binom(j, i) at z^(n-j+2i)
    for j, qj in enumerate(q.coeffs):
        if qj == 0:
            continue
        for i in range(j + 1):
            out[n - j + 2 * i] += qj * comb(j, i)
    return IntPolynomial(tuple(out))


def undouble(p: IntPolynomial) -> IntPolynomial:
    """The unique q with double(q) == p; requires p symmetric of even degree."""
    if not is_symmetric(p):
        raise ValueError("not symmetric: undoubling requires an even-degree palindrome")
    n = p.degree // 2
    rem = list(p.coeffs)
    q = [0] * (n + 1)
    # the basis z^(n-j)(z^2+1)^j is unitriangular from the top coefficient down
    for j in range(n, -1, -1):
        qj = rem[n + j]
        q[j] = qj
        if qj != 0:
            for i in range(j + 1):
                rem[n - j + 2 * i] -= qj * comb(j, i)
    if any(rem):
        raise AssertionError("undouble left a nonzero remainder on symmetric input")
    return IntPolynomial(tuple(q))


def a_family(steps: int) -> DoublingChain:
    """Repeatedly double z + 1; steps >= 0.  Result has degree 2**steps."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    base = IntPolynomial((1, 1))
    cur = base
    sums = [sum(cur.coeffs)]
    for _ in range(steps):
        cur = double(cur)
        sums.append(sum(cur.coeffs))
    return DoublingChain(base=base, steps=steps, result=cur, sums=tuple(sums))


def doubling_chain(base: IntPolynomial, steps: int) -> DoublingChain:
    """Double an arbitrary base polynomial a given number of times."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    cur = base
    sums = [sum(cur.coeffs)]
    for _ in range(steps):
        cur = double(cur)
        sums.append(sum(cur.coeffs))
    return DoublingChain(base=base, steps=steps, result=cur, sums=tuple(sums))


def kfold_symmetry_order(p: IntPolynomial) -> int:
    """Number of successive undoublings p admits (0 if not symmetric)."""
    order = 0
    cur = p
    while cur.degree >= 2 and is_symmetric(cur):
        cur = undouble(cur)
        order += 1
    return order


def coefficient_sum_after_doubling(q: IntPolynomial) -> int:
    """Coefficient sum of double(q) without forming it: q evaluated at 2."""
    return evaluate_at_integer(q, 2)
