"""JIT-compiled search kernels: odometer enumeration + int64 fraction-free Routh.

The Routh variant here divides row i (for i >= 4) by the first entry of row
i-3, which is exact over the integers; rows 2 and 3 are plain
cross-multiplications.  Early exit at the first non-positive pivot keeps all
divisors positive.  Any candidate whose intermediate operands could overflow
int64, or whose division fails the exactness check, is pushed to the
"deferred" buffer for exact re-testing by the driver instead of being
classified here.

Classification codes: 1 = stable, 0 = not stable, -1 = deferred.
"""

import numpy as np
from numba import njit, prange

from .backend import INT64_GUARD

_LIM = INT64_GUARD


@njit(cache=True)
def _routh64(v, rows, fe):
    n = v.shape[0] - 1
    if n == 1:
        return 1
    W = rows.shape[1]
    for j in range(W):
        rows[0, j] = v[2 * j] if 2 * j <= n else 0
        rows[1, j] = v[2 * j + 1] if 2 * j + 1 <= n else 0
    fe[0] = rows[0, 0]
    fe[1] = rows[1, 0]
    for i in range(2, n + 1):
        up = rows[(i - 2) % 3]
        lo = rows[(i - 1) % 3]
        cur = rows[i % 3]
        u0 = up[0]
        l0 = lo[0]
        if u0 >= _LIM or l0 >= _LIM:
            return -1
        li = (n - i) // 2 + 1
        div = fe[i - 3] if i >= 4 else 1
        for j in range(li):
            a = up[j + 1]
            b = lo[j + 1]
            if a >= _LIM or a <= -_LIM or b >= _LIM or b <= -_LIM:
                return -1
            num = l0 * a - u0 * b
            if i >= 4:
                q = num // div
                if q * div != num:
                    return -1
                num = q
            cur[j] = num
            if j == 0 and num <= 0:
                return 0
        for j in range(li, W):
            cur[j] = 0
        fe[i] = cur[0]
    return 1


@njit(cache=True)
def _advance_box(v, m, f):
    """Next vector in the shell slice, lex ascending; position f pinned at m,
    positions before f range over 1..m-1, after f over 1..m."""
    np1 = v.shape[0]
    for i in range(np1 - 1, -1, -1):
        if i == f:
            continue
        cap = m - 1 if i < f else m
        if v[i] < cap:
            v[i] += 1
            for j in range(i + 1, np1):
                if j != f:
                    v[j] = 1
            return True
    return False


@njit(cache=True)
def _advance_comp(v):
    """Next composition, lex ascending over positions 1..N; position 0 pinned
    and the total sum preserved."""
    np1 = v.shape[0]
    r = -1
    for i in range(np1 - 1, 0, -1):
        if v[i] > 1:
            r = i
            break
    if r <= 1:
        return False
    j = r - 1
    budget = -1
    for i in range(j + 1, np1):
        budget += v[i]
    v[j] += 1
    for i in range(j + 1, np1 - 1):
        v[i] = 1
    v[np1 - 1] = budget - (np1 - 2 - j)
    return True


@njit(cache=True)
def _canonical_state(v):
    """2 = strictly below its reversal, 1 = palindrome, 0 = above."""
    np1 = v.shape[0]
    for i in range(np1):
        a = v[i]
        b = v[np1 - 1 - i]
        if a < b:
            return 2
        if a > b:
            return 0
    return 1


@njit(cache=True, parallel=True)
def scan_chunks(kind, m, f, starts, start_ranks, lengths, halving,
                witness_cap, defer_cap):
    n_chunks, np1 = starts.shape
    n = np1 - 1
    W = n // 2 + 2
    stable_canon = np.zeros(n_chunks, np.int64)
    stable_palin = np.zeros(n_chunks, np.int64)
    n_wit = np.zeros(n_chunks, np.int64)
    n_def = np.zeros(n_chunks, np.int64)
    wit = np.zeros((n_chunks, witness_cap, np1), np.int64)
    dfr = np.zeros((n_chunks, defer_cap, np1), np.int64)
    for ci in prange(n_chunks):
        v = starts[ci].copy()
        rows = np.zeros((3, W), np.int64)
        fe = np.zeros(np1, np.int64)
        cc = np.int64(0)
        pp = np.int64(0)
        nw = np.int64(0)
        nd = np.int64(0)
        for step in range(lengths[ci]):
            if step > 0:
                if kind == 0:
                    _advance_box(v, m, f)
                else:
                    _advance_comp(v)
            state = _canonical_state(v)
            if halving and state == 0:
                continue
            code = _routh64(v, rows, fe)
            if code < 0:
                if nd < defer_cap:
                    for j in range(np1):
                        dfr[ci, nd, j] = v[j]
                nd += 1
            elif code == 1:
                cc += 1
                if state == 1:
                    pp += 1
                if nw < witness_cap:
                    for j in range(np1):
                        wit[ci, nw, j] = v[j]
                nw += 1
        stable_canon[ci] = cc
        stable_palin[ci] = pp
        n_wit[ci] = nw
        n_def[ci] = nd
    return stable_canon, stable_palin, n_wit, wit, n_def, dfr
