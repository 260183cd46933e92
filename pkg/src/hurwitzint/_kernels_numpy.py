"""Pure-numpy search kernels: vectorized rank decoding + masked Routh rows.

Functionally identical to the JIT backend (same counts, same witness and
deferred buffers in the same order), implemented as whole-chunk array
operations instead of a per-vector loop.  Single-threaded.

Lane bookkeeping mirrors the scalar kernel's control flow exactly: a lane is
"undecided" until it either trips an operand-magnitude or exact-division
guard (deferred), hits a non-positive pivot (not stable), or survives all
rows (stable).
"""

import math

import numpy as np

from .backend import INT64_GUARD

_LIM = INT64_GUARD


def _decode_box(ranks, np1, m, f):
    L = ranks.shape[0]
    v = np.empty((L, np1), dtype=np.int64)
    v[:, f] = m
    n = np1 - 1
    w = 1
    weights = np.empty(np1, dtype=np.int64)
    for i in range(n, f, -1):
        weights[i] = w
        w *= m
    for i in range(f - 1, -1, -1):
        weights[i] = w
        w *= m - 1
    for i in range(np1):
        if i == f:
            continue
        base = m - 1 if i < f else m
        v[:, i] = (ranks // weights[i]) % base + 1
    return v


def _decode_comp(ranks, np1, total, first):
    """Compositions of `total` into np1-1 positive parts, lex ascending,
    prefixed by the pinned first coefficient."""
    L = ranks.shape[0]
    k = np1 - 1
    v = np.empty((L, np1), dtype=np.int64)
    v[:, 0] = first
    if k == 1:
        v[:, 1] = total
        return v
    comb = np.zeros((total + 1, k), dtype=np.int64)
    for i in range(total + 1):
        for j in range(k):
            comb[i, j] = math.comb(i, j)
    rr = ranks.copy()
    rem = np.full(L, total, dtype=np.int64)
    for pos in range(k - 1):
        left = k - pos
        val = np.ones(L, dtype=np.int64)
        while True:
            cnt = comb[rem - val - 1, left - 2]
            take = rr >= cnt
            if not take.any():
                break
            rr[take] -= cnt[take]
            val[take] += 1
        v[:, pos + 1] = val
        rem -= val
    v[:, k] = rem
    return v


def _canonical_state(v):
    diff = v - v[:, ::-1]
    nz = diff != 0
    has = nz.any(axis=1)
    first = np.argmax(nz, axis=1)
    lead = diff[np.arange(v.shape[0]), first]
    return np.where(~has, 1, np.where(lead < 0, 2, 0)).astype(np.int64)


def _routh_block(v):
    """Classify each row of v: 1 stable, 0 not stable, -1 deferred."""
    L, np1 = v.shape
    n = np1 - 1
    out = np.empty(L, dtype=np.int64)
    if n == 1:
        out[:] = 1
        return out
    W = n // 2 + 2
    rows = [np.zeros((L, W), dtype=np.int64) for _ in range(3)]
    for j in range(W):
        if 2 * j <= n:
            rows[0][:, j] = v[:, 2 * j]
        if 2 * j + 1 <= n:
            rows[1][:, j] = v[:, 2 * j + 1]
    fe = [rows[0][:, 0].copy(), rows[1][:, 0].copy()]
    undecided = np.ones(L, dtype=bool)
    deferred = np.zeros(L, dtype=bool)
    stable = np.zeros(L, dtype=bool)
    for i in range(2, n + 1):
        up = rows[(i - 2) % 3]
        lo = rows[(i - 1) % 3]
        cur = rows[i % 3]
        cur[:] = 0
        u0 = up[:, 0]
        l0 = lo[:, 0]
        bad = undecided & ((u0 >= _LIM) | (l0 >= _LIM))
        deferred |= bad
        undecided &= ~bad
        li = (n - i) // 2 + 1
        if i >= 4:
            div_raw = fe[i - 3]
            div = np.where(div_raw != 0, div_raw, 1)
        for j in range(li):
            a = up[:, j + 1]
            b = lo[:, j + 1]
            bad = undecided & ((np.abs(a) >= _LIM) | (np.abs(b) >= _LIM))
            deferred |= bad
            undecided &= ~bad
            num = l0 * a - u0 * b
            if i >= 4:
                q = num // div
                bad = undecided & (q * div != num)
                deferred |= bad
                undecided &= ~bad
                num = q
            cur[:, j] = num
            if j == 0:
                undecided &= num > 0
        fe.append(cur[:, 0].copy())
    stable = undecided
    out[:] = 0
    out[stable] = 1
    out[deferred] = -1
    return out


def scan_chunks(kind, m, f, starts, start_ranks, lengths, halving,
                witness_cap, defer_cap):
    n_chunks, np1 = starts.shape
    stable_canon = np.zeros(n_chunks, np.int64)
    stable_palin = np.zeros(n_chunks, np.int64)
    n_wit = np.zeros(n_chunks, np.int64)
    n_def = np.zeros(n_chunks, np.int64)
    wit = np.zeros((n_chunks, witness_cap, np1), np.int64)
    dfr = np.zeros((n_chunks, defer_cap, np1), np.int64)
    for ci in range(n_chunks):
        L = int(lengths[ci])
        ranks = start_ranks[ci] + np.arange(L, dtype=np.int64)
        if kind == 0:
            v = _decode_box(ranks, np1, m, f)
        else:
            total = int(starts[ci].sum()) - int(starts[ci, 0])
            v = _decode_comp(ranks, np1, total, int(starts[ci, 0]))
        state = _canonical_state(v)
        if halving:
            keep = state > 0
            v = v[keep]
            state = state[keep]
        code = _routh_block(v)
        is_stable = code == 1
        is_def = code == -1
        stable_canon[ci] = int(is_stable.sum())
        stable_palin[ci] = int((is_stable & (state == 1)).sum())
        n_wit[ci] = int(is_stable.sum())
        n_def[ci] = int(is_def.sum())
        if witness_cap:
            take = v[is_stable][:witness_cap]
            wit[ci, : take.shape[0]] = take
        if defer_cap:
            take = v[is_def][:defer_cap]
            dfr[ci, : take.shape[0]] = take
    return stable_canon, stable_palin, n_wit, wit, n_def, dfr
