"""Exhaustive search for c-optimal and sigma-optimal stable polynomials.

Search space structure:

* c-optimal: ascend the bound m = 1, 2, ...; for each m scan the shell of
  vectors in {1..m}^(N+1) whose maximum is exactly m (smaller boxes were
  already covered by earlier m).  The shell is partitioned into slices by
  the first position holding m.
* sigma-optimal: ascend the sum s = N+1, N+2, ...; for each s scan all
  compositions of s into N+1 positive parts, sliced by the leading part.

A slice is the checkpoint unit.  Inside a slice, work is cut into
fixed-size chunks of the enumeration order, so counts and witness buffers
are independent of thread count and backend.  Candidates are classified by
the int64 fraction-free Routh kernel; any candidate the kernel cannot
classify safely (operand-magnitude or exact-division guard) comes back in a
"deferred" buffer and is re-tested here in exact arithmetic.  Every witness
in a returned result is re-certified with the exact Fraction-based test.

Reverse-symmetry halving is on by default: the kernel tests only candidates
lexicographically <= their reversal and the driver emits both members of
each pair (reversal preserves stability, the coefficient sum and the
maximum coefficient).  Totals follow from 2*canonical - palindromic.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Callable, Optional

import numpy as np

from . import backend
from .backend import CHUNK
from .polycore import IntPolynomial
from .stability import Verdict, find_zeros, is_hurwitz_exact

DEFAULT_BUDGET = 10**10
WITNESS_CAP = 64  # per-chunk; overflowing chunks are rescanned exactly
DEFER_CAP = 64
SMALL_WITNESS_LIMIT = 512  # census returns witness records only below this


class BudgetExceededError(RuntimeError):
    pass


class SearchCancelled(RuntimeError):
    """Raised when a cancel hook fires; carries explicit partial coverage."""

    def __init__(self, coverage: dict):
        self.coverage = coverage
        super().__init__(f"search cancelled; coverage: {coverage}")


@dataclass(frozen=True)
class WitnessRecord:
    poly: IntPolynomial
    abscissa: float
    sigma: int
    pmax: int


@dataclass(frozen=True)
class SearchResult:
    kind: str  # "c-optimal" | "sigma-optimal"
    degree: int
    cap: int
    optimum: Optional[int]
    witnesses: tuple[WitnessRecord, ...]
    candidates_tested: int
    wall_time: float
    cap_exhausted: bool = False


@dataclass(frozen=True)
class CensusResult:
    degree: int
    max_coeff: int
    count: int
    witnesses: Optional[tuple[WitnessRecord, ...]]
    candidates_tested: int
    wall_time: float


@dataclass(frozen=True)
class RunManifest:
    subcommand: str
    parameters: dict
    tool_version: str
    timestamp: str
    outputs: tuple[str, ...]


def append_manifest(path: str, manifest: RunManifest) -> None:
    """Append one manifest record (JSON line); never rewrites old records."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(asdict(manifest), sort_keys=True) + "\n")


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# ---------------------------------------------------------------------------
# slice geometry: sizes and rank decoding (mirrors the kernels' odometers)

def _box_slice_size(N: int, m: int, f: int) -> int:
    return (m - 1) ** f * m ** (N - f)


def _box_unrank(N: int, m: int, f: int, r: int) -> list[int]:
    np1 = N + 1
    weights = [0] * np1
    w = 1
    for i in range(N, f, -1):
        weights[i] = w
        w *= m
    for i in range(f - 1, -1, -1):
        weights[i] = w
        w *= m - 1
    v = [0] * np1
    v[f] = m
    for i in range(np1):
        if i == f:
            continue
        base = m - 1 if i < f else m
        v[i] = (r // weights[i]) % base + 1
    return v


def _comp_slice_size(N: int, s: int, a: int) -> int:
    return math.comb(s - a - 1, N - 1)


def _comp_unrank(N: int, s: int, a: int, r: int) -> list[int]:
    v = [a]
    t = s - a
    k = N
    for pos in range(k - 1):
        left = k - pos
        val = 1
        while True:
            cnt = math.comb(t - val - 1, left - 2)
            if r < cnt:
                break
            r -= cnt
            val += 1
        v.append(val)
        t -= val
    v.append(t)
    return v


def _advance_box_py(v: list[int], m: int, f: int) -> bool:
    np1 = len(v)
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


def _advance_comp_py(v: list[int]) -> bool:
    np1 = len(v)
    r = -1
    for i in range(np1 - 1, 0, -1):
        if v[i] > 1:
            r = i
            break
    if r <= 1:
        return False
    j = r - 1
    budget = sum(v[j + 1:]) - 1
    v[j] += 1
    for i in range(j + 1, np1 - 1):
        v[i] = 1
    v[np1 - 1] = budget - (np1 - 2 - j)
    return True


def _canonical_state_py(v) -> int:
    rev = v[::-1]
    if v < rev:
        return 2
    if v > rev:
        return 0
    return 1


def _exact_stable(vec_desc) -> bool:
    p = IntPolynomial(tuple(reversed(vec_desc)))
    return is_hurwitz_exact(p) is Verdict.STABLE


# ---------------------------------------------------------------------------
# slice scanning

def _scan_slice(kind: int, N: int, level: int, sub: int, halving: bool,
                collect: bool, collect_limit: Optional[int] = None) -> dict:
    """Scan one slice; returns exact canonical/palindromic stable counts and
    (if collect) the complete list of canonical stable vectors.  A slice
    whose witness list would exceed collect_limit stores None instead (the
    counts stay exact)."""
    if kind == 0:
        size = _box_slice_size(N, level, sub)
        unrank = lambda r: _box_unrank(N, level, sub, r)
    else:
        size = _comp_slice_size(N, level, sub)
        unrank = lambda r: _comp_unrank(N, level, sub, r)
    n_chunks = (size + CHUNK - 1) // CHUNK
    starts = np.empty((n_chunks, N + 1), dtype=np.int64)
    ranks = np.empty(n_chunks, dtype=np.int64)
    lengths = np.empty(n_chunks, dtype=np.int64)
    for ci in range(n_chunks):
        r0 = ci * CHUNK
        ranks[ci] = r0
        lengths[ci] = min(CHUNK, size - r0)
        starts[ci] = unrank(r0)
    wc = WITNESS_CAP if collect else 0
    canon_a, palin_a, nwit_a, wit, ndef_a, dfr = backend.scan_chunks(
        kind, level, sub, starts, ranks, lengths, halving, wc, DEFER_CAP
    )

    canon = 0
    palin = 0
    witnesses: list[tuple[int, ...]] = []
    for ci in range(n_chunks):
        rescan = ndef_a[ci] > DEFER_CAP or (collect and nwit_a[ci] > wc)
        if rescan:
            cc, pp, ws = _rescan_chunk_exact(
                kind, level, sub, [int(x) for x in starts[ci]],
                int(lengths[ci]), halving
            )
            canon += cc
            palin += pp
            if collect:
                witnesses.extend(ws)
            continue
        cc = int(canon_a[ci])
        pp = int(palin_a[ci])
        ws = [tuple(int(x) for x in wit[ci, k]) for k in range(int(nwit_a[ci]))] \
            if collect else []
        for k in range(int(ndef_a[ci])):
            vec = tuple(int(x) for x in dfr[ci, k])
            if _exact_stable(vec):
                cc += 1
                if vec == vec[::-1]:
                    pp += 1
                if collect:
                    ws.append(vec)
        canon += cc
        palin += pp
        if collect:
            witnesses.extend(ws)
    if collect and collect_limit is not None and len(witnesses) > collect_limit:
        out_witnesses = None
    else:
        out_witnesses = sorted(witnesses) if collect else None
    return {
        "canon": canon,
        "palin": palin,
        "tested": size,
        "witnesses": out_witnesses,
    }


def _rescan_chunk_exact(kind, level, sub, start_vec, length, halving):
    """Exact-arithmetic fallback for a chunk whose kernel buffers overflowed."""
    v = list(start_vec)
    cc = 0
    pp = 0
    ws = []
    for step in range(length):
        if step > 0:
            if kind == 0:
                _advance_box_py(v, level, sub)
            else:
                _advance_comp_py(v)
        state = _canonical_state_py(v)
        if halving and state == 0:
            continue
        if _exact_stable(v):
            cc += 1
            if state == 1:
                pp += 1
            ws.append(tuple(v))
    return cc, pp, ws


# ---------------------------------------------------------------------------
# checkpoints

def _load_checkpoint(path: Optional[str], header: dict) -> dict:
    if path is None or not os.path.exists(path):
        return {"header": header, "slices": {}}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    for key, want in header.items():
        got = data.get("header", {}).get(key)
        if got != want:
            raise ValueError(
                f"checkpoint {path} was created with {key}={got!r}; "
                f"this run needs {key}={want!r}"
            )
    return data


def _save_checkpoint(path: Optional[str], state: dict) -> None:
    if path is None:
        return
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(state, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# witness assembly

def _expand_and_certify(canonical: list[tuple[int, ...]], halving: bool,
                        expect_total: int) -> tuple[WitnessRecord, ...]:
    full = set()
    for vec in canonical:
        full.add(vec)
        if halving:
            full.add(vec[::-1])
    if len(full) != expect_total:
        raise RuntimeError(
            f"witness bookkeeping mismatch: expanded {len(full)} != counted {expect_total}"
        )
    records = []
    for vec in sorted(full):
        p = IntPolynomial(tuple(reversed(vec)))
        if is_hurwitz_exact(p) is not Verdict.STABLE:
            raise RuntimeError(f"kernel claimed stability but exact test disagrees: {vec}")
        zs = find_zeros(p)
        records.append(
            WitnessRecord(
                poly=p,
                abscissa=max(z.real for z in zs),
                sigma=int(sum(vec)),
                pmax=int(max(vec)),
            )
        )
    return tuple(records)


def _level_total(canon: int, palin: int, halving: bool) -> int:
    return 2 * canon - palin if halving else canon


# ---------------------------------------------------------------------------
# public drivers

def _sweep(kind_label: str, kind: int, N: int, cap: int, levels, subs_of,
           *, halving: bool, threads: Optional[int], budget: int,
           checkpoint: Optional[str], cancel_check: Optional[Callable[[], bool]],
           collect: bool) -> tuple[Optional[int], list, int, dict]:
    """Shared level-ascending sweep.  Returns (optimum_level, canonical
    witnesses at that level, candidates_tested, per-level totals)."""
    if N < 1:
        raise ValueError("degree must be >= 1")
    if threads is not None:
        backend.set_search_threads(threads)
    header = {
        "kind": kind_label,
        "degree": N,
        "halving": halving,
        "chunk": CHUNK,
        "witness_cap": WITNESS_CAP if collect else 0,
    }
    state = _load_checkpoint(checkpoint, header)
    tested = sum(rec["tested"] for rec in state["slices"].values())
    level_totals: dict[int, int] = {}
    for level in levels:
        subs = [sub for sub in subs_of(level) if _slice_size(kind, N, level, sub) > 0]
        level_size = sum(_slice_size(kind, N, level, sub) for sub in subs)
        new_size = sum(
            _slice_size(kind, N, level, sub)
            for sub in subs
            if f"{level}:{sub}" not in state["slices"]
        )
        if tested + new_size > budget:
            raise BudgetExceededError(
                f"level {level} needs {new_size} candidates on top of {tested}; "
                f"budget is {budget}"
            )
        canon = palin = 0
        canonical: list[tuple[int, ...]] = []
        for sub in subs:
            key = f"{level}:{sub}"
            if key not in state["slices"]:
                if cancel_check is not None and cancel_check():
                    raise SearchCancelled(
                        {
                            "kind": kind_label,
                            "degree": N,
                            "completed_slices": sorted(state["slices"]),
                            "interrupted_at": key,
                        }
                    )
                outcome = _scan_slice(kind, N, level, sub, halving, collect)
                state["slices"][key] = outcome
                tested += outcome["tested"]
                _save_checkpoint(checkpoint, state)
            rec = state["slices"][key]
            canon += rec["canon"]
            palin += rec["palin"]
            if collect:
                canonical.extend(tuple(w) for w in rec["witnesses"])
        total = _level_total(canon, palin, halving)
        level_totals[level] = total
        if total > 0:
            return level, canonical, tested, level_totals
    return None, [], tested, level_totals


def _slice_size(kind: int, N: int, level: int, sub: int) -> int:
    return _box_slice_size(N, level, sub) if kind == 0 else _comp_slice_size(N, level, sub)


def search_c_optimal(N: int, pmax_cap: int, *, halving: bool = True,
                     threads: Optional[int] = None, budget: int = DEFAULT_BUDGET,
                     checkpoint: Optional[str] = None,
                     cancel_check: Optional[Callable[[], bool]] = None,
                     manifest_path: Optional[str] = None) -> SearchResult:
    """Smallest m such that a stable polynomial lives in {1..m}^(N+1), with
    every stable polynomial of that box as an annotated witness."""
    if pmax_cap < 1:
        raise ValueError("pmax_cap must be >= 1")
    t0 = time.perf_counter()
    optimum, canonical, tested, level_totals = _sweep(
        "c", 0, N, pmax_cap, range(1, pmax_cap + 1), lambda m: range(N + 1),
        halving=halving, threads=threads, budget=budget, checkpoint=checkpoint,
        cancel_check=cancel_check, collect=True,
    )
    if optimum is None:
        result = SearchResult("c-optimal", N, pmax_cap, None, (), tested,
                              time.perf_counter() - t0, cap_exhausted=True)
    else:
        witnesses = _expand_and_certify(canonical, halving, level_totals[optimum])
        result = SearchResult("c-optimal", N, pmax_cap, optimum, witnesses,
                              tested, time.perf_counter() - t0)
    _maybe_manifest(manifest_path, "search-c", dict(degree=N, cap=pmax_cap,
                    halving=halving, optimum=result.optimum), checkpoint)
    return result


def search_sigma_optimal(N: int, sigma_cap: int, *, halving: bool = True,
                         threads: Optional[int] = None, budget: int = DEFAULT_BUDGET,
                         checkpoint: Optional[str] = None,
                         cancel_check: Optional[Callable[[], bool]] = None,
                         manifest_path: Optional[str] = None) -> SearchResult:
    """Smallest coefficient sum s admitting a stable polynomial, with every
    stable composition of s as an annotated witness."""
    if sigma_cap < N + 1:
        raise ValueError("sigma_cap must be >= N+1")
    t0 = time.perf_counter()
    optimum, canonical, tested, level_totals = _sweep(
        "sigma", 1, N, sigma_cap, range(N + 1, sigma_cap + 1),
        lambda s: range(1, s - N + 1),
        halving=halving, threads=threads, budget=budget, checkpoint=checkpoint,
        cancel_check=cancel_check, collect=True,
    )
    if optimum is None:
        result = SearchResult("sigma-optimal", N, sigma_cap, None, (), tested,
                              time.perf_counter() - t0, cap_exhausted=True)
    else:
        witnesses = _expand_and_certify(canonical, halving, level_totals[optimum])
        result = SearchResult("sigma-optimal", N, sigma_cap, optimum, witnesses,
                              tested, time.perf_counter() - t0)
    _maybe_manifest(manifest_path, "search-sigma", dict(degree=N, cap=sigma_cap,
                    halving=halving, optimum=result.optimum), checkpoint)
    return result


def count_stable_in_box(N: int, m: int, *, halving: bool = True,
                        threads: Optional[int] = None, budget: int = DEFAULT_BUDGET,
                        checkpoint: Optional[str] = None,
                        cancel_check: Optional[Callable[[], bool]] = None,
                        manifest_path: Optional[str] = None) -> CensusResult:
    """Exact number of stable polynomials with all coefficients in {1..m}.

    Deterministic for any thread count and backend.  Witness records are
    attached when the census is small (< SMALL_WITNESS_LIMIT), else None.
    """
    if N < 1 or m < 1:
        raise ValueError("need N >= 1 and m >= 1")
    box = (m ** (N + 1))
    if box > budget:
        raise BudgetExceededError(f"box size {box} exceeds budget {budget}")
    t0 = time.perf_counter()
    if threads is not None:
        backend.set_search_threads(threads)
    header = {"kind": "census", "degree": N, "halving": halving,
              "chunk": CHUNK, "witness_cap": WITNESS_CAP}
    state = _load_checkpoint(checkpoint, header)
    canon = palin = 0
    tested = 0
    canonical: list[tuple[int, ...]] = []
    lost = False
    for level in range(1, m + 1):
        for sub in range(N + 1):
            if _box_slice_size(N, level, sub) == 0:
                continue
            key = f"{level}:{sub}"
            if key not in state["slices"]:
                if cancel_check is not None and cancel_check():
                    raise SearchCancelled(
                        {"kind": "census", "degree": N,
                         "completed_slices": sorted(state["slices"]),
                         "interrupted_at": key}
                    )
                outcome = _scan_slice(0, N, level, sub, halving, collect=True,
                                      collect_limit=SMALL_WITNESS_LIMIT)
                state["slices"][key] = outcome
                _save_checkpoint(checkpoint, state)
            rec = state["slices"][key]
            canon += rec["canon"]
            palin += rec["palin"]
            tested += rec["tested"]
            if rec["witnesses"] is None:
                lost = True
            else:
                canonical.extend(tuple(w) for w in rec["witnesses"])
    count = _level_total(canon, palin, halving)
    if count < SMALL_WITNESS_LIMIT and not lost:
        witnesses = _expand_and_certify(canonical, halving, count)
    else:
        witnesses = None
    result = CensusResult(N, m, count, witnesses, tested,
                          time.perf_counter() - t0)
    _maybe_manifest(manifest_path, "census", dict(degree=N, max_coeff=m,
                    halving=halving, count=count), checkpoint)
    return result


def _maybe_manifest(path: Optional[str], sub: str, params: dict,
                    checkpoint: Optional[str]) -> None:
    if path is None:
        return
    from . import __version__

    outputs = tuple(p for p in (checkpoint,) if p)
    append_manifest(path, RunManifest(sub, params, __version__, _now_iso(), outputs))
