"""Search-kernel backend selection.

Two interchangeable kernel implementations exist:

* "numba"  -- JIT-compiled, thread-parallel scan (the default),
* "numpy"  -- vectorized pure-numpy scan, no JIT, single-threaded.

The HURWITZINT_BACKEND environment variable picks one.  Both backends share
the same contract: given per-chunk start vectors and lengths they return
identical count arrays and identical witness/deferred buffers, so results
never depend on the backend (property-tested).

Chunks are fixed-size index ranges, so the work partition -- and with it
every output -- is independent of thread count.
"""

from __future__ import annotations

import os
import sys

ENV_VAR = "HURWITZINT_BACKEND"
BACKENDS = ("numba", "numpy")

CHUNK = 65536  # candidate vectors per work unit
# operand magnitude cap for the int64 Routh scheme: products stay below
# 4.41e18 and their differences below 2^63 - 1
INT64_GUARD = 2_100_000_000


def active_backend() -> str:
    name = os.environ.get(ENV_VAR, "numba").strip().lower()
    if name not in BACKENDS:
        raise ValueError(
            f"{ENV_VAR}={name!r} is not a valid backend; choose from {BACKENDS}"
        )
    return name


def _numba_module():
    # Allow oversubscribed thread counts (determinism tests compare 1 vs 2
    # worker threads even on a single-CPU host): the thread-pool size cap is
    # fixed at first numba import, so raise it before that import happens.
    if "numba" not in sys.modules:
        os.environ.setdefault("NUMBA_NUM_THREADS", str(max(4, os.cpu_count() or 1)))
    from . import _kernels_numba

    return _kernels_numba


def _numpy_module():
    from . import _kernels_numpy

    return _kernels_numpy


def kernel_module(backend: str | None = None):
    name = backend or active_backend()
    if name == "numba":
        return _numba_module()
    return _numpy_module()


def set_search_threads(threads: int, backend: str | None = None) -> int:
    """Set worker thread count for the active backend; returns the count in
    effect (the numpy backend is single-threaded and always reports 1)."""
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    name = backend or active_backend()
    if name == "numpy":
        return 1
    _numba_module()
    import numba

    numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
    return numba.get_num_threads()


def scan_chunks(kind, m, f, starts, start_ranks, lengths, halving,
                witness_cap, defer_cap, backend: str | None = None):
    """Dispatch a slice scan to the selected backend.

    kind: 0 = box-shell odometer (max coefficient m, first occurrence at
    position f), 1 = fixed-sum composition odometer.  `starts` holds each
    chunk's first coefficient vector (descending order), `start_ranks` its
    linear rank within the slice, `lengths` the chunk sizes.
    """
    mod = kernel_module(backend)
    return mod.scan_chunks(
        kind, m, f, starts, start_ranks, lengths, halving, witness_cap, defer_cap
    )
