"""Row-band thread parallelism with a deterministic output contract.

Workers compute disjoint row bands of a shared output array, so results are
bit-identical for any worker count.  The cap comes from the environment
variable STEREO_FOREMOST_THREADS (0 or unset = auto).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "STEREO_FOREMOST_THREADS"


def thread_cap() -> int:
    """Effective worker count: env cap, 0/unset meaning cpu_count."""
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        cap = os.cpu_count() or 1
    return max(1, cap)


def band_slices(n_rows: int, n_bands: int) -> list[slice]:
    """Split n_rows into at most n_bands contiguous, near-equal slices."""
    n_bands = max(1, min(n_bands, n_rows))
    step = (n_rows + n_bands - 1) // n_bands
    return [slice(i, min(i + step, n_rows)) for i in range(0, n_rows, step)]


def run_banded(fn, n_rows: int) -> None:
    """Call fn(row_slice) for each band, possibly from worker threads.

    fn must write only inside its own band; numpy releases the GIL on the
    heavy array ops so threads give real speedup.
    """
    workers = thread_cap()
    bands = band_slices(n_rows, workers)
    if workers == 1 or len(bands) == 1:
        for b in bands:
            fn(b)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for f in [pool.submit(fn, b) for b in bands]:
            f.result()
