"""Worker-count resolution and deterministic row-parallel sweeps."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV_VAR = "QLD_THREADS"


def resolve_workers(workers: int | None = None) -> int:
    """Explicit count, else the QLD_THREADS variable, else all cores."""
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {env!r}")
    return os.cpu_count() or 1


def map_indexed(fn, count: int, workers: int):
    """[fn(0), ..., fn(count - 1)], computed on ``workers`` threads.

    Each fn(i) must be a pure function of i, so the result is independent of
    scheduling.  The kernels release the GIL, which is what makes threads an
    effective pool here.
    """
    if workers <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))
