"""Order-preserving parallel map.

The worker count comes from ``COARSEPLANE_THREADS`` (default 1). Results are
always returned in input order, so output never depends on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get("COARSEPLANE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    items: Sequence[T] = list(items)
    n = thread_count() if workers is None else workers
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * n))))
