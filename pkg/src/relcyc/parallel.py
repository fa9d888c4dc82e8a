"""Thread-pool plumbing shared by the engine and the verification suites.

All numeric work here is exact and pure, so the only effect of threads
is overlapping independent matrix builds.  The worker count is taken
from the ``RELCYC_THREADS`` environment variable; the default of 1
keeps every run strictly sequential, which is the baseline the
byte-identical-report contract is stated against.  Results are always
merged in input order, so report content does not depend on the
worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

__all__ = ["worker_count", "ordered_map"]

A = TypeVar("A")
B = TypeVar("B")


def worker_count() -> int:
    """The parallelism cap: ``RELCYC_THREADS``, default 1, floor 1."""
    try:
        n = int(os.environ.get("RELCYC_THREADS", ""))
    except ValueError:
        return 1
    return max(1, n)


def ordered_map(fn: Callable[[A], B], items: Iterable[A]) -> list[B]:
    """``[fn(x) for x in items]``, possibly on a thread pool.

    The result order is the input order regardless of completion
    order, so callers stay deterministic.
    """
    seq = list(items)
    workers = worker_count()
    if workers <= 1 or len(seq) <= 1:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seq))
