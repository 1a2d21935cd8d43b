"""Ordered parallel map for grid computations

Grid points (tau values, wavenumbers, induction steps) are independent;
results are always returned in grid order. The worker count comes from
the CCLAB_THREADS environment variable (default 1, i.e. serial).
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from .errors import ConfigError

THREADS_ENV = "CCLAB_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def worker_count(threads: int | None = None) -> int:
    """Explicit count, else CCLAB_THREADS, else 1"""
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            threads = int(raw)
        except ValueError as e:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from e
    if threads < 1:
        raise ConfigError(f"thread count must be >= 1, got {threads}")
    return threads


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """[func(item) for item in items], possibly on a thread pool"""
    items = list(items)
    count = worker_count(threads)
    if count == 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(func, items))
