"""Deterministic sharded execution.

Work is split into document shards; shard results are consumed in shard
order, so parallel runs are bit-identical to serial ones.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

S = TypeVar("S")
R = TypeVar("R")

DEFAULT_SHARD_SIZE = 2048


def resolve_threads(requested: int | None) -> int:
    """Thread count from the request, MWT_THREADS, or available parallelism."""
    if requested is not None:
        return max(1, requested)
    env = os.environ.get("MWT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def iter_shards(items: Iterable[S], size: int = DEFAULT_SHARD_SIZE) -> Iterator[list[S]]:
    buf: list[S] = []
    for item in items:
        buf.append(item)
        if len(buf) >= size:
            yield buf
            buf = []
    if buf:
        yield buf


def map_shards(
    fn: Callable[[list[S]], R], shards: Iterable[list[S]], threads: int
) -> Iterator[R]:
    """Apply `fn` to each shard, yielding results in shard order.

    `fn` must be picklable (a top-level function or functools.partial of
    one) when threads > 1.
    """
    if threads <= 1:
        for shard in shards:
            yield fn(shard)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(fn, shards)
