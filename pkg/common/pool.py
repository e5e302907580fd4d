# election-matching-solvers/common/pool.py
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from common.config import get_settings

T = TypeVar("T")
R = TypeVar("R")


def _workers(workers: Optional[int]) -> int:
    return workers if workers is not None else get_settings().pool.workers


def map_ordered(fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None) -> List[R]:
    """
    Results in input order. With workers > 1 the calls run in a process pool,
    so fn and the items must be picklable (module-level functions, partials).
    """
    n = _workers(workers)
    if n <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def first_accepted(
    fn: Callable[[T], R],
    items: Iterable[T],
    accept: Callable[[R], bool],
    workers: Optional[int] = None,
) -> Optional[R]:
    """
    First result (in input order) that passes accept, or None.
    Sequential runs stop at the first hit; pooled runs still report the
    earliest accepted item, never whichever finished first.
    """
    n = _workers(workers)
    if n <= 1:
        for item in items:
            res = fn(item)
            if accept(res):
                return res
        return None

    items = list(items)
    with ProcessPoolExecutor(max_workers=n) as ex:
        futures = [ex.submit(fn, item) for item in items]
        try:
            for fut in futures:
                res = fut.result()
                if accept(res):
                    return res
        finally:
            for fut in futures:
                fut.cancel()
    return None
