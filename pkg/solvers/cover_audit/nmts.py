# solvers/cover_audit/nmts.py
from __future__ import annotations

from collections import Counter
from itertools import permutations
from typing import List, Optional, Tuple

from common.config import get_settings
from common.errors import CapExceededError
from .schema import NmtsInstance


def solve_nmts_brute(instance: NmtsInstance, cap: Optional[int] = None) -> Optional[List[Tuple[int, int, int]]]:
    """(a, b, a + b) triples whose sums are exactly C as a multiset, or None."""
    cap = cap if cap is not None else get_settings().cover_audit.nmts_cap
    if instance.n > cap:
        raise CapExceededError("n", instance.n, cap)
    targets = Counter(instance.c)
    for perm in permutations(instance.b):
        sums = [a + b for a, b in zip(instance.a, perm)]
        if Counter(sums) == targets:
            return [(a, b, a + b) for a, b in zip(instance.a, perm)]
    return None


def count_target_triples(instance: NmtsInstance) -> int:
    """Number of (a_i, b_j, c_l) with a_i + b_j = c_l."""
    sums = Counter(a + b for a in instance.a for b in instance.b)
    return sum(sums[c] for c in instance.c)


def bt_threshold(n: int, triples: int) -> int:
    """Cover weight the refuted reduction ties to a positive NMTS instance."""
    return 8 * n + 6 * (triples - n) + 2 * n * (n - 1) * n ** 4
