# solvers/veto_bribery/three_veto.py
"""
Exact 3-Veto $Bribery for small elections (the problem is NP-complete).

Voters with the same vetoed set and price are interchangeable, so the search
picks a count per group instead of a subset. For a bribed multiset of size t
with p left at f vetoes, candidate c still needs d_c = max(0, f - rest_c)
vetoes from the new votes; that is realizable iff every d_c <= t and
sum(d) <= 3t (the new votes never veto p and |C| - 1 >= 3).
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from common.config import get_settings
from common.errors import CapExceededError
from common.logging import get_logger
from solvers.election_core.schema import AttackDecision, BriberyPlan
from .schema import THREE_VETO, VetoBriberyInstance
from .two_veto import check_witness, realize_bribed_votes, veto_counts

log = get_logger("veto_bribery")

Group = Tuple[frozenset, int, List[int]]  # (vetoed set, price, voter indices)


def voter_groups(instance: VetoBriberyInstance) -> List[Group]:
    index: Dict[Tuple[frozenset, int], List[int]] = {}
    for i, v in enumerate(instance.voters):
        index.setdefault((v.vote.as_set(), v.price), []).append(i)
    return [(s, price, idx) for (s, price), idx in index.items()]


def veto_demands(
    instance: VetoBriberyInstance,
    remaining: Dict[str, int],
    t: int,
) -> Optional[Dict[str, int]]:
    """Vetoes the t new votes must hand out, topped up to 3t; None if unrealizable."""
    p = instance.preferred
    f = remaining[p]
    others = [c for c in instance.candidates if c != p]
    need = {c: max(0, f - remaining[c]) for c in others}
    if any(d > t for d in need.values()) or sum(need.values()) > 3 * t:
        return None
    extra = 3 * t - sum(need.values())
    for c in others:
        if extra == 0:
            break
        add = min(t - need[c], extra)
        need[c] += add
        extra -= add
    return need


def solve_bribery_3veto_exact(
    instance: VetoBriberyInstance,
    voter_cap: Optional[int] = None,
) -> AttackDecision:
    if instance.rule != THREE_VETO:
        raise ValueError(f"expected a 3-Veto election, got {instance.rule.label}")
    cap = voter_cap if voter_cap is not None else get_settings().veto_bribery.exact_voter_cap
    if len(instance.voters) > cap:
        raise CapExceededError("voters", len(instance.voters), cap)
    if len(instance.candidates) <= 3:
        # every voter vetoes every candidate
        return AttackDecision(decision=True, plan=BriberyPlan(), objective=0)

    groups = voter_groups(instance)
    vetoes = veto_counts(instance)
    remaining = dict(vetoes)
    counts = [0] * len(groups)
    budget = instance.budget
    visited = 0

    def rec(g: int, cost: int, t: int) -> Optional[Dict[str, int]]:
        nonlocal visited
        if g == len(groups):
            visited += 1
            return veto_demands(instance, remaining, t)
        chosen, price, members = groups[g]
        for n in range(len(members) + 1):
            if cost + n * price > budget:
                break
            counts[g] = n
            for c in chosen:
                remaining[c] -= n
            found = rec(g + 1, cost + n * price, t + n)
            for c in chosen:
                remaining[c] += n
            if found is not None:
                return found
        counts[g] = 0
        return None

    demands = rec(0, 0, 0)
    if demands is None:
        log.info("3-Veto bribery no", extra={"groups": len(groups), "visited": visited})
        return AttackDecision.no()

    bribed: List[int] = []
    for (_s, _price, members), n in zip(groups, counts):
        bribed.extend(members[:n])
    bribed.sort()
    t = len(bribed)
    votes = realize_bribed_votes(demands, t, instance.preferred, instance.candidates, width=3)
    plan = BriberyPlan(bribed=tuple(bribed), new_votes=tuple(votes))
    cost = check_witness(instance, plan)
    log.info("3-Veto bribery yes", extra={"bribed": t, "cost": cost, "visited": visited})
    return AttackDecision(decision=True, plan=plan, objective=cost, details={"bribed": t})
