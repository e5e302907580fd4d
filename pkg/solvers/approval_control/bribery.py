# solvers/approval_control/bribery.py
"""
2-Approval $Bribery as priced CCRV: the voters are the registered voters at
their prices, and for every pair of candidates there are n free
unregistered voters approving that pair. Removing v and adding w at cost
pi(v) is the same as bribing v to vote like w.
"""
from __future__ import annotations

from itertools import combinations
from typing import List, Optional

from common.errors import WitnessError
from common.logging import get_logger
from solvers.election_core.schema import AttackDecision, BriberyPlan, ReplacementPlan, Vote, Voter
from solvers.election_core.witness import check_bribery
from .ccrv import solve_priced_ccrv_2approval
from .schema import TWO_APPROVAL, ApprovalBriberyInstance, CcrvInstance

log = get_logger("approval_control")


def bribery_as_ccrv(instance: ApprovalBriberyInstance) -> CcrvInstance:
    if instance.rule != TWO_APPROVAL:
        raise ValueError(f"expected a 2-Approval election, got {instance.rule.label}")
    n = len(instance.voters)
    free: List[Voter] = []
    for a, b in combinations(instance.candidates, 2):
        vote = Vote(kind="approval", chosen=(a, b))
        free.extend(Voter(vote=vote, price=0) for _ in range(n))
    return CcrvInstance(
        candidates=instance.candidates,
        registered=instance.voters,
        unregistered=tuple(free),
        preferred=instance.preferred,
        limit=instance.budget,
        priced=True,
    )


def plan_from_replacement(ccrv: CcrvInstance, plan: ReplacementPlan) -> BriberyPlan:
    """Removed voters, in input order, each take the vote of the paired added voter."""
    return BriberyPlan(
        bribed=plan.removed,
        new_votes=tuple(ccrv.unregistered[j].vote for j in plan.added),
    )


def solve_bribery_2approval(
    instance: ApprovalBriberyInstance,
    backend: Optional[str] = None,
    workers: Optional[int] = None,
) -> AttackDecision:
    ccrv = bribery_as_ccrv(instance)
    res = solve_priced_ccrv_2approval(ccrv, backend=backend, workers=workers)
    if not res.decision:
        log.info("2-Approval bribery no", extra={"budget": instance.budget})
        return AttackDecision.no(**res.details)

    plan = plan_from_replacement(ccrv, res.plan)
    check = check_bribery(instance, plan)
    if not check.ok:
        raise WitnessError(
            f"bribery witness rejected: winners {' '.join(check.winners)}, cost {check.cost}, budget {instance.budget}"
        )
    log.info("2-Approval bribery yes", extra={"cost": check.cost, "bribed": len(plan.bribed)})
    return AttackDecision(decision=True, plan=plan, objective=check.cost, details=res.details)
