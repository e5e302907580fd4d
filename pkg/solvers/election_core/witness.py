# solvers/election_core/witness.py
"""
Witness re-verification. Everything here rebuilds the attacked election and
re-scores it with election-core only; no matching code is involved.
"""
from __future__ import annotations

from typing import Sequence, Tuple

from pydantic import ValidationError

from common.errors import WitnessError
from .schema import BriberyInstance, BriberyPlan, Election, ReplacementPlan, Rule, Voter, WitnessCheck
from .scoring import score


def apply_replacement(
    registered: Sequence[Voter],
    unregistered: Sequence[Voter],
    plan: ReplacementPlan,
) -> Tuple[Voter, ...]:
    removed = set(plan.removed)
    if len(removed) != len(plan.removed) or len(set(plan.added)) != len(plan.added):
        raise WitnessError("replacement plan repeats a voter")
    if any(i < 0 or i >= len(registered) for i in removed):
        raise WitnessError("replacement plan removes an unknown registered voter")
    if any(j < 0 or j >= len(unregistered) for j in plan.added):
        raise WitnessError("replacement plan adds an unknown unregistered voter")
    kept = [v for i, v in enumerate(registered) if i not in removed]
    return tuple(kept + [unregistered[j] for j in plan.added])


def replacement_cost(
    registered: Sequence[Voter],
    unregistered: Sequence[Voter],
    plan: ReplacementPlan,
    priced: bool,
) -> int:
    if not priced:
        return len(plan.removed)
    return sum(registered[i].price for i in plan.removed) + sum(unregistered[j].price for j in plan.added)


def check_replacement(
    candidates: Sequence[str],
    rule: Rule,
    registered: Sequence[Voter],
    unregistered: Sequence[Voter],
    preferred: str,
    plan: ReplacementPlan,
    limit: int,
    priced: bool,
) -> WitnessCheck:
    voters = apply_replacement(registered, unregistered, plan)
    try:
        election = Election(candidates=tuple(candidates), voters=voters, rule=rule)
    except ValidationError as e:
        raise WitnessError(f"replaced election is malformed: {e}") from e
    profile = score(election)
    cost = replacement_cost(registered, unregistered, plan, priced)
    return WitnessCheck(
        winner=preferred in profile.winners(),
        within_limit=cost <= limit,
        cost=cost,
        winners=profile.winners(),
    )


def apply_bribery(voters: Sequence[Voter], plan: BriberyPlan) -> Tuple[Voter, ...]:
    out = list(voters)
    for i, vote in zip(plan.bribed, plan.new_votes):
        if i < 0 or i >= len(out):
            raise WitnessError(f"bribery plan names unknown voter {i}")
        out[i] = Voter(vote=vote, price=out[i].price)
    return tuple(out)


def check_bribery(instance: BriberyInstance, plan: BriberyPlan) -> WitnessCheck:
    voters = apply_bribery(instance.voters, plan)
    try:
        election = instance.election.with_voters(voters)
    except ValidationError as e:
        raise WitnessError(f"bribed election is malformed: {e}") from e
    profile = score(election)
    cost = sum(instance.voters[i].price for i in plan.bribed)
    return WitnessCheck(
        winner=instance.preferred in profile.winners(),
        within_limit=cost <= instance.budget,
        cost=cost,
        winners=profile.winners(),
    )
