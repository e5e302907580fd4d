# solvers/oracles/brute.py
"""
Exponential-time reference deciders. They only rescore elections with
election-core; no matching code is involved.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

from common.config import get_settings
from common.errors import CapExceededError, WitnessError
from common.logging import get_logger
from solvers.approval_control.schema import CcrvInstance
from solvers.election_core.schema import AttackDecision, BriberyInstance, BriberyPlan, ReplacementPlan, Vote
from solvers.election_core.scoring import is_winner, tally
from solvers.election_core.witness import check_bribery, check_replacement

log = get_logger("oracles")


# ---- CCRV ----

def brute_ccrv(instance: CcrvInstance, voter_cap: Optional[int] = None) -> AttackDecision:
    """
    Every (V', W') with |V'| = |W'| within the limit (count, or price when
    priced). Returns the cheapest plan found.
    """
    cap = voter_cap if voter_cap is not None else get_settings().oracles.ccrv_voter_cap
    V, W = instance.registered, instance.unregistered
    if len(V) + len(W) > cap:
        raise CapExceededError("|V| + |W|", len(V) + len(W), cap)

    kind = instance.rule.kind
    base = tally(instance.candidates, (v.vote.chosen for v in V))
    best: Optional[Tuple[int, ReplacementPlan]] = None
    top = min(len(V), len(W)) if instance.priced else min(instance.limit, len(V), len(W))

    for s in range(top + 1):
        for removed in combinations(range(len(V)), s):
            out_cost = sum(V[i].price for i in removed) if instance.priced else s
            if out_cost > instance.limit:
                continue
            counts = dict(base)
            for i in removed:
                for c in V[i].vote.chosen:
                    counts[c] -= 1
            for added in combinations(range(len(W)), s):
                cost = out_cost + sum(W[j].price for j in added) if instance.priced else s
                if cost > instance.limit or (best is not None and cost >= best[0]):
                    continue
                final = dict(counts)
                for j in added:
                    for c in W[j].vote.chosen:
                        final[c] += 1
                if is_winner(kind, final, instance.preferred):
                    best = (cost, ReplacementPlan(removed=removed, added=added))
        if best is not None and not instance.priced:
            break

    if best is None:
        return AttackDecision.no()
    cost, plan = best
    check = check_replacement(
        instance.candidates, instance.rule, V, W, instance.preferred, plan, instance.limit, instance.priced
    )
    if not check.ok:
        raise WitnessError("CCRV oracle produced a plan that does not re-verify")
    return AttackDecision(decision=True, plan=plan, objective=cost)


# ---- bribery ----

@lru_cache(maxsize=64)
def _reachable(ballots: Tuple[Tuple[int, ...], ...], n_candidates: int, t: int) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """
    Added-count vectors reachable with t new ballots, each mapped to one
    sequence of ballot indices producing it.
    """
    layer: Dict[Tuple[int, ...], Tuple[int, ...]] = {tuple([0] * n_candidates): ()}
    for _ in range(t):
        nxt: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        for vec, picks in layer.items():
            for bi, ballot in enumerate(ballots):
                grown = list(vec)
                for c in ballot:
                    grown[c] += 1
                key = tuple(grown)
                if key not in nxt:
                    nxt[key] = picks + (bi,)
        layer = nxt
    return layer


def brute_bribery(
    instance: BriberyInstance,
    voter_cap: Optional[int] = None,
    candidate_cap: Optional[int] = None,
) -> AttackDecision:
    """
    Every bribed subset within budget, every multiset of replacement
    top-k / bottom-k sets for it. Works for any k-Approval / k-Veto rule.
    """
    cfg = get_settings().oracles
    vcap = voter_cap if voter_cap is not None else cfg.bribery_voter_cap
    ccap = candidate_cap if candidate_cap is not None else cfg.bribery_candidate_cap
    voters = instance.voters
    cands = instance.candidates
    if len(voters) > vcap:
        raise CapExceededError("voters", len(voters), vcap)
    if len(cands) > ccap:
        raise CapExceededError("candidates", len(cands), ccap)

    rule = instance.rule
    pos = {c: i for i, c in enumerate(cands)}
    p = pos[instance.preferred]
    ballots = tuple(combinations(range(len(cands)), rule.k))
    base = [0] * len(cands)
    for v in voters:
        for c in v.vote.chosen:
            base[pos[c]] += 1

    def wins(counts: Sequence[int]) -> bool:
        if rule.kind == "approval":
            return all(counts[p] >= s for s in counts)
        return all(counts[p] <= s for s in counts)

    # outcome per multiset of removed votes
    seen: Dict[Tuple[Tuple[int, ...], ...], Optional[Tuple[int, ...]]] = {}
    hit: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None

    for t in range(len(voters) + 1):
        for bribed in combinations(range(len(voters)), t):
            if sum(voters[i].price for i in bribed) > instance.budget:
                continue
            removed_key = tuple(sorted(tuple(sorted(pos[c] for c in voters[i].vote.chosen)) for i in bribed))
            if removed_key not in seen:
                counts = list(base)
                for chosen in removed_key:
                    for c in chosen:
                        counts[c] -= 1
                found = None
                for vec, picks in _reachable(ballots, len(cands), t).items():
                    if wins([a + b for a, b in zip(counts, vec)]):
                        found = picks
                        break
                seen[removed_key] = found
            if seen[removed_key] is not None:
                hit = (bribed, seen[removed_key])
                break
        if hit is not None:
            break

    if hit is None:
        log.debug("bribery oracle no", extra={"removed_multisets": len(seen)})
        return AttackDecision.no()

    bribed, picks = hit
    new_votes = tuple(Vote(kind=rule.kind, chosen=tuple(cands[c] for c in ballots[bi])) for bi in picks)
    plan = BriberyPlan(bribed=bribed, new_votes=new_votes)
    check = check_bribery(instance, plan)
    if not check.ok:
        raise WitnessError("bribery oracle produced a plan that does not re-verify")
    return AttackDecision(decision=True, plan=plan, objective=check.cost)
