# solvers/approval_control/ccrv.py
"""
2-Approval CCRV via max-weight perfect b-matching.

Graph: one vertex per candidate plus a padding vertex x. Every voter in
V and W is an edge between its two approved candidates. b(c) = fs_p for
every candidate, and each c != p gets fs_p parallel (c, x) padding edges so
that c may end below fs_p. b(x) = |C| * fs_p - 2n soaks up the slack.
A perfect b-matching selects exactly n voter-edges: the final electorate.
"""
from __future__ import annotations

from functools import partial
from typing import List, Optional, Tuple

from common.errors import WitnessError
from common.logging import get_logger
from common.pool import first_accepted
from solvers.election_core.schema import AttackDecision, ReplacementPlan, fresh_name
from solvers.election_core.scoring import tally
from solvers.election_core.witness import apply_replacement, check_replacement
from solvers.matching_engine.schema import (
    Infeasible,
    MatchingSolution,
    MultiEdge,
    Multigraph,
    PerfectBMatchingProblem,
)
from solvers.matching_engine.solver import solve
from .schema import CcrvGraphMeta, CcrvInstance, TriviallyNo, VoterRef

log = get_logger("approval_control")


def target_score(instance: CcrvInstance) -> int:
    """fs_p = |V_p| + min(k, n - |V_p|, |W_p|)."""
    vp = len(instance.approvers("V"))
    wp = len(instance.approvers("W"))
    return vp + min(instance.limit, instance.n - vp, wp)


def _graph(
    instance: CcrvInstance,
    fs_p: int,
    priced: bool,
) -> Tuple[PerfectBMatchingProblem, CcrvGraphMeta] | TriviallyNo:
    cands = instance.candidates
    n = instance.n
    b_x = len(cands) * fs_p - 2 * n
    if b_x < 0:
        return TriviallyNo(reason=f"b(x) = {len(cands)}*{fs_p} - 2*{n} = {b_x} < 0")

    x = fresh_name("x", cands)
    edges: List[MultiEdge] = []
    refs: List[Optional[VoterRef]] = []
    for side, voters in (("V", instance.registered), ("W", instance.unregistered)):
        for i, voter in enumerate(voters):
            a, c = voter.vote.chosen
            if priced:
                w = voter.price if side == "V" else -voter.price
            else:
                w = 1 if side == "V" else 0
            edges.append(MultiEdge(u=a, v=c, weight=w, tag=f"{side}:{i}"))
            refs.append((side, i))
    for c in cands:
        if c == instance.preferred:
            continue
        for _ in range(fs_p):
            edges.append(MultiEdge(u=c, v=x, weight=0, tag="pad"))
            refs.append(None)

    b = {c: fs_p for c in cands}
    b[x] = b_x
    problem = PerfectBMatchingProblem(
        graph=Multigraph(vertices=cands + (x,), edges=tuple(edges)),
        b=b,
        sense="maximize",
    )
    if priced:
        threshold = sum(v.price for v in instance.registered) - instance.limit
    else:
        threshold = n - instance.limit
    meta = CcrvGraphMeta(fs_p=fs_p, threshold=threshold, aux=x, edge_voters=tuple(refs))
    return problem, meta


def build_ccrv_graph(instance: CcrvInstance) -> Tuple[PerfectBMatchingProblem, CcrvGraphMeta] | TriviallyNo:
    """Unpriced construction: V-edges weigh 1, everything else 0, threshold n - k."""
    return _graph(instance, target_score(instance), priced=False)


def build_priced_ccrv_graph(
    instance: CcrvInstance, fs_p: int
) -> Tuple[PerfectBMatchingProblem, CcrvGraphMeta] | TriviallyNo:
    """Priced construction for one fs_p: V-edges weigh pi(v), W-edges -pi(w), threshold pi(V) - k."""
    return _graph(instance, fs_p, priced=True)


def extract_plan(meta: CcrvGraphMeta, solution: MatchingSolution) -> ReplacementPlan:
    """V minus the kept V-edges are removed; the selected W-edges are added."""
    kept, added = set(), []
    for idx in solution.selected:
        ref = meta.edge_voters[idx]
        if ref is None:
            continue
        side, i = ref
        if side == "V":
            kept.add(i)
        else:
            added.append(i)
    n = sum(1 for ref in meta.edge_voters if ref is not None and ref[0] == "V")
    removed = [i for i in range(n) if i not in kept]
    return ReplacementPlan(removed=tuple(removed), added=tuple(sorted(added)))


def _checked(instance: CcrvInstance, plan: ReplacementPlan, fs_p: Optional[int]) -> int:
    check = check_replacement(
        instance.candidates,
        instance.rule,
        instance.registered,
        instance.unregistered,
        instance.preferred,
        plan,
        instance.limit,
        instance.priced,
    )
    if not check.ok:
        raise WitnessError(
            f"replacement witness rejected: winners {' '.join(check.winners)}, cost {check.cost}, limit {instance.limit}"
        )
    if fs_p is not None:
        final = apply_replacement(instance.registered, instance.unregistered, plan)
        got = tally(instance.candidates, (v.vote.chosen for v in final))[instance.preferred]
        if got != fs_p:
            raise WitnessError(f"p scores {got} after replacement, construction targeted {fs_p}")
    return check.cost


def _trivial_yes() -> AttackDecision:
    # two candidates under 2-Approval: every voter approves both
    return AttackDecision(decision=True, plan=ReplacementPlan(), objective=0)


def solve_ccrv_2approval(instance: CcrvInstance, backend: Optional[str] = None) -> AttackDecision:
    if len(instance.candidates) <= 2:
        return _trivial_yes()

    if instance.priced:
        raise ValueError("unpriced CCRV got a priced instance; use solve_priced_ccrv_2approval")

    built = build_ccrv_graph(instance)
    if isinstance(built, TriviallyNo):
        log.info("CCRV trivially no: %s", built.reason)
        return AttackDecision.no(fs_p=target_score(instance))
    problem, meta = built

    res = solve(problem, backend)
    if isinstance(res, Infeasible) or res.total_weight < meta.threshold:
        weight = res.total_weight if isinstance(res, MatchingSolution) else None
        log.info("CCRV no", extra={"fs_p": meta.fs_p, "weight": weight, "threshold": meta.threshold})
        return AttackDecision.no(fs_p=meta.fs_p)

    plan = extract_plan(meta, res)
    cost = _checked(instance, plan, meta.fs_p)
    log.info("CCRV yes", extra={"fs_p": meta.fs_p, "weight": res.total_weight, "replaced": cost})
    return AttackDecision(
        decision=True,
        plan=plan,
        objective=cost,
        details={"fs_p": meta.fs_p, "matching_weight": res.total_weight},
    )


# ---- priced ----

def _priced_subproblem(fs_p: int, instance: CcrvInstance, backend: Optional[str]):
    """(fs_p, meta, solution) for one target score; solution is None when it fails."""
    built = build_priced_ccrv_graph(instance, fs_p)
    if isinstance(built, TriviallyNo):
        log.debug("priced CCRV skip fs_p=%s: %s", fs_p, built.reason)
        return fs_p, None, None
    problem, meta = built
    res = solve(problem, backend)
    if isinstance(res, Infeasible):
        log.debug("priced CCRV skip fs_p=%s: %s", fs_p, res.reason)
        return fs_p, meta, None
    log.debug("priced CCRV fs_p=%s weight=%s threshold=%s", fs_p, res.total_weight, meta.threshold)
    return fs_p, meta, res


def _priced_hit(result) -> bool:
    _fs, meta, res = result
    return res is not None and res.total_weight >= meta.threshold


def solve_priced_ccrv_2approval(
    instance: CcrvInstance,
    backend: Optional[str] = None,
    workers: Optional[int] = None,
) -> AttackDecision:
    """
    Tries fs_p = 0..n in order; the smallest fs_p admitting a perfect
    b-matching of weight >= pi(V) - k wins.
    """
    if len(instance.candidates) <= 2:
        return _trivial_yes()

    if not instance.priced:
        raise ValueError("priced CCRV needs a priced instance")

    hit = first_accepted(
        partial(_priced_subproblem, instance=instance, backend=backend),
        range(instance.n + 1),
        _priced_hit,
        workers=workers,
    )
    if hit is None:
        log.info("priced CCRV no", extra={"tried": instance.n + 1})
        return AttackDecision.no()

    fs_p, meta, res = hit
    plan = extract_plan(meta, res)
    cost = _checked(instance, plan, fs_p)
    log.info("priced CCRV yes", extra={"fs_p": fs_p, "weight": res.total_weight, "cost": cost})
    return AttackDecision(
        decision=True,
        plan=plan,
        objective=cost,
        details={"fs_p": fs_p, "matching_weight": res.total_weight},
    )
