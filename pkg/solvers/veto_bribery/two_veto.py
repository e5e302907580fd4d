# solvers/veto_bribery/two_veto.py
"""
2-Veto $Bribery via min-weight perfect b-matching, one matching problem per
guess (l_p, l'_p) of how many p-vetoers and how many other voters are bribed.

Vertices are C plus x (padding) and y (bribe source). A selected
voter-edge is a bribed voter. The (c, y) bribe-edges NOT selected at c are
the vetoes that bribed voters hand to c, so every c != p ends with at least
fv_p = v_p - l_p vetoes.
"""
from __future__ import annotations

from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

from common.errors import InfeasibleDemandError, WitnessError
from common.logging import get_logger
from common.pool import first_accepted
from solvers.election_core.schema import AttackDecision, BriberyPlan, Vote, fresh_name
from solvers.election_core.scoring import tally
from solvers.election_core.witness import check_bribery
from solvers.matching_engine.schema import (
    Infeasible,
    MatchingSolution,
    MultiEdge,
    Multigraph,
    PerfectBMatchingProblem,
)
from solvers.matching_engine.solver import solve
from .schema import TWO_VETO, Skip, SubproblemParams, VetoBriberyInstance

log = get_logger("veto_bribery")


# ---- vote realization ----

def realize_bribed_votes(
    bv: Dict[str, int],
    t: int,
    p: str,
    candidates: Sequence[str],
    width: int = 2,
) -> List[Vote]:
    """
    t veto votes, each vetoing `width` distinct candidates other than p, that
    hand out exactly bv[c] vetoes to each c. Greedy: every round takes the
    `width` largest remaining demands (ties lexicographic).
    """
    others = sorted(c for c in candidates if c != p)
    if bv.get(p, 0):
        raise InfeasibleDemandError(f"bribed votes never veto {p}")
    unknown = [c for c in bv if c != p and c not in others]
    if unknown:
        raise InfeasibleDemandError(f"demand for unknown candidate(s) {' '.join(sorted(unknown))}")
    if t < 0 or (t > 0 and len(others) < width):
        raise InfeasibleDemandError(f"cannot build {t} votes of width {width} from {len(others)} candidates")
    remaining = {c: bv.get(c, 0) for c in others}
    if any(d < 0 or d > t for d in remaining.values()):
        raise InfeasibleDemandError(f"demands must lie in 0..{t}: {remaining}")
    if sum(remaining.values()) != width * t:
        raise InfeasibleDemandError(f"demands sum to {sum(remaining.values())}, need {width * t}")

    votes: List[Vote] = []
    for _ in range(t):
        top = sorted(others, key=lambda c: (-remaining[c], c))[:width]
        if any(remaining[c] == 0 for c in top):
            raise InfeasibleDemandError("ran out of demand before the last vote")
        for c in top:
            remaining[c] -= 1
        votes.append(Vote(kind="veto", chosen=tuple(sorted(top))))
    return votes


# ---- graph ----

def veto_counts(instance: VetoBriberyInstance) -> Dict[str, int]:
    return tally(instance.candidates, (v.vote.chosen for v in instance.voters))


def split_voters(instance: VetoBriberyInstance) -> Tuple[List[int], List[int]]:
    """(V_p, V'_p): indices of voters vetoing p, and of the rest."""
    vp, rest = [], []
    for i, v in enumerate(instance.voters):
        (vp if instance.preferred in v.vote.chosen else rest).append(i)
    return vp, rest


def aux_names(candidates: Sequence[str]) -> Tuple[str, str]:
    x = fresh_name("x", candidates)
    y = fresh_name("y", set(candidates) | {x})
    return x, y


def build_2veto_graph(
    instance: VetoBriberyInstance,
    params: SubproblemParams,
) -> PerfectBMatchingProblem | Skip:
    p = instance.preferred
    cands = instance.candidates
    others = [c for c in cands if c != p]
    vetoes = veto_counts(instance)
    t = params.bribed
    x, y = aux_names(cands)

    b: Dict[str, int] = {p: params.ell_p}
    for c in others:
        need = vetoes[c] + t - params.fv_p
        if need < 0:
            return Skip(reason=f"b({c}) = {vetoes[c]} + {t} - {params.fv_p} < 0")
        b[c] = need
    b[y] = (len(cands) - 3) * t
    b[x] = sum(b[c] for c in others) - params.ell_p - 2 * params.ell_p_prime - b[y]
    if b[x] < 0:
        return Skip(reason=f"b(x) = {b[x]} < 0")

    edges: List[MultiEdge] = []
    for i, voter in enumerate(instance.voters):
        u, v = voter.vote.chosen
        edges.append(MultiEdge(u=u, v=v, weight=voter.price, tag=f"V:{i}"))
    for c in others:
        edges.extend(MultiEdge(u=c, v=y, weight=0, tag="bribe") for _ in range(t))
    for c in others:
        edges.extend(MultiEdge(u=c, v=x, weight=0, tag="pad") for _ in range(b[c]))

    return PerfectBMatchingProblem(
        graph=Multigraph(vertices=cands + (x, y), edges=tuple(edges)),
        b=b,
        sense="minimize",
    )


def subproblem_order(instance: VetoBriberyInstance) -> List[SubproblemParams]:
    """l_p descending, then l'_p ascending; pairs that cannot fit the budget are dropped."""
    vp, rest = split_voters(instance)
    v_p = len(vp)
    cheap_p = sorted(instance.voters[i].price for i in vp)
    cheap_rest = sorted(instance.voters[i].price for i in rest)
    out: List[SubproblemParams] = []
    for ell_p in range(len(vp), -1, -1):
        floor_p = sum(cheap_p[:ell_p])
        for ell_pp in range(len(rest) + 1):
            if floor_p + sum(cheap_rest[:ell_pp]) > instance.budget:
                break
            out.append(SubproblemParams(ell_p=ell_p, ell_p_prime=ell_pp, fv_p=v_p - ell_p))
    return out


def extract_bribery(
    instance: VetoBriberyInstance,
    problem: PerfectBMatchingProblem,
    params: SubproblemParams,
    solution: MatchingSolution,
) -> BriberyPlan:
    p = instance.preferred
    t = params.bribed
    bribed: List[int] = []
    bribe_edges = {c: 0 for c in instance.candidates if c != p}
    for idx in solution.selected:
        e = problem.graph.edges[idx]
        if e.tag.startswith("V:"):
            bribed.append(int(e.tag[2:]))
        elif e.tag == "bribe":
            c = e.u if e.u in bribe_edges else e.v
            bribe_edges[c] += 1
    bv = {c: t - n for c, n in bribe_edges.items()}
    votes = realize_bribed_votes(bv, t, p, instance.candidates, width=2)
    bribed.sort()
    return BriberyPlan(bribed=tuple(bribed), new_votes=tuple(votes))


def _veto_subproblem(params: SubproblemParams, instance: VetoBriberyInstance, backend: Optional[str]):
    built = build_2veto_graph(instance, params)
    if isinstance(built, Skip):
        log.debug("2-Veto skip (%s, %s): %s", params.ell_p, params.ell_p_prime, built.reason)
        return params, None, None
    res = solve(built, backend)
    if isinstance(res, Infeasible):
        log.debug("2-Veto (%s, %s) infeasible: %s", params.ell_p, params.ell_p_prime, res.reason)
        return params, built, None
    log.debug("2-Veto (%s, %s) weight=%s", params.ell_p, params.ell_p_prime, res.total_weight)
    return params, built, res


def check_witness(instance: VetoBriberyInstance, plan: BriberyPlan) -> int:
    check = check_bribery(instance, plan)
    if not check.ok:
        raise WitnessError(
            f"bribery witness rejected: winners {' '.join(check.winners)}, cost {check.cost}, budget {instance.budget}"
        )
    return check.cost


def solve_bribery_2veto(
    instance: VetoBriberyInstance,
    backend: Optional[str] = None,
    workers: Optional[int] = None,
) -> AttackDecision:
    if instance.rule != TWO_VETO:
        raise ValueError(f"expected a 2-Veto election, got {instance.rule.label}")
    if len(instance.candidates) <= 2:
        # every voter vetoes both candidates
        return AttackDecision(decision=True, plan=BriberyPlan(), objective=0)

    order = subproblem_order(instance)
    hit = first_accepted(
        partial(_veto_subproblem, instance=instance, backend=backend),
        order,
        lambda r: r[2] is not None and r[2].total_weight <= instance.budget,
        workers=workers,
    )
    if hit is None:
        log.info("2-Veto bribery no", extra={"subproblems": len(order), "budget": instance.budget})
        return AttackDecision.no()

    params, problem, res = hit
    plan = extract_bribery(instance, problem, params, res)
    cost = check_witness(instance, plan)
    log.info(
        "2-Veto bribery yes",
        extra={"ell_p": params.ell_p, "ell_p_prime": params.ell_p_prime, "cost": cost},
    )
    return AttackDecision(
        decision=True,
        plan=plan,
        objective=cost,
        details={
            "ell_p": params.ell_p,
            "ell_p_prime": params.ell_p_prime,
            "fv_p": params.fv_p,
            "matching_weight": res.total_weight,
        },
    )
