# solvers/cover_audit/cover.py
"""
Min-weight b-edge cover through perfect b-matching.

E' is a cover iff its complement F = E - E' meets every vertex at most
b'(v) = deg(v) - b(v) times. Maximizing w(F) is a degree-bounded matching;
it becomes a perfect one with a slack vertex z (b'(v) zero-weight (v, z)
edges, b(z) = sum b') and a parity partner z' joined to z by sum b'
zero-weight edges. Fixing b(z') = 2f forces |F| = f, so the loop over f
covers every complement size.
"""
from __future__ import annotations

from functools import partial
from typing import Dict, List, Optional

from common.config import get_settings
from common.errors import CapExceededError
from common.logging import get_logger
from common.pool import map_ordered
from solvers.election_core.schema import fresh_name
from solvers.matching_engine.schema import (
    Infeasible,
    MatchingSolution,
    MultiEdge,
    Multigraph,
    PerfectBMatchingProblem,
    selection_degrees,
)
from solvers.matching_engine.solver import solve
from .schema import BEdgeCoverProblem, CoverReport, CoverSolution

log = get_logger("cover_audit")


def verify_b_edge_cover(problem: BEdgeCoverProblem, edges) -> CoverReport:
    graph = problem.graph
    edges = tuple(edges)
    bad = [i for i in edges if i < 0 or i >= len(graph.edges)]
    if bad:
        return CoverReport(ok=False, message=f"unknown edge index {bad[0]}")
    if len(set(edges)) != len(edges):
        return CoverReport(ok=False, message="an edge is listed twice")

    deg = selection_degrees(graph, edges)
    total = sum(graph.edges[i].weight for i in edges)
    offenders = tuple(v for v in graph.vertices if deg[v] < problem.b[v])
    if offenders:
        v = offenders[0]
        return CoverReport(
            ok=False,
            total_weight=total,
            vertex=v,
            offenders=offenders,
            message=f"vertex {v}: covered {deg[v]} times, b = {problem.b[v]}",
        )
    return CoverReport(ok=True, total_weight=total)


def complement_problem(problem: BEdgeCoverProblem, f: int) -> PerfectBMatchingProblem:
    """Perfect b-matching whose solutions are complements F with |F| = f."""
    graph = problem.graph
    deg = graph.degrees()
    slack = {v: deg[v] - problem.b[v] for v in graph.vertices}
    total = sum(slack.values())
    z = fresh_name("z", graph.vertices)
    z2 = fresh_name("z2", set(graph.vertices) | {z})

    edges: List[MultiEdge] = list(graph.edges)
    for v in graph.vertices:
        edges.extend(MultiEdge(u=v, v=z, weight=0, tag="slack") for _ in range(slack[v]))
    edges.extend(MultiEdge(u=z, v=z2, weight=0, tag="parity") for _ in range(total))

    b: Dict[str, int] = dict(slack)
    b[z] = total
    b[z2] = 2 * f
    return PerfectBMatchingProblem(
        graph=Multigraph(vertices=graph.vertices + (z, z2), edges=tuple(edges)),
        b=b,
        sense="maximize",
    )


def _complement_for(f: int, problem: BEdgeCoverProblem, backend: Optional[str]) -> Optional[MatchingSolution]:
    res = solve(complement_problem(problem, f), backend)
    if isinstance(res, Infeasible):
        log.debug("cover complement |F|=%s infeasible: %s", f, res.reason)
        return None
    return res


def min_weight_b_edge_cover(
    problem: BEdgeCoverProblem,
    backend: Optional[str] = None,
    workers: Optional[int] = None,
) -> CoverSolution | Infeasible:
    graph = problem.graph
    deg = graph.degrees()
    for v in graph.vertices:
        if deg[v] < problem.b[v]:
            return Infeasible(reason=f"b({v}) = {problem.b[v]} exceeds degree {deg[v]}")

    m = len(graph.edges)
    slack_total = sum(deg[v] - problem.b[v] for v in graph.vertices)
    sizes = list(range(min(slack_total, 2 * m) // 2 + 1))
    results = map_ordered(partial(_complement_for, problem=problem, backend=backend), sizes, workers=workers)

    best: Optional[MatchingSolution] = None
    for f, res in zip(sizes, results):
        if res is None:
            continue
        if best is None or res.total_weight > best.total_weight:
            best = res
        log.debug("cover complement |F|=%s weight=%s", f, res.total_weight)
    if best is None:
        return Infeasible(reason="no complement size admits a matching")

    complement = {i for i in best.selected if i < m}
    cover = tuple(i for i in range(m) if i not in complement)
    weight = graph.total_weight() - best.total_weight
    log.info("min b-edge cover", extra={"weight": weight, "edges": len(cover), "complement_sizes": len(sizes)})
    return CoverSolution(selected=cover, total_weight=weight)


def brute_force_b_edge_cover(problem: BEdgeCoverProblem, cap: Optional[int] = None) -> CoverSolution | Infeasible:
    """Exhaustive include/exclude search with a can-still-cover prune."""
    cap = cap if cap is not None else get_settings().cover_audit.brute_force_edge_cap
    edges = problem.graph.edges
    if len(edges) > cap:
        raise CapExceededError("edges", len(edges), cap)

    need = dict(problem.b)
    remaining = problem.graph.degrees()
    if any(need[v] > remaining[v] for v in need):
        return Infeasible(reason="a demand exceeds its degree")

    chosen: List[int] = []
    best: Dict[str, object] = {"weight": None, "selected": None}

    def rec(i: int, weight: int) -> None:
        if i == len(edges):
            if all(d <= 0 for d in need.values()) and (best["weight"] is None or weight < best["weight"]):
                best["weight"] = weight
                best["selected"] = tuple(chosen)
            return
        e = edges[i]
        remaining[e.u] -= 1
        remaining[e.v] -= 1
        need[e.u] -= 1
        need[e.v] -= 1
        chosen.append(i)
        rec(i + 1, weight + e.weight)
        chosen.pop()
        need[e.u] += 1
        need[e.v] += 1
        if need[e.u] <= remaining[e.u] and need[e.v] <= remaining[e.v]:
            rec(i + 1, weight)
        remaining[e.u] += 1
        remaining[e.v] += 1

    rec(0, 0)
    return CoverSolution(selected=best["selected"], total_weight=best["weight"])
