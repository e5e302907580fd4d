# solvers/matching_engine/solver.py
"""
Front-end for Max-/Min-Weight Perfect b-Matching on multigraphs.

Backends:
  tutte  Tutte expansion + blossom (networkx). Exact, O(|V'|^3) on the
         expanded graph, so it is the reference path for small problems.
  milp   Direct b-matching as an integer program (scipy / HiGHS, zero gap).
         Parallel edges with the same endpoints and weight collapse into one
         bounded integer variable, so large vote multiplicities stay cheap.
  auto   tutte while the predicted expansion is small, else milp.

Minimization runs as maximization over W_max - w. Every perfect b-matching
has exactly sum(b)/2 edges, so that is an affine change of objective.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_array

from common.config import get_settings
from common.errors import CapExceededError, SolverError, WeightOverflowError
from common.logging import get_logger
from .blossom import max_weight_perfect_matching
from .schema import (
    Infeasible,
    MatchingSolution,
    PerfectBMatchingProblem,
    VerifyReport,
    selection_degrees,
)
from .tutte import expand, predicted_size

log = get_logger("matching_engine")

BACKENDS = ("auto", "tutte", "milp")


# ---- helpers ----

def _objective_weights(problem: PerfectBMatchingProblem, limit: int) -> List[int]:
    """Weights the maximizer sees: w for maximize, W_max - w for minimize."""
    weights = [e.weight for e in problem.graph.edges]
    for w in weights:
        if abs(w) > limit:
            raise WeightOverflowError(f"|weight| {abs(w)} exceeds limit {limit}")
    if problem.sense == "minimize" and weights:
        top = max(weights)
        weights = [top - w for w in weights]
        if max(weights) > limit:
            raise WeightOverflowError(f"transformed weight {max(weights)} exceeds limit {limit}")
    return weights


def _precheck(problem: PerfectBMatchingProblem) -> Optional[Infeasible]:
    total = problem.demand_total()
    if total % 2:
        return Infeasible(reason=f"sum of demands {total} is odd")
    deg = problem.graph.degrees()
    for v in problem.graph.vertices:
        if problem.b[v] > deg[v]:
            return Infeasible(reason=f"b({v}) = {problem.b[v]} exceeds degree {deg[v]}")
    return None


def _finish(problem: PerfectBMatchingProblem, selected: Sequence[int]) -> MatchingSolution:
    total = sum(problem.graph.edges[i].weight for i in selected)
    return MatchingSolution(selected=tuple(selected), total_weight=total)


# ---- backends ----

def _solve_tutte(problem: PerfectBMatchingProblem, weights: List[int], limit: int) -> MatchingSolution | Infeasible:
    expansion = expand(problem.graph, problem.b, weights)
    if isinstance(expansion, Infeasible):
        return expansion
    res = max_weight_perfect_matching(expansion.graph, weight_limit=limit)
    if isinstance(res, Infeasible):
        return res
    selected = [expansion.origin[i] for i in res.selected if expansion.origin[i] is not None]
    return _finish(problem, selected)


def _solve_milp(problem: PerfectBMatchingProblem, weights: List[int]) -> MatchingSolution | Infeasible:
    graph = problem.graph
    pos = {v: i for i, v in enumerate(graph.vertices)}

    groups: Dict[Tuple[str, str, int], List[int]] = defaultdict(list)
    for idx, e in enumerate(graph.edges):
        u, v = (e.u, e.v) if e.u < e.v else (e.v, e.u)
        groups[(u, v, weights[idx])].append(idx)
    keys = list(groups)

    b_vec = np.array([problem.b[v] for v in graph.vertices], dtype=float)
    if not keys:
        if b_vec.any():
            return Infeasible(reason="demands on an edgeless graph")
        return MatchingSolution(selected=(), total_weight=0)

    rows, cols = [], []
    for g, (u, v, _w) in enumerate(keys):
        rows += [pos[u], pos[v]]
        cols += [g, g]
    A = coo_array((np.ones(len(rows)), (rows, cols)), shape=(len(graph.vertices), len(keys))).tocsr()
    c = -np.array([w for _u, _v, w in keys], dtype=float)
    upper = np.array([len(groups[k]) for k in keys], dtype=float)

    res = milp(
        c,
        constraints=LinearConstraint(A, b_vec, b_vec),
        integrality=np.ones(len(keys)),
        bounds=Bounds(np.zeros(len(keys)), upper),
        options={"mip_rel_gap": 0},
    )
    if res.status == 2:
        return Infeasible(reason="no perfect b-matching")
    if res.status != 0 or res.x is None:
        raise SolverError(f"MILP backend failed: {res.message}")

    counts = np.rint(res.x).astype(int)
    selected: List[int] = []
    for k, x in zip(keys, counts):
        selected.extend(groups[k][:x])
    return _finish(problem, selected)


def pick_backend(problem: PerfectBMatchingProblem, backend: Optional[str] = None, tutte_vertex_limit: Optional[int] = None) -> str:
    cfg = get_settings().matching
    name = backend or cfg.backend
    if name not in BACKENDS:
        raise ValueError(f"unknown matching backend {name!r}")
    if name != "auto":
        return name
    limit = tutte_vertex_limit if tutte_vertex_limit is not None else cfg.tutte_vertex_limit
    return "tutte" if predicted_size(problem.graph, problem.b) <= limit else "milp"


# ---- public API ----

def solve(
    problem: PerfectBMatchingProblem,
    backend: Optional[str] = None,
    *,
    tutte_vertex_limit: Optional[int] = None,
    weight_limit: Optional[int] = None,
) -> MatchingSolution | Infeasible:
    """Optimal perfect b-matching under problem.sense, or Infeasible."""
    limit = weight_limit if weight_limit is not None else get_settings().matching.weight_limit
    bad = _precheck(problem)
    if bad is not None:
        return bad
    weights = _objective_weights(problem, limit)
    if problem.demand_total() == 0:
        return MatchingSolution(selected=(), total_weight=0)

    name = pick_backend(problem, backend, tutte_vertex_limit)
    if name == "tutte":
        res = _solve_tutte(problem, weights, limit)
    else:
        res = _solve_milp(problem, weights)

    if isinstance(res, MatchingSolution):
        report = verify(problem, res)
        if not report.ok:
            raise SolverError(f"{name} backend returned an invalid matching: {report.message}")
    log.debug(
        "b-matching solved",
        extra={
            "backend": name,
            "vertices": len(problem.graph.vertices),
            "edges": len(problem.graph.edges),
            "feasible": isinstance(res, MatchingSolution),
        },
    )
    return res


def meets_threshold(problem: PerfectBMatchingProblem, weight: int, threshold: int) -> bool:
    """weight >= threshold (maximize) or weight <= threshold (minimize)."""
    if problem.sense == "maximize":
        return weight >= threshold
    return weight <= threshold


def decide(problem: PerfectBMatchingProblem, threshold: int, backend: Optional[str] = None) -> bool:
    res = solve(problem, backend)
    if isinstance(res, Infeasible):
        return False
    return meets_threshold(problem, res.total_weight, threshold)


def brute_force_solve(problem: PerfectBMatchingProblem, cap: Optional[int] = None) -> MatchingSolution | Infeasible:
    """Exhaustive search over edge sub-multisets. Independent of the backends."""
    cap = cap if cap is not None else get_settings().matching.brute_force_edge_cap
    edges = problem.graph.edges
    if len(edges) > cap:
        raise CapExceededError("edges", len(edges), cap)
    bad = _precheck(problem)
    if bad is not None:
        return bad

    maximize = problem.sense == "maximize"
    need = dict(problem.b)
    remaining = problem.graph.degrees()
    chosen: List[int] = []
    best: Dict[str, object] = {"weight": None, "selected": None}

    def better(w: int) -> bool:
        cur = best["weight"]
        return cur is None or (w > cur if maximize else w < cur)

    def rec(i: int, weight: int) -> None:
        if i == len(edges):
            if all(d == 0 for d in need.values()) and better(weight):
                best["weight"] = weight
                best["selected"] = tuple(chosen)
            return
        e = edges[i]
        remaining[e.u] -= 1
        remaining[e.v] -= 1
        if need[e.u] > 0 and need[e.v] > 0:
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
    if best["selected"] is None:
        return Infeasible(reason="no perfect b-matching")
    return MatchingSolution(selected=best["selected"], total_weight=best["weight"])


def verify(problem: PerfectBMatchingProblem, solution: MatchingSolution) -> VerifyReport:
    graph = problem.graph
    bad_idx = [i for i in solution.selected if i < 0 or i >= len(graph.edges)]
    if bad_idx:
        return VerifyReport(ok=False, message=f"unknown edge index {bad_idx[0]}")
    if len(set(solution.selected)) != len(solution.selected):
        return VerifyReport(ok=False, message="an edge is selected twice")

    deg = selection_degrees(graph, solution.selected)
    offenders = tuple(v for v in graph.vertices if deg[v] != problem.b[v])
    total = sum(graph.edges[i].weight for i in solution.selected)
    if offenders:
        v = offenders[0]
        return VerifyReport(
            ok=False,
            total_weight=total,
            vertex=v,
            offenders=offenders,
            message=f"vertex {v}: {deg[v]} selected edges, b = {problem.b[v]}",
        )
    if total != solution.total_weight:
        return VerifyReport(
            ok=False,
            total_weight=total,
            message=f"claimed weight {solution.total_weight}, recomputed {total}",
        )
    return VerifyReport(ok=True, total_weight=total)
