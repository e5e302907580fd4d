# solvers/matching_engine/tutte.py
"""
Tutte expansion: perfect b-matching on a multigraph -> perfect matching on a
simple graph.

Every vertex v becomes external copies v_1..v_deg(v), one per incident edge,
plus deg(v) - b(v) padding vertices joined to all of its externals by
zero-weight edges. The i-th edge at v and j-th edge at w becomes (v_i, w_j)
with the original weight. A perfect matching of the expansion is a perfect
b-matching of the original plus padding edges, and the other way round.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from common.logging import get_logger
from .schema import Infeasible, Multigraph, PerfectBMatchingProblem, SimpleGraph, TutteExpansion

log = get_logger("matching_engine")


def predicted_size(graph: Multigraph, b: Dict[str, int]) -> int:
    """Vertex count of the expansion, without building it."""
    deg = graph.degrees()
    return sum(2 * deg[v] - b[v] for v in graph.vertices if deg[v] >= b[v])


def expand(graph: Multigraph, b: Dict[str, int], weights: Sequence[int]) -> TutteExpansion | Infeasible:
    deg = graph.degrees()
    for v in graph.vertices:
        if b[v] > deg[v]:
            return Infeasible(reason=f"b({v}) = {b[v]} exceeds degree {deg[v]}")

    labels: List[str] = []
    ext: Dict[str, List[int]] = {}
    pad: Dict[str, List[int]] = {}
    for v in graph.vertices:
        ext[v] = []
        for i in range(deg[v]):
            ext[v].append(len(labels))
            labels.append(f"{v}_{i + 1}")
        pad[v] = []
        for i in range(deg[v] - b[v]):
            pad[v].append(len(labels))
            labels.append(f"{v}/pad{i + 1}")

    edges: List[Tuple[int, int, int]] = []
    origin: List[Optional[int]] = []
    nth = {v: 0 for v in graph.vertices}
    for idx, e in enumerate(graph.edges):
        i, j = nth[e.u], nth[e.v]
        nth[e.u] += 1
        nth[e.v] += 1
        edges.append((ext[e.u][i], ext[e.v][j], weights[idx]))
        origin.append(idx)

    n_pad = 0
    for v in graph.vertices:
        for p in pad[v]:
            n_pad += 1
            for x in ext[v]:
                edges.append((x, p, 0))
                origin.append(None)

    log.debug(
        "Tutte expansion built",
        extra={"vertices": len(labels), "edges": len(edges), "padding": n_pad},
    )
    return TutteExpansion(
        graph=SimpleGraph(n_vertices=len(labels), edges=tuple(edges), labels=tuple(labels)),
        origin=tuple(origin),
        padding_vertices=n_pad,
    )


def tutte_expand(problem: PerfectBMatchingProblem) -> TutteExpansion | Infeasible:
    return expand(problem.graph, problem.b, [e.weight for e in problem.graph.edges])
