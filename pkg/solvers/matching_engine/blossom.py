# solvers/matching_engine/blossom.py
from __future__ import annotations

from typing import Dict, Optional, Tuple

import networkx as nx

from common.config import get_settings
from common.errors import WeightOverflowError
from common.logging import get_logger
from .schema import Infeasible, MatchingSolution, SimpleGraph

log = get_logger("matching_engine")


def max_weight_perfect_matching(
    graph: SimpleGraph,
    weight_limit: Optional[int] = None,
) -> MatchingSolution | Infeasible:
    """
    Maximum-weight perfect matching on a simple graph (Edmonds' blossom via
    networkx). Weights are shifted to be >= 1 first; every perfect matching
    has n/2 edges so the shift does not move the optimum.
    """
    if graph.n_vertices % 2:
        return Infeasible(reason=f"odd vertex count {graph.n_vertices}")
    if graph.n_vertices == 0:
        return MatchingSolution(selected=(), total_weight=0)
    if not graph.edges:
        return Infeasible(reason="no edges")

    limit = weight_limit if weight_limit is not None else get_settings().matching.weight_limit
    low = min(w for _u, _v, w in graph.edges)
    shift = 1 - low
    top = max(w for _u, _v, w in graph.edges) + shift
    if top > limit or abs(low) > limit:
        raise WeightOverflowError(f"shifted weight {top} exceeds limit {limit}")

    G = nx.Graph()
    G.add_nodes_from(range(graph.n_vertices))
    index: Dict[Tuple[int, int], int] = {}
    for i, (u, v, w) in enumerate(graph.edges):
        G.add_edge(u, v, weight=w + shift)
        index[(u, v) if u < v else (v, u)] = i

    mate = nx.max_weight_matching(G, maxcardinality=True, weight="weight")
    if 2 * len(mate) != graph.n_vertices:
        return Infeasible(reason=f"no perfect matching ({len(mate)} of {graph.n_vertices // 2} pairs)")

    selected = [index[(u, v) if u < v else (v, u)] for u, v in mate]
    total = sum(graph.edges[i][2] for i in selected)
    log.debug("blossom matched", extra={"vertices": graph.n_vertices, "weight": total})
    return MatchingSolution(selected=tuple(selected), total_weight=total)
