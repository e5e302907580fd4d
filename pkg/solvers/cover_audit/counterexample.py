# solvers/cover_audit/counterexample.py
"""
Fixed b-edge cover instance produced by the published NMTS -> cover
reduction on the negative instance A = {3,4}, B = {5,6}, C = {8,9} (n = 2),
together with a cover that meets the reduction's threshold anyway.

Layout: an 8-cycle of heavy (n^4) edges through row/col vertices and the
pair vertices v(S); one 9-vertex connectivity gadget per v(S) other than
v(4,6), wired to the target-sum vertices. Vertex and edge b-values and
weights are 1 unless set below.
"""
from __future__ import annotations

from typing import Dict, List, Tuple

from solvers.matching_engine.schema import MultiEdge, Multigraph
from .nmts import bt_threshold, count_target_triples
from .schema import BEdgeCoverProblem, BtCounterexample, NmtsInstance

N = 2
HEAVY = N ** 4

CYCLE = ["row1", "v(3,6)", "col2", "v(4,6)", "row2", "v(4,5)", "col1", "v(3,5)"]

# gadget owner -> (target for gadget vertex 6, target for gadget vertex 5)
GADGETS: Dict[str, Tuple[str, str]] = {
    "v(3,5)": ("v(8^1)", "v(8^2)"),
    "v(3,6)": ("v(9^1)", "v(9^2)"),
    "v(4,5)": ("v(9^1)", "v(9^2)"),
}

# published cover as (u, v) pairs; gadget vertices are written "<owner>:<label>"
PUBLISHED_COVER: List[Tuple[str, str]] = [
    ("row1", "v(3,6)"),
    ("row2", "v(4,6)"),
    ("col1", "v(4,5)"),
    ("col2", "v(4,6)"),
    # v(3,5): the second expected configuration
    ("v(3,5):star", "v(3,5):3"),
    ("v(3,5):star", "v(3,5):4"),
    ("v(3,5):star", "v(3,5):7"),
    ("v(3,5):star", "v(3,5):8"),
    ("v(3,5):1", "v(3,5)"),
    ("v(3,5):2", "v(3,5)"),
    ("v(3,5):6", "v(8^1)"),
    ("v(3,5):5", "v(8^2)"),
    # v(3,6)
    ("v(3,6):1", "v(3,6)"),
    ("v(3,6):star", "v(3,6):2"),
    ("v(3,6):star", "v(3,6):7"),
    ("v(3,6):star", "v(3,6):8"),
    ("v(3,6):star", "v(3,6):5"),
    ("v(3,6):3", "v(3,6):4"),
    ("v(3,6):6", "v(9^1)"),
    # v(4,5)
    ("v(4,5):1", "v(4,5)"),
    ("v(4,5):star", "v(4,5):2"),
    ("v(4,5):star", "v(4,5):7"),
    ("v(4,5):star", "v(4,5):8"),
    ("v(4,5):star", "v(4,5):6"),
    ("v(4,5):3", "v(4,5):4"),
    ("v(4,5):5", "v(9^2)"),
]


def _gadget(owner: str, targets: Tuple[str, str]) -> Tuple[List[str], List[MultiEdge]]:
    star = f"{owner}:star"
    labels = [f"{owner}:{i}" for i in range(1, 9)]
    vertices = [star] + labels
    edges = [MultiEdge(u=star, v=x, weight=1, tag="gadget") for x in labels]
    edges.append(MultiEdge(u=f"{owner}:3", v=f"{owner}:4", weight=1, tag="gadget"))
    edges.append(MultiEdge(u=f"{owner}:7", v=f"{owner}:8", weight=1, tag="gadget"))
    edges.append(MultiEdge(u=f"{owner}:1", v=owner, weight=1, tag="attach"))
    edges.append(MultiEdge(u=f"{owner}:2", v=owner, weight=1, tag="attach"))
    edges.append(MultiEdge(u=f"{owner}:6", v=targets[0], weight=1, tag="target"))
    edges.append(MultiEdge(u=f"{owner}:5", v=targets[1], weight=1, tag="target"))
    return vertices, edges


def build_bt_counterexample() -> BtCounterexample:
    vertices: List[str] = list(CYCLE) + ["v(8^1)", "v(8^2)", "v(9^1)", "v(9^2)"]
    edges: List[MultiEdge] = []
    for i, u in enumerate(CYCLE):
        edges.append(MultiEdge(u=u, v=CYCLE[(i + 1) % len(CYCLE)], weight=HEAVY, tag="heavy"))
    for owner, targets in GADGETS.items():
        vs, es = _gadget(owner, targets)
        vertices += vs
        edges += es

    b = {v: 1 for v in vertices}
    for v in CYCLE:
        if v.startswith("v("):
            b[v] = 2
    for owner in GADGETS:
        b[f"{owner}:star"] = 4

    graph = Multigraph(vertices=tuple(vertices), edges=tuple(edges))
    lookup = {}
    for i, e in enumerate(graph.edges):
        lookup.setdefault(frozenset((e.u, e.v)), i)
    cover = tuple(sorted(lookup[frozenset(pair)] for pair in PUBLISHED_COVER))

    nmts = NmtsInstance(a=(3, 4), b=(5, 6), c=(8, 9))
    return BtCounterexample(
        problem=BEdgeCoverProblem(graph=graph, b=b),
        published_cover=cover,
        nmts=nmts,
        threshold=bt_threshold(nmts.n, count_target_triples(nmts)),
    )
