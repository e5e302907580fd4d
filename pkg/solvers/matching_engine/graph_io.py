# solvers/matching_engine/graph_io.py
"""
Graph text format:

    graph
    vertex <name> b <int>
    edge <u> <v> weight <int> [count <int>]
    end

'#' starts a comment; blank lines are ignored. Edge indices follow file
order with `count` copies expanded in place.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import networkx as nx
from pydantic import ValidationError

from common.errors import ParseError
from .schema import MultiEdge, Multigraph, PerfectBMatchingProblem, Sense


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}") from None


def read_graph(text: str, sense: Sense = "maximize") -> PerfectBMatchingProblem:
    vertices: List[str] = []
    b: Dict[str, int] = {}
    edges: List[MultiEdge] = []
    started = ended = False
    last = 0

    for no, raw in enumerate(text.splitlines(), start=1):
        last = no
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if ended:
            raise ParseError(no, "content after 'end'")
        head = toks[0]
        if not started:
            if toks != ["graph"]:
                raise ParseError(no, "expected 'graph'")
            started = True
            continue
        if head == "end":
            ended = True
        elif head == "vertex":
            if len(toks) != 4 or toks[2] != "b":
                raise ParseError(no, "expected 'vertex <name> b <int>'")
            name = toks[1]
            if name in b:
                raise ParseError(no, f"duplicate vertex {name}")
            d = _int(toks[3], no, "b")
            if d < 0:
                raise ParseError(no, f"negative demand for {name}")
            vertices.append(name)
            b[name] = d
        elif head == "edge":
            if len(toks) not in (5, 7) or toks[3] != "weight" or (len(toks) == 7 and toks[5] != "count"):
                raise ParseError(no, "expected 'edge <u> <v> weight <int> [count <int>]'")
            u, v = toks[1], toks[2]
            for name in (u, v):
                if name not in b:
                    raise ParseError(no, f"unknown vertex {name}")
            if u == v:
                raise ParseError(no, f"self-loop at {u}")
            w = _int(toks[4], no, "weight")
            count = _int(toks[6], no, "count") if len(toks) == 7 else 1
            if count < 1:
                raise ParseError(no, "count must be positive")
            edges.extend(MultiEdge(u=u, v=v, weight=w) for _ in range(count))
        else:
            raise ParseError(no, f"unknown directive {head!r}")

    if not started:
        raise ParseError(max(last, 1), "empty graph file")
    if not ended:
        raise ParseError(last, "missing 'end'")
    try:
        return PerfectBMatchingProblem(
            graph=Multigraph(vertices=tuple(vertices), edges=tuple(edges)),
            b=b,
            sense=sense,
        )
    except ValidationError as e:
        raise ParseError(last, str(e)) from e


def write_graph(problem: PerfectBMatchingProblem) -> str:
    """Serialize; runs of identical consecutive edges collapse into `count`."""
    out = ["graph"]
    for v in problem.graph.vertices:
        out.append(f"vertex {v} b {problem.b[v]}")

    run: Optional[Tuple[str, str, int]] = None
    n = 0
    for e in problem.graph.edges:
        key = (e.u, e.v, e.weight)
        if key == run:
            n += 1
            continue
        if run is not None:
            out.append(_edge_line(run, n))
        run, n = key, 1
    if run is not None:
        out.append(_edge_line(run, n))
    out.append("end")
    return "\n".join(out) + "\n"


def _edge_line(key: Tuple[str, str, int], n: int) -> str:
    u, v, w = key
    return f"edge {u} {v} weight {w}" + (f" count {n}" if n > 1 else "")


def to_networkx(graph: Multigraph, b: Optional[Dict[str, int]] = None) -> nx.MultiGraph:
    """nx.MultiGraph view; edge keys are edge indices, node attribute 'b' when given."""
    G = nx.MultiGraph()
    for v in graph.vertices:
        if b is None:
            G.add_node(v)
        else:
            G.add_node(v, b=b[v])
    for i, e in enumerate(graph.edges):
        G.add_edge(e.u, e.v, key=i, weight=e.weight, tag=e.tag)
    return G
