# solvers/matching_engine/schema.py
from __future__ import annotations

from collections import Counter
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


Sense = Literal["maximize", "minimize"]


class MultiEdge(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: str
    v: str
    weight: int
    tag: str = Field("", description="Opaque label, e.g. 'V:3', 'pad', 'bribe'.")


class Multigraph(BaseModel):
    """
    Named vertices and weighted parallel edges. Edge indices are stable and
    are what solutions refer to. Self-loops are rejected.
    """

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...]
    edges: Tuple[MultiEdge, ...] = ()

    @model_validator(mode="after")
    def _well_formed(self) -> "Multigraph":
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        known = set(self.vertices)
        for i, e in enumerate(self.edges):
            if e.u == e.v:
                raise ValueError(f"edge {i} is a self-loop at {e.u}")
            if e.u not in known or e.v not in known:
                raise ValueError(f"edge {i} ({e.u}, {e.v}) has an unknown endpoint")
        return self

    def degrees(self) -> Dict[str, int]:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def incident(self) -> Dict[str, List[int]]:
        out: Dict[str, List[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            out[e.u].append(i)
            out[e.v].append(i)
        return out

    def total_weight(self) -> int:
        return sum(e.weight for e in self.edges)


class PerfectBMatchingProblem(BaseModel):
    model_config = ConfigDict(frozen=True)

    graph: Multigraph
    b: Dict[str, int]
    sense: Sense = "maximize"

    @model_validator(mode="after")
    def _demands(self) -> "PerfectBMatchingProblem":
        vertices = set(self.graph.vertices)
        for v, d in self.b.items():
            if v not in vertices:
                raise ValueError(f"demand for unknown vertex {v}")
            if d < 0:
                raise ValueError(f"negative demand b({v}) = {d}")
        missing = [v for v in self.graph.vertices if v not in self.b]
        if missing:
            raise ValueError(f"no demand for vertex/vertices {' '.join(missing)}")
        return self

    def demand_total(self) -> int:
        return sum(self.b.values())


class MatchingSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    selected: Tuple[int, ...]
    total_weight: int

    @field_validator("selected")
    @classmethod
    def _sorted(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(sorted(v))


class Infeasible(BaseModel):
    model_config = ConfigDict(frozen=True)

    reason: str


class SimpleGraph(BaseModel):
    """Vertices 0..n-1, at most one edge per pair, no loops. Edges are (u, v, weight)."""

    model_config = ConfigDict(frozen=True)

    n_vertices: int = Field(ge=0)
    edges: Tuple[Tuple[int, int, int], ...] = ()
    labels: Tuple[str, ...] = ()

    @model_validator(mode="after")
    def _simple(self) -> "SimpleGraph":
        seen = set()
        for u, v, _w in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) has an unknown endpoint")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"parallel edge ({u}, {v}) in a simple graph")
            seen.add(key)
        if self.labels and len(self.labels) != self.n_vertices:
            raise ValueError(f"{len(self.labels)} labels for {self.n_vertices} vertices")
        return self


class TutteExpansion(BaseModel):
    model_config = ConfigDict(frozen=True)

    graph: SimpleGraph
    origin: Tuple[Optional[int], ...]  # per simple edge: original edge index, None for padding
    padding_vertices: int = 0

    @model_validator(mode="after")
    def _origin_per_edge(self) -> "TutteExpansion":
        if len(self.origin) != len(self.graph.edges):
            raise ValueError(f"{len(self.origin)} origins for {len(self.graph.edges)} edges")
        return self


class VerifyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    total_weight: int = 0
    vertex: Optional[str] = None
    offenders: Tuple[str, ...] = ()
    message: str = ""


def selection_degrees(graph: Multigraph, selected) -> Counter:
    deg: Counter = Counter()
    for i in selected:
        e = graph.edges[i]
        deg[e.u] += 1
        deg[e.v] += 1
    return deg
