# solvers/cover_audit/schema.py
from __future__ import annotations

from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from solvers.matching_engine.schema import Multigraph


class BEdgeCoverProblem(BaseModel):
    """Pick edges so that every vertex v meets at least b(v) of them."""

    model_config = ConfigDict(frozen=True)

    graph: Multigraph
    b: Dict[str, int]

    @model_validator(mode="after")
    def _demands(self) -> "BEdgeCoverProblem":
        for v in self.graph.vertices:
            if v not in self.b:
                raise ValueError(f"no demand for vertex {v}")
            if self.b[v] < 0:
                raise ValueError(f"negative demand b({v}) = {self.b[v]}")
        extra = set(self.b) - set(self.graph.vertices)
        if extra:
            raise ValueError(f"demand for unknown vertex/vertices {' '.join(sorted(extra))}")
        return self


class CoverSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    selected: Tuple[int, ...]
    total_weight: int


class CoverReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    total_weight: int = 0
    vertex: Optional[str] = None
    offenders: Tuple[str, ...] = ()
    message: str = ""


class NmtsInstance(BaseModel):
    """Numerical matching with target sums: pair A with B so the sums are exactly C."""

    model_config = ConfigDict(frozen=True)

    a: Tuple[int, ...]
    b: Tuple[int, ...]
    c: Tuple[int, ...]

    @model_validator(mode="after")
    def _shape(self) -> "NmtsInstance":
        if not (len(self.a) == len(self.b) == len(self.c)):
            raise ValueError("A, B and C must have the same size")
        values = self.a + self.b + self.c
        if any(x <= 0 for x in values):
            raise ValueError("NMTS values are positive integers")
        if len(set(values)) != len(values):
            raise ValueError("all 3n NMTS values must be distinct")
        return self

    @property
    def n(self) -> int:
        return len(self.a)


class BtCounterexample(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: BEdgeCoverProblem
    published_cover: Tuple[int, ...] = Field(..., description="Edge indices of the weight-86 cover.")
    nmts: NmtsInstance
    threshold: int
