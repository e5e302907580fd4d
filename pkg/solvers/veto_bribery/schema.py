# solvers/veto_bribery/schema.py
from __future__ import annotations

from collections import Counter
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from solvers.election_core.schema import BriberyInstance, Rule, check_candidate_name

TWO_VETO = Rule(kind="veto", k=2)
THREE_VETO = Rule(kind="veto", k=3)

# 2-Veto / 3-Veto $Bribery use the generic priced bribery instance.
VetoBriberyInstance = BriberyInstance


class SubproblemParams(BaseModel):
    """One (l_p, l'_p) guess: how many p-vetoers and other voters get bribed."""

    model_config = ConfigDict(frozen=True)

    ell_p: int = Field(..., ge=0)
    ell_p_prime: int = Field(..., ge=0)
    fv_p: int = Field(..., ge=0, description="p's final veto count, v_p - l_p.")

    @property
    def bribed(self) -> int:
        return self.ell_p + self.ell_p_prime


class Skip(BaseModel):
    model_config = ConfigDict(frozen=True)

    reason: str


def validate_rx3c(elements: Sequence[str], sets: Sequence[Sequence[str]]) -> List[str]:
    """Problems with an RX3C instance; empty when valid."""
    problems: List[str] = []
    if len(set(elements)) != len(elements):
        problems.append("duplicate elements")
    if len(elements) % 3:
        problems.append(f"|B| = {len(elements)} is not a multiple of 3")
    known = set(elements)
    occurs: Counter = Counter()
    for i, s in enumerate(sets):
        if len(s) != 3 or len(set(s)) != 3:
            problems.append(f"set {i + 1} does not have three distinct elements")
        unknown = [x for x in s if x not in known]
        if unknown:
            problems.append(f"set {i + 1} names unknown element(s) {' '.join(unknown)}")
        occurs.update(set(s))
    for x in elements:
        if occurs[x] != 3:
            problems.append(f"element {x} occurs in {occurs[x]} sets, not 3")
    return problems


class Rx3cInstance(BaseModel):
    """Exact cover by 3-sets where every element lies in exactly three sets (so |S| = |B|)."""

    model_config = ConfigDict(frozen=True)

    elements: Tuple[str, ...]
    sets: Tuple[Tuple[str, str, str], ...]

    @model_validator(mode="after")
    def _exactly_three(self) -> "Rx3cInstance":
        for x in self.elements:
            check_candidate_name(x)
        problems = validate_rx3c(self.elements, self.sets)
        if problems:
            raise ValueError("; ".join(problems))
        return self

    @property
    def k(self) -> int:
        return len(self.elements) // 3
