# solvers/approval_control/schema.py
from __future__ import annotations

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from solvers.election_core.schema import (
    BriberyInstance,
    CandidateId,
    Election,
    Rule,
    Voter,
    check_candidate_name,
    check_voters,
)

TWO_APPROVAL = Rule(kind="approval", k=2)

# 2-Approval $Bribery uses the generic priced bribery instance.
ApprovalBriberyInstance = BriberyInstance


class CcrvInstance(BaseModel):
    """
    Control by replacing voters under 2-Approval. `limit` is the number of
    replacements when unpriced, the budget on pi(removed) + pi(added) when
    priced. Prices are ignored when unpriced.
    """

    model_config = ConfigDict(frozen=True)

    candidates: Tuple[CandidateId, ...]
    registered: Tuple[Voter, ...] = ()
    unregistered: Tuple[Voter, ...] = ()
    preferred: CandidateId
    limit: int = Field(..., ge=0)
    priced: bool = False

    @field_validator("candidates")
    @classmethod
    def _sorted(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if len(set(v)) != len(v):
            raise ValueError("duplicate candidates")
        for name in v:
            check_candidate_name(name)
        return tuple(sorted(v))

    @model_validator(mode="after")
    def _consistent(self) -> "CcrvInstance":
        if len(self.candidates) < TWO_APPROVAL.k:
            raise ValueError("2-Approval needs at least two candidates")
        if self.preferred not in self.candidates:
            raise ValueError(f"preferred candidate {self.preferred} is not a candidate")
        check_voters(self.registered, self.candidates, TWO_APPROVAL)
        check_voters(self.unregistered, self.candidates, TWO_APPROVAL)
        if not self.priced and self.limit > len(self.registered):
            raise ValueError(f"limit {self.limit} exceeds |V| = {len(self.registered)}")
        return self

    @property
    def n(self) -> int:
        return len(self.registered)

    @property
    def rule(self) -> Rule:
        return TWO_APPROVAL

    def election(self) -> Election:
        return Election(candidates=self.candidates, voters=self.registered, rule=TWO_APPROVAL)

    def approvers(self, side: str) -> List[int]:
        """Indices of V (side 'V') or W (side 'W') voters approving p."""
        voters = self.registered if side == "V" else self.unregistered
        return [i for i, v in enumerate(voters) if self.preferred in v.vote.chosen]


VoterRef = Tuple[str, int]  # ("V" | "W", index)


class CcrvGraphMeta(BaseModel):
    model_config = ConfigDict(frozen=True)

    fs_p: int
    threshold: int = Field(..., description="Yes iff the max matching weight reaches this.")
    aux: CandidateId = Field(..., description="Name of the padding vertex x.")
    edge_voters: Tuple[Optional[VoterRef], ...] = Field(
        ..., description="Per edge index: the voter it stands for, None on padding edges."
    )


class TriviallyNo(BaseModel):
    model_config = ConfigDict(frozen=True)

    reason: str
