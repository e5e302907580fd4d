# solvers/election_core/schema.py
from __future__ import annotations

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Primitive enums / literals
VoteKind = Literal["approval", "veto"]
CandidateId = str


def check_candidate_name(name: str) -> str:
    """Nonempty token: no whitespace, no '#'."""
    if not name or any(ch.isspace() for ch in name) or "#" in name:
        raise ValueError(f"invalid candidate name {name!r}")
    return name


def fresh_name(base: str, taken) -> str:
    """base, or base with primes appended until it collides with nothing in taken."""
    name = base
    while name in taken:
        name += "'"
    return name


class Rule(BaseModel):
    """k-Approval or k-Veto."""

    model_config = ConfigDict(frozen=True)

    kind: VoteKind
    k: int = Field(..., ge=1)

    @property
    def label(self) -> str:
        return f"{self.k}{'approval' if self.kind == 'approval' else 'veto'}"


class Vote(BaseModel):
    """
    Abbreviated vote: the top-k (approval) or bottom-k (veto) candidates.
    The full ranking is `chosen` at the top/bottom with every other candidate
    in lexicographic order (see scoring.full_ranking).
    """

    model_config = ConfigDict(frozen=True)

    kind: VoteKind
    chosen: Tuple[CandidateId, ...]

    @field_validator("chosen")
    @classmethod
    def _distinct(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if not v:
            raise ValueError("a vote must name at least one candidate")
        if len(set(v)) != len(v):
            raise ValueError(f"duplicate candidate in vote {' '.join(v)}")
        for name in v:
            check_candidate_name(name)
        return v

    @property
    def k(self) -> int:
        return len(self.chosen)

    def as_set(self) -> frozenset:
        return frozenset(self.chosen)


class Voter(BaseModel):
    model_config = ConfigDict(frozen=True)

    vote: Vote
    price: int = Field(1, ge=0)


class Election(BaseModel):
    """
    Candidates (kept sorted, so iteration order is the tie-breaking order)
    plus a voter collection under one k-Approval / k-Veto rule.
    """

    model_config = ConfigDict(frozen=True)

    candidates: Tuple[CandidateId, ...]
    voters: Tuple[Voter, ...] = ()
    rule: Rule

    @field_validator("candidates")
    @classmethod
    def _sorted_unique(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if not v:
            raise ValueError("an election needs at least one candidate")
        for name in v:
            check_candidate_name(name)
        if len(set(v)) != len(v):
            dup = sorted({c for c in v if v.count(c) > 1})
            raise ValueError(f"duplicate candidate(s): {' '.join(dup)}")
        return tuple(sorted(v))

    @model_validator(mode="after")
    def _votes_match_rule(self) -> "Election":
        if self.rule.k > len(self.candidates):
            raise ValueError(f"rule {self.rule.label} needs at least {self.rule.k} candidates")
        check_voters(self.voters, self.candidates, self.rule)
        return self

    @property
    def n(self) -> int:
        return len(self.voters)

    def with_voters(self, voters) -> "Election":
        return Election(candidates=self.candidates, voters=tuple(voters), rule=self.rule)


def check_voters(voters, candidates, rule: Rule) -> None:
    known = set(candidates)
    for i, voter in enumerate(voters):
        vote = voter.vote
        if vote.kind != rule.kind:
            raise ValueError(f"voter {i + 1}: {vote.kind} vote under a {rule.label} rule")
        if vote.k != rule.k:
            raise ValueError(f"voter {i + 1}: names {vote.k} candidates, rule needs {rule.k}")
        unknown = [c for c in vote.chosen if c not in known]
        if unknown:
            raise ValueError(f"voter {i + 1}: unknown candidate(s) {' '.join(unknown)}")


def winners_of(kind: VoteKind, counts: Dict[str, int]) -> Tuple[str, ...]:
    """Nonunique winners: max points under approval, fewest vetoes under veto."""
    if not counts:
        return ()
    best = max(counts.values()) if kind == "approval" else min(counts.values())
    return tuple(sorted(c for c, s in counts.items() if s == best))


class ScoreProfile(BaseModel):
    """Approval points or veto counts per candidate."""

    model_config = ConfigDict(frozen=True)

    kind: VoteKind
    counts: Dict[CandidateId, int]

    def __getitem__(self, candidate: str) -> int:
        return self.counts[candidate]

    def winners(self) -> Tuple[CandidateId, ...]:
        return winners_of(self.kind, self.counts)


class BriberyInstance(BaseModel):
    """Priced bribery: election with voter prices, preferred candidate, budget."""

    model_config = ConfigDict(frozen=True)

    election: Election
    preferred: CandidateId
    budget: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _preferred_known(self) -> "BriberyInstance":
        if self.preferred not in self.election.candidates:
            raise ValueError(f"preferred candidate {self.preferred} is not a candidate")
        return self

    @property
    def candidates(self) -> Tuple[CandidateId, ...]:
        return self.election.candidates

    @property
    def voters(self) -> Tuple[Voter, ...]:
        return self.election.voters

    @property
    def rule(self) -> Rule:
        return self.election.rule


# --------------------------------------------------------------------
# Plans and decisions
# --------------------------------------------------------------------

class ReplacementPlan(BaseModel):
    """Indices into V (removed) and W (added), paired positionally."""

    model_config = ConfigDict(frozen=True)

    removed: Tuple[int, ...] = ()
    added: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def _same_size(self) -> "ReplacementPlan":
        if len(self.removed) != len(self.added):
            raise ValueError("a replacement removes and adds the same number of voters")
        return self


class BriberyPlan(BaseModel):
    """Indices into V and the new vote given to each, positionally."""

    model_config = ConfigDict(frozen=True)

    bribed: Tuple[int, ...] = ()
    new_votes: Tuple[Vote, ...] = ()

    @model_validator(mode="after")
    def _one_vote_each(self) -> "BriberyPlan":
        if len(self.bribed) != len(self.new_votes):
            raise ValueError("every bribed voter needs exactly one new vote")
        if len(set(self.bribed)) != len(self.bribed):
            raise ValueError("a voter is bribed at most once")
        return self


class AttackDecision(BaseModel):
    model_config = ConfigDict(frozen=True)

    decision: bool
    plan: Optional[ReplacementPlan | BriberyPlan] = None
    objective: Optional[int] = Field(
        None,
        description="Cost of the plan: replacements (unpriced CCRV) or total price.",
    )
    details: Dict[str, int] = Field(default_factory=dict)

    @classmethod
    def no(cls, **details: int) -> "AttackDecision":
        return cls(decision=False, details=details)


class WitnessCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    winner: bool
    within_limit: bool
    cost: int
    winners: Tuple[CandidateId, ...] = ()

    @property
    def ok(self) -> bool:
        return self.winner and self.within_limit


def voters_from_sets(kind: VoteKind, sets: List[Tuple[str, ...]], price: int = 1) -> Tuple[Voter, ...]:
    return tuple(Voter(vote=Vote(kind=kind, chosen=tuple(s)), price=price) for s in sets)
