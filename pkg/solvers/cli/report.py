# solvers/cli/report.py
"""Line-oriented, byte-deterministic reports."""
from __future__ import annotations

from typing import List, Optional, Sequence

from solvers.election_core.schema import AttackDecision, BriberyPlan, ReplacementPlan, Vote, WitnessCheck
from solvers.election_core.scoring import full_ranking


def voter_label(side: str, index: int) -> str:
    return f"{side.lower()}{index + 1}"


def _vote_words(vote: Vote) -> str:
    word = "approve" if vote.kind == "approval" else "veto"
    return f"{word} {' '.join(vote.chosen)}"


def decision_lines(
    res: AttackDecision,
    witness: bool = False,
    full_votes: bool = False,
    candidates: Sequence[str] = (),
    preferred: Optional[str] = None,
    unregistered: Sequence = (),
) -> List[str]:
    lines = [f"decision {'yes' if res.decision else 'no'}"]
    if not res.decision:
        return lines
    lines.append(f"objective {res.objective}")
    if not witness or res.plan is None:
        return lines

    plan = res.plan
    if isinstance(plan, ReplacementPlan):
        for r, a in zip(plan.removed, plan.added):
            lines.append(f"replace {voter_label('V', r)} with {voter_label('W', a)}")
            if full_votes and unregistered:
                ranking = full_ranking(unregistered[a].vote, candidates, preferred)
                lines.append(f"full {voter_label('W', a)} {' > '.join(ranking)}")
    elif isinstance(plan, BriberyPlan):
        for i, vote in zip(plan.bribed, plan.new_votes):
            lines.append(f"bribe {voter_label('V', i)} to {_vote_words(vote)}")
            if full_votes:
                ranking = full_ranking(vote, candidates, preferred)
                lines.append(f"full {voter_label('V', i)} {' > '.join(ranking)}")
    return lines


def check_lines(check: WitnessCheck) -> List[str]:
    return [f"check winner {'yes' if check.ok else 'no'}"]


def audit_lines(
    cover_weight: int,
    threshold: int,
    nmts_positive: bool,
    optimum: Optional[int],
) -> List[str]:
    refuted = (not nmts_positive) and cover_weight <= threshold
    lines = [
        f"cover weight {cover_weight}",
        f"threshold {threshold}",
        f"nmts {'yes' if nmts_positive else 'no'}",
        f"refuted {'yes' if refuted else 'no'}",
    ]
    if optimum is not None:
        lines.append(f"optimum {optimum}")
    return lines
