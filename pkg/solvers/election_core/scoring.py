# solvers/election_core/scoring.py
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .schema import Election, ScoreProfile, Vote, VoteKind, winners_of


def tally(candidates: Sequence[str], chosen_sets: Iterable[Iterable[str]]) -> Dict[str, int]:
    """Per-candidate membership counts over the given top-k / bottom-k sets."""
    counts = {c: 0 for c in candidates}
    for chosen in chosen_sets:
        for c in chosen:
            counts[c] += 1
    return counts


def is_winner(kind: VoteKind, counts: Dict[str, int], candidate: str) -> bool:
    mine = counts[candidate]
    if kind == "approval":
        return all(mine >= s for s in counts.values())
    return all(mine <= s for s in counts.values())


def score(election: Election) -> ScoreProfile:
    counts = tally(election.candidates, (v.vote.chosen for v in election.voters))
    return ScoreProfile(kind=election.rule.kind, counts=counts)


def winners(election: Election) -> Tuple[str, ...]:
    return winners_of(election.rule.kind, score(election).counts)


def full_ranking(vote: Vote, candidates: Sequence[str], preferred: Optional[str] = None) -> List[str]:
    """
    Complete ranking denoted by an abbreviated vote, best first.
    Approval: chosen, then the rest lexicographically.
    Veto: preferred first (when not vetoed), the rest lexicographically,
    then the vetoed candidates.
    """
    rest = sorted(c for c in candidates if c not in vote.chosen)
    if vote.kind == "approval":
        return list(vote.chosen) + rest
    if preferred is not None and preferred in rest:
        rest.remove(preferred)
        rest.insert(0, preferred)
    return rest + list(vote.chosen)
