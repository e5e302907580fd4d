from .schema import (
    AttackDecision,
    BriberyInstance,
    BriberyPlan,
    Election,
    ReplacementPlan,
    Rule,
    ScoreProfile,
    Vote,
    Voter,
    WitnessCheck,
)
from .scoring import full_ranking, score, tally, winners, winners_of

__all__ = [
    "AttackDecision",
    "BriberyInstance",
    "BriberyPlan",
    "Election",
    "ReplacementPlan",
    "Rule",
    "ScoreProfile",
    "Vote",
    "Voter",
    "WitnessCheck",
    "full_ranking",
    "score",
    "tally",
    "winners",
    "winners_of",
]
