# solvers/cli/generate.py
from __future__ import annotations

import string
from typing import List, Optional

import numpy as np

from solvers.election_core.schema import Rule, Vote, Voter
from .problem_file import RULES, ProblemFile, ProblemKind


def candidate_names(count: int) -> List[str]:
    """p first, then a, b, c, ... skipping p."""
    if count < 1:
        raise ValueError("need at least one candidate")
    letters = [ch for ch in string.ascii_lowercase if ch != "p"]
    names = ["p"]
    i = 0
    while len(names) < count:
        base = letters[i % len(letters)]
        names.append(base if i < len(letters) else f"{base}{i // len(letters)}")
        i += 1
    return names


def _voters(rng: np.random.Generator, count: int, names: List[str], rule: Rule, max_price: Optional[int]) -> List[Voter]:
    out = []
    for _ in range(count):
        picks = rng.choice(len(names), size=rule.k, replace=False)
        chosen = tuple(sorted(names[int(i)] for i in picks))
        price = int(rng.integers(0, max_price + 1)) if max_price is not None else 1
        out.append(Voter(vote=Vote(kind=rule.kind, chosen=chosen), price=price))
    return out


def random_problem(
    seed: int,
    voters: int,
    candidates: int,
    rule: str = "2approval",
    problem: ProblemKind = "ccrv",
    unregistered: Optional[int] = None,
    limit: Optional[int] = None,
    max_price: int = 3,
) -> ProblemFile:
    """
    Deterministic per seed. Prices are drawn from 0..max_price except for
    unpriced CCRV; a missing limit is drawn from 0..|V| (ccrv) or 0..5.
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    r = RULES[rule]
    if problem != "bribery" and rule != "2approval":
        raise ValueError(f"{problem} is defined for 2approval only")
    if candidates < r.k:
        raise ValueError(f"rule {rule} needs at least {r.k} candidates")

    rng = np.random.default_rng(seed)
    names = candidate_names(candidates)
    price_cap = None if problem == "ccrv" else max_price
    registered = _voters(rng, voters, names, r, price_cap)
    extra: List[Voter] = []
    if problem != "bribery":
        extra = _voters(rng, voters if unregistered is None else unregistered, names, r, price_cap)
    if limit is None:
        limit = int(rng.integers(0, voters + 1)) if problem == "ccrv" else int(rng.integers(0, 6))

    return ProblemFile(
        name=f"random-{seed}",
        problem=problem,
        rule=r,
        candidates=tuple(sorted(names)),
        preferred="p",
        limit=limit,
        registered=tuple(registered),
        unregistered=tuple(extra),
    )
