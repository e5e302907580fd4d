# solvers/veto_bribery/rx3c.py
"""
RX3C instances: generation, text I/O, exact-cover search, and the
reduction to 3-Veto $Bribery.

Text format:

    rx3c
    elements <3k names>
    set <a> <b> <c>        (one line per set)
    end
"""
from __future__ import annotations

from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from common.config import get_settings
from common.errors import CapExceededError, ParseError
from common.logging import get_logger
from solvers.election_core.schema import BriberyInstance, Election, Vote, Voter, fresh_name
from .schema import THREE_VETO, Rx3cInstance, VetoBriberyInstance

log = get_logger("veto_bribery")

GenMethod = Literal["partitions", "configuration"]


# ---- reduction ----

def reduce_rx3c_to_3veto(rx3c: Rx3cInstance) -> VetoBriberyInstance:
    """
    Candidates B + {p, p1, p2} + {d1..d3k}. One price-1 voter per set vetoing
    it, two price-(k+1) voters vetoing p1 p2 p, and k price-(k+1) voters
    covering the dummies in blocks of three. Budget k.
    """
    k = rx3c.k
    taken = set(rx3c.elements)

    def fresh(base: str) -> str:
        name = fresh_name(base, taken)
        taken.add(name)
        return name

    p = fresh("p")
    p1 = fresh("p1")
    p2 = fresh("p2")
    dummies = [fresh(f"d{i}") for i in range(1, 3 * k + 1)]

    heavy = k + 1
    voters: List[Voter] = [Voter(vote=Vote(kind="veto", chosen=tuple(s)), price=1) for s in rx3c.sets]
    voters += [Voter(vote=Vote(kind="veto", chosen=(p1, p2, p)), price=heavy) for _ in range(2)]
    for j in range(k):
        block = tuple(dummies[3 * j: 3 * j + 3])
        voters.append(Voter(vote=Vote(kind="veto", chosen=block), price=heavy))

    election = Election(
        candidates=tuple(rx3c.elements) + (p, p1, p2) + tuple(dummies),
        voters=tuple(voters),
        rule=THREE_VETO,
    )
    return BriberyInstance(election=election, preferred=p, budget=k)


# ---- exact cover ----

def solve_rx3c_brute(rx3c: Rx3cInstance, set_cap: Optional[int] = None) -> Optional[List[int]]:
    """Indices of sets forming an exact cover of B, or None."""
    cap = set_cap if set_cap is not None else get_settings().veto_bribery.rx3c_set_cap
    if len(rx3c.sets) > cap:
        raise CapExceededError("sets", len(rx3c.sets), cap)

    containing = {x: [i for i, s in enumerate(rx3c.sets) if x in s] for x in rx3c.elements}
    covered: set = set()
    chosen: List[int] = []

    def rec() -> bool:
        open_ = [x for x in rx3c.elements if x not in covered]
        if not open_:
            return True
        # branch on the element with the fewest usable sets
        x = min(open_, key=lambda e: sum(1 for i in containing[e] if covered.isdisjoint(rx3c.sets[i])))
        for i in containing[x]:
            s = rx3c.sets[i]
            if not covered.isdisjoint(s):
                continue
            covered.update(s)
            chosen.append(i)
            if rec():
                return True
            chosen.pop()
            covered.difference_update(s)
        return False

    return sorted(chosen) if rec() else None


def is_exact_cover(rx3c: Rx3cInstance, chosen: List[int]) -> bool:
    seen: List[str] = []
    for i in chosen:
        seen.extend(rx3c.sets[i])
    return len(seen) == len(set(seen)) and set(seen) == set(rx3c.elements)


# ---- generation ----

def gen_rx3c(k: int, seed: int, method: GenMethod = "partitions") -> Rx3cInstance:
    """
    partitions:    three random partitions of B into triples (always has a cover).
    configuration: three copies of every element shuffled into triples,
                   reshuffled until no triple repeats an element.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    elements = tuple(str(i) for i in range(1, 3 * k + 1))

    def triples(order) -> List[Tuple[str, str, str]]:
        out = []
        for j in range(0, len(order), 3):
            out.append(tuple(sorted((elements[i] for i in order[j: j + 3]), key=int)))
        return out

    if method == "partitions":
        sets: List[Tuple[str, str, str]] = []
        for _ in range(3):
            sets += triples(rng.permutation(3 * k))
    elif method == "configuration":
        pool = np.repeat(np.arange(3 * k), 3)
        while True:
            order = rng.permutation(pool)
            sets = triples(order)
            if all(len(set(s)) == 3 for s in sets):
                break
    else:
        raise ValueError(f"unknown generator method {method!r}")
    return Rx3cInstance(elements=elements, sets=tuple(sets))


# ---- text I/O ----

def read_rx3c(text: str) -> Rx3cInstance:
    elements: Optional[Tuple[str, ...]] = None
    sets: List[Tuple[str, ...]] = []
    started = ended = False
    last = 0
    for no, raw in enumerate(text.splitlines(), start=1):
        last = no
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if ended:
            raise ParseError(no, "content after 'end'")
        if not started:
            if toks != ["rx3c"]:
                raise ParseError(no, "expected 'rx3c'")
            started = True
        elif toks[0] == "elements":
            if elements is not None:
                raise ParseError(no, "duplicate 'elements' line")
            elements = tuple(toks[1:])
        elif toks[0] == "set":
            if elements is None:
                raise ParseError(no, "'set' before 'elements'")
            if len(toks) != 4:
                raise ParseError(no, "a set has exactly three elements")
            sets.append(tuple(toks[1:]))
        elif toks == ["end"]:
            ended = True
        else:
            raise ParseError(no, f"unknown directive {toks[0]!r}")
    if not started:
        raise ParseError(max(last, 1), "empty rx3c file")
    if not ended:
        raise ParseError(last, "missing 'end'")
    try:
        return Rx3cInstance(elements=elements or (), sets=tuple(sets))
    except ValidationError as e:
        raise ParseError(last, str(e)) from e


def write_rx3c(rx3c: Rx3cInstance) -> str:
    lines = ["rx3c", " ".join(["elements", *rx3c.elements])]
    lines += [f"set {a} {b} {c}" for a, b, c in rx3c.sets]
    lines.append("end")
    return "\n".join(lines) + "\n"
