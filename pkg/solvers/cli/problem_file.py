# solvers/cli/problem_file.py
"""
Election problem files.

    election <name>
    candidates <names...>
    preferred <name>
    problem ccrv|priced-ccrv|bribery
    rule 2approval|2veto|3veto
    limit <int>
    registered
    <count> [price <int>] approve|veto <k names>
    ...
    unregistered              (ccrv / priced-ccrv only)
    <count> [price <int>] approve|veto <k names>
    end

'#' starts a comment. Prices default to 1. `limit` is the replacement
count for ccrv and the budget otherwise.
"""
from __future__ import annotations

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError

from common.errors import ParseError
from solvers.approval_control.schema import CcrvInstance
from solvers.election_core.schema import BriberyInstance, Election, Rule, Vote, Voter, check_candidate_name

ProblemKind = Literal["ccrv", "priced-ccrv", "bribery"]

RULES: Dict[str, Rule] = {
    "2approval": Rule(kind="approval", k=2),
    "2veto": Rule(kind="veto", k=2),
    "3veto": Rule(kind="veto", k=3),
}
PROBLEMS = ("ccrv", "priced-ccrv", "bribery")
HEADER_KEYS = ("election", "candidates", "preferred", "problem", "rule", "limit")


class ProblemFile(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    problem: ProblemKind
    rule: Rule
    candidates: Tuple[str, ...]
    preferred: str
    limit: int
    registered: Tuple[Voter, ...] = ()
    unregistered: Tuple[Voter, ...] = ()

    @property
    def is_ccrv(self) -> bool:
        return self.problem in ("ccrv", "priced-ccrv")

    def to_ccrv(self) -> CcrvInstance:
        return CcrvInstance(
            candidates=self.candidates,
            registered=self.registered,
            unregistered=self.unregistered,
            preferred=self.preferred,
            limit=self.limit,
            priced=self.problem == "priced-ccrv",
        )

    def to_bribery(self) -> BriberyInstance:
        election = Election(candidates=self.candidates, voters=self.registered, rule=self.rule)
        return BriberyInstance(election=election, preferred=self.preferred, budget=self.limit)

    def instance(self) -> CcrvInstance | BriberyInstance:
        return self.to_ccrv() if self.is_ccrv else self.to_bribery()


def rule_name(rule: Rule) -> str:
    for name, r in RULES.items():
        if r == rule:
            return name
    raise ValueError(f"no file name for rule {rule.label}")


def _int(tok: str, line: int, what: str, minimum: int = 0) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}") from None
    if value < minimum:
        raise ParseError(line, f"{what} must be at least {minimum}")
    return value


def _voter_line(toks: List[str], line: int, rule: Rule, known: set) -> List[Voter]:
    count = _int(toks[0], line, "voter count", minimum=1)
    rest = toks[1:]
    price = 1
    if rest[:1] == ["price"]:
        if len(rest) < 2:
            raise ParseError(line, "'price' needs a value")
        price = _int(rest[1], line, "price")
        rest = rest[2:]
    word = "approve" if rule.kind == "approval" else "veto"
    if not rest or rest[0] not in ("approve", "veto"):
        raise ParseError(line, "expected 'approve' or 'veto'")
    if rest[0] != word:
        raise ParseError(line, f"'{rest[0]}' vote under a {rule.label} rule")
    names = rest[1:]
    if len(names) != rule.k:
        raise ParseError(line, f"vote names {len(names)} candidates, rule needs {rule.k}")
    if len(set(names)) != len(names):
        raise ParseError(line, f"duplicate candidate in vote {' '.join(names)}")
    unknown = [c for c in names if c not in known]
    if unknown:
        raise ParseError(line, f"unknown candidate(s) {' '.join(unknown)}")
    voter = Voter(vote=Vote(kind=rule.kind, chosen=tuple(names)), price=price)
    return [voter] * count


def parse_problem(text: str) -> ProblemFile:
    header: Dict[str, object] = {}
    registered: List[Voter] = []
    unregistered: List[Voter] = []
    block: Optional[str] = None
    ended = False
    last = 0

    for no, raw in enumerate(text.splitlines(), start=1):
        last = no
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if ended:
            raise ParseError(no, "content after 'end'")
        head = toks[0]

        if head == "end":
            if len(toks) != 1:
                raise ParseError(no, "'end' takes no arguments")
            ended = True
            continue
        if head in ("registered", "unregistered"):
            missing = [k for k in HEADER_KEYS if k not in header]
            if missing:
                raise ParseError(no, f"missing header line(s): {' '.join(missing)}")
            if head == "registered" and block is not None:
                raise ParseError(no, "'registered' must come first and only once")
            if head == "unregistered":
                if block != "registered":
                    raise ParseError(no, "'unregistered' must follow 'registered'")
                if header["problem"] == "bribery":
                    raise ParseError(no, "bribery problems have no unregistered voters")
            block = head
            continue
        if block is not None:
            if not head.isdigit():
                raise ParseError(no, f"expected a voter line, got {head!r}")
            target = registered if block == "registered" else unregistered
            target.extend(_voter_line(toks, no, header["rule"], set(header["candidates"])))
            continue

        # header
        if head not in HEADER_KEYS:
            raise ParseError(no, f"unknown directive {head!r}")
        if head in header:
            raise ParseError(no, f"duplicate '{head}' line")
        args = toks[1:]
        if head == "candidates":
            if not args:
                raise ParseError(no, "no candidates")
            seen = set()
            for c in args:
                try:
                    check_candidate_name(c)
                except ValueError as e:
                    raise ParseError(no, str(e)) from None
                if c in seen:
                    raise ParseError(no, f"duplicate candidate {c}")
                seen.add(c)
            header[head] = tuple(args)
            continue
        if len(args) != 1:
            raise ParseError(no, f"'{head}' takes exactly one argument")
        arg = args[0]
        if head == "election":
            header[head] = arg
        elif head == "preferred":
            if "candidates" not in header:
                raise ParseError(no, "'preferred' before 'candidates'")
            if arg not in header["candidates"]:
                raise ParseError(no, f"preferred candidate {arg} is not a candidate")
            header[head] = arg
        elif head == "problem":
            if arg not in PROBLEMS:
                raise ParseError(no, f"unknown problem {arg!r}")
            header[head] = arg
        elif head == "rule":
            if arg not in RULES:
                raise ParseError(no, f"unknown rule {arg!r}")
            header[head] = RULES[arg]
        elif head == "limit":
            header[head] = _int(arg, no, "limit")

    if not ended:
        raise ParseError(max(last, 1), "missing 'end'")
    if block is None:
        raise ParseError(last, "missing 'registered' block")

    rule: Rule = header["rule"]
    if header["problem"] != "bribery" and rule != RULES["2approval"]:
        raise ParseError(last, f"{header['problem']} is defined for 2approval only")
    if rule.k > len(header["candidates"]):
        raise ParseError(last, f"rule {rule.label} needs at least {rule.k} candidates")

    try:
        pf = ProblemFile(
            name=header["election"],
            problem=header["problem"],
            rule=rule,
            candidates=tuple(sorted(header["candidates"])),
            preferred=header["preferred"],
            limit=header["limit"],
            registered=tuple(registered),
            unregistered=tuple(unregistered),
        )
        pf.instance()
    except ValidationError as e:
        raise ParseError(last, "; ".join(err["msg"] for err in e.errors())) from e
    return pf


def _voter_lines(voters: Tuple[Voter, ...]) -> List[str]:
    lines: List[str] = []
    i = 0
    while i < len(voters):
        j = i
        while j < len(voters) and voters[j] == voters[i]:
            j += 1
        v = voters[i]
        word = "approve" if v.vote.kind == "approval" else "veto"
        price = f" price {v.price}" if v.price != 1 else ""
        lines.append(f"{j - i}{price} {word} {' '.join(v.vote.chosen)}")
        i = j
    return lines


def serialize_problem(pf: ProblemFile) -> str:
    lines = [
        f"election {pf.name}",
        f"candidates {' '.join(pf.candidates)}",
        f"preferred {pf.preferred}",
        f"problem {pf.problem}",
        f"rule {rule_name(pf.rule)}",
        f"limit {pf.limit}",
        "registered",
        *_voter_lines(pf.registered),
    ]
    if pf.is_ccrv:
        lines.append("unregistered")
        lines += _voter_lines(pf.unregistered)
    lines.append("end")
    return "\n".join(lines) + "\n"
