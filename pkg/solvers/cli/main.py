# solvers/cli/main.py
"""
Command-line front end.

    python -m solvers.cli.main solve data/instances/ex1.election --witness --check
    python -m solvers.cli.main oracle data/instances/ex2.election
    python -m solvers.cli.main compare data/instances/ex2.election
    python -m solvers.cli.main match data/instances/fig1.graph --sense max --threshold 2
    python -m solvers.cli.main gen rx3c --k 2 --seed 7
    python -m solvers.cli.main gen election --seed 1 --voters 6 --candidates 5 --rule 2veto --problem bribery
    python -m solvers.cli.main reduce rx3c data/instances/rx3c_k1.rx3c
    python -m solvers.cli.main audit-counterexample

Exit status: 0 decided, 1 usage or parse error, 2 cap exceeded,
3 solver/oracle disagreement or a failed --check.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from pydantic import ValidationError

from common.config import get_settings, load_settings
from common.errors import CapExceededError, ParseError, SolverError
from common.logging import configure_logging, get_logger
from solvers.approval_control import (
    bribery_as_ccrv,
    build_ccrv_graph,
    build_priced_ccrv_graph,
    solve_bribery_2approval,
    solve_ccrv_2approval,
    solve_priced_ccrv_2approval,
)
from solvers.approval_control.schema import TriviallyNo
from solvers.cover_audit import (
    build_bt_counterexample,
    min_weight_b_edge_cover,
    solve_nmts_brute,
    verify_b_edge_cover,
)
from solvers.election_core.schema import AttackDecision, BriberyPlan, ReplacementPlan, WitnessCheck
from solvers.election_core.witness import check_bribery, check_replacement
from solvers.matching_engine import Infeasible, meets_threshold, read_graph, solve, write_graph
from solvers.oracles import brute_bribery, brute_ccrv
from solvers.veto_bribery import (
    build_2veto_graph,
    gen_rx3c,
    read_rx3c,
    reduce_rx3c_to_3veto,
    solve_bribery_2veto,
    solve_bribery_3veto_exact,
    subproblem_order,
    write_rx3c,
)
from solvers.veto_bribery.schema import Skip
from .generate import random_problem
from .problem_file import RULES, ProblemFile, parse_problem, rule_name, serialize_problem
from .report import audit_lines, check_lines, decision_lines

log = get_logger("cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2), which means "cap exceeded" here
        raise UsageError(message)


# ---- dispatch ----

def run_solver(pf: ProblemFile, backend: Optional[str] = None) -> AttackDecision:
    if pf.problem == "ccrv":
        return solve_ccrv_2approval(pf.to_ccrv(), backend=backend)
    if pf.problem == "priced-ccrv":
        return solve_priced_ccrv_2approval(pf.to_ccrv(), backend=backend)
    rule = rule_name(pf.rule)
    if rule == "2approval":
        return solve_bribery_2approval(pf.to_bribery(), backend=backend)
    if rule == "2veto":
        return solve_bribery_2veto(pf.to_bribery(), backend=backend)
    return solve_bribery_3veto_exact(pf.to_bribery())


def run_oracle(pf: ProblemFile) -> AttackDecision:
    if pf.is_ccrv:
        return brute_ccrv(pf.to_ccrv())
    return brute_bribery(pf.to_bribery())


def recheck(pf: ProblemFile, res: AttackDecision) -> Optional[WitnessCheck]:
    """Independent re-scoring of a yes witness, election-core only."""
    if not res.decision or res.plan is None:
        return None
    if isinstance(res.plan, ReplacementPlan):
        inst = pf.to_ccrv()
        return check_replacement(
            inst.candidates, inst.rule, inst.registered, inst.unregistered,
            inst.preferred, res.plan, inst.limit, inst.priced,
        )
    if isinstance(res.plan, BriberyPlan):
        return check_bribery(pf.to_bribery(), res.plan)
    return None


def dump_graphs(pf: ProblemFile, directory: Path) -> List[Path]:
    """Write every matching problem the solver would build for this file."""
    directory.mkdir(parents=True, exist_ok=True)
    out: List[Path] = []

    def emit(name: str, problem) -> None:
        path = directory / name
        path.write_text(write_graph(problem), encoding="utf-8")
        out.append(path)

    rule = rule_name(pf.rule)
    if pf.problem == "ccrv":
        built = build_ccrv_graph(pf.to_ccrv())
        if not isinstance(built, TriviallyNo):
            emit("ccrv.graph", built[0])
    elif pf.problem == "priced-ccrv" or rule == "2approval":
        inst = pf.to_ccrv() if pf.problem == "priced-ccrv" else bribery_as_ccrv(pf.to_bribery())
        for fs_p in range(inst.n + 1):
            built = build_priced_ccrv_graph(inst, fs_p)
            if not isinstance(built, TriviallyNo):
                emit(f"priced_fs{fs_p}.graph", built[0])
    elif rule == "2veto":
        inst = pf.to_bribery()
        for params in subproblem_order(inst):
            built = build_2veto_graph(inst, params)
            if not isinstance(built, Skip):
                emit(f"2veto_{params.ell_p}_{params.ell_p_prime}.graph", built)
    else:
        log.warning("3-Veto bribery is solved without a matching construction; nothing to dump")
    return out


# ---- commands ----

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def cmd_solve(args, out: TextIO) -> int:
    pf = parse_problem(_read(args.file))
    if args.dump_graph:
        for path in dump_graphs(pf, Path(args.dump_graph)):
            log.info("wrote %s", path)
    res = run_solver(pf, backend=args.backend)
    lines = decision_lines(
        res,
        witness=args.witness or args.full_votes,
        full_votes=args.full_votes,
        candidates=pf.candidates,
        preferred=pf.preferred,
        unregistered=pf.unregistered,
    )
    status = EXIT_OK
    if args.check:
        check = recheck(pf, res)
        if check is not None:
            lines += check_lines(check)
            if not check.ok:
                status = EXIT_MISMATCH
    out.write("\n".join(lines) + "\n")
    return status


def cmd_oracle(args, out: TextIO) -> int:
    pf = parse_problem(_read(args.file))
    res = run_oracle(pf)
    lines = decision_lines(res, witness=args.witness, candidates=pf.candidates, preferred=pf.preferred)
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_compare(args, out: TextIO) -> int:
    pf = parse_problem(_read(args.file))
    solver = run_solver(pf, backend=args.backend)
    oracle = run_oracle(pf)
    agree = solver.decision == oracle.decision
    out.write(
        f"solver {'yes' if solver.decision else 'no'}\n"
        f"oracle {'yes' if oracle.decision else 'no'}\n"
        f"agree {'yes' if agree else 'no'}\n"
    )
    if not agree:
        log.error("solver and oracle disagree on %s", args.file)
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_match(args, out: TextIO) -> int:
    sense = "maximize" if args.sense == "max" else "minimize"
    problem = read_graph(_read(args.file), sense=sense)
    res = solve(problem, args.backend)
    if isinstance(res, Infeasible):
        out.write(f"decision no\ninfeasible {res.reason}\n")
        return EXIT_OK
    ok = meets_threshold(problem, res.total_weight, args.threshold)
    out.write(f"decision {'yes' if ok else 'no'}\nweight {res.total_weight}\n")
    return EXIT_OK


def cmd_gen(args, out: TextIO) -> int:
    if args.what == "rx3c":
        out.write(write_rx3c(gen_rx3c(args.k, args.seed, method=args.method)))
        return EXIT_OK
    try:
        pf = random_problem(
            seed=args.seed,
            voters=args.voters,
            candidates=args.candidates,
            rule=args.rule,
            problem=args.problem,
            unregistered=args.unregistered,
            limit=args.limit,
            max_price=args.max_price,
        )
    except ValueError as e:
        raise UsageError(str(e)) from e
    out.write(serialize_problem(pf))
    return EXIT_OK


def cmd_reduce(args, out: TextIO) -> int:
    rx3c = read_rx3c(_read(args.file))
    inst = reduce_rx3c_to_3veto(rx3c)
    pf = ProblemFile(
        name=f"rx3c-k{rx3c.k}",
        problem="bribery",
        rule=RULES["3veto"],
        candidates=inst.candidates,
        preferred=inst.preferred,
        limit=inst.budget,
        registered=inst.voters,
    )
    out.write(serialize_problem(pf))
    return EXIT_OK


def cmd_audit(args, out: TextIO) -> int:
    bt = build_bt_counterexample()
    report = verify_b_edge_cover(bt.problem, bt.published_cover)
    if not report.ok:
        raise SolverError(f"published cover does not verify: {report.message}")
    nmts_positive = solve_nmts_brute(bt.nmts) is not None
    optimum = None
    if not args.skip_optimum:
        best = min_weight_b_edge_cover(bt.problem, backend=args.backend)
        optimum = None if isinstance(best, Infeasible) else best.total_weight
    out.write("\n".join(audit_lines(report.total_weight, bt.threshold, nmts_positive, optimum)) + "\n")
    return EXIT_OK


# ---- argparse ----

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="solvers", description="Election control / bribery solvers via perfect b-matching.")
    ap.add_argument("--config", help="config.yaml path (default: EMS_CONFIG or config/config.yaml)")
    ap.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_backend(p):
        p.add_argument("--backend", choices=["auto", "tutte", "milp"], default=None)
        return p

    p = with_backend(sub.add_parser("solve", help="decide an election problem file"))
    p.add_argument("file")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--check", action="store_true", help="re-verify the witness by re-scoring")
    p.add_argument("--full-votes", action="store_true", help="print full rankings of new votes")
    p.add_argument("--dump-graph", metavar="DIR", help="write the constructed matching problems")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("oracle", help="decide by brute force")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(fn=cmd_oracle)

    p = with_backend(sub.add_parser("compare", help="solver vs oracle"))
    p.add_argument("file")
    p.set_defaults(fn=cmd_compare)

    p = with_backend(sub.add_parser("match", help="perfect b-matching on a graph file"))
    p.add_argument("file")
    p.add_argument("--sense", choices=["max", "min"], required=True)
    p.add_argument("--threshold", type=int, required=True)
    p.set_defaults(fn=cmd_match)

    gen = sub.add_parser("gen", help="generate instances")
    gsub = gen.add_subparsers(dest="what", required=True, parser_class=_Parser)
    g = gsub.add_parser("rx3c")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--method", choices=["partitions", "configuration"], default="partitions")
    g.set_defaults(fn=cmd_gen)
    g = gsub.add_parser("election")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--voters", type=int, required=True)
    g.add_argument("--candidates", type=int, required=True)
    g.add_argument("--rule", choices=sorted(RULES), required=True)
    g.add_argument("--problem", choices=["ccrv", "priced-ccrv", "bribery"], required=True)
    g.add_argument("--unregistered", type=int, default=None)
    g.add_argument("--limit", type=int, default=None)
    g.add_argument("--max-price", type=int, default=3)
    g.set_defaults(fn=cmd_gen)

    red = sub.add_parser("reduce", help="hardness reductions")
    rsub = red.add_subparsers(dest="what", required=True, parser_class=_Parser)
    r = rsub.add_parser("rx3c", help="RX3C -> 3-Veto $Bribery")
    r.add_argument("file")
    r.set_defaults(fn=cmd_reduce)

    p = with_backend(sub.add_parser("audit-counterexample", help="check the refuted cover reduction"))
    p.add_argument("--skip-optimum", action="store_true", help="do not compute the exact minimum cover")
    p.set_defaults(fn=cmd_audit)
    return ap


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.config:
            load_settings(args.config)  # fail fast on a bad file
            os.environ["EMS_CONFIG"] = args.config
            get_settings.cache_clear()
        settings = get_settings()
        configure_logging(settings.runtime.log_dir, args.log_level or settings.runtime.log_level)
        return args.fn(args, out)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_USAGE
    except ValidationError as e:
        sys.stderr.write(f"invalid input: {e}\n")
        return EXIT_USAGE
    except CapExceededError as e:
        sys.stderr.write(f"cap exceeded: {e}\n")
        return EXIT_CAP
    except SolverError as e:
        log.error("solver error: %s", e)
        sys.stderr.write(f"solver error: {e}\n")
        return EXIT_MISMATCH
    except (RuntimeError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
