# election-matching-solvers/scripts/oracle_suite.py
#!/usr/bin/env python3
"""
Random differential suite: every solver against its brute-force oracle on
seeded instances. Run from the repo root:

    python -m scripts.oracle_suite --count 200
"""
from __future__ import annotations
import argparse, sys, time
from typing import Callable, Dict, List, Tuple

import numpy as np
from tqdm import tqdm

from common.config import get_settings
from common.logging import configure_logging, get_logger
from solvers.approval_control import solve_bribery_2approval, solve_ccrv_2approval, solve_priced_ccrv_2approval
from solvers.cli.generate import random_problem
from solvers.cli.problem_file import ProblemFile
from solvers.election_core.schema import AttackDecision
from solvers.oracles import brute_bribery, brute_ccrv
from solvers.veto_bribery import solve_bribery_2veto, solve_bribery_3veto_exact

Family = Tuple[str, str, Tuple[int, int], Callable[[ProblemFile, str], AttackDecision]]

FAMILIES: Dict[str, Family] = {
    "ccrv":          ("ccrv", "2approval", (3, 5), lambda pf, be: solve_ccrv_2approval(pf.to_ccrv(), backend=be)),
    "priced-ccrv":   ("priced-ccrv", "2approval", (3, 5), lambda pf, be: solve_priced_ccrv_2approval(pf.to_ccrv(), backend=be)),
    "2approval":     ("bribery", "2approval", (2, 5), lambda pf, be: solve_bribery_2approval(pf.to_bribery(), backend=be)),
    "2veto":         ("bribery", "2veto", (2, 5), lambda pf, be: solve_bribery_2veto(pf.to_bribery(), backend=be)),
    "3veto":         ("bribery", "3veto", (3, 6), lambda pf, _be: solve_bribery_3veto_exact(pf.to_bribery())),
}


def run_family(name: str, count: int, seed: int, backend: str) -> List[str]:
    problem, rule, (c_lo, c_hi), solver = FAMILIES[name]
    rng = np.random.default_rng(seed)
    failures: List[str] = []
    for i in tqdm(range(count), desc=name, unit="inst"):
        limit = int(rng.integers(0, 7)) if problem == "priced-ccrv" else None
        pf = random_problem(
            seed=seed * 100_000 + i,
            voters=int(rng.integers(1, 7)),
            candidates=int(rng.integers(c_lo, c_hi + 1)),
            rule=rule,
            problem=problem,
            limit=limit,
        )
        got = solver(pf, backend)
        oracle = brute_ccrv(pf.to_ccrv()) if pf.is_ccrv else brute_bribery(pf.to_bribery())
        if got.decision != oracle.decision:
            failures.append(f"{name} {pf.name}: solver {got.decision}, oracle {oracle.decision}")
    return failures


def main():
    ap = argparse.ArgumentParser(description="Solver vs brute-force oracle on seeded random instances.")
    ap.add_argument("--count", type=int, default=200, help="instances per family (default: 200)")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--family", action="append", choices=sorted(FAMILIES), help="repeatable; default: all")
    ap.add_argument("--backend", choices=["auto", "tutte", "milp"], default="milp")
    ap.add_argument("--log-level", default=None, help="Override log level (INFO/DEBUG/...)")
    args = ap.parse_args()

    rt = get_settings().runtime
    configure_logging(rt.log_dir, args.log_level or "WARNING")
    log = get_logger("oracle_suite")

    started = time.perf_counter()
    failures: List[str] = []
    for name in args.family or list(FAMILIES):
        failures += run_family(name, args.count, args.seed, args.backend)
    elapsed = time.perf_counter() - started

    for line in failures:
        print(f"[FAIL] {line}")
    print(f"{len(failures)} disagreement(s) in {elapsed:.1f}s")
    log.info("oracle suite finished", extra={"failures": len(failures), "seconds": round(elapsed, 1)})
    sys.exit(0 if not failures else 3)

if __name__ == "__main__":
    main()
