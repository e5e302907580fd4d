# election-matching-solvers/scripts/scale_check.py
#!/usr/bin/env python3
"""
Wall-clock check on the larger CCRV instances:

    python -m scripts.scale_check            # |C| = 10, |V| = |W| = 50; priced |V| = |W| = 20
"""
from __future__ import annotations
import argparse, sys, time

from tqdm import tqdm

from common.config import get_settings
from common.logging import configure_logging, get_logger
from solvers.approval_control import solve_ccrv_2approval, solve_priced_ccrv_2approval
from solvers.cli.generate import random_problem


def timed(fn):
    t0 = time.perf_counter()
    res = fn()
    return res, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description="Time 2-Approval CCRV and priced CCRV at scale.")
    ap.add_argument("--seeds", type=int, default=3, help="instances per problem (default: 3)")
    ap.add_argument("--candidates", type=int, default=10)
    ap.add_argument("--voters", type=int, default=50)
    ap.add_argument("--priced-voters", type=int, default=20)
    ap.add_argument("--limit-seconds", type=float, default=120.0)
    ap.add_argument("--backend", choices=["auto", "tutte", "milp"], default=None)
    ap.add_argument("--log-level", default=None, help="Override log level (INFO/DEBUG/...)")
    args = ap.parse_args()

    rt = get_settings().runtime
    configure_logging(rt.log_dir, args.log_level or rt.log_level)
    log = get_logger("scale_check")

    worst = 0.0
    for seed in tqdm(range(args.seeds), desc="scale", unit="seed"):
        pf = random_problem(seed=seed, voters=args.voters, candidates=args.candidates, problem="ccrv")
        res, secs = timed(lambda: solve_ccrv_2approval(pf.to_ccrv(), backend=args.backend))
        log.info("ccrv seed=%s decision=%s %.2fs", seed, res.decision, secs)
        worst = max(worst, secs)

        pf = random_problem(
            seed=seed, voters=args.priced_voters, candidates=args.candidates, problem="priced-ccrv", limit=6
        )
        res, secs = timed(lambda: solve_priced_ccrv_2approval(pf.to_ccrv(), backend=args.backend))
        log.info("priced ccrv seed=%s decision=%s %.2fs", seed, res.decision, secs)
        worst = max(worst, secs)

    print(f"slowest solve {worst:.2f}s (limit {args.limit_seconds:.0f}s)")
    sys.exit(0 if worst <= args.limit_seconds else 1)

if __name__ == "__main__":
    main()
