from .counterexample import build_bt_counterexample
from .cover import brute_force_b_edge_cover, min_weight_b_edge_cover, verify_b_edge_cover
from .nmts import bt_threshold, count_target_triples, solve_nmts_brute
from .schema import BEdgeCoverProblem, BtCounterexample, CoverReport, CoverSolution, NmtsInstance

__all__ = [
    "BEdgeCoverProblem",
    "BtCounterexample",
    "CoverReport",
    "CoverSolution",
    "NmtsInstance",
    "brute_force_b_edge_cover",
    "bt_threshold",
    "build_bt_counterexample",
    "count_target_triples",
    "min_weight_b_edge_cover",
    "solve_nmts_brute",
    "verify_b_edge_cover",
]
