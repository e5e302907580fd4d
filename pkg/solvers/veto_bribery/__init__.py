from .rx3c import gen_rx3c, is_exact_cover, read_rx3c, reduce_rx3c_to_3veto, solve_rx3c_brute, write_rx3c
from .schema import (
    THREE_VETO,
    TWO_VETO,
    Rx3cInstance,
    Skip,
    SubproblemParams,
    VetoBriberyInstance,
    validate_rx3c,
)
from .three_veto import solve_bribery_3veto_exact
from .two_veto import build_2veto_graph, realize_bribed_votes, solve_bribery_2veto, subproblem_order

__all__ = [
    "THREE_VETO",
    "TWO_VETO",
    "Rx3cInstance",
    "Skip",
    "SubproblemParams",
    "VetoBriberyInstance",
    "build_2veto_graph",
    "gen_rx3c",
    "is_exact_cover",
    "read_rx3c",
    "realize_bribed_votes",
    "reduce_rx3c_to_3veto",
    "solve_bribery_2veto",
    "solve_bribery_3veto_exact",
    "solve_rx3c_brute",
    "subproblem_order",
    "validate_rx3c",
    "write_rx3c",
]
