from .blossom import max_weight_perfect_matching
from .graph_io import read_graph, to_networkx, write_graph
from .schema import (
    Infeasible,
    MatchingSolution,
    MultiEdge,
    Multigraph,
    PerfectBMatchingProblem,
    SimpleGraph,
    TutteExpansion,
    VerifyReport,
)
from .solver import brute_force_solve, decide, meets_threshold, solve, verify
from .tutte import tutte_expand

__all__ = [
    "Infeasible",
    "MatchingSolution",
    "MultiEdge",
    "Multigraph",
    "PerfectBMatchingProblem",
    "SimpleGraph",
    "TutteExpansion",
    "VerifyReport",
    "brute_force_solve",
    "decide",
    "max_weight_perfect_matching",
    "meets_threshold",
    "read_graph",
    "solve",
    "to_networkx",
    "tutte_expand",
    "verify",
    "write_graph",
]
