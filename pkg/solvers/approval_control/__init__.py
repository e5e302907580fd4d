from .bribery import bribery_as_ccrv, solve_bribery_2approval
from .ccrv import (
    build_ccrv_graph,
    build_priced_ccrv_graph,
    extract_plan,
    solve_ccrv_2approval,
    solve_priced_ccrv_2approval,
    target_score,
)
from .schema import TWO_APPROVAL, ApprovalBriberyInstance, CcrvGraphMeta, CcrvInstance, TriviallyNo

__all__ = [
    "TWO_APPROVAL",
    "ApprovalBriberyInstance",
    "CcrvGraphMeta",
    "CcrvInstance",
    "TriviallyNo",
    "bribery_as_ccrv",
    "build_ccrv_graph",
    "build_priced_ccrv_graph",
    "extract_plan",
    "solve_bribery_2approval",
    "solve_ccrv_2approval",
    "solve_priced_ccrv_2approval",
    "target_score",
]
