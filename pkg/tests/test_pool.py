# tests/test_pool.py
import pytest

from common.pool import first_accepted, map_ordered
from solvers.approval_control import solve_priced_ccrv_2approval
from solvers.cli.generate import random_problem
from solvers.cover_audit import build_bt_counterexample, min_weight_b_edge_cover
from solvers.veto_bribery import solve_bribery_2veto


def test_map_ordered_keeps_input_order():
    items = [-3, 1, -2, 5, -8]
    assert map_ordered(abs, items, workers=2) == map_ordered(abs, items, workers=1) == [3, 1, 2, 5, 8]


@pytest.mark.parametrize("workers", [1, 2, 3])
def test_first_accepted_reports_lowest_index_hit(workers):
    items = [-1, -7, 9, -4, 12]
    assert first_accepted(abs, items, lambda r: r > 5, workers=workers) == 7
    assert first_accepted(abs, items, lambda r: r > 50, workers=workers) is None


def test_priced_ccrv_same_answer_pooled():
    for seed in range(12):
        inst = random_problem(seed=3000 + seed, voters=4, candidates=4, problem="priced-ccrv").to_ccrv()
        one = solve_priced_ccrv_2approval(inst, backend="milp", workers=1)
        two = solve_priced_ccrv_2approval(inst, backend="milp", workers=2)
        assert one.decision == two.decision
        assert one.details.get("fs_p") == two.details.get("fs_p")


def test_2veto_bribery_same_answer_pooled(ex2):
    inst = ex2.to_bribery()
    one = solve_bribery_2veto(inst, backend="milp", workers=1)
    two = solve_bribery_2veto(inst, backend="milp", workers=2)
    assert one.decision and two.decision
    assert (two.details["ell_p"], two.details["ell_p_prime"]) == (one.details["ell_p"], one.details["ell_p_prime"]) == (2, 1)

    for seed in range(12):
        inst = random_problem(seed=4000 + seed, voters=5, candidates=4, rule="2veto", problem="bribery").to_bribery()
        one = solve_bribery_2veto(inst, backend="milp", workers=1)
        two = solve_bribery_2veto(inst, backend="milp", workers=2)
        assert one.decision == two.decision
        assert one.details.get("ell_p") == two.details.get("ell_p")
        assert one.details.get("ell_p_prime") == two.details.get("ell_p_prime")


def test_min_cover_same_optimum_pooled():
    bt = build_bt_counterexample()
    one = min_weight_b_edge_cover(bt.problem, backend="milp", workers=1)
    two = min_weight_b_edge_cover(bt.problem, backend="milp", workers=2)
    assert one.total_weight == two.total_weight <= bt.threshold
