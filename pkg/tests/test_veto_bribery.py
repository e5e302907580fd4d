# tests/test_veto_bribery.py
from collections import Counter

import numpy as np
import pytest
from pydantic import ValidationError

from common.errors import CapExceededError, InfeasibleDemandError, ParseError
from solvers.cli.generate import random_problem
from solvers.election_core import BriberyInstance, Election, score
from solvers.election_core.schema import voters_from_sets
from solvers.election_core.witness import apply_bribery, check_bribery
from solvers.matching_engine import solve
from solvers.oracles import brute_bribery
from solvers.veto_bribery import (
    THREE_VETO,
    TWO_VETO,
    Rx3cInstance,
    Skip,
    SubproblemParams,
    build_2veto_graph,
    gen_rx3c,
    is_exact_cover,
    read_rx3c,
    realize_bribed_votes,
    reduce_rx3c_to_3veto,
    solve_bribery_2veto,
    solve_bribery_3veto_exact,
    solve_rx3c_brute,
    subproblem_order,
    validate_rx3c,
    write_rx3c,
)
from solvers.veto_bribery.two_veto import extract_bribery

CANDS = ("a", "b", "c", "p")


def veto_instance(sets, budget, rule=TWO_VETO, candidates=CANDS, prices=None):
    voters = voters_from_sets("veto", list(sets))
    if prices is not None:
        voters = tuple(v.model_copy(update={"price": prices[i]}) for i, v in enumerate(voters))
    election = Election(candidates=candidates, voters=voters, rule=rule)
    return BriberyInstance(election=election, preferred="p", budget=budget)


def tallies(votes):
    out = Counter()
    for v in votes:
        out.update(v.chosen)
    return out


# ---- ex2 fixture ----

class TestExample2:
    def test_solver_says_yes(self, ex2):
        inst = ex2.to_bribery()
        res = solve_bribery_2veto(inst)
        assert res.decision
        assert res.objective <= 3
        assert (res.details["ell_p"], res.details["ell_p_prime"]) == (2, 1)
        assert res.details["fv_p"] == 4
        final = score(inst.election.with_voters(apply_bribery(inst.voters, res.plan)))
        assert final["p"] == 4
        assert "p" in final.winners()

    def test_subproblem_order(self, ex2):
        order = [(s.ell_p, s.ell_p_prime) for s in subproblem_order(ex2.to_bribery())]
        assert order == [(2, 0), (2, 1), (1, 0), (1, 1), (1, 2), (0, 0), (0, 1), (0, 2), (0, 3)]

    def test_first_pair_is_skipped(self, ex2):
        built = build_2veto_graph(ex2.to_bribery(), SubproblemParams(ell_p=2, ell_p_prime=0, fv_p=4))
        assert isinstance(built, Skip)
        assert "b(a)" in built.reason

    def test_b_values(self, ex2):
        problem = build_2veto_graph(ex2.to_bribery(), SubproblemParams(ell_p=2, ell_p_prime=1, fv_p=4))
        assert problem.b == {"a": 0, "b": 4, "c": 5, "p": 2, "y": 3, "x": 2}
        assert problem.sense == "minimize"
        tags = Counter(e.tag for e in problem.graph.edges)
        assert tags["bribe"] == 3 * 3
        assert tags["pad"] == 0 + 4 + 5

    @pytest.mark.parametrize("backend", ["tutte", "milp"])
    def test_subproblem_matching(self, ex2, backend):
        inst = ex2.to_bribery()
        params = SubproblemParams(ell_p=2, ell_p_prime=1, fv_p=4)
        problem = build_2veto_graph(inst, params)
        res = solve(problem, backend)
        assert res.total_weight <= 3
        selected = [problem.graph.edges[i] for i in res.selected]
        assert sum(1 for e in selected if e.tag == "bribe") == problem.b["y"]
        assert sum(1 for e in selected if e.tag.startswith("V:")) == params.bribed

        plan = extract_bribery(inst, problem, params, res)
        assert len(plan.new_votes) == 3
        assert sum(tallies(plan.new_votes).values()) == 2 * params.bribed
        assert check_bribery(inst, plan).ok

    def test_oracle_agrees(self, ex2):
        assert brute_bribery(ex2.to_bribery()).decision


# ---- 2-Veto ----

class TestTwoVeto:
    def test_already_winning_with_no_budget(self):
        res = solve_bribery_2veto(veto_instance([("a", "b"), ("b", "c")], budget=0))
        assert res.decision
        assert res.plan.bribed == ()

    def test_no_budget_and_losing(self):
        assert not solve_bribery_2veto(veto_instance([("a", "p"), ("b", "p")], budget=0)).decision

    def test_two_candidates_trivial(self):
        inst = veto_instance([("a", "p")], budget=0, candidates=("a", "p"))
        assert solve_bribery_2veto(inst).decision

    def test_price_zero_voters_are_free(self):
        inst = veto_instance([("a", "p"), ("b", "p")], budget=0, prices=(0, 0))
        res = solve_bribery_2veto(inst)
        assert res.decision
        assert res.objective == 0

    def test_rejects_other_rules(self):
        inst = veto_instance([("a", "b", "p")], budget=1, rule=THREE_VETO)
        with pytest.raises(ValueError):
            solve_bribery_2veto(inst)

    def test_random_instances_match_oracle(self):
        rng = np.random.default_rng(41)
        yes = 0
        for seed in range(200):
            pf = random_problem(
                seed=4000 + seed,
                problem="bribery",
                rule="2veto",
                voters=int(rng.integers(1, 7)),
                candidates=int(rng.integers(2, 6)),
            )
            inst = pf.to_bribery()
            got = solve_bribery_2veto(inst, backend="milp")
            expected = brute_bribery(inst)
            assert got.decision == expected.decision, pf.name
            if got.decision:
                yes += 1
                check = check_bribery(inst, got.plan)
                assert check.ok
                assert all("p" not in v.chosen for v in got.plan.new_votes)
        assert 0 < yes < 200


# ---- vote realization ----

class TestRealize:
    def test_three_pairs(self):
        votes = realize_bribed_votes({"a": 3, "b": 3}, 3, "p", CANDS)
        assert [v.chosen for v in votes] == [("a", "b")] * 3

    def test_single_pair(self):
        votes = realize_bribed_votes({"a": 1, "b": 1}, 1, "p", CANDS)
        assert [v.chosen for v in votes] == [("a", "b")]

    def test_greedy_order(self):
        votes = realize_bribed_votes({"a": 2, "b": 1, "c": 1}, 2, "p", CANDS)
        assert [v.chosen for v in votes] == [("a", "b"), ("a", "c")]

    def test_zero_votes(self):
        assert realize_bribed_votes({}, 0, "p", CANDS) == []

    @pytest.mark.parametrize(
        "bv, t",
        [
            ({"p": 1, "a": 1}, 1),
            ({"a": 3, "b": 1}, 2),
            ({"a": 1, "b": 2}, 2),
            ({"z": 1, "a": 1}, 1),
        ],
    )
    def test_bad_demands(self, bv, t):
        with pytest.raises(InfeasibleDemandError):
            realize_bribed_votes(bv, t, "p", CANDS)

    @pytest.mark.parametrize("width", [2, 3])
    def test_any_feasible_demand_is_realized(self, width):
        rng = np.random.default_rng(width)
        for _ in range(300):
            others = [f"c{i}" for i in range(int(rng.integers(width, 8)))]
            t = int(rng.integers(0, 7))
            made = Counter()
            for _ in range(t):
                picks = rng.choice(len(others), size=width, replace=False)
                made.update(others[int(i)] for i in picks)
            votes = realize_bribed_votes(dict(made), t, "p", others + ["p"], width=width)
            assert len(votes) == t
            assert all(len(v.chosen) == width and "p" not in v.chosen for v in votes)
            assert tallies(votes) == made


# ---- 3-Veto ----

class TestThreeVeto:
    def test_no_budget_and_losing(self):
        inst = veto_instance(
            [("a", "b", "p"), ("c", "d", "p")],
            budget=0,
            rule=THREE_VETO,
            candidates=("a", "b", "c", "d", "p"),
        )
        assert not solve_bribery_3veto_exact(inst).decision

    def test_one_bribe_suffices(self):
        inst = veto_instance(
            [("a", "b", "p"), ("c", "d", "p")],
            budget=1,
            rule=THREE_VETO,
            candidates=("a", "b", "c", "d", "p"),
        )
        res = solve_bribery_3veto_exact(inst)
        assert res.decision
        assert res.objective == 1
        assert check_bribery(inst, res.plan).ok

    def test_three_candidates_trivial(self):
        inst = veto_instance([("a", "b", "p")], budget=0, rule=THREE_VETO, candidates=("a", "b", "p"))
        assert solve_bribery_3veto_exact(inst).decision

    def test_voter_cap(self):
        inst = veto_instance(
            [("a", "b", "p"), ("c", "d", "p")],
            budget=0,
            rule=THREE_VETO,
            candidates=("a", "b", "c", "d", "p"),
        )
        with pytest.raises(CapExceededError):
            solve_bribery_3veto_exact(inst, voter_cap=1)

    def test_rejects_two_veto(self, ex2):
        with pytest.raises(ValueError):
            solve_bribery_3veto_exact(ex2.to_bribery())

    def test_random_instances_match_oracle(self):
        rng = np.random.default_rng(43)
        yes = 0
        for seed in range(200):
            pf = random_problem(
                seed=5000 + seed,
                problem="bribery",
                rule="3veto",
                voters=int(rng.integers(1, 7)),
                candidates=int(rng.integers(3, 7)),
            )
            inst = pf.to_bribery()
            got = solve_bribery_3veto_exact(inst)
            expected = brute_bribery(inst)
            assert got.decision == expected.decision, pf.name
            if got.decision:
                yes += 1
                assert check_bribery(inst, got.plan).ok
        assert 0 < yes < 200


# ---- RX3C ----

class TestRx3c:
    def test_reduction_tallies(self, instances_dir):
        rx3c = read_rx3c((instances_dir / "rx3c_k1.rx3c").read_text(encoding="utf-8"))
        inst = reduce_rx3c_to_3veto(rx3c)
        assert len(inst.candidates) == 9
        assert len(inst.voters) == 6
        assert inst.budget == 1
        counts = score(inst.election).counts
        assert {counts[x] for x in ("1", "2", "3")} == {3}
        assert counts["p"] == counts["p1"] == counts["p2"] == 2
        assert {counts[d] for d in ("d1", "d2", "d3")} == {1}
        assert sorted(v.price for v in inst.voters) == [1, 1, 1, 2, 2, 2]

    def test_k1_is_yes(self, instances_dir):
        rx3c = read_rx3c((instances_dir / "rx3c_k1.rx3c").read_text(encoding="utf-8"))
        assert solve_rx3c_brute(rx3c) == [0]
        res = solve_bribery_3veto_exact(reduce_rx3c_to_3veto(rx3c))
        assert res.decision
        assert res.objective == 1

    def test_negative_fixture(self, instances_dir):
        rx3c = read_rx3c((instances_dir / "rx3c_k2_negative.rx3c").read_text(encoding="utf-8"))
        assert rx3c.k == 2
        assert solve_rx3c_brute(rx3c) is None
        assert not solve_bribery_3veto_exact(reduce_rx3c_to_3veto(rx3c)).decision

    def test_empty_instance_has_empty_cover(self):
        assert solve_rx3c_brute(Rx3cInstance(elements=(), sets=())) == []

    def test_reduction_is_sound_on_generated_instances(self):
        seen = Counter()
        for k in (1, 2):
            for method in ("partitions", "configuration"):
                for seed in range(8):
                    rx3c = gen_rx3c(k, seed, method=method)
                    cover = solve_rx3c_brute(rx3c)
                    if cover is not None:
                        assert is_exact_cover(rx3c, cover)
                    res = solve_bribery_3veto_exact(reduce_rx3c_to_3veto(rx3c))
                    assert res.decision == (cover is not None), (k, method, seed)
                    seen[res.decision] += 1
        assert sum(seen.values()) >= 20
        assert seen[True] > 0

    def test_partitions_always_have_a_cover(self):
        for seed in range(10):
            assert solve_rx3c_brute(gen_rx3c(3, seed)) is not None

    def test_generator_k1(self):
        rx3c = gen_rx3c(1, 99)
        assert rx3c.sets == (("1", "2", "3"),) * 3

    @pytest.mark.parametrize("method", ["partitions", "configuration"])
    def test_generator_is_deterministic_and_valid(self, method):
        a = gen_rx3c(2, 17, method=method)
        assert a == gen_rx3c(2, 17, method=method)
        assert validate_rx3c(a.elements, a.sets) == []
        assert len(a.sets) == 6

    def test_generator_rejects_k0(self):
        with pytest.raises(ValueError):
            gen_rx3c(0, 1)

    def test_three_occurrences_enforced(self):
        with pytest.raises(ValidationError):
            Rx3cInstance(elements=("1", "2", "3"), sets=(("1", "2", "3"), ("1", "2", "3")))

    def test_text_round_trip(self, instances_dir):
        text = (instances_dir / "rx3c_k2_negative.rx3c").read_text(encoding="utf-8")
        rx3c = read_rx3c(text)
        assert read_rx3c(write_rx3c(rx3c)) == rx3c

    def test_parse_error_line(self):
        with pytest.raises(ParseError) as exc:
            read_rx3c("rx3c\nelements 1 2 3\nset 1 2\nend\n")
        assert exc.value.line == 3
