# tests/test_election_core.py
import numpy as np
import pytest
from pydantic import ValidationError

from common.errors import WitnessError
from solvers.election_core import (
    BriberyInstance,
    BriberyPlan,
    Election,
    ReplacementPlan,
    Rule,
    Vote,
    Voter,
    full_ranking,
    score,
    winners,
)
from solvers.election_core.schema import fresh_name, voters_from_sets
from solvers.election_core.witness import apply_replacement, check_bribery, check_replacement


TWO_APPROVAL = Rule(kind="approval", k=2)
TWO_VETO = Rule(kind="veto", k=2)


def make_election(rule, sets, candidates=("a", "b", "c", "p")):
    return Election(candidates=candidates, voters=voters_from_sets(rule.kind, sets), rule=rule)


# ---- scoring ----

class TestScoring:
    def test_example1_registered_scores(self, ex1):
        profile = score(ex1.to_ccrv().election())
        assert profile.counts == {"a": 2, "b": 5, "c": 1, "p": 2}

    def test_example1_winner_is_b(self, ex1):
        assert winners(ex1.to_ccrv().election()) == ("b",)

    def test_example2_veto_counts(self, ex2):
        profile = score(ex2.to_bribery().election)
        assert profile.counts == {"a": 1, "b": 5, "c": 6, "p": 6}
        assert profile.winners() == ("a",)

    def test_empty_voters_all_zero(self):
        e = make_election(TWO_APPROVAL, [])
        assert set(score(e).counts.values()) == {0}
        assert winners(e) == ("a", "b", "c", "p")

    def test_single_candidate_wins(self):
        e = Election(
            candidates=("solo",),
            voters=voters_from_sets("approval", [("solo",)] * 3),
            rule=Rule(kind="approval", k=1),
        )
        assert winners(e) == ("solo",)

    def test_veto_winner_has_fewest_vetoes(self):
        e = make_election(TWO_VETO, [("a", "b"), ("a", "c"), ("b", "c")])
        assert winners(e) == ("p",)

    def test_candidates_are_sorted(self):
        e = Election(candidates=("p", "c", "a", "b"), rule=TWO_APPROVAL)
        assert e.candidates == ("a", "b", "c", "p")


def random_election(rng, rule):
    n_cands = int(rng.integers(rule.k + 1, 7))
    cands = tuple(f"c{i}" for i in range(n_cands))
    sets = [
        tuple(cands[j] for j in rng.choice(n_cands, size=rule.k, replace=False))
        for _ in range(int(rng.integers(0, 9)))
    ]
    return Election(candidates=cands, voters=voters_from_sets(rule.kind, sets), rule=rule)


@pytest.mark.parametrize("rule", [TWO_APPROVAL, TWO_VETO, Rule(kind="veto", k=3)], ids=lambda r: r.label)
class TestScoringProperties:
    def test_points_sum_to_k_per_voter(self, rule):
        rng = np.random.default_rng(41)
        for _ in range(200):
            e = random_election(rng, rule)
            assert sum(score(e).counts.values()) == rule.k * len(e.voters)

    def test_vote_order_does_not_change_scores(self, rule):
        rng = np.random.default_rng(43)
        for _ in range(200):
            e = random_election(rng, rule)
            shuffled = tuple(
                Voter(vote=Vote(kind=v.vote.kind, chosen=tuple(v.vote.chosen[i] for i in rng.permutation(v.vote.k))), price=v.price)
                for v in e.voters
            )
            other = Election(candidates=e.candidates, voters=shuffled, rule=rule)
            assert score(other) == score(e)
            assert winners(other) == winners(e)

    def test_winners_match_profile(self, rule):
        rng = np.random.default_rng(47)
        for _ in range(50):
            e = random_election(rng, rule)
            assert winners(e) == score(e).winners()


# ---- full rankings ----

class TestFullRanking:
    def test_approval_chosen_first(self):
        vote = Vote(kind="approval", chosen=("p", "b"))
        assert full_ranking(vote, ("a", "b", "c", "p")) == ["p", "b", "a", "c"]

    def test_veto_puts_preferred_first(self):
        vote = Vote(kind="veto", chosen=("a", "b"))
        assert full_ranking(vote, ("a", "b", "c", "p"), preferred="p") == ["p", "c", "a", "b"]

    def test_veto_of_preferred_keeps_lexicographic_rest(self):
        vote = Vote(kind="veto", chosen=("c", "p"))
        assert full_ranking(vote, ("a", "b", "c", "p"), preferred="p") == ["a", "b", "c", "p"]


# ---- validation ----

class TestValidation:
    def test_duplicate_in_vote_rejected(self):
        with pytest.raises(ValidationError):
            Vote(kind="approval", chosen=("p", "p"))

    def test_wrong_arity_rejected(self):
        with pytest.raises(ValidationError):
            make_election(TWO_APPROVAL, [("a", "b", "c")])

    def test_unknown_candidate_rejected(self):
        with pytest.raises(ValidationError):
            make_election(TWO_APPROVAL, [("a", "z")])

    def test_kind_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            Election(
                candidates=("a", "b", "c"),
                voters=voters_from_sets("veto", [("a", "b")]),
                rule=TWO_APPROVAL,
            )

    def test_duplicate_candidates_rejected(self):
        with pytest.raises(ValidationError):
            Election(candidates=("a", "a", "b"), rule=TWO_APPROVAL)

    def test_negative_price_rejected(self):
        with pytest.raises(ValidationError):
            Voter(vote=Vote(kind="veto", chosen=("a", "b")), price=-1)

    def test_replacement_plan_sizes_must_match(self):
        with pytest.raises(ValidationError):
            ReplacementPlan(removed=(0, 1), added=(0,))

    def test_bribery_plan_rejects_repeated_voter(self):
        vote = Vote(kind="veto", chosen=("a", "b"))
        with pytest.raises(ValidationError):
            BriberyPlan(bribed=(0, 0), new_votes=(vote, vote))

    def test_fresh_name_appends_primes(self):
        assert fresh_name("x", {"a", "b"}) == "x"
        assert fresh_name("x", {"x", "x'"}) == "x''"


# ---- witnesses ----

class TestWitness:
    def test_example1_replacement_verifies(self, ex1):
        inst = ex1.to_ccrv()
        plan = ReplacementPlan(removed=(0, 1, 2), added=(0, 1, 3))
        check = check_replacement(
            inst.candidates, inst.rule, inst.registered, inst.unregistered,
            inst.preferred, plan, inst.limit, inst.priced,
        )
        assert check.ok
        assert check.cost == 3
        assert check.winners == ("a", "p")

    def test_replacement_over_limit_fails(self, ex1):
        inst = ex1.to_ccrv()
        plan = ReplacementPlan(removed=(0, 1, 2), added=(0, 1, 3))
        check = check_replacement(
            inst.candidates, inst.rule, inst.registered, inst.unregistered,
            inst.preferred, plan, 2, inst.priced,
        )
        assert check.winner and not check.within_limit and not check.ok

    def test_repeated_voter_in_replacement(self, ex1):
        inst = ex1.to_ccrv()
        with pytest.raises(WitnessError):
            apply_replacement(inst.registered, inst.unregistered, ReplacementPlan(removed=(0, 0), added=(1, 2)))

    def test_unknown_unregistered_voter(self, ex1):
        inst = ex1.to_ccrv()
        with pytest.raises(WitnessError):
            apply_replacement(inst.registered, inst.unregistered, ReplacementPlan(removed=(0,), added=(9,)))

    def test_example2_bribery_verifies(self, ex2):
        inst = ex2.to_bribery()
        ab = Vote(kind="veto", chosen=("a", "b"))
        plan = BriberyPlan(bribed=(1, 3, 4), new_votes=(ab, ab, ab))
        check = check_bribery(inst, plan)
        assert check.ok
        assert check.cost == 3
        assert check.winners == ("a", "p")

    def test_bribery_cost_uses_prices(self, ex2):
        inst = ex2.to_bribery()
        ab = Vote(kind="veto", chosen=("a", "b"))
        check = check_bribery(inst, BriberyPlan(bribed=(5, 6), new_votes=(ab, ab)))
        assert check.cost == 4
        assert not check.within_limit

    def test_bribery_instance_needs_known_preferred(self):
        e = make_election(TWO_VETO, [("a", "b")])
        with pytest.raises(ValidationError):
            BriberyInstance(election=e, preferred="z", budget=1)
