# tests/test_matching_engine.py
import numpy as np
import pytest
from pydantic import ValidationError

from common.errors import CapExceededError, ParseError, WeightOverflowError
from solvers.matching_engine import (
    Infeasible,
    MatchingSolution,
    MultiEdge,
    Multigraph,
    PerfectBMatchingProblem,
    SimpleGraph,
    brute_force_solve,
    decide,
    max_weight_perfect_matching,
    read_graph,
    solve,
    to_networkx,
    tutte_expand,
    verify,
    write_graph,
)
from solvers.matching_engine.solver import pick_backend

BACKENDS = ["tutte", "milp"]
FIG1_BOLD = (3, 4, 5, 6, 8, 12, 15)


def make_problem(vertices, edges, b, sense="maximize"):
    graph = Multigraph(
        vertices=tuple(vertices),
        edges=tuple(MultiEdge(u=u, v=v, weight=w) for u, v, w in edges),
    )
    return PerfectBMatchingProblem(graph=graph, b=dict(b), sense=sense)


def random_problem(rng):
    n = int(rng.integers(2, 9))
    names = [f"v{i}" for i in range(n)]
    edges = []
    for _ in range(int(rng.integers(0, 15))):
        u, v = rng.choice(n, size=2, replace=False)
        edges.append((names[int(u)], names[int(v)], int(rng.integers(-5, 10))))

    b = None
    if edges and rng.random() < 0.6:
        # degrees of a random edge subset: feasible by construction
        picked = {name: 0 for name in names}
        for (u, v, _w), keep in zip(edges, rng.random(len(edges)) < 0.5):
            if keep:
                picked[u] += 1
                picked[v] += 1
        if max(picked.values()) <= 3:
            b = picked
    if b is None:
        b = {name: int(rng.integers(0, 4)) for name in names}
    sense = "maximize" if rng.random() < 0.5 else "minimize"
    return make_problem(names, edges, b, sense)


@pytest.fixture
def fig1(instances_dir):
    return read_graph((instances_dir / "fig1.graph").read_text(encoding="utf-8"))


# ---- small worked cases ----

@pytest.mark.parametrize("backend", BACKENDS)
class TestSolveExamples:
    def test_path_is_forced(self, backend):
        res = solve(make_problem("ab", [("a", "b", 7)], {"a": 1, "b": 1}), backend)
        assert res == MatchingSolution(selected=(0,), total_weight=7)

    def test_triangle_is_infeasible(self, backend):
        tri = make_problem("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)], {"a": 1, "b": 1, "c": 1})
        assert isinstance(solve(tri, backend), Infeasible)

    def test_four_cycle_prefers_heavy_pair(self, backend):
        cycle = make_problem(
            "abcd",
            [("a", "b", 3), ("b", "c", 1), ("c", "d", 3), ("d", "a", 1)],
            {v: 1 for v in "abcd"},
        )
        res = solve(cycle, backend)
        assert res.total_weight == 6
        assert res.selected == (0, 2)

    def test_four_cycle_minimize(self, backend):
        cycle = make_problem(
            "abcd",
            [("a", "b", 3), ("b", "c", 1), ("c", "d", 3), ("d", "a", 1)],
            {v: 1 for v in "abcd"},
            sense="minimize",
        )
        assert solve(cycle, backend).total_weight == 2

    def test_doubled_edge_picks_heavier(self, backend):
        doubled = make_problem("ab", [("a", "b", 2), ("a", "b", 5)], {"a": 1, "b": 1})
        res = solve(doubled, backend)
        assert res.total_weight == 5
        assert res.selected == (1,)

    def test_zero_demands_give_empty_matching(self, backend):
        problem = make_problem("abc", [("a", "b", 4), ("b", "c", -2)], {"a": 0, "b": 0, "c": 0})
        assert solve(problem, backend) == MatchingSolution(selected=(), total_weight=0)

    def test_b_above_degree_is_infeasible(self, backend):
        problem = make_problem("ab", [("a", "b", 1)], {"a": 2, "b": 2})
        assert isinstance(solve(problem, backend), Infeasible)

    def test_both_parallel_edges_when_b_is_two(self, backend):
        problem = make_problem("ab", [("a", "b", 2), ("a", "b", 5), ("a", "b", -1)], {"a": 2, "b": 2})
        res = solve(problem, backend)
        assert res.selected == (0, 1)
        assert res.total_weight == 7

    def test_fig1_reaches_threshold(self, backend, fig1):
        res = solve(fig1, backend)
        assert res.total_weight >= 2
        assert res.total_weight == 3
        assert verify(fig1, res).ok


# ---- brute force agreement ----

@pytest.mark.parametrize("backend", BACKENDS)
def test_random_problems_match_brute_force(backend):
    rng = np.random.default_rng(20240917)
    for _ in range(300):
        problem = random_problem(rng)
        expected = brute_force_solve(problem)
        got = solve(problem, backend)
        assert isinstance(got, Infeasible) == isinstance(expected, Infeasible), write_graph(problem)
        if isinstance(expected, MatchingSolution):
            assert got.total_weight == expected.total_weight, write_graph(problem)
            assert verify(problem, got).ok


@pytest.mark.parametrize("backend", BACKENDS)
def test_constant_shift_moves_optimum_by_edge_count(backend):
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(60):
        problem = random_problem(rng)
        base = solve(problem, backend)
        if isinstance(base, Infeasible):
            continue
        shifted = make_problem(
            problem.graph.vertices,
            [(e.u, e.v, e.weight + 4) for e in problem.graph.edges],
            problem.b,
            problem.sense,
        )
        got = solve(shifted, backend)
        assert got.total_weight == base.total_weight + 4 * problem.demand_total() // 2
        checked += 1
    assert checked > 0


def test_brute_force_examples():
    doubled = make_problem("ab", [("a", "b", 2), ("a", "b", 5)], {"a": 1, "b": 1})
    assert brute_force_solve(doubled).total_weight == 5
    tri = make_problem("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)], {"a": 1, "b": 1, "c": 1})
    assert isinstance(brute_force_solve(tri), Infeasible)


def test_brute_force_cap():
    edges = [("a", "b", 1)] * 5
    with pytest.raises(CapExceededError):
        brute_force_solve(make_problem("ab", edges, {"a": 1, "b": 1}), cap=4)


# ---- front end ----

def test_decide_uses_sense(fig1):
    assert decide(fig1, 2)
    assert decide(fig1, 3)
    assert not decide(fig1, 4)
    minimize = fig1.model_copy(update={"sense": "minimize"})
    assert decide(minimize, 2)
    assert not decide(minimize, 1)


def test_weight_overflow():
    problem = make_problem("ab", [("a", "b", 7)], {"a": 1, "b": 1})
    with pytest.raises(WeightOverflowError):
        solve(problem, "milp", weight_limit=5)


def test_auto_backend_switches_on_size(fig1):
    assert pick_backend(fig1, "auto", tutte_vertex_limit=1000) == "tutte"
    assert pick_backend(fig1, "auto", tutte_vertex_limit=10) == "milp"
    with pytest.raises(ValueError):
        pick_backend(fig1, "simplex")


# ---- verification ----

class TestVerify:
    def test_bold_matching_verifies(self, fig1):
        report = verify(fig1, MatchingSolution(selected=FIG1_BOLD, total_weight=2))
        assert report.ok
        assert report.total_weight == 2

    def test_dropping_padding_edge_breaks_x(self, fig1):
        selected = tuple(i for i in FIG1_BOLD if i != 12)
        report = verify(fig1, MatchingSolution(selected=selected, total_weight=2))
        assert not report.ok
        assert "x" in report.offenders
        assert report.vertex == "b"
        assert report.message == "vertex b: 2 selected edges, b = 3"

    def test_wrong_claimed_weight(self, fig1):
        report = verify(fig1, MatchingSolution(selected=FIG1_BOLD, total_weight=5))
        assert not report.ok
        assert "recomputed 2" in report.message

    def test_empty_selection_on_zero_demands(self):
        problem = make_problem("ab", [("a", "b", 3)], {"a": 0, "b": 0})
        assert verify(problem, MatchingSolution(selected=(), total_weight=0)).ok

    def test_unknown_edge_index(self, fig1):
        assert not verify(fig1, MatchingSolution(selected=(99,), total_weight=0)).ok

    def test_repeated_edge_index_rejected(self):
        problem = make_problem("ab", [("a", "b", 3)], {"a": 2, "b": 2})
        assert isinstance(solve(problem), Infeasible)
        report = verify(problem, MatchingSolution(selected=(0, 0), total_weight=6))
        assert not report.ok
        assert report.message == "an edge is selected twice"


# ---- Tutte expansion ----

class TestTutteExpansion:
    def test_tight_edge_has_no_padding(self):
        exp = tutte_expand(make_problem("ab", [("a", "b", 5)], {"a": 1, "b": 1}))
        assert exp.graph.n_vertices == 2
        assert exp.graph.edges == ((0, 1, 5),)
        assert exp.padding_vertices == 0

    def test_gadget_for_degree_three_demand_two(self):
        star = make_problem(
            ["c", "l1", "l2", "l3"],
            [("c", "l1", 1), ("c", "l2", 2), ("c", "l3", 3)],
            {"c": 2, "l1": 1, "l2": 1, "l3": 1},
        )
        exp = tutte_expand(star)
        assert exp.padding_vertices == 1
        assert exp.graph.n_vertices == 3 + 1 + 3
        assert len(exp.graph.edges) == 6
        assert exp.origin.count(None) == 3
        assert sorted(w for _u, _v, w in exp.graph.edges) == [0, 0, 0, 1, 2, 3]

    def test_demand_above_degree(self):
        assert isinstance(tutte_expand(make_problem("ab", [("a", "b", 1)], {"a": 2, "b": 1})), Infeasible)

    def test_parallel_edges_become_distinct_simple_edges(self):
        exp = tutte_expand(make_problem("ab", [("a", "b", 2), ("a", "b", 5)], {"a": 1, "b": 1}))
        pairs = {(u, v) for u, v, _w in exp.graph.edges}
        assert len(pairs) == len(exp.graph.edges)

    @pytest.mark.parametrize(
        "b", [{"a": 1, "b": 1, "c": 1}, {"a": 1, "b": 1, "c": 0}, {"a": 1, "b": 2, "c": 1}]
    )
    def test_triangle_with_doubled_edge_matches_brute_force(self, b):
        problem = make_problem("abc", [("a", "b", 4), ("a", "b", 1), ("b", "c", 2), ("c", "a", 3)], b)
        expected = brute_force_solve(problem)
        res = max_weight_perfect_matching(tutte_expand(problem).graph)
        assert isinstance(res, Infeasible) == isinstance(expected, Infeasible)
        if isinstance(expected, MatchingSolution):
            assert res.total_weight == expected.total_weight


# ---- blossom on simple graphs ----

class TestBlossom:
    def test_path(self):
        res = max_weight_perfect_matching(SimpleGraph(n_vertices=2, edges=((0, 1, 7),)))
        assert res.selected == (0,)
        assert res.total_weight == 7

    def test_triangle_is_infeasible(self):
        triangle = SimpleGraph(n_vertices=3, edges=((0, 1, 1), (1, 2, 1), (0, 2, 1)))
        assert isinstance(max_weight_perfect_matching(triangle), Infeasible)

    def test_four_cycle_picks_heavy_pair(self):
        cycle = SimpleGraph(n_vertices=4, edges=((0, 1, 3), (1, 2, 1), (2, 3, 3), (3, 0, 1)))
        res = max_weight_perfect_matching(cycle)
        assert res.selected == (0, 2)
        assert res.total_weight == 6

    def test_negative_weights_still_perfect(self):
        cycle = SimpleGraph(n_vertices=4, edges=((0, 1, -3), (1, 2, -1), (2, 3, -3), (3, 0, -1)))
        res = max_weight_perfect_matching(cycle)
        assert res.selected == (1, 3)
        assert res.total_weight == -2

    def test_empty_graph(self):
        assert max_weight_perfect_matching(SimpleGraph(n_vertices=0)).total_weight == 0

    @pytest.mark.parametrize(
        "edges",
        [((0, 0, 1),), ((0, 5, 1),), ((0, 1, 1), (1, 0, 2))],
        ids=["loop", "unknown-endpoint", "parallel"],
    )
    def test_malformed_simple_graph_rejected(self, edges):
        with pytest.raises(ValidationError):
            SimpleGraph(n_vertices=2, edges=edges)


# ---- graph text format ----

class TestGraphIO:
    def test_fig1_shape(self, fig1):
        assert fig1.graph.vertices == ("a", "b", "c", "p", "x")
        assert len(fig1.graph.edges) == 18
        assert fig1.b == {"a": 3, "b": 3, "c": 3, "p": 3, "x": 2}
        assert [e.weight for e in fig1.graph.edges[:5]] == [1] * 5

    def test_write_then_read(self, fig1):
        text = write_graph(fig1)
        assert "edge a x weight 0 count 3" in text
        assert read_graph(text) == fig1

    @pytest.mark.parametrize(
        "text, line",
        [
            ("graph\nvertex a b 1\nedge a z weight 1\nend\n", 3),
            ("graph\nvertex a b 1\nvertex b b 1\nedge a b weight one\nend\n", 4),
            ("graph\nvertex a b 1\nedge a a weight 1\nend\n", 3),
            ("graph\nvertex a b 1\n", 2),
            ("vertex a b 1\n", 1),
            ("graph\nvertex a b 1\nvertex a b 2\nend\n", 3),
        ],
    )
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as exc:
            read_graph(text)
        assert exc.value.line == line

    def test_comments_and_blank_lines(self):
        problem = read_graph("# header\n\ngraph\nvertex a b 1  # one\nvertex b b 1\nedge a b weight -3\nend\n")
        assert problem.graph.edges[0].weight == -3

    def test_to_networkx(self, fig1):
        G = to_networkx(fig1.graph, fig1.b)
        assert G.number_of_nodes() == 5
        assert G.number_of_edges() == 18
        assert G.nodes["x"]["b"] == 2
        assert G.edges["a", "x", 9]["weight"] == 0
        assert G.degree("b") == fig1.graph.degrees()["b"]
