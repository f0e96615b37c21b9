"""Candidate enumeration and constrained search."""

from fractions import Fraction

import pytest

from quorumopt.errors import DomainError, NoFeasibleCandidate
from quorumopt.expr import parse
from quorumopt.model import Node, QuorumSystem
from quorumopt.optimize import Constraints, find_strategy
from quorumopt.oracle import strategy_metric_recompute, truth_table
from quorumopt.search import SearchOptions, enumerate_candidates, search


def table(e, names):
    return truth_table(e, names)


def hetero_nodes():
    return [
        Node("a", read_cap=200, write_cap=100, latency=4),
        Node("b", read_cap=200, write_cap=100, latency=4),
        Node("c", read_cap=100, write_cap=50, latency=1),
        Node("d", read_cap=100, write_cap=50, latency=1),
    ]


class TestEnumerateCandidates:
    def test_three_nodes_start_with_the_thresholds(self):
        stream = list(enumerate_candidates(["a", "b", "c"]))
        depth_one = [str(e) for e in stream if e.depth() == 1]
        assert depth_one == ["a + b + c", "a*b*c", "choose(2, [a, b, c])"]

    def test_depths_nondecreasing(self):
        depths = [e.depth() for e in enumerate_candidates(["a", "b", "c", "d"])]
        assert depths == sorted(depths)

    def test_every_variable_appears_exactly_once(self):
        for e in enumerate_candidates(["a", "b", "c", "d", "e"]):
            assert e.uses_each_variable_once()
            assert e.names() == {"a", "b", "c", "d", "e"}

    def test_no_two_candidates_share_a_truth_table(self):
        names = ["a", "b", "c", "d"]
        tables = [table(e, names) for e in enumerate_candidates(names)]
        assert len(tables) == len(set(tables))

    def test_single_node(self):
        assert [str(e) for e in enumerate_candidates(["a"])] == ["a"]

    def test_contains_known_five_node_systems(self):
        names = ["a", "b", "c", "d", "e"]
        tables = {table(e, names) for e in enumerate_candidates(names)}
        assert table(parse("(c + b*d)*(a + e)"), names) in tables
        # same function as a*b + a*c*d*e + b*c*d*e
        assert table(parse("choose(2, [a, b, c*d*e])"), names) in tables

    def test_node_bound(self):
        with pytest.raises(DomainError):
            list(enumerate_candidates([f"n{i}" for i in range(9)]))
        with pytest.raises(DomainError):
            list(enumerate_candidates([]))


class TestSearch:
    def test_latency_search_with_capacity_and_network_limits(self):
        options = SearchOptions(
            objective="latency",
            constraints=Constraints(capacity_limit=150, network_limit=2),
        )
        result = search(hetero_nodes(), 1, options)
        eps = Fraction(1, 10**6)
        assert result.metric_value <= 1 + eps
        assert result.strategy.capacity(1) >= 150 - eps
        # re-verify constraints independently of the solver
        load, latency, network = strategy_metric_recompute(result.strategy, 1)
        assert 1 / load >= 150 - eps
        assert network <= 2 + eps
        assert latency == result.metric_value

    def test_search_result_is_at_least_as_good_as_hand_candidates(self):
        nodes = hetero_nodes()
        result = search(nodes, 1, SearchOptions(objective="load"))
        hand = ["a*b + c*d", "choose(2, [a, b, c, d])", "a + b + c + d", "a*b*c*d"]
        eps = Fraction(1, 10**6)
        for reads in hand:
            qs = QuorumSystem(nodes, reads=reads)
            sigma = find_strategy(qs, 1)
            assert result.metric_value >= sigma.capacity(1) - eps

    def test_impossible_fault_tolerance(self):
        with pytest.raises(NoFeasibleCandidate):
            search(
                [Node(x) for x in "abcde"],
                Fraction(1, 2),
                SearchOptions(min_fault_tolerance=5),
            )

    def test_budget_runs_are_reproducible(self):
        options = SearchOptions(min_fault_tolerance=1, budget=40)
        first = search(hetero_nodes(), Fraction(1, 2), options)
        second = search(hetero_nodes(), Fraction(1, 2), options)
        assert str(first.qs.reads) == str(second.qs.reads)
        assert first.metric_value == second.metric_value
        assert first.candidates_examined == second.candidates_examined == 40

    def test_budget_exhaustion_with_no_feasible_candidate(self):
        with pytest.raises(NoFeasibleCandidate):
            search(
                hetero_nodes(),
                1,
                SearchOptions(min_fault_tolerance=4, budget=10),
            )

    def test_meets_fault_tolerance_floor(self):
        result = search(hetero_nodes(), 1, SearchOptions(min_fault_tolerance=1))
        assert result.qs.fault_tolerance() >= 1

    def test_options_validation(self):
        with pytest.raises(DomainError):
            SearchOptions(min_fault_tolerance=-1)
        with pytest.raises(DomainError):
            SearchOptions(budget=0)
        with pytest.raises(DomainError):
            SearchOptions(timeout=0)
