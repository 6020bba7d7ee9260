from fractions import Fraction

import numpy as np
import pytest

from atgames import (
    BrgConfig,
    ClockRegion,
    ClockValuation,
    Region,
    boundary_times,
    corner_point_view,
    delay_window,
    explore,
    region_of,
    successors,
    to_mpg,
)
from atgames.errors import ExplosionGuard, NotInFuture
from atgames.example_objects import (
    get_example_single_loop,
    get_example_two_player,
    random_automaton,
    random_start,
)


def vertex_at(automaton, location: str, values: dict) -> BrgConfig:
    configuration = automaton.configuration(location, values)
    region = Region(location=location, clock_region=region_of(configuration.valuation))
    return BrgConfig(configuration=configuration, region=region)


def test_boundary_times_one_clock():
    valuation = ClockValuation(values={"c": "3/10"}, bound=1)
    at_one = ClockRegion(int_parts={"c": 1}, frac_classes=[{"c"}], bound=1)
    lower, upper = boundary_times(valuation, at_one)
    assert lower.delay == upper.delay == Fraction(7, 10)
    assert (lower.bound, lower.clock) == (1, "c")

    between = ClockRegion(int_parts={"c": 0}, frac_classes=[set(), {"c"}], bound=1)
    lower, upper = boundary_times(valuation, between)
    assert (lower.delay, upper.delay) == (0, Fraction(7, 10))
    assert (upper.bound, upper.clock) == (1, "c")

    at_zero = ClockRegion(int_parts={"c": 0}, frac_classes=[{"c"}], bound=1)
    with pytest.raises(NotInFuture):
        boundary_times(valuation, at_zero)


def test_boundary_times_two_clocks():
    valuation = ClockValuation(values={"c1": "1/5", "c2": "1/2"}, bound=1)
    target = ClockRegion(int_parts={"c1": 0, "c2": 1}, frac_classes=[{"c2"}, {"c1"}], bound=1)
    lower, upper = boundary_times(valuation, target)
    assert lower.delay == upper.delay == Fraction(1, 2)
    assert (lower.bound, lower.clock) == (1, "c2")

    # c1 can never overtake c2
    swapped = ClockRegion(int_parts={"c1": 1, "c2": 0}, frac_classes=[{"c1"}, {"c2"}], bound=1)
    with pytest.raises(NotInFuture):
        boundary_times(valuation, swapped)


def test_delay_window():
    valuation = ClockValuation(values={"c": 0}, bound=1)
    between = ClockRegion(int_parts={"c": 0}, frac_classes=[set(), {"c"}], bound=1)
    window = delay_window(valuation, between)
    assert (window.lower, window.upper) == (0, 1)
    assert not window.lower_closed and not window.upper_closed
    assert Fraction(1, 2) in window
    assert 0 not in window

    point = delay_window(valuation, ClockRegion(int_parts={"c": 1}, frac_classes=[{"c"}], bound=1))
    assert (point.lower, point.upper, point.width) == (1, 1, 0)

    late = ClockValuation(values={"c": "1/2"}, bound=1)
    at_zero = ClockRegion(int_parts={"c": 0}, frac_classes=[{"c"}], bound=1)
    assert delay_window(late, at_zero) is None


def test_successors_single_loop():
    automaton = get_example_single_loop()
    moves = successors(vertex_at(automaton, "l", {"c": 0}), automaton)
    assert len(moves) == 1
    assert moves[0].delay == 1
    assert moves[0].action == "a"
    assert moves[0].target == vertex_at(automaton, "l", {"c": 0})
    assert moves[0].label == "t=1=1-c via c=1 | frac: ∅, a"


def test_successors_two_player():
    automaton = get_example_two_player()
    moves = successors(vertex_at(automaton, "l_max", {"c": 0}), automaton)
    assert [move.delay for move in moves] == [0, 0, 1, 1, 1, 2, 2]
    assert [move.side for move in moves] == ["inf", "inf", "sup", "inf", "inf", "sup", "inf"]
    assert {move.target for move in moves} == {vertex_at(automaton, "l_min", {"c": 0})}

    # Min may only move while c<=1
    moves = successors(vertex_at(automaton, "l_min", {"c": 0}), automaton)
    assert [move.delay for move in moves] == [0, 0, 1, 1]


def test_explore_single_loop():
    automaton = get_example_single_loop()
    graph = explore(automaton)
    assert len(graph.vertices) == 1
    assert [(edge.source, edge.target, edge.move.delay) for edge in graph.edges] == [(0, 0, 1)]

    graph = explore(automaton, automaton.configuration("l", {"c": "1/2"}))
    assert len(graph.vertices) == 2
    assert [edge.move.delay for edge in graph.edges] == [Fraction(1, 2), 1]
    game, scale = to_mpg(graph)
    assert scale == 2
    assert [edge.weight for edge in game.edges] == [1, 2]
    assert game.ids == [0, 1]
    assert graph.respects_initial_denominator()


def test_explore_two_player():
    graph = explore(get_example_two_player())
    assert len(graph.vertices) == 2
    assert len(graph.edges) == 11
    assert [graph.owner(vertex_id) for vertex_id in range(2)] == ["min", "max"]
    assert [graph.index(vertex) for vertex in graph.vertices] == [0, 1]
    assert len(graph.regions()) == 2
    assert corner_point_view(graph)
    assert str(graph) == "BoundaryRegionGraph with 2 vertices and 11 edges"


def test_corner_point_view_needs_corner_start():
    automaton = get_example_single_loop()
    graph = explore(automaton, automaton.configuration("l", {"c": "1/2"}))
    with pytest.raises(ValueError):
        corner_point_view(graph)


def test_explosion_guard():
    automaton = get_example_single_loop()
    with pytest.raises(ExplosionGuard) as error_msg:
        explore(automaton, automaton.configuration("l", {"c": "1/2"}), cap=1)
    assert "explosion guard" in str(error_msg.value)


def test_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(20):
        automaton = random_automaton(rng)
        start = random_start(rng, automaton)
        graph = explore(automaton, start, cap=20000)
        assert graph.respects_initial_denominator()
        for edge in graph.edges:
            source = graph.vertices[edge.source].valuation
            move = edge.move
            assert move.delay == max(Fraction(0), move.bound - source[move.clock])
            assert 0 <= move.bound <= automaton.bound


@pytest.mark.parametrize("seed", range(20))
def test_corner_point_view_on_random_automata(seed):
    rng = np.random.default_rng(seed)
    automaton = random_automaton(rng)
    start = random_start(rng, automaton, denominator=1)
    graph = explore(automaton, start, cap=20000)
    assert corner_point_view(graph)
    assert to_mpg(graph)[1] == 1
