from fractions import Fraction

import numpy as np
import pytest

from atgames import (
    ClockRegion,
    Region,
    TimedGameAutomaton,
    decide,
    extract_boundary_strategy,
    reachable_regions,
    region_of,
    regional_constancy_probe,
    solve_average_time,
)
from atgames.errors import ExplosionGuard
from atgames.example_objects import (
    get_example_single_loop,
    get_example_two_player,
    random_automaton,
    random_start,
)


def test_single_loop_value():
    automaton = get_example_single_loop()
    solved = solve_average_time(automaton)
    assert solved.value == 1
    assert str(solved) == "value = 1"

    solved = solve_average_time(automaton, automaton.configuration("l", {"c": "1/2"}))
    assert solved.value == 1
    assert solved.scale == 2
    assert solved.values == {0: 1, 1: 1}


def test_two_player_value():
    solved = solve_average_time(get_example_two_player())
    assert solved.value == 1
    assert solved.transient_bound == 8


def test_decide():
    automaton = get_example_two_player()
    assert decide(automaton, None, 1)
    assert decide(automaton, None, "3/2")
    assert not decide(automaton, None, "1/2")


def test_extracted_strategies():
    solved = solve_average_time(get_example_two_player())
    min_strategy = extract_boundary_strategy(solved, "min")
    max_strategy = extract_boundary_strategy(solved, "max")

    at_zero = ClockRegion(int_parts={"c": 0}, frac_classes=[{"c"}], bound=2)
    at_two = ClockRegion(int_parts={"c": 2}, frac_classes=[{"c"}], bound=2)
    assert (min_strategy.choices[0].bound, min_strategy.choices[0].action) == (0, "a")
    assert min_strategy.choices[0].via == Region(location="l_min", clock_region=at_zero)
    assert (max_strategy.choices[1].bound, max_strategy.choices[1].action) == (2, "b")
    assert max_strategy.choices[1].via == Region(location="l_max", clock_region=at_two)
    assert solved.is_region_uniform("min")
    assert solved.is_region_uniform("max")


def test_invalid_automaton_is_rejected():
    definition = get_example_single_loop().model_dump()
    definition["actions"][0]["delta"] = {}
    automaton = TimedGameAutomaton(**definition)
    with pytest.raises(ValueError) as error_msg:
        solve_average_time(automaton)
    assert "δ not total" in str(error_msg.value)


def test_vertex_cap():
    automaton = get_example_single_loop()
    with pytest.raises(ExplosionGuard):
        solve_average_time(automaton, automaton.configuration("l", {"c": "1/2"}), cap=1)


def test_values_are_constant_on_regions():
    rng = np.random.default_rng(23)
    for _ in range(8):
        automaton = random_automaton(rng, n_clocks=1, n_locations=int(rng.integers(1, 4)))
        start = random_start(rng, automaton)
        region = Region(location=start.location, clock_region=region_of(start.valuation))
        values = regional_constancy_probe(automaton, region, samples=3)
        assert len(set(values)) == 1
        assert values[0] >= 0
        assert values[0] <= automaton.bound
        assert isinstance(values[0], Fraction)


def test_values_are_constant_on_every_reachable_region():
    rng = np.random.default_rng(31)
    clock_counts = set()
    for _ in range(20):
        automaton = random_automaton(rng, bound=1, n_locations=int(rng.integers(1, 3)))
        clock_counts.add(len(automaton.clocks))
        initial = Region(
            location=automaton.initial.location,
            clock_region=region_of(automaton.initial.valuation),
        )
        for region in reachable_regions(automaton, initial):
            values = regional_constancy_probe(automaton, region, samples=2)
            assert len(set(values)) == 1
            assert 0 <= values[0] <= automaton.bound
    assert clock_counts == {1, 2}
