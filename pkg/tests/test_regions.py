from fractions import Fraction

import numpy as np
import pytest
from pydantic_core import ValidationError

from atgames import (
    ClockRegion,
    ClockValuation,
    Region,
    TimedGameAutomaton,
    Zone,
    action_successor,
    enumerate_regions,
    future_chain,
    in_closure,
    in_region,
    is_thin,
    reachable_regions,
    region_of,
    representatives,
    reset_region,
    time_successor,
    zone_test,
)
from atgames.example_objects import get_example_single_loop, get_example_two_player


def one_clock_region(int_part: int, thin: bool, bound: int = 1) -> ClockRegion:
    if thin:
        return ClockRegion(int_parts={"c": int_part}, frac_classes=[{"c"}], bound=bound)
    return ClockRegion(int_parts={"c": int_part}, frac_classes=[set(), {"c"}], bound=bound)


def test_region_of():
    valuation = ClockValuation(values={"c1": 1, "c2": "1/2"}, bound=2)
    region = region_of(valuation)
    assert region == ClockRegion(
        int_parts={"c1": 1, "c2": 0}, frac_classes=[{"c1"}, {"c2"}], bound=2
    )
    assert str(region) == "c1=1, c2∈(0,1) | frac: {c2}"
    assert region.is_thin

    # clocks with the same fractional part share a class
    same = region_of(ClockValuation(values={"c1": "3/2", "c2": "1/2", "c3": "1/4"}, bound=2))
    assert same.frac_classes == (frozenset(), frozenset({"c3"}), frozenset({"c1", "c2"}))
    assert not is_thin(same)


def test_validate_clock_region():
    # a clock missing from the fraction classes
    with pytest.raises(ValidationError):
        ClockRegion(int_parts={"c1": 0, "c2": 0}, frac_classes=[{"c1"}], bound=1)

    # a clock at the bound with a positive fractional part
    with pytest.raises(ValidationError) as error_msg:
        ClockRegion(int_parts={"c": 1}, frac_classes=[set(), {"c"}], bound=1)
    assert "X0" in str(error_msg.value)


def test_in_region_and_closure():
    open_region = one_clock_region(0, thin=False)
    assert in_region(ClockValuation(values={"c": "1/2"}, bound=1), open_region)
    assert not in_region(ClockValuation(values={"c": 1}, bound=1), open_region)
    assert in_closure(ClockValuation(values={"c": 1}, bound=1), open_region)
    assert in_closure(ClockValuation(values={"c": 0}, bound=1), open_region)
    wide = one_clock_region(0, thin=False, bound=2)
    assert not in_closure(ClockValuation(values={"c": "3/2"}, bound=2), wide)

    ordered = region_of(ClockValuation(values={"c1": "1/4", "c2": "1/2"}, bound=1))
    assert in_closure(ClockValuation(values={"c1": "1/2", "c2": "1/2"}, bound=1), ordered)
    assert not in_closure(ClockValuation(values={"c1": "3/4", "c2": "1/2"}, bound=1), ordered)


def test_time_successor():
    region = region_of(ClockValuation(values={"c1": 1, "c2": "1/2"}, bound=2))
    later = time_successor(region)
    assert str(later) == "c1∈(1,2), c2∈(0,1) | frac: {c1} < {c2}"

    # the clock with the largest fractional part reaches the next integer
    next_integer = time_successor(later)
    assert next_integer.int_parts == {"c1": 1, "c2": 1}
    assert next_integer.zero_class == frozenset({"c2"})

    assert time_successor(one_clock_region(1, thin=True)) is None


def test_reset_region():
    region = region_of(ClockValuation(values={"c1": "1/4", "c2": "3/2"}, bound=2))
    reset = reset_region(region, ["c2"])
    assert reset == region_of(ClockValuation(values={"c1": "1/4", "c2": 0}, bound=2))
    assert reset_region(region, []) == region


def test_reset_agrees_with_valuations():
    rng = np.random.default_rng(3)
    clocks = ["c1", "c2", "c3"]
    for _ in range(200):
        valuation = ClockValuation(
            values={clock: Fraction(int(rng.integers(0, 9)), 4) for clock in clocks}, bound=2
        )
        resets = [clock for clock in clocks if rng.random() < 0.5]
        assert region_of(valuation.reset(resets)) == reset_region(region_of(valuation), resets)


def test_future_chain():
    automaton = get_example_single_loop()
    start = Region(location="l", clock_region=one_clock_region(0, thin=True))
    chain = future_chain(start, automaton)
    assert [region.clock_region for region in chain] == [
        one_clock_region(0, thin=True),
        one_clock_region(0, thin=False),
        one_clock_region(1, thin=True),
    ]

    # a state zone that stops time at c=0
    frozen = TimedGameAutomaton(
        clocks=["c"],
        bound=1,
        locations=[{"name": "l", "owner": "min", "state_constraint": "c<=0"}],
        actions=[{"name": "a", "resets": ["c"], "enabled": {"l": "c=0"}, "delta": {"l": "l"}}],
    )
    assert future_chain(start, frozen) == [start]


def test_action_successor():
    automaton = get_example_single_loop()
    at_one = Region(location="l", clock_region=one_clock_region(1, thin=True))
    assert action_successor(at_one, "a", automaton) == Region(
        location="l", clock_region=one_clock_region(0, thin=True)
    )
    between = Region(location="l", clock_region=one_clock_region(0, thin=False))
    assert action_successor(between, "a", automaton) is None


def test_reachable_regions():
    single_loop = get_example_single_loop()
    at_zero = Region(location="l", clock_region=one_clock_region(0, thin=True))
    between = Region(location="l", clock_region=one_clock_region(0, thin=False))
    assert reachable_regions(single_loop, at_zero) == [at_zero]
    assert reachable_regions(single_loop, between) == [between, at_zero]

    two_player = get_example_two_player()
    start = Region(location="l_min", clock_region=one_clock_region(0, thin=True, bound=2))
    reached = reachable_regions(two_player, start)
    assert [region.location for region in reached] == ["l_min", "l_max"]
    assert all(region.clock_region.int_parts == {"c": 0} for region in reached)


@pytest.mark.parametrize(
    "zone, expected",
    [("c<1", True), ("c<=0", False), ("c>0", True), ("c=0", False), ("true", True)],
)
def test_zone_test(zone, expected):
    region = Region(location="l", clock_region=one_clock_region(0, thin=False))
    assert zone_test(region, Zone.parse(zone)) == expected


@pytest.mark.parametrize(
    "clocks, bound, expected", [(["c"], 1, 3), (["c"], 2, 5), (["c1", "c2"], 1, 11)]
)
def test_enumerate_regions(clocks, bound, expected):
    regions = list(enumerate_regions(clocks, bound))
    assert len(regions) == expected
    assert len(set(regions)) == expected


def test_representatives():
    samples = representatives(one_clock_region(0, thin=False), 3)
    assert [sample["c"] for sample in samples] == [Fraction(1, 8), Fraction(3, 8), Fraction(5, 8)]

    # a region with integer values only has one point
    assert len(representatives(one_clock_region(1, thin=True), 3)) == 1

    with pytest.raises(ValueError):
        representatives(one_clock_region(0, thin=False), 0)


def test_representatives_lie_in_their_region():
    for region in enumerate_regions(["c1", "c2", "c3"], 2):
        for sample in representatives(region, 3):
            assert in_region(sample, region)
