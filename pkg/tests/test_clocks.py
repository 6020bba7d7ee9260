from fractions import Fraction

import numpy as np
import pytest
from pydantic_core import ValidationError

from atgames import (
    ClockValuation,
    SimpleConstraint,
    Zone,
    as_rational,
    eval_constraint,
    region_of,
)
from atgames.errors import BoundExceeded, UnknownClock


def test_as_rational():
    assert as_rational("3/10") == Fraction(3, 10)
    assert as_rational("0.25") == Fraction(1, 4)
    assert as_rational(2) == Fraction(2)
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError) as error_msg:
        as_rational("half")
    assert "half" in str(error_msg.value)


def test_validate_clock_valuation():
    valuation = ClockValuation(values={"c1": "1/5", "c2": "1/2"}, bound=1)
    assert valuation["c1"] == Fraction(1, 5)
    assert valuation.denominator == 10
    assert not valuation.is_corner

    # values above the bound are rejected
    with pytest.raises(ValidationError) as error_msg:
        ClockValuation(values={"c": "3/2"}, bound=1)
    assert "outside" in str(error_msg.value)

    # negative values as well
    with pytest.raises(ValidationError):
        ClockValuation(values={"c": -1}, bound=1)


def test_valuation_parts():
    valuation = ClockValuation(values={"c1": 1, "c2": "5/4"}, bound=2)
    assert valuation.int_part("c2") == 1
    assert valuation.frac("c2") == Fraction(1, 4)
    assert valuation.frac("c1") == 0
    with pytest.raises(UnknownClock):
        valuation["d"]


def test_advanced_by():
    valuation = ClockValuation(values={"c": "1/4"}, bound=1)
    assert valuation.advanced_by("1/2")["c"] == Fraction(3, 4)
    with pytest.raises(BoundExceeded):
        ClockValuation(values={"c": "1/2"}, bound=1).advanced_by("7/10")


def test_delays_add_up():
    valuation = ClockValuation(values={"c1": "1/3", "c2": 0}, bound=3)
    twice = valuation.advanced_by("1/2").advanced_by("3/4")
    assert twice == valuation.advanced_by(Fraction(5, 4))


def test_reset():
    valuation = ClockValuation(values={"c1": "1/3", "c2": 1}, bound=3)
    assert valuation.reset(["c1"]) == ClockValuation(values={"c1": 0, "c2": 1}, bound=3)
    assert valuation.reset([]) == valuation
    with pytest.raises(UnknownClock):
        valuation.reset(["d"])


def test_valuations_are_hashable():
    first = ClockValuation(values={"c1": "1/2", "c2": 0}, bound=1)
    second = ClockValuation(values={"c2": 0, "c1": Fraction(1, 2)}, bound=1)
    assert first == second
    assert len({first, second}) == 1


def test_parse_zone():
    zone = Zone.parse("c<=1 && c1-c2>=0")
    assert len(zone.constraints) == 2
    assert zone.constraints[1] == SimpleConstraint(
        clock="c1", other_clock="c2", relation=">=", bound=0
    )
    assert zone.constants == [1, 0]
    assert zone.clocks == {"c", "c1", "c2"}
    assert str(zone) == "c<=1 && c1-c2>=0"
    assert Zone.parse("c==1").constraints[0].relation == "="
    assert Zone.parse("true").is_true
    assert str(Zone.parse("false")) == "false"

    with pytest.raises(ValueError) as error_msg:
        Zone.parse("c <= one")
    assert "c <= one" in str(error_msg.value)


@pytest.mark.parametrize(
    "values, constraint, expected",
    [
        ({"c": "1/2"}, "c<1", True),
        ({"c1": "1/5", "c2": "1/2"}, "c2-c1>=1", False),
        ({"c": 1}, "c=1 && c<=1", True),
        ({"c": 1}, "false", False),
        ({"c": 1}, "true", True),
    ],
)
def test_eval_constraint(values, constraint, expected):
    valuation = ClockValuation(values=values, bound=2)
    assert eval_constraint(valuation, constraint) == expected


def test_eval_constraint_unknown_clock():
    valuation = ClockValuation(values={"c": 0}, bound=1)
    with pytest.raises(UnknownClock):
        eval_constraint(valuation, "d<1")


def test_constraints_agree_within_a_region():
    rng = np.random.default_rng(7)
    constraints = [
        Zone.parse(f"{lhs}{relation}{bound}").constraints[0]
        for lhs in ["c1", "c2", "c1-c2", "c2-c1"]
        for relation in ["<", "<=", "=", ">=", ">"]
        for bound in range(3)
    ]
    for _ in range(300):
        first, second = (
            ClockValuation(
                values={clock: Fraction(int(rng.integers(0, 13)), 6) for clock in ["c1", "c2"]},
                bound=2,
            )
            for _ in range(2)
        )
        if region_of(first) != region_of(second):
            continue
        for constraint in constraints:
            assert constraint.holds(first) == constraint.holds(second)
