from fractions import Fraction

import pytest
from pydantic_core import ValidationError

from atgames import Run, TimedAction, TimedGameAutomaton, apply_action, delay, timed_succ, validate
from atgames.errors import BoundExceeded, LeftStateZone, NotEnabled, TargetOutsideS
from atgames.example_objects import get_example_single_loop, get_example_two_player


def single_loop_with(**changes) -> TimedGameAutomaton:
    definition = get_example_single_loop().model_dump()
    definition.pop("initial")
    definition["actions"][0].update(changes.pop("action", {}))
    definition["locations"][0].update(changes.pop("location", {}))
    return TimedGameAutomaton(**definition)


def test_validate_examples():
    assert validate(get_example_single_loop()).is_valid
    assert validate(get_example_two_player()).is_valid
    assert str(validate(get_example_single_loop())) == "valid"


def test_validate_missing_delta():
    report = validate(single_loop_with(action={"delta": {}}))
    assert not report.is_valid
    assert report.violations == ["δ not total: no target for (l, a)"]
    with pytest.raises(ValueError) as error_msg:
        report.raise_if_invalid()
    assert "δ not total" in str(error_msg.value)


def test_validate_constant_exceeds_bound():
    report = validate(single_loop_with(action={"enabled": {"l": "c=2"}}))
    assert len(report.violations) == 1
    assert report.violations[0].startswith("constant exceeds bound")


def test_validate_no_legal_move():
    # the guard c=1 can never be reached inside c<1
    report = validate(single_loop_with(location={"state_constraint": "c<1"}))
    assert not report.is_valid
    assert all(violation.startswith("no legal timed action") for violation in report.violations)


def test_structural_errors():
    definition = get_example_single_loop().model_dump()
    definition["locations"].append({"name": "l", "owner": "max"})
    with pytest.raises(ValidationError) as error_msg:
        TimedGameAutomaton(**definition)
    assert "Duplicate location" in str(error_msg.value)

    definition = get_example_single_loop().model_dump()
    definition["actions"][0]["resets"] = ["d"]
    with pytest.raises(ValidationError) as error_msg:
        TimedGameAutomaton(**definition)
    assert "unknown clocks" in str(error_msg.value)

    definition = get_example_single_loop().model_dump()
    definition["actions"][0]["enabled"] = {"l": "c <= one"}
    with pytest.raises(ValidationError):
        TimedGameAutomaton(**definition)


def test_delay():
    automaton = get_example_single_loop()
    start = automaton.initial
    assert delay(start, "1/2", automaton) == automaton.configuration("l", {"c": "1/2"})
    assert delay(start, 0, automaton) == start
    with pytest.raises(BoundExceeded):
        delay(start, "3/2", automaton)

    # the end point of the delay lies outside c<1
    bounded = single_loop_with(location={"state_constraint": "c<1"})
    with pytest.raises(LeftStateZone):
        delay(bounded.zero_configuration("l"), 1, bounded)


def test_apply_action():
    automaton = get_example_single_loop()
    assert apply_action(automaton.configuration("l", {"c": 1}), "a", automaton) == (
        automaton.zero_configuration("l")
    )
    with pytest.raises(NotEnabled):
        apply_action(automaton.configuration("l", {"c": "1/2"}), "a", automaton)
    with pytest.raises(ValueError) as error_msg:
        apply_action(automaton.configuration("l", {"c": 1}), "b", automaton)
    assert "Unknown action" in str(error_msg.value)


def test_apply_action_outside_state_zone():
    automaton = TimedGameAutomaton(
        clocks=["c"],
        bound=1,
        locations=[
            {"name": "l", "owner": "min"},
            {"name": "m", "owner": "min", "state_constraint": "c<1"},
        ],
        actions=[{"name": "a", "enabled": {"l": "c=1"}, "delta": {"l": "m", "m": "m"}}],
    )
    with pytest.raises(TargetOutsideS):
        apply_action(automaton.configuration("l", {"c": 1}), "a", automaton)


def test_timed_succ():
    automaton = get_example_single_loop()
    successor = timed_succ(automaton.initial, TimedAction(delay=1, action="a"), automaton)
    assert successor == automaton.initial

    # an action without resets keeps the waited valuation
    definition = get_example_two_player().model_dump()
    definition["initial"] = None
    for action in definition["actions"]:
        action["resets"] = []
    no_reset = TimedGameAutomaton(**definition)
    successor = timed_succ(
        no_reset.zero_configuration("l_min"), TimedAction(delay="1/2", action="a"), no_reset
    )
    assert successor == no_reset.configuration("l_max", {"c": "1/2"})


def test_timed_action_delay():
    assert TimedAction(delay="3/10", action="a").delay == Fraction(3, 10)
    with pytest.raises(ValidationError):
        TimedAction(delay=-1, action="a")


def test_run():
    automaton = get_example_single_loop()
    run = Run.from_timed_actions(
        automaton, automaton.initial, [TimedAction(delay=1, action="a")] * 2
    )
    assert run.length == 2
    assert run.time == 2
    assert run.average == 1
    assert run.last == automaton.initial

    longer = run.concatenate(run)
    assert longer.length == 4
    assert longer.time == 4

    elsewhere = Run(initial=automaton.configuration("l", {"c": "1/2"}))
    with pytest.raises(ValueError):
        run.concatenate(elsewhere)
    with pytest.raises(ValueError):
        elsewhere.average

    # the stored time must be the sum of the delays
    with pytest.raises(ValidationError):
        Run(initial=automaton.initial, steps=run.steps, time=3)
