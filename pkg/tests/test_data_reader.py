import os
from fractions import Fraction

import pytest
from pydantic_core import ValidationError

from atgames import (
    JSONDataReader,
    YAMLDataReader,
    get_data_reader,
    solve,
    solve_average_time,
    validate,
    verify,
)
from atgames.export import automaton_to_dict, solution_to_dict, write_json

TESTS_DATA = os.path.join(os.path.dirname(__file__), "tests_data")


def data_path(name: str) -> str:
    return os.path.join(TESTS_DATA, name)


def test_get_data_reader():
    assert isinstance(get_data_reader("game.json"), JSONDataReader)
    assert isinstance(get_data_reader("game.yml"), YAMLDataReader)
    assert isinstance(get_data_reader("game.YAML"), YAMLDataReader)
    with pytest.raises(ValueError) as error_msg:
        get_data_reader("game.xlsx")
    assert ".xlsx" in str(error_msg.value)


def test_read_automaton():
    automaton = get_data_reader(data_path("ex1.json")).read_automaton(data_path("ex1.json"))
    assert automaton.clocks == ["c"]
    assert automaton.initial.valuation["c"] == 0
    assert solve_average_time(automaton).value == 1

    from_yaml = YAMLDataReader().read_automaton(data_path("ex1.yml"))
    assert from_yaml.initial.valuation["c"] == Fraction(1, 2)
    assert from_yaml.actions == automaton.actions

    two_player = JSONDataReader().read_automaton(data_path("ex2.json"))
    assert solve_average_time(two_player).value == 1


def test_read_invalid_automaton():
    # structurally fine, but δ is not total
    automaton = JSONDataReader().read_automaton(data_path("ex1_missing_delta.json"))
    assert automaton.initial is None
    assert "δ not total" in str(validate(automaton))


def test_malformed_files(tmp_path):
    with pytest.raises(ValueError) as error_msg:
        JSONDataReader().read_automaton(data_path("malformed.json"))
    assert "line 4" in str(error_msg.value)

    broken = tmp_path / "broken.yml"
    broken.write_text("clocks: [c\nbound: 1\n")
    with pytest.raises(ValueError) as error_msg:
        YAMLDataReader().read_automaton(str(broken))
    assert "Malformed YAML" in str(error_msg.value)

    # well-formed, but not an automaton
    with pytest.raises(ValidationError):
        JSONDataReader().read_automaton(data_path("two_cycle.json"))


def test_read_countdown():
    won = JSONDataReader().read_countdown(data_path("countdown_win.json"))
    lost = YAMLDataReader().read_countdown(data_path("countdown_loss.yml"))
    assert won.nodes == lost.nodes
    assert won.moves == lost.moves
    assert (won.initial.budget, lost.initial.budget) == (4, 3)


def test_solution_round_trip(tmp_path):
    reader = JSONDataReader()
    game = reader.read_game(data_path("two_cycle.json"))
    solution = solve(game)
    path = str(tmp_path / "solution.json")
    write_json(solution_to_dict(solution), path)

    read = reader.read_solution(path)
    assert read.values == solution.values
    assert read.min_strategy == solution.min_strategy
    assert verify(game, read.values, read.min_strategy, read.max_strategy)


def test_read_solution_needs_all_entries(tmp_path):
    path = str(tmp_path / "partial.json")
    write_json({"values": {"u": "2", "v": "2"}, "min_strategy": []}, path)
    with pytest.raises(ValueError) as error_msg:
        JSONDataReader().read_solution(path)
    assert "max_strategy" in str(error_msg.value)


def test_automaton_round_trip(tmp_path):
    automaton = JSONDataReader().read_automaton(data_path("ex2.json"))
    path = str(tmp_path / "out" / "ex2.json")
    write_json(automaton_to_dict(automaton), path)
    assert JSONDataReader().read_automaton(path) == automaton
