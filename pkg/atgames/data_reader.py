"""Home to some data readers."""

import json
import os
from abc import ABC, abstractmethod

import yaml

from .automaton import TimedGameAutomaton
from .clocks import as_rational
from .countdown import CountdownGame
from .mean_payoff_game import MeanPayoffGame, PositionalStrategy
from .mpg_solver import MpgSolution


class DataReader(ABC):
    """Template for creating a data reader. Subclasses only need to turn a file into plain
    Python data; the typed readers build and check the models from it.
    """

    @abstractmethod
    def read_data(self, path: str) -> dict:
        """Required method to read the raw content of a file."""
        pass

    def read_automaton(self, path: str) -> TimedGameAutomaton:
        return TimedGameAutomaton.model_validate(self.read_data(path))

    def read_game(self, path: str) -> MeanPayoffGame:
        return MeanPayoffGame.model_validate(self.read_data(path))

    def read_countdown(self, path: str) -> CountdownGame:
        return CountdownGame.model_validate(self.read_data(path))

    def read_solution(self, path: str) -> MpgSolution:
        """Read values and strategies as written by :py:func:`atgames.export.solution_to_dict`."""
        data = self.read_data(path)
        for key in ["values", "min_strategy", "max_strategy"]:
            if key not in data:
                raise ValueError(f"Solution file {path} has no '{key}' entry.")
        return MpgSolution(
            values={
                _vertex_id(key): as_rational(value) for key, value in data["values"].items()
            },
            min_strategy=_read_strategy("min", data["min_strategy"]),
            max_strategy=_read_strategy("max", data["max_strategy"]),
            iterations=data.get("iterations", 0),
        )


def _vertex_id(key):
    """JSON object keys are strings; integer vertex ids are restored."""
    if isinstance(key, str) and key.lstrip("-").isdigit():
        return int(key)
    return key


def _read_strategy(player: str, entries: list[dict]) -> PositionalStrategy:
    return PositionalStrategy(
        player=player, choices={entry["vertex"]: entry["edge"] for entry in entries}
    )


class JSONDataReader(DataReader):
    def read_data(self, path: str) -> dict:
        with open(path) as file:
            try:
                return json.load(file)
            except json.JSONDecodeError as error:
                raise ValueError(
                    f"Malformed JSON in {path} at line {error.lineno}, column {error.colno}: "
                    f"{error.msg}"
                ) from None


class YAMLDataReader(DataReader):
    def read_data(self, path: str) -> dict:
        with open(path) as file:
            try:
                return yaml.safe_load(file)
            except yaml.YAMLError as error:
                mark = getattr(error, "problem_mark", None)
                if mark is None:
                    raise ValueError(f"Malformed YAML in {path}: {error}") from None
                raise ValueError(
                    f"Malformed YAML in {path} at line {mark.line + 1}, column {mark.column + 1}"
                ) from None


def get_data_reader(path: str) -> DataReader:
    """Pick a reader by file extension."""
    extension = os.path.splitext(path)[1].lower()
    if extension == ".json":
        return JSONDataReader()
    if extension in [".yml", ".yaml"]:
        return YAMLDataReader()
    raise ValueError(f"Unknown input format '{extension}' of {path}; use .json, .yml or .yaml.")
