"""Home to countdown games, their exact solution and their reduction to two-clock average-time
games.

In a countdown game from ``(n, B)`` player 1 picks a duration p ≤ B offered by some move of n,
player 2 picks one of the moves of n with that duration, and play continues from the target with
budget ``B - p``. Player 1 wins on reaching budget 0 and loses when stuck.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional

from pydantic import AliasChoices, BaseModel as PydanticBaseModel, ConfigDict, Field
from pydantic import model_validator

from .automaton import Action, Location, TimedGameAutomaton, validate
from .average_time_game import solve_average_time
from .boundary_graph import DEFAULT_VERTEX_CAP

Player = Literal[1, 2]

STAR = "*"


class CountdownMove(PydanticBaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    source: str = Field(..., validation_alias=AliasChoices("source", "from"))
    target: str = Field(..., validation_alias=AliasChoices("target", "to"))
    duration: int = Field(..., gt=0)


class CountdownStart(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    node: str
    budget: int = Field(..., ge=1)
    """The initial budget B0"""


class CountdownGame(PydanticBaseModel):
    """A countdown game ``(N, M, π, n0, B0)``.

    **Example**

        >>> from atgames.countdown import CountdownGame
        >>> game = CountdownGame(
        >>>     nodes=["u", "v"],
        >>>     moves=[
        >>>         {"from": "u", "to": "v", "duration": 2},
        >>>         {"from": "v", "to": "u", "duration": 2},
        >>>     ],
        >>>     initial={"node": "u", "budget": 4},
        >>> )
    """

    model_config = ConfigDict(frozen=True)

    nodes: list[str] = Field(..., min_length=1)
    moves: list[CountdownMove]
    initial: CountdownStart

    @model_validator(mode="after")
    def names_are_known(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("Countdown node names must be unique.")
        reserved = [node for node in self.nodes if node == STAR or node.startswith("(")]
        if reserved:
            raise ValueError(f"Node names {reserved} are reserved for the reduction.")
        nodes = set(self.nodes)
        for move in self.moves:
            if move.source not in nodes or move.target not in nodes:
                raise ValueError(f"Move {move.source} -> {move.target} uses an unknown node.")
        if self.initial.node not in nodes:
            raise ValueError(f"Initial node {self.initial.node} is unknown.")
        return self

    def durations(self, node: str) -> list[int]:
        """The distinct durations offered at a node, in increasing order."""
        return sorted({move.duration for move in self.moves if move.source == node})

    def successors(self, node: str, duration: int) -> list[str]:
        return [
            move.target for move in self.moves if move.source == node and move.duration == duration
        ]

    @property
    def pairs(self) -> list[tuple[str, int]]:
        """Every node with every duration it offers."""
        return [(node, duration) for node in self.nodes for duration in self.durations(node)]

    @property
    def min_duration(self) -> Optional[int]:
        return min((move.duration for move in self.moves), default=None)


class CountdownSolution(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    budget: int
    winners: dict[tuple[str, int], Player]
    """Winner of every configuration ``(n, B)`` with ``0 ≤ B ≤ budget``"""
    choices: dict[tuple[str, int], int]
    """The least winning duration of player 1 in every configuration with B > 0 they win"""

    def winner(self, node: str, budget: int) -> Player:
        return self.winners[(node, budget)]


def dp_solve(game: CountdownGame) -> CountdownSolution:
    """Solve a countdown game for every node and every budget up to the initial one."""

    @lru_cache(maxsize=None)
    def wins(node: str, budget: int) -> Optional[int]:
        # winning duration of player 1, 0 for budget 0, None if player 2 wins
        if budget == 0:
            return 0
        for duration in game.durations(node):
            if duration > budget:
                break
            if all(
                wins(target, budget - duration) is not None
                for target in game.successors(node, duration)
            ):
                return duration
        return None

    winners, choices = {}, {}
    for budget in range(game.initial.budget + 1):
        for node in game.nodes:
            duration = wins(node, budget)
            winners[(node, budget)] = 2 if duration is None else 1
            if duration:
                choices[(node, budget)] = duration
    initial = game.initial
    logging.info(
        f"Countdown game from ({initial.node}, {initial.budget}) is won by player "
        f"{winners[(initial.node, initial.budget)]}"
    )
    return CountdownSolution(budget=initial.budget, winners=winners, choices=choices)


def pair_location(node: str, duration: int) -> str:
    return f"({node},{duration})"


def move_action(source: str, target: str) -> str:
    return f"{source}->{target}"


def _default_wait(game: CountdownGame, wait: Optional[int]) -> int:
    if wait is None:
        wait = game.min_duration or 1
    if wait <= 0:
        raise ValueError(f"The waiting time W must be positive, got {wait}.")
    return wait


def reduce(game: CountdownGame, wait: Optional[int] = None) -> TimedGameAutomaton:
    """The two-clock average-time game built from a countdown game.

    Clock b measures the budget spent, clock c the time spent in the current phase. Player 1
    owns the node locations and picks a duration p (no time passes). Player 2 owns the pair
    locations ``(n,p)`` and picks a move of duration p, taken when c reaches p. Player 1 may
    also fire ``*`` once b reaches B0, which leads to the location ``*`` where ``*`` repeats
    every W time units.

    The state zones are tighter than the full square ``[0, B0]²`` on every location: node
    locations keep ``c <= b``, pair locations keep ``b - c <= B0 - p`` and ``*`` keeps ``b = c``.

    Args:
        game (CountdownGame): The countdown game.
        wait (int, optional): The waiting time W of the ``*`` loop. Defaults to the least
            duration of the game.

    Returns:
        TimedGameAutomaton: The game with clocks b and c, started in ``(n0, b=0, c=0)``.
    """
    wait = _default_wait(game, wait)
    budget = game.initial.budget
    bound = max(budget, wait)
    pairs = game.pairs

    locations = [Location(name=STAR, owner="max", state_constraint=f"c<={wait} && b-c=0")]
    locations += [
        Location(name=node, owner="min", state_constraint=f"b<={budget} && c-b<=0")
        for node in game.nodes
    ]
    locations += [
        Location(
            name=pair_location(node, duration),
            owner="max",
            state_constraint=(
                "false" if duration > budget else f"c<={duration} && b-c<={budget - duration}"
            ),
        )
        for node, duration in pairs
    ]
    names = [location.name for location in locations]

    star_enabled = {name: "false" for name in names} | {node: f"b={budget}" for node in game.nodes}
    star_enabled[STAR] = f"c={wait}"
    actions = [
        Action(
            name=STAR,
            resets=frozenset({"b", "c"}),
            enabled=star_enabled,
            delta={name: (STAR if name in game.nodes else name) for name in names},
        )
    ]
    for duration in sorted({move.duration for move in game.moves}):
        offering = [node for node in game.nodes if duration in game.durations(node)]
        actions.append(
            Action(
                name=str(duration),
                resets=frozenset({"c"}),
                enabled={name: "false" for name in names} | {node: "c=0" for node in offering},
                delta={name: name for name in names}
                | {node: pair_location(node, duration) for node in offering},
            )
        )
    for move in game.moves:
        name = move_action(move.source, move.target)
        if any(action.name == name for action in actions):
            continue
        sources = {
            pair_location(move.source, duration): duration
            for duration in game.durations(move.source)
            if move.target in game.successors(move.source, duration)
        }
        actions.append(
            Action(
                name=name,
                resets=frozenset({"c"}),
                enabled={location: "false" for location in names}
                | {
                    location: (f"c={duration}" if duration <= bound else "false")
                    for location, duration in sources.items()
                },
                delta={location: location for location in names}
                | {location: move.target for location in sources},
            )
        )

    automaton = TimedGameAutomaton(
        clocks=["b", "c"],
        bound=bound,
        locations=locations,
        actions=actions,
        initial={"location": game.initial.node, "valuation": {"b": 0, "c": 0}},
    )
    logging.info(f"Reduced countdown game to {automaton} with W={wait}")
    return automaton


class CrossValidationReport(PydanticBaseModel):
    """Solver value of the reduced game next to the countdown winner."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction
    winner: Player
    wait: int
    """The waiting time W used by the reduction"""
    correspondence: bool
    """Whether ``value == W`` holds exactly when player 1 wins"""

    def __str__(self):
        return (
            f"value = {self.value}, winner = player {self.winner}, W = {self.wait}, "
            f"correspondence = {self.correspondence}"
        )


def cross_validate(
    game: CountdownGame, wait: Optional[int] = None, cap: int = DEFAULT_VERTEX_CAP
) -> CrossValidationReport:
    """Solve the reduced average-time game from its start and compare with the countdown winner."""
    wait = _default_wait(game, wait)
    automaton = reduce(game, wait)
    validate(automaton).raise_if_invalid()
    value = solve_average_time(automaton, cap=cap, check=False).value
    winner = dp_solve(game).winner(game.initial.node, game.initial.budget)
    report = CrossValidationReport(
        value=value, winner=winner, wait=wait, correspondence=(value == wait) == (winner == 1)
    )
    logging.info(f"Cross-validated countdown game: {report}")
    return report
