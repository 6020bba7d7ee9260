"""Home to the end-to-end solver for average-time games.

The game is solved from a start configuration by building the boundary region graph, scaling its
delays to integers and solving the resulting mean-payoff game exactly. Values are reported in
time units.
"""

import logging
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel as PydanticBaseModel, ConfigDict

from .automaton import Configuration, Owner, TimedGameAutomaton, validate
from .boundary_graph import DEFAULT_VERTEX_CAP, BoundaryRegionGraph, BrgEdge, explore, to_mpg
from .clocks import as_rational
from .errors import CertificationFailed
from .mean_payoff_game import MeanPayoffGame, PositionalStrategy
from .mpg_solver import MpgSolution, solve, verify
from .strategies import BoundaryStrategy, BoundaryTimedAction


class SolvedGame(PydanticBaseModel):
    """An average-time game solved from one start configuration.

    **Example**

        >>> from atgames import solve_average_time
        >>> from atgames.example_objects import get_example_single_loop
        >>> solved = solve_average_time(get_example_single_loop())
        >>> solved.value
        Fraction(1, 1)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    automaton: TimedGameAutomaton
    initial: Configuration
    graph: BoundaryRegionGraph
    game: MeanPayoffGame
    """The mean-payoff game on the graph, with delays multiplied by ``scale``"""
    scale: int
    """Common denominator D of all delays"""
    solution: MpgSolution
    """Solution of ``game``, in scaled units"""

    @property
    def values(self) -> dict[int, Fraction]:
        """Value of every graph vertex in time units."""
        return {vertex_id: value / self.scale for vertex_id, value in self.solution.values.items()}

    @property
    def value(self) -> Fraction:
        return self.solution.values[self.graph.initial] / self.scale

    @property
    def min_strategy(self) -> PositionalStrategy:
        return self.solution.min_strategy

    @property
    def max_strategy(self) -> PositionalStrategy:
        return self.solution.max_strategy

    def strategy(self, player: Owner) -> PositionalStrategy:
        return self.min_strategy if player == "min" else self.max_strategy

    @property
    def transient_bound(self) -> Fraction:
        """Total time a play may spend off its final cycle: ``2·k·|V|``."""
        return Fraction(2 * self.automaton.bound * len(self.graph.vertices))

    def is_region_uniform(self, player: Owner) -> bool:
        return extract_boundary_strategy(self, player).is_region_uniform()

    def __str__(self):
        return f"value = {self.value}"


def solve_average_time(
    automaton: TimedGameAutomaton,
    start: Optional[Configuration] = None,
    cap: int = DEFAULT_VERTEX_CAP,
    horizon: Optional[int] = None,
    check: bool = True,
) -> SolvedGame:
    """Solve the average-time game from a start configuration.

    Args:
        automaton (TimedGameAutomaton): The game.
        start (Configuration, optional): Defaults to the automaton's initial configuration.
        cap (int): Vertex cap of the boundary region graph.
        horizon (int, optional): Overrides the value iteration horizon of the mean-payoff solver.
        check (bool): Validate the automaton first. Defaults to True.

    Returns:
        SolvedGame: Values and optimal strategies on the boundary region graph.
    """
    if check:
        validate(automaton).raise_if_invalid()
    start = start or automaton.initial
    if start is None:
        raise ValueError("No start configuration given and the automaton has none.")
    graph = explore(automaton, start, cap=cap)
    game, scale = to_mpg(graph)
    solution = solve(game, horizon=horizon)
    if not verify(game, solution.values, solution.min_strategy, solution.max_strategy):
        raise CertificationFailed(f"The strategies found for {game} do not verify.")
    solved = SolvedGame(
        automaton=automaton, initial=start, graph=graph, game=game, scale=scale, solution=solution
    )
    logging.info(f"Solved from {start}: {solved}")
    return solved


def decide(
    automaton: TimedGameAutomaton,
    start: Optional[Configuration],
    bound: Union[Fraction, int, str],
    **kwargs,
) -> bool:
    """Whether the value from ``start`` is at most ``bound``."""
    return solve_average_time(automaton, start, **kwargs).value <= as_rational(bound)


def _prefer_thin(graph: BoundaryRegionGraph, edge_id: int) -> BrgEdge:
    """An edge equivalent to the given one (same action, delay and target) with a thin
    intermediate region, if there is one."""
    chosen = graph.edges[edge_id]
    if chosen.move.via.clock_region.is_thin:
        return chosen
    for other_id in graph.out_edges(chosen.source):
        other = graph.edges[other_id]
        if (
            other.target == chosen.target
            and other.move.action == chosen.move.action
            and other.move.delay == chosen.move.delay
            and other.move.via.clock_region.is_thin
        ):
            return other
    return chosen


def extract_boundary_strategy(solved: SolvedGame, player: Owner) -> BoundaryStrategy:
    """Read the boundary timed actions of a player off the mean-payoff strategy."""
    choices = {}
    for vertex_id, edge_id in solved.strategy(player).choices.items():
        move = _prefer_thin(solved.graph, edge_id).move
        choices[vertex_id] = BoundaryTimedAction(
            bound=move.bound, clock=move.clock, action=move.action, via=move.via, side=move.side
        )
    strategy = BoundaryStrategy(player=player, graph=solved.graph, choices=choices)
    if not strategy.is_region_uniform():
        logging.warning(f"The extracted strategy of {player} is not region-uniform")
    return strategy
