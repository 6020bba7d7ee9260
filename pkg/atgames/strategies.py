"""Home to strategies played on the timed automaton itself.

A :py:class:`BoundaryStrategy` maps boundary region graph vertices to boundary timed actions
``(b, c, a)``: wait until clock c reads b, then fire a. An :py:class:`EpsilonStrategy` turns such
a strategy into one that only ever lands inside open regions, waiting at most ε longer (Min) or
shorter (Max) than the boundary strategy would.
"""

from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel as PydanticBaseModel, ConfigDict, PrivateAttr, field_validator

from .automaton import Configuration, Owner, TimedGameAutomaton
from .boundary_graph import BoundaryRegionGraph, Side, boundary_times, delay_window
from .clocks import ClockValuation, as_rational
from .errors import EmptyWindow, NotInFuture, StrategyUndefined
from .regions import Region, action_successor


class BoundaryTimedAction(PydanticBaseModel):
    """Wait until ``clock`` reads ``bound``, then fire ``action`` from the region ``via``."""

    model_config = ConfigDict(frozen=True)

    bound: int
    clock: str
    action: str
    via: Region
    side: Side
    """The end of the delay interval into clos(via) the action is taken at"""

    def delay(self, valuation: ClockValuation) -> Fraction:
        """The delay ``max(0, b - s(c))``."""
        return max(Fraction(0), self.bound - valuation[self.clock])

    def __str__(self):
        return f"({self.bound}, {self.clock}, {self.action}) via {self.via.clock_region}"


class StrategyChoice(PydanticBaseModel):
    """A concrete move: delay, action, and the regions passed and reached."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    delay: Fraction
    action: str
    via: Region
    landing: Region
    boundary_action: BoundaryTimedAction


class BoundaryStrategy(PydanticBaseModel):
    """A positional boundary strategy of one player on a boundary region graph.

    At a graph vertex the stored boundary timed action is played. In any other configuration of
    a region that has vertices, the action of the region's first vertex is played at the same
    side of its delay interval.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    player: Owner
    graph: BoundaryRegionGraph
    choices: dict[int, BoundaryTimedAction]
    """Vertex id to boundary timed action"""

    _by_region: dict[Region, BoundaryTimedAction] = PrivateAttr(default_factory=dict)
    _by_state: dict[tuple[Configuration, Region], int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context):
        for vertex_id in sorted(self.choices):
            vertex = self.graph.vertices[vertex_id]
            self._by_region.setdefault(vertex.region, self.choices[vertex_id])
            self._by_state[(vertex.configuration, vertex.region)] = vertex_id

    def is_region_uniform(self) -> bool:
        """Whether all vertices of a region get the same boundary timed action."""
        for vertex_id, boundary_action in self.choices.items():
            region = self.graph.vertices[vertex_id].region
            first = self._by_region[region]
            if (boundary_action.action, boundary_action.via, boundary_action.side) != (
                first.action,
                first.via,
                first.side,
            ):
                return False
        return True

    def boundary_action_at(
        self, configuration: Configuration, region: Region
    ) -> tuple[BoundaryTimedAction, Fraction]:
        """The boundary timed action played in a configuration and its boundary delay."""
        vertex_id = self._find_vertex(configuration, region)
        if vertex_id is not None and vertex_id in self.choices:
            boundary_action = self.choices[vertex_id]
            return boundary_action, boundary_action.delay(configuration.valuation)
        if region not in self._by_region:
            raise StrategyUndefined(f"Strategy of {self.player} has no move in region {region}.")
        boundary_action = self._by_region[region]
        try:
            lower, upper = boundary_times(configuration.valuation, boundary_action.via)
        except NotInFuture as error:
            raise StrategyUndefined(str(error)) from None
        time = lower if boundary_action.side == "inf" else upper
        boundary_action = boundary_action.model_copy(
            update={"bound": time.bound, "clock": time.clock}
        )
        return boundary_action, time.delay

    def choose(
        self, automaton: TimedGameAutomaton, configuration: Configuration, region: Region
    ) -> StrategyChoice:
        boundary_action, delay = self.boundary_action_at(configuration, region)
        return _choice(automaton, boundary_action, delay)

    def _find_vertex(self, configuration: Configuration, region: Region) -> Optional[int]:
        return self._by_state.get((configuration, region))


def _choice(
    automaton: TimedGameAutomaton, boundary_action: BoundaryTimedAction, delay: Fraction
) -> StrategyChoice:
    landing = action_successor(boundary_action.via, boundary_action.action, automaton)
    if landing is None:
        raise StrategyUndefined(f"{boundary_action} is not a legal move.")
    return StrategyChoice(
        delay=delay,
        action=boundary_action.action,
        via=boundary_action.via,
        landing=landing,
        boundary_action=boundary_action,
    )


def perturbed_delay(
    valuation: ClockValuation,
    boundary_action: BoundaryTimedAction,
    epsilon: Union[Fraction, int, str],
    base: Optional[Fraction] = None,
) -> Fraction:
    """A delay within ε of the boundary delay that lands inside the open region ``via``.

    If the boundary delay already lands inside the region it is kept. Otherwise the delay moves
    inward from the nearer end of the window by ``min(ε, width) / 2``.

    **Example**

        From c = 0 towards the open region 0 < c < 1 with ε = 1/10, Min waits 1/20 instead
        of 0 and Max waits 19/20 instead of 1.

    Raises:
        EmptyWindow: If no delay lands inside the region.
    """
    epsilon = as_rational(epsilon)
    base = boundary_action.delay(valuation) if base is None else base
    window = delay_window(valuation, boundary_action.via)
    if window is None:
        raise EmptyWindow(f"No delay from {valuation} lands inside {boundary_action.via}.")
    if base in window:
        return base
    if window.width == 0:
        raise EmptyWindow(
            f"The boundary delay {base} misses the point region {boundary_action.via}."
        )
    step = min(epsilon, window.width) / 2
    if base <= window.lower:
        return window.lower + step
    return window.upper - step


class EpsilonStrategy(PydanticBaseModel):
    """A boundary strategy played so that every move lands inside an open region."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    boundary: BoundaryStrategy
    epsilon: Fraction

    @field_validator("epsilon", mode="before")
    @classmethod
    def epsilon_is_rational(cls, value):
        value = as_rational(value)
        if value <= 0:
            raise ValueError(f"ε must be positive, got {value}.")
        return value

    @property
    def player(self) -> Owner:
        return self.boundary.player

    def choose(
        self, automaton: TimedGameAutomaton, configuration: Configuration, region: Region
    ) -> StrategyChoice:
        boundary_action, base = self.boundary.boundary_action_at(configuration, region)
        delay = perturbed_delay(configuration.valuation, boundary_action, self.epsilon, base)
        return _choice(automaton, boundary_action, delay)


def epsilon_close(
    strategy: BoundaryStrategy, epsilon: Union[Fraction, int, str]
) -> EpsilonStrategy:
    return EpsilonStrategy(boundary=strategy, epsilon=epsilon)


class SimpleFunction(PydanticBaseModel):
    """A function ``e`` or ``e - s(c)`` on the closure of a region."""

    model_config = ConfigDict(frozen=True)

    constant: int
    clock: Optional[str] = None

    def evaluate(self, valuation: ClockValuation) -> Fraction:
        value = Fraction(self.constant)
        if self.clock is not None:
            value -= valuation[self.clock]
        return value

    def __str__(self):
        return str(self.constant) if self.clock is None else f"{self.constant} - {self.clock}"
