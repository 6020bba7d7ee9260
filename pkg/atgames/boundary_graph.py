"""Home to the boundary region graph.

From a configuration, a boundary move waits until the configuration reaches the nearer or the
farther boundary of a future region and then fires an action. Only finitely many configurations
are reachable this way from a rational start, so the graph can be built by breadth-first search
and handed to the mean-payoff solver.
"""

import logging
from collections import deque
from fractions import Fraction
from math import lcm
from typing import Literal, Optional, Union

from pydantic import BaseModel as PydanticBaseModel, ConfigDict, PrivateAttr, model_validator

from .automaton import Configuration, TimedGameAutomaton
from .clocks import ClockValuation
from .errors import ExplosionGuard, LeftStateZone, NotInFuture
from .mean_payoff_game import MeanPayoffGame, MpgEdge, MpgVertex
from .regions import (
    ClockRegion,
    Region,
    action_successor,
    clock_region_in_zone,
    in_closure,
    in_region,
    iter_future,
    region_of,
)

DEFAULT_VERTEX_CAP = 10**6

Side = Literal["inf", "sup"]


class BoundaryTime(PydanticBaseModel):
    """A delay written as ``max(0, b - s(c))`` with its witness ``(b, c)``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    delay: Fraction
    bound: int
    """The integer b the witness clock is waited for"""
    clock: str
    """The witness clock c"""


class DelayWindow(PydanticBaseModel):
    """The delays that land inside a region itself, as an interval with open or closed ends."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: Fraction
    upper: Fraction
    lower_closed: bool
    upper_closed: bool

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, delay: Fraction) -> bool:
        above = delay > self.lower or (self.lower_closed and delay == self.lower)
        below = delay < self.upper or (self.upper_closed and delay == self.upper)
        return above and below


class BrgConfig(PydanticBaseModel):
    """A vertex of the boundary region graph: a configuration in the closure of a region."""

    model_config = ConfigDict(frozen=True)

    configuration: Configuration
    region: Region

    @model_validator(mode="after")
    def configuration_in_closure(self):
        if self.configuration.location != self.region.location:
            raise ValueError("Configuration and region must share the location.")
        if not in_closure(self.configuration.valuation, self.region.clock_region):
            raise ValueError(f"{self.configuration} is not in the closure of {self.region}.")
        return self

    @property
    def location(self) -> str:
        return self.region.location

    @property
    def valuation(self) -> ClockValuation:
        return self.configuration.valuation

    def __str__(self):
        return f"{self.location} | {self.valuation} | {self.region.clock_region}"


class BoundaryMove(PydanticBaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    delay: Fraction
    bound: int
    """Witness integer b"""
    clock: str
    """Witness clock c"""
    via: Region
    """The intermediate region R″ whose closure boundary is reached"""
    action: str
    side: Side
    """Whether the delay is the infimum or the supremum of the delays into clos(R″)"""
    target: BrgConfig

    @property
    def label(self) -> str:
        return (
            f"t={self.delay}={self.bound}-{self.clock} via {self.via.clock_region}, {self.action}"
        )


class BrgEdge(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    source: int
    target: int
    move: BoundaryMove


def _as_valuation(state: Union[Configuration, BrgConfig, ClockValuation]) -> ClockValuation:
    if isinstance(state, ClockValuation):
        return state
    return state.valuation


def _as_clock_region(region: Union[Region, ClockRegion]) -> ClockRegion:
    return region.clock_region if isinstance(region, Region) else region


def boundary_times(
    state: Union[Configuration, ClockValuation], target: Union[Region, ClockRegion]
) -> tuple[BoundaryTime, BoundaryTime]:
    """Infimum and supremum of ``{t >= 0 : s + t ∈ clos(R″)}``, each with a witness ``(b, c)``.

    Raises:
        NotInFuture: If no delay reaches the closure of the region.
    """
    valuation = _as_valuation(state)
    clock_region = _as_clock_region(target)
    offsets = {c: valuation[c] - n for c, n in clock_region.int_parts.items()}

    # the relative order of the clocks does not change while time passes
    previous = None
    for frac_class in clock_region.frac_classes:
        levels = {offsets[clock] for clock in frac_class}
        if len(levels) > 1:
            raise NotInFuture(f"{valuation} never reaches the closure of {clock_region}.")
        if levels:
            level = levels.pop()
            if previous is not None and level < previous:
                raise NotInFuture(f"{valuation} never reaches the closure of {clock_region}.")
            previous = level

    ordered = sorted(clock_region.zero_class) + [
        clock for frac_class in clock_region.positive_classes for clock in sorted(frac_class)
    ]
    lower: Optional[BoundaryTime] = None
    upper: Optional[BoundaryTime] = None
    for clock in ordered:
        int_part = clock_region.int_parts[clock]
        upper_bound = int_part if clock in clock_region.zero_class else int_part + 1
        if lower is None or int_part - valuation[clock] > lower.delay:
            lower = BoundaryTime(delay=int_part - valuation[clock], bound=int_part, clock=clock)
        if upper is None or upper_bound - valuation[clock] < upper.delay:
            upper = BoundaryTime(
                delay=upper_bound - valuation[clock], bound=upper_bound, clock=clock
            )
    if lower.delay < 0:
        lower = BoundaryTime(delay=Fraction(0), bound=lower.bound, clock=lower.clock)
    if upper.delay < lower.delay:
        raise NotInFuture(f"{valuation} never reaches the closure of {clock_region}.")
    return lower, upper


def delay_window(
    state: Union[Configuration, ClockValuation], target: Union[Region, ClockRegion]
) -> Optional[DelayWindow]:
    """The delays t with ``s + t`` inside the region itself, or None if there are none."""
    valuation = _as_valuation(state)
    clock_region = _as_clock_region(target)
    if clock_region.is_thin:
        clock = min(clock_region.zero_class)
        point = clock_region.int_parts[clock] - valuation[clock]
        if point < 0 or any(
            value + point > valuation.bound for value in valuation.values.values()
        ):
            return None
        if not in_region(valuation.advanced_by(point), clock_region):
            return None
        return DelayWindow(lower=point, upper=point, lower_closed=True, upper_closed=True)
    offsets = {c: valuation[c] - n for c, n in clock_region.int_parts.items()}
    levels = []
    for frac_class in clock_region.positive_classes:
        class_levels = {offsets[clock] for clock in frac_class}
        if len(class_levels) > 1:
            return None
        levels.append(class_levels.pop())
    if any(high <= low for low, high in zip(levels, levels[1:])):
        return None
    lower, upper = -levels[0], 1 - levels[-1]
    lower_closed = lower < 0
    lower = max(lower, Fraction(0))
    if upper <= lower:
        return None
    return DelayWindow(lower=lower, upper=upper, lower_closed=lower_closed, upper_closed=False)


def successors(vertex: BrgConfig, automaton: TimedGameAutomaton) -> list[BoundaryMove]:
    """All boundary moves from a vertex.

    Ordered by the future chain of the vertex region, then by action order, then infimum before
    supremum. A single move is emitted when both coincide.
    """
    moves = []
    valuation = vertex.valuation
    for via in iter_future(vertex.region, automaton):
        times = None
        for action in automaton.actions:
            landing = action_successor(via, action.name, automaton)
            if landing is None:
                continue
            if times is None:
                times = boundary_times(valuation, via)
            lower, upper = times
            sides = [("inf", lower)]
            if lower.delay != upper.delay:
                sides.append(("sup", upper))
            for side, time in sides:
                reached = valuation.advanced_by(time.delay).reset(action.resets)
                target = BrgConfig(
                    configuration=Configuration(location=landing.location, valuation=reached),
                    region=landing,
                )
                moves.append(
                    BoundaryMove(
                        delay=time.delay,
                        bound=time.bound,
                        clock=time.clock,
                        via=via,
                        action=action.name,
                        side=side,
                        target=target,
                    )
                )
    return moves


class BoundaryRegionGraph(PydanticBaseModel):
    """The boundary region graph reachable from one start configuration.

    Vertex ids are the breadth-first discovery order; the start vertex has id 0.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    automaton: TimedGameAutomaton
    vertices: list[BrgConfig]
    edges: list[BrgEdge]

    _index: dict[BrgConfig, int] = PrivateAttr(default_factory=dict)
    _out_edges: dict[int, list[int]] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context):
        self._index = {vertex: vertex_id for vertex_id, vertex in enumerate(self.vertices)}
        self._out_edges = {vertex_id: [] for vertex_id in range(len(self.vertices))}
        for edge_id, edge in enumerate(self.edges):
            self._out_edges[edge.source].append(edge_id)

    @property
    def initial(self) -> int:
        return 0

    @property
    def initial_vertex(self) -> BrgConfig:
        return self.vertices[0]

    def index(self, vertex: BrgConfig) -> int:
        return self._index[vertex]

    def out_edges(self, vertex_id: int) -> list[int]:
        return self._out_edges[vertex_id]

    def owner(self, vertex_id: int) -> str:
        return self.automaton.owner(self.vertices[vertex_id].location)

    @property
    def scale(self) -> int:
        """The least common denominator D of all delays."""
        return lcm(1, *(edge.move.delay.denominator for edge in self.edges))

    def regions(self) -> list[Region]:
        """The distinct regions of the vertices, in discovery order."""
        return list(dict.fromkeys(vertex.region for vertex in self.vertices))

    def respects_initial_denominator(self) -> bool:
        """Whether every vertex valuation has a denominator dividing the start valuation's."""
        denominator = self.initial_vertex.valuation.denominator
        return all(denominator % vertex.valuation.denominator == 0 for vertex in self.vertices)

    def __str__(self):
        return f"BoundaryRegionGraph with {len(self.vertices)} vertices and {len(self.edges)} edges"


def explore(
    automaton: TimedGameAutomaton,
    start: Optional[Configuration] = None,
    cap: int = DEFAULT_VERTEX_CAP,
) -> BoundaryRegionGraph:
    """Build the boundary region graph reachable from a start configuration.

    Args:
        automaton (TimedGameAutomaton): The game.
        start (Configuration, optional): Start configuration. Defaults to the automaton's
            initial one.
        cap (int): Maximum number of vertices.

    Raises:
        ExplosionGuard: If more than ``cap`` vertices are reachable.
    """
    start = start or automaton.initial
    if start is None:
        raise ValueError("No start configuration given and the automaton has none.")
    start_region = Region(location=start.location, clock_region=region_of(start.valuation))
    if not clock_region_in_zone(start_region.clock_region, automaton.state_zone(start.location)):
        raise LeftStateZone(f"Start configuration {start} is outside the state zone.")
    initial = BrgConfig(configuration=start, region=start_region)
    index = {initial: 0}
    vertices = [initial]
    edges = []
    queue = deque([initial])
    while queue:
        vertex = queue.popleft()
        source = index[vertex]
        for move in successors(vertex, automaton):
            if move.target not in index:
                if len(vertices) >= cap:
                    raise ExplosionGuard(
                        f"explosion guard: more than {cap} vertices reachable from {start}"
                    )
                index[move.target] = len(vertices)
                vertices.append(move.target)
                queue.append(move.target)
            edges.append(BrgEdge(source=source, target=index[move.target], move=move))
    graph = BoundaryRegionGraph(automaton=automaton, vertices=vertices, edges=edges)
    logging.info(f"Explored {graph} from {start}")
    return graph


def to_mpg(graph: BoundaryRegionGraph) -> tuple[MeanPayoffGame, int]:
    """The mean-payoff game on the graph with delays scaled to integers.

    Vertex ids and edge ids are shared with the graph.

    Returns:
        tuple[MeanPayoffGame, int]: The game and the scale factor D.
    """
    scale = graph.scale
    game = MeanPayoffGame(
        vertices=[
            MpgVertex(id=vertex_id, owner=graph.owner(vertex_id))
            for vertex_id in range(len(graph.vertices))
        ],
        edges=[
            MpgEdge(src=edge.source, dst=edge.target, weight=int(edge.move.delay * scale))
            for edge in graph.edges
        ],
    )
    return game, scale


def corner_point_view(graph: BoundaryRegionGraph) -> bool:
    """Whether the graph from a corner start only has corner vertices and integer delays."""
    if not graph.initial_vertex.valuation.is_corner:
        raise ValueError("The corner-point view needs a start valuation with integer values.")
    return all(vertex.valuation.is_corner for vertex in graph.vertices) and all(
        edge.move.delay.denominator == 1 for edge in graph.edges
    )
