"""Home to the exact mean-payoff game solver and its verification oracles.

Values are found by value iteration followed by rounding to the nearest admissible cycle mean;
a greedy pair of positional strategies is then read off the Bellman-consistent edges and
certified by solving the two one-player games they induce. If the greedy pair fails, each
player's strategy is extracted from the least credits keeping its cycles on its side of the
values.
"""

import logging
from fractions import Fraction
from itertools import product
from math import prod
from typing import Literal, Optional, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel as PydanticBaseModel, ConfigDict

from .clocks import as_rational
from .errors import AmbiguousRounding, CertificationFailed, TooLarge
from .mean_payoff_game import MeanPayoffGame, Owner, PositionalStrategy, VertexId

DEFAULT_STRATEGY_LIMIT = 10**6

Objective = Literal["min", "max"]


class MpgSolution(PydanticBaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: dict[VertexId, Fraction]
    min_strategy: PositionalStrategy
    max_strategy: PositionalStrategy
    iterations: int = 0
    """Number of value iteration steps performed before the values were certified"""


class _Bellman:
    """Edges sorted by source, so that one Bellman backup is a pair of ``reduceat`` calls."""

    def __init__(self, game: MeanPayoffGame, horizon: int):
        self.ids = game.ids
        position = {vertex_id: i for i, vertex_id in enumerate(self.ids)}
        sources = np.array([position[edge.src] for edge in game.edges])
        order = np.argsort(sources, kind="stable")
        # int64 holds every partial sum below the horizon unless weights are huge
        dtype = np.int64 if horizon * max(game.max_abs_weight, 1) < 2**62 else object
        self.edge_ids = order
        self.weights = np.array([game.edges[i].weight for i in order], dtype=dtype)
        self.targets = np.array([position[game.edges[i].dst] for i in order])
        self.starts = np.searchsorted(sources[order], np.arange(len(self.ids)))
        self.is_min = np.array([game.owner(vertex_id) == "min" for vertex_id in self.ids])
        self.dtype = dtype

    def zeros(self) -> np.ndarray:
        return np.zeros(len(self.ids), dtype=self.dtype)

    def step(self, totals: np.ndarray) -> np.ndarray:
        candidates = self.weights + totals[self.targets]
        lowest = np.minimum.reduceat(candidates, self.starts)
        highest = np.maximum.reduceat(candidates, self.starts)
        return np.where(self.is_min, lowest, highest)


def value_iteration(game: MeanPayoffGame, steps: int) -> dict[VertexId, int]:
    """Optimal total weight of plays with ``steps`` edges, from every vertex."""
    if steps < 0:
        raise ValueError("The number of steps must be non-negative.")
    bellman = _Bellman(game, steps)
    totals = bellman.zeros()
    for _ in range(steps):
        totals = bellman.step(totals)
    return {vertex_id: int(total) for vertex_id, total in zip(bellman.ids, totals)}


def round_to_cycle_mean(x: Union[Fraction, int, str], n: int) -> Fraction:
    """The rational with denominator at most ``n`` nearest to ``x``.

    Raises:
        AmbiguousRounding: If two such rationals are equally close.
    """
    x = as_rational(x)
    if n < 1:
        raise ValueError("The denominator limit must be positive.")
    if x.denominator <= n:
        return x
    p0, q0, p1, q1 = 0, 1, 1, 0
    numerator, denominator = x.numerator, x.denominator
    while True:
        a = numerator // denominator
        q2 = q0 + a * q1
        if q2 > n:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q2
        numerator, denominator = denominator, numerator - a * denominator
    k = (n - q0) // q1
    semiconvergent = Fraction(p0 + k * p1, q0 + k * q1)
    convergent = Fraction(p1, q1)
    distance_semi, distance_conv = abs(semiconvergent - x), abs(convergent - x)
    if distance_semi == distance_conv:
        raise AmbiguousRounding(
            f"{x} lies halfway between {semiconvergent} and {convergent}; iterate longer."
        )
    return convergent if distance_conv < distance_semi else semiconvergent


def _karp(graph: nx.DiGraph) -> Fraction:
    """Minimum mean cycle weight of a strongly connected graph with a cycle."""
    nodes = list(graph.nodes)
    size = len(nodes)
    distances = [{node: None for node in nodes} for _ in range(size + 1)]
    distances[0][nodes[0]] = 0
    for length in range(1, size + 1):
        for source, target, weight in graph.edges(data="weight"):
            previous = distances[length - 1][source]
            if previous is None:
                continue
            if distances[length][target] is None or previous + weight < distances[length][target]:
                distances[length][target] = previous + weight
    best = None
    for node in nodes:
        if distances[size][node] is None:
            continue
        worst = max(
            Fraction(distances[size][node] - distances[length][node], size - length)
            for length in range(size)
            if distances[length][node] is not None
        )
        if best is None or worst < best:
            best = worst
    return best


def karp_mean_cycle(
    game: MeanPayoffGame,
    objective: Objective,
    strategy: Optional[PositionalStrategy] = None,
) -> dict[VertexId, Fraction]:
    """Best reachable cycle mean from every vertex for a single player.

    Args:
        game (MeanPayoffGame): The game.
        objective (str): ``"min"`` or ``"max"``, the goal of the player choosing all free edges.
        strategy (PositionalStrategy, optional): Fixes the edges of one player first.

    Returns:
        dict: Vertex id to the optimal reachable cycle mean.
    """
    edge_ids = range(len(game.edges)) if strategy is None else strategy.restricted_edges(game)
    sign = 1 if objective == "min" else -1
    graph = nx.DiGraph()
    graph.add_nodes_from(game.ids)
    for edge_id in edge_ids:
        edge = game.edges[edge_id]
        weight = sign * edge.weight
        if not graph.has_edge(edge.src, edge.dst) or weight < graph[edge.src][edge.dst]["weight"]:
            graph.add_edge(edge.src, edge.dst, weight=weight)

    condensed = nx.condensation(graph)
    cycle_means = {}
    for component in condensed.nodes:
        members = condensed.nodes[component]["members"]
        if len(members) > 1 or any(graph.has_edge(member, member) for member in members):
            cycle_means[component] = _karp(graph.subgraph(members))
    reachable = {}
    for component in reversed(list(nx.topological_sort(condensed))):
        options = [reachable[later] for later in condensed.successors(component)]
        if component in cycle_means:
            options.append(cycle_means[component])
        if not options:
            raise ValueError("The restricted graph has a dead end.")
        reachable[component] = min(options)
    mapping = condensed.graph["mapping"]
    return {vertex_id: sign * reachable[mapping[vertex_id]] for vertex_id in game.ids}


def verify(
    game: MeanPayoffGame,
    values: dict[VertexId, Union[Fraction, int]],
    min_strategy: PositionalStrategy,
    max_strategy: PositionalStrategy,
) -> bool:
    """Whether both strategies guarantee exactly the given values."""
    try:
        min_strategy.check(game)
        max_strategy.check(game)
    except ValueError as error:
        logging.debug(f"Strategy check failed: {error}")
        return False
    if min_strategy.player != "min" or max_strategy.player != "max":
        return False
    values = {vertex_id: as_rational(value) for vertex_id, value in values.items()}
    return (
        karp_mean_cycle(game, "max", min_strategy) == values
        and karp_mean_cycle(game, "min", max_strategy) == values
    )


def _consistent_edges(
    game: MeanPayoffGame, values: dict[VertexId, Fraction], vertex_id: VertexId
) -> list[int]:
    return [
        edge_id
        for edge_id in game.out_edges(vertex_id)
        if values[game.edges[edge_id].dst] == values[vertex_id]
    ]


def _greedy_strategy(
    game: MeanPayoffGame,
    values: dict[VertexId, Fraction],
    totals: dict[VertexId, int],
    player: Owner,
) -> Optional[PositionalStrategy]:
    sign = 1 if player == "min" else -1
    choices = {}
    for vertex_id in game.playernodes(player):
        candidates = _consistent_edges(game, values, vertex_id)
        if not candidates:
            return None
        choices[vertex_id] = min(
            candidates,
            key=lambda e: (sign * (game.edges[e].weight + totals[game.edges[e].dst]), e),
        )
    return PositionalStrategy(player=player, choices=choices)


def _energy_strategy(
    game: MeanPayoffGame, values: dict[VertexId, Fraction], player: Owner
) -> Optional[PositionalStrategy]:
    """Strategy over Bellman-consistent edges under which every cycle is on the player's side
    of the values.

    Each consistent edge gets the weight ``±(w·q - p)`` for the value ``p/q`` of its source, so
    that the player needs every cycle to be non-negative. The least credits with which the
    player keeps every prefix non-negative are lifted from zero, and every vertex of the player
    takes an edge needing the least credit. Returns None if the credits exceed ``n`` times the
    largest shifted weight, which only happens when the values are wrong.
    """
    sign = 1 if player == "max" else -1
    edges = {vertex_id: _consistent_edges(game, values, vertex_id) for vertex_id in game.ids}
    if any(not edges[vertex_id] for vertex_id in game.playernodes(player)):
        return None
    shifted: dict[int, int] = {}
    predecessors: dict[VertexId, list[VertexId]] = {vertex_id: [] for vertex_id in game.ids}
    for vertex_id, edge_ids in edges.items():
        value = values[vertex_id]
        for edge_id in edge_ids:
            edge = game.edges[edge_id]
            shifted[edge_id] = sign * (edge.weight * value.denominator - value.numerator)
            if vertex_id not in predecessors[edge.dst]:
                predecessors[edge.dst].append(vertex_id)
    top = len(game.ids) * max((abs(weight) for weight in shifted.values()), default=0)
    credit = dict.fromkeys(game.ids, 0)

    def need(edge_id: int) -> int:
        return max(0, credit[game.edges[edge_id].dst] - shifted[edge_id])

    pending = list(reversed(game.ids))
    queued = set(pending)
    while pending:
        vertex_id = pending.pop()
        queued.discard(vertex_id)
        needs = [need(edge_id) for edge_id in edges[vertex_id]]
        lifted = min(needs) if game.owner(vertex_id) == player else max(needs, default=0)
        if lifted <= credit[vertex_id]:
            continue
        if lifted > top:
            return None
        credit[vertex_id] = lifted
        for predecessor in predecessors[vertex_id]:
            if predecessor not in queued:
                pending.append(predecessor)
                queued.add(predecessor)
    choices = {
        vertex_id: min(edges[vertex_id], key=lambda e: (need(e), e))
        for vertex_id in game.playernodes(player)
    }
    return PositionalStrategy(player=player, choices=choices)


def solve(game: MeanPayoffGame, horizon: Optional[int] = None) -> MpgSolution:
    """Exact values and optimal positional strategies of a mean-payoff game.

    The greedy strategies read off the last value iteration step are tried first. When they do
    not certify and the rounded values have settled, strategies are extracted from the credits
    each player needs to keep every cycle on its side of the values.

    Args:
        game (MeanPayoffGame): The game.
        horizon (int, optional): Maximal number of value iteration steps. Defaults to ``4n³W``,
            enough for the rounding to be exact.

    Raises:
        CertificationFailed: If no strategy pair certifies the values within the horizon.
    """
    n = len(game.vertices)
    if horizon is None:
        horizon = 4 * n**3 * max(game.max_abs_weight, 1)
    bellman = _Bellman(game, horizon)
    totals = bellman.zeros()
    previous = totals
    steps = 0
    checkpoint = n
    last_values = None
    while True:
        target = min(checkpoint, horizon)
        while steps < target:
            previous = totals
            totals = bellman.step(totals)
            steps += 1
        final = steps >= horizon
        try:
            values = {
                vertex_id: round_to_cycle_mean(Fraction(int(total), steps), n)
                for vertex_id, total in zip(bellman.ids, totals)
            }
        except AmbiguousRounding:
            if final:
                raise
            checkpoint *= 2
            continue
        previous_totals = {vertex_id: int(total) for vertex_id, total in zip(bellman.ids, previous)}
        strategies = [
            _greedy_strategy(game, values, previous_totals, "min"),
            _greedy_strategy(game, values, previous_totals, "max"),
        ]
        if None not in strategies and verify(game, values, *strategies):
            logging.debug(f"Greedy strategies certified after {steps} steps")
            return MpgSolution(
                values=values,
                min_strategy=strategies[0],
                max_strategy=strategies[1],
                iterations=steps,
            )
        if final or values == last_values:
            strategies = [
                _energy_strategy(game, values, "min"),
                _energy_strategy(game, values, "max"),
            ]
            if None not in strategies and verify(game, values, *strategies):
                logging.debug(f"Energy strategies certified after {steps} steps")
                return MpgSolution(
                    values=values,
                    min_strategy=strategies[0],
                    max_strategy=strategies[1],
                    iterations=steps,
                )
        if final:
            raise CertificationFailed(
                f"No strategy pair certifies the values of {game} after {steps} steps."
            )
        logging.debug(f"Checkpoint {steps}: values not certified yet")
        last_values = values
        checkpoint *= 2


def _play_means(
    game: MeanPayoffGame, successor_edges: dict[VertexId, int]
) -> dict[VertexId, Fraction]:
    """Cycle mean reached from every vertex when each vertex has exactly one edge."""
    means = {}
    for start in game.ids:
        if start in means:
            continue
        path, seen = [], {}
        vertex_id = start
        while vertex_id not in means and vertex_id not in seen:
            seen[vertex_id] = len(path)
            path.append(vertex_id)
            vertex_id = game.edges[successor_edges[vertex_id]].dst
        if vertex_id in means:
            mean = means[vertex_id]
        else:
            cycle = path[seen[vertex_id] :]
            mean = Fraction(
                sum(game.edges[successor_edges[v]].weight for v in cycle), len(cycle)
            )
        for visited in path:
            means[visited] = mean
    return means


def brute_force_solve(
    game: MeanPayoffGame, limit: int = DEFAULT_STRATEGY_LIMIT
) -> dict[VertexId, Fraction]:
    """Values by enumerating all pairs of positional strategies.

    Raises:
        TooLarge: If there are more than ``limit`` strategy pairs.
    """
    pairs = prod(len(game.out_edges(vertex_id)) for vertex_id in game.ids)
    if pairs > limit:
        raise TooLarge(f"{game} has {pairs} positional strategy pairs, more than {limit}.")
    min_vertices, max_vertices = game.playernodes("min"), game.playernodes("max")
    min_options = [game.out_edges(vertex_id) for vertex_id in min_vertices]
    max_options = [game.out_edges(vertex_id) for vertex_id in max_vertices]
    values: dict[VertexId, Fraction] = {}
    for min_choice in product(*min_options):
        worst: dict[VertexId, Fraction] = {}
        for max_choice in product(*max_options):
            successor_edges = dict(zip(min_vertices, min_choice)) | dict(
                zip(max_vertices, max_choice)
            )
            for vertex_id, mean in _play_means(game, successor_edges).items():
                if vertex_id not in worst or mean > worst[vertex_id]:
                    worst[vertex_id] = mean
        for vertex_id, mean in worst.items():
            if vertex_id not in values or mean < values[vertex_id]:
                values[vertex_id] = mean
    return {vertex_id: values[vertex_id] for vertex_id in game.ids}
