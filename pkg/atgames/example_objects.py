"""Small games used in the docs and tests, and seeded random generators for property checks."""

from fractions import Fraction
from typing import Optional

import numpy as np

from .automaton import Configuration, TimedGameAutomaton
from .countdown import CountdownGame
from .mean_payoff_game import MeanPayoffGame

_RELATIONS = ["<", "<=", "=", ">=", ">"]


def get_example_single_loop() -> TimedGameAutomaton:
    """One Min location ``l`` with clock c, k=1, and an action ``a`` enabled at c=1 that resets
    c. Every transition takes exactly one time unit."""
    return TimedGameAutomaton(
        clocks=["c"],
        bound=1,
        locations=[{"name": "l", "owner": "min"}],
        actions=[{"name": "a", "resets": ["c"], "enabled": {"l": "c=1"}, "delta": {"l": "l"}}],
        initial={"location": "l", "valuation": {"c": 0}},
    )


def get_example_two_player() -> TimedGameAutomaton:
    """Min in ``l_min`` fires ``a`` while c<=1 and moves to ``l_max``; Max fires ``b`` while
    c<=2 and moves back. Both reset c. The value from ``(l_min, c=0)`` is 1."""
    return TimedGameAutomaton(
        clocks=["c"],
        bound=2,
        locations=[
            {"name": "l_min", "owner": "min", "state_constraint": "c<=1"},
            {"name": "l_max", "owner": "max"},
        ],
        actions=[
            {
                "name": "a",
                "resets": ["c"],
                "enabled": {"l_min": "c<=1", "l_max": "false"},
                "delta": {"l_min": "l_max", "l_max": "l_max"},
            },
            {
                "name": "b",
                "resets": ["c"],
                "enabled": {"l_max": "c<=2", "l_min": "false"},
                "delta": {"l_max": "l_min", "l_min": "l_min"},
            },
        ],
        initial={"location": "l_min", "valuation": {"c": 0}},
    )


def get_example_two_cycle_game() -> MeanPayoffGame:
    """Two vertices in a cycle with weights 1 and 3; the value is 2 everywhere."""
    return MeanPayoffGame(
        vertices=[{"id": "u", "owner": "min"}, {"id": "v", "owner": "max"}],
        edges=[{"src": "u", "dst": "v", "weight": 1}, {"src": "v", "dst": "u", "weight": 3}],
    )


def get_example_countdown(budget: int = 4) -> CountdownGame:
    """Two nodes that pass the turn back and forth with duration 2. Player 1 wins for even
    budgets and loses for odd ones."""
    return CountdownGame(
        nodes=["u", "v"],
        moves=[
            {"from": "u", "to": "v", "duration": 2},
            {"from": "v", "to": "u", "duration": 2},
        ],
        initial={"node": "u", "budget": budget},
    )


def _random_guard(rng: np.random.Generator, clocks: list[str], bound: int) -> str:
    if rng.random() < 0.25:
        return "true"
    clock = clocks[rng.integers(len(clocks))]
    relation = _RELATIONS[rng.integers(len(_RELATIONS))]
    return f"{clock}{relation}{rng.integers(bound + 1)}"


def random_automaton(
    rng: np.random.Generator,
    n_clocks: Optional[int] = None,
    bound: Optional[int] = None,
    n_locations: Optional[int] = None,
    n_actions: int = 2,
) -> TimedGameAutomaton:
    """A valid random automaton with at most 2 clocks, k ≤ 2 and at most 4 locations unless
    given otherwise.

    The state zone is true everywhere. Besides ``n_actions`` random actions there is one action
    ``reset_c`` per clock c, enabled at c=k, so that every region has a legal move.
    """
    n_clocks = n_clocks or int(rng.integers(1, 3))
    bound = bound or int(rng.integers(1, 3))
    n_locations = n_locations or int(rng.integers(1, 5))
    clocks = [f"c{i + 1}" for i in range(n_clocks)]
    locations = [
        {"name": f"l{i}", "owner": "min" if rng.random() < 0.5 else "max"}
        for i in range(n_locations)
    ]
    names = [location["name"] for location in locations]

    def random_delta() -> dict[str, str]:
        return {name: names[rng.integers(n_locations)] for name in names}

    actions = [
        {
            "name": f"a{i}",
            "resets": [clock for clock in clocks if rng.random() < 0.5],
            "enabled": {name: _random_guard(rng, clocks, bound) for name in names},
            "delta": random_delta(),
        }
        for i in range(n_actions)
    ]
    actions += [
        {
            "name": f"reset_{clock}",
            "resets": [clock],
            "enabled": {name: f"{clock}={bound}" for name in names},
            "delta": random_delta(),
        }
        for clock in clocks
    ]
    return TimedGameAutomaton(
        clocks=clocks,
        bound=bound,
        locations=locations,
        actions=actions,
        initial={"location": names[0], "valuation": {clock: 0 for clock in clocks}},
    )


def random_start(
    rng: np.random.Generator, automaton: TimedGameAutomaton, denominator: int = 4
) -> Configuration:
    """A random configuration with clock values in multiples of ``1/denominator``."""
    location = automaton.location_names[rng.integers(len(automaton.locations))]
    values = {
        clock: Fraction(int(rng.integers(automaton.bound * denominator + 1)), denominator)
        for clock in automaton.clocks
    }
    return automaton.configuration(location, values)


def random_mean_payoff_game(
    rng: np.random.Generator,
    max_vertices: int = 6,
    max_edges: int = 12,
    max_weight: int = 8,
    min_weight: int = 0,
) -> MeanPayoffGame:
    """A random game without dead ends: every vertex gets one edge, the rest are spread
    at random. Weights are drawn from ``[min_weight, max_weight]``."""
    n_vertices = int(rng.integers(1, max_vertices + 1))
    n_edges = int(rng.integers(n_vertices, max(n_vertices, max_edges) + 1))
    sources = list(range(n_vertices)) + [
        int(rng.integers(n_vertices)) for _ in range(n_edges - n_vertices)
    ]
    return MeanPayoffGame(
        vertices=[
            {"id": i, "owner": "min" if rng.random() < 0.5 else "max"} for i in range(n_vertices)
        ],
        edges=[
            {
                "src": src,
                "dst": int(rng.integers(n_vertices)),
                "weight": int(rng.integers(min_weight, max_weight + 1)),
            }
            for src in sources
        ],
    )


def random_countdown_game(
    rng: np.random.Generator, max_nodes: int = 4, max_budget: int = 6, max_duration: int = 3
) -> CountdownGame:
    n_nodes = int(rng.integers(1, max_nodes + 1))
    nodes = [f"n{i}" for i in range(n_nodes)]
    moves = [
        {
            "from": node,
            "to": nodes[rng.integers(n_nodes)],
            "duration": int(rng.integers(1, max_duration + 1)),
        }
        for node in nodes
        for _ in range(int(rng.integers(0, 3)))
    ]
    return CountdownGame(
        nodes=nodes,
        moves=moves,
        initial={"node": nodes[0], "budget": int(rng.integers(1, max_budget + 1))},
    )
