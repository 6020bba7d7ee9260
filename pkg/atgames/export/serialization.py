"""Plain-dict renderings of atgames objects, readable without atgames.

Rationals are rendered as ``"p/q"`` strings and keys are inserted in a fixed order, so that
dumping the same object twice gives identical JSON.
"""

from ..automaton import Configuration, TimedGameAutomaton
from ..boundary_graph import BoundaryRegionGraph, BrgConfig
from ..clocks import ClockValuation
from ..countdown import CountdownGame, CountdownSolution, CrossValidationReport
from ..mean_payoff_game import MeanPayoffGame, PositionalStrategy
from ..mpg_solver import MpgSolution
from ..simulation import SimulationResult
from ..strategies import BoundaryStrategy
from .helper import rational_to_str


def valuation_to_dict(valuation: ClockValuation) -> dict:
    return {clock: rational_to_str(valuation[clock]) for clock in sorted(valuation.clocks)}


def configuration_to_dict(configuration: Configuration) -> dict:
    return {
        "location": configuration.location,
        "valuation": valuation_to_dict(configuration.valuation),
    }


def automaton_to_dict(automaton: TimedGameAutomaton) -> dict:
    """The automaton in the same schema the data readers accept."""
    out = {
        "clocks": list(automaton.clocks),
        "bound": automaton.bound,
        "locations": [
            {
                "name": location.name,
                "owner": location.owner,
                "state_constraint": str(location.state_constraint),
            }
            for location in automaton.locations
        ],
        "actions": [
            {
                "name": action.name,
                "resets": sorted(action.resets),
                "enabled": {location: str(zone) for location, zone in action.enabled.items()},
                "delta": dict(action.delta),
            }
            for action in automaton.actions
        ],
    }
    if automaton.initial is not None:
        out["initial"] = configuration_to_dict(automaton.initial)
    return out


def brg_vertex_to_dict(vertex_id: int, vertex: BrgConfig) -> dict:
    return {
        "id": vertex_id,
        "location": vertex.location,
        "valuation": valuation_to_dict(vertex.valuation),
        "region": str(vertex.region.clock_region),
    }


def brg_to_dict(graph: BoundaryRegionGraph) -> dict:
    return {
        "initial": graph.initial,
        "vertices": [
            brg_vertex_to_dict(vertex_id, vertex) for vertex_id, vertex in enumerate(graph.vertices)
        ],
        "edges": [
            {
                "id": edge_id,
                "source": edge.source,
                "target": edge.target,
                "delay": rational_to_str(edge.move.delay),
                "b": edge.move.bound,
                "clock": edge.move.clock,
                "via": str(edge.move.via.clock_region),
                "side": edge.move.side,
                "action": edge.move.action,
            }
            for edge_id, edge in enumerate(graph.edges)
        ],
    }


def mpg_to_dict(game: MeanPayoffGame) -> dict:
    return {
        "vertices": [{"id": vertex.id, "owner": vertex.owner} for vertex in game.vertices],
        "edges": [
            {"src": edge.src, "dst": edge.dst, "weight": edge.weight} for edge in game.edges
        ],
    }


def positional_strategy_to_list(strategy: PositionalStrategy) -> list[dict]:
    return [
        {"vertex": vertex_id, "edge": edge_id}
        for vertex_id, edge_id in sorted(strategy.choices.items(), key=lambda item: str(item[0]))
    ]


def values_to_dict(values: dict) -> dict:
    return {str(vertex_id): rational_to_str(value) for vertex_id, value in values.items()}


def solution_to_dict(solution: MpgSolution) -> dict:
    return {
        "values": values_to_dict(solution.values),
        "min_strategy": positional_strategy_to_list(solution.min_strategy),
        "max_strategy": positional_strategy_to_list(solution.max_strategy),
        "iterations": solution.iterations,
    }


def strategy_to_dict(strategy: BoundaryStrategy) -> dict:
    """Vertex id to the boundary timed action ``{b, clock, action, via_region}``."""
    return {
        str(vertex_id): {
            "b": boundary_action.bound,
            "clock": boundary_action.clock,
            "action": boundary_action.action,
            "via_region": str(boundary_action.via.clock_region),
        }
        for vertex_id, boundary_action in sorted(strategy.choices.items())
    }


def trace_to_dict(result: SimulationResult) -> list[dict]:
    """One entry per step: the state reached, the delay and action taken, and the running
    average."""
    return [
        {
            "state": configuration_to_dict(step.configuration),
            "delay": rational_to_str(step.timed_action.delay),
            "action": step.timed_action.action,
            "running_average": rational_to_str(average),
        }
        for step, average in zip(result.run.steps, result.running_averages)
    ]


def countdown_to_dict(game: CountdownGame) -> dict:
    return {
        "nodes": list(game.nodes),
        "moves": [
            {"from": move.source, "to": move.target, "duration": move.duration}
            for move in game.moves
        ],
        "initial": {"node": game.initial.node, "budget": game.initial.budget},
    }


def countdown_solution_to_dict(solution: CountdownSolution) -> dict:
    return {
        "budget": solution.budget,
        "winners": {
            f"{node},{budget}": winner for (node, budget), winner in solution.winners.items()
        },
        "choices": {
            f"{node},{budget}": duration for (node, budget), duration in solution.choices.items()
        },
    }


def countdown_report_to_dict(report: CrossValidationReport) -> dict:
    return {
        "value": rational_to_str(report.value),
        "winner": report.winner,
        "wait": report.wait,
        "correspondence": report.correspondence,
    }
