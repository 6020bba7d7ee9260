"""Home to the ``atgames`` command-line interface.

Exit codes: 0 on success, 1 for malformed input or a failed check, 2 when a resource cap is hit
or a strategy is undefined.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel as PydanticBaseModel, ConfigDict, Field, field_validator
from tabulate import tabulate

from .automaton import Configuration, TimedGameAutomaton, validate
from .average_time_game import extract_boundary_strategy, solve_average_time
from .boundary_graph import DEFAULT_VERTEX_CAP, explore
from .clocks import as_rational
from .countdown import cross_validate, dp_solve, reduce
from .data_reader import get_data_reader
from .errors import SolverError
from .example_objects import random_countdown_game, random_mean_payoff_game
from .export import (
    automaton_to_dict,
    brg_to_dict,
    brg_to_dot,
    configuration_to_dict,
    countdown_report_to_dict,
    countdown_solution_to_dict,
    countdown_to_dict,
    dumps_json,
    mpg_to_dot,
    rational_to_str,
    solution_to_dict,
    strategy_to_dict,
    trace_to_dict,
    values_to_dict,
    write_lines,
)
from .mpg_solver import brute_force_solve, solve, verify
from .simulation import regional_constancy_probe, simulate
from .strategies import epsilon_close

Format = Literal["json", "dot", "text"]

_DEFAULT_FORMATS = {
    "brg": "dot",
    "countdown reduce": "json",
    "countdown cross-validate": "json",
    "mpg solve": "json",
    "mpg brute": "json",
}


class CommandConfig(PydanticBaseModel):
    """Options of one CLI invocation, checked before anything is read or solved."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    subcommand: Optional[str] = None
    input: Optional[str] = None
    """Path of the input file"""
    out: Optional[str] = None
    """Output path; stdout if not given"""
    format: Optional[Format] = None
    cap: int = Field(DEFAULT_VERTEX_CAP, gt=0)
    """Vertex cap of the boundary region graph"""
    horizon: Optional[int] = Field(None, gt=0)
    """Override of the value iteration horizon"""
    seed: int = 0
    state: Optional[str] = None
    """Start state ``loc:c1=1/2,c2=0``"""
    bound: Optional[Fraction] = None
    eps: Optional[Fraction] = None
    eps_player: Literal["min", "max"] = "min"
    steps: int = Field(100, gt=0)
    samples: int = Field(3, gt=0)
    wait: Optional[int] = Field(None, gt=0)
    random: Optional[int] = Field(None, gt=0)
    """Number of seeded random instances to use instead of an input file"""
    solution: Optional[str] = None

    @field_validator("bound", "eps", mode="before")
    @classmethod
    def parse_rational(cls, value):
        return None if value is None else as_rational(value)

    @field_validator("eps")
    @classmethod
    def eps_is_positive(cls, value):
        if value is not None and value <= 0:
            raise ValueError(f"ε must be positive, got {value}.")
        return value

    @property
    def name(self) -> str:
        return self.command if self.subcommand is None else f"{self.command} {self.subcommand}"

    @property
    def output_format(self) -> Format:
        return self.format or _DEFAULT_FORMATS.get(self.name, "text")

    def require_input(self) -> str:
        if self.input is None:
            raise ValueError(f"'{self.name}' needs an input file.")
        return self.input


def parse_state(automaton: TimedGameAutomaton, text: str) -> Configuration:
    """Read ``loc:c1=1/2,c2=0``; clocks not mentioned are 0."""
    location, _, assignments = text.partition(":")
    values = {clock: 0 for clock in automaton.clocks}
    for assignment in filter(None, (part.strip() for part in assignments.split(","))):
        clock, separator, value = assignment.partition("=")
        if not separator:
            raise ValueError(f"Cannot read clock assignment '{assignment}' in state '{text}'.")
        if clock.strip() not in values:
            raise ValueError(f"Unknown clock '{clock.strip()}' in state '{text}'.")
        values[clock.strip()] = value.strip()
    return automaton.configuration(location.strip(), values)


def _read_automaton(config: CommandConfig) -> tuple[TimedGameAutomaton, Optional[Configuration]]:
    path = config.require_input()
    automaton = get_data_reader(path).read_automaton(path)
    start = parse_state(automaton, config.state) if config.state else None
    return automaton, start


def _emit(config: CommandConfig, output):
    """Write a dict or list as JSON, or an iterable of lines as text."""
    if isinstance(output, (dict, list)):
        lines = [dumps_json(output)]
    elif isinstance(output, str):
        lines = [output if output.endswith("\n") else output + "\n"]
    else:
        lines = list(output)
    if config.out:
        write_lines(lines, config.out)
    else:
        sys.stdout.writelines(lines)


def cmd_validate(config: CommandConfig) -> int:
    path = config.require_input()
    report = validate(get_data_reader(path).read_automaton(path))
    if config.output_format == "json":
        _emit(config, {"valid": report.is_valid, "violations": report.violations})
    else:
        _emit(config, str(report))
    return 0 if report.is_valid else 1


def cmd_solve(config: CommandConfig) -> int:
    automaton, start = _read_automaton(config)
    solved = solve_average_time(automaton, start, cap=config.cap, horizon=config.horizon)
    decision = None if config.bound is None else solved.value <= config.bound
    if config.output_format == "json":
        output = {
            "initial": configuration_to_dict(solved.initial),
            "value": rational_to_str(solved.value),
            "vertices": len(solved.graph.vertices),
            "min_strategy": strategy_to_dict(extract_boundary_strategy(solved, "min")),
            "max_strategy": strategy_to_dict(extract_boundary_strategy(solved, "max")),
        }
        if decision is not None:
            output["bound"] = rational_to_str(config.bound)
            output["decision"] = decision
        _emit(config, output)
    elif decision is not None:
        _emit(config, "YES" if decision else "NO")
    else:
        _emit(config, str(solved))
    return 0


def cmd_brg(config: CommandConfig) -> int:
    automaton, start = _read_automaton(config)
    graph = explore(automaton, start, cap=config.cap)
    if config.output_format == "dot":
        _emit(config, brg_to_dot(graph))
    elif config.output_format == "json":
        _emit(config, brg_to_dict(graph))
    else:
        rows = [
            [edge.source, edge.target, rational_to_str(edge.move.delay), edge.move.label]
            for edge in graph.edges
        ]
        table = tabulate(rows, headers=["from", "to", "t", "move"])
        _emit(config, f"{graph}\n{table}")
    return 0


def cmd_simulate(config: CommandConfig) -> int:
    automaton, start = _read_automaton(config)
    solved = solve_average_time(automaton, start, cap=config.cap, horizon=config.horizon)
    strategies = {
        player: extract_boundary_strategy(solved, player) for player in ["min", "max"]
    }
    if config.eps is not None:
        strategies[config.eps_player] = epsilon_close(strategies[config.eps_player], config.eps)
    result = simulate(
        automaton, solved.initial, strategies["min"], strategies["max"], config.steps
    )
    if config.output_format == "json":
        _emit(
            config,
            {
                "value": rational_to_str(solved.value),
                "average": rational_to_str(result.average),
                "trace": trace_to_dict(result),
            },
        )
    else:
        rows = [
            ["value", rational_to_str(solved.value)],
            ["steps", config.steps],
            ["average", rational_to_str(result.average)],
            ["transient bound", rational_to_str(solved.transient_bound)],
        ]
        _emit(config, tabulate(rows, tablefmt="plain"))
    return 0


def cmd_probe(config: CommandConfig) -> int:
    automaton, start = _read_automaton(config)
    solved = solve_average_time(automaton, start, cap=config.cap, horizon=config.horizon)
    results = []
    for region in solved.graph.regions():
        values = regional_constancy_probe(
            automaton, region, samples=config.samples, cap=config.cap, horizon=config.horizon
        )
        results.append((region, values))
    if config.output_format == "json":
        _emit(
            config,
            [
                {
                    "region": str(region),
                    "values": [rational_to_str(value) for value in values],
                    "constant": len(set(values)) == 1,
                }
                for region, values in results
            ],
        )
    else:
        rows = [
            [str(region), ", ".join(rational_to_str(v) for v in values), len(set(values)) == 1]
            for region, values in results
        ]
        _emit(config, tabulate(rows, headers=["region", "values", "constant"]))
    return 0


def cmd_countdown(config: CommandConfig) -> int:
    if config.random is not None:
        if config.subcommand != "cross-validate":
            raise ValueError("--random is only supported by 'countdown cross-validate'.")
        rng = np.random.default_rng(config.seed)
        games = [random_countdown_game(rng) for _ in range(config.random)]
    else:
        path = config.require_input()
        games = [get_data_reader(path).read_countdown(path)]

    if config.subcommand == "solve":
        solution = dp_solve(games[0])
        initial = games[0].initial
        if config.output_format == "json":
            _emit(config, countdown_solution_to_dict(solution))
        else:
            _emit(config, f"player {solution.winner(initial.node, initial.budget)}")
    elif config.subcommand == "reduce":
        automaton = reduce(games[0], config.wait)
        _emit(config, automaton_to_dict(automaton))
    else:
        reports = [cross_validate(game, config.wait, cap=config.cap) for game in games]
        if config.output_format == "json":
            output = [
                {"game": countdown_to_dict(game)} | countdown_report_to_dict(report)
                for game, report in zip(games, reports)
            ]
            _emit(config, output if config.random is not None else output[0])
        else:
            _emit(config, "\n".join(str(report) for report in reports))
    return 0


def cmd_mpg(config: CommandConfig) -> int:
    if config.subcommand == "verify":
        path = config.require_input()
        if config.solution is None:
            raise ValueError("'mpg verify' needs --solution.")
        game = get_data_reader(path).read_game(path)
        solution = get_data_reader(config.solution).read_solution(config.solution)
        passed = verify(game, solution.values, solution.min_strategy, solution.max_strategy)
        _emit(config, "PASS" if passed else "FAIL")
        return 0 if passed else 1

    if config.random is not None:
        rng = np.random.default_rng(config.seed)
        games = [random_mean_payoff_game(rng) for _ in range(config.random)]
        if config.subcommand == "solve":
            values = [solve(game, horizon=config.horizon).values for game in games]
        else:
            values = [brute_force_solve(game) for game in games]
        _emit(
            config,
            [{"index": i, "values": values_to_dict(v)} for i, v in enumerate(values)],
        )
        return 0

    path = config.require_input()
    game = get_data_reader(path).read_game(path)
    if config.subcommand == "brute":
        values = brute_force_solve(game)
        if config.output_format == "json":
            _emit(config, {"values": values_to_dict(values)})
        else:
            rows = list(values_to_dict(values).items())
            _emit(config, tabulate(rows, headers=["vertex", "value"]))
        return 0

    solution = solve(game, horizon=config.horizon)
    if config.output_format == "json":
        _emit(config, solution_to_dict(solution))
    elif config.output_format == "dot":
        strategies = (solution.min_strategy, solution.max_strategy)
        _emit(config, mpg_to_dot(game, solution.values, strategies))
    else:
        choices = solution.min_strategy.choices | solution.max_strategy.choices
        rows = [
            [vertex_id, game.owner(vertex_id), rational_to_str(value), choices.get(vertex_id)]
            for vertex_id, value in solution.values.items()
        ]
        _emit(config, tabulate(rows, headers=["vertex", "owner", "value", "edge"]))
    return 0


_COMMANDS = {
    "validate": cmd_validate,
    "solve": cmd_solve,
    "brg": cmd_brg,
    "simulate": cmd_simulate,
    "probe": cmd_probe,
    "countdown": cmd_countdown,
    "mpg": cmd_mpg,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP, help="Vertex cap.")
    common.add_argument("--seed", type=int, default=0, help="Seed for random instances.")
    common.add_argument("--out", help="Write the output to this file instead of stdout.")
    common.add_argument("--format", choices=["json", "dot", "text"], help="Output format.")
    common.add_argument("--horizon", type=int, help="Override the value iteration horizon.")
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug messages.")

    automaton = argparse.ArgumentParser(add_help=False, parents=[common])
    automaton.add_argument("input", help="Automaton file (.json, .yml or .yaml).")
    automaton.add_argument("--state", help="Start state, e.g. 'l:c1=1/2,c2=0'.")

    parser = argparse.ArgumentParser(
        prog="atgames", description="Solve average-time games on timed automata."
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("validate", parents=[common], help="Check an automaton.").add_argument(
        "input", help="Automaton file (.json, .yml or .yaml)."
    )
    solve_parser = commands.add_parser("solve", parents=[automaton], help="Solve a game.")
    solve_parser.add_argument("--bound", help="Decide whether the value is at most this bound.")
    commands.add_parser("brg", parents=[automaton], help="Dump the boundary region graph.")
    simulate_parser = commands.add_parser(
        "simulate", parents=[automaton], help="Simulate optimal strategies."
    )
    simulate_parser.add_argument("--steps", type=int, default=100)
    simulate_parser.add_argument("--eps", help="Play the ε-close strategy with this ε.")
    simulate_parser.add_argument("--eps-player", choices=["min", "max"], default="min")
    probe_parser = commands.add_parser(
        "probe", parents=[automaton], help="Compare values of sampled states per region."
    )
    probe_parser.add_argument("--samples", type=int, default=3)

    countdown = commands.add_parser("countdown", help="Countdown games.")
    countdown_commands = countdown.add_subparsers(dest="subcommand", required=True)
    for name in ["solve", "reduce", "cross-validate"]:
        sub = countdown_commands.add_parser(name, parents=[common])
        sub.add_argument("input", nargs="?", help="Countdown game file.")
        sub.add_argument("--wait", type=int, help="Waiting time W of the reduction.")
        sub.add_argument("--random", type=int, help="Use this many seeded random games.")

    mpg = commands.add_parser("mpg", help="Mean-payoff games.")
    mpg_commands = mpg.add_subparsers(dest="subcommand", required=True)
    for name in ["solve", "brute", "verify"]:
        sub = mpg_commands.add_parser(name, parents=[common])
        sub.add_argument("input", nargs="?", help="Mean-payoff game file.")
        sub.add_argument("--random", type=int, help="Use this many seeded random games.")
        sub.add_argument("--solution", help="Solution file to verify.")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s: %(message)s"
    )
    options = {key: value for key, value in vars(args).items() if value is not None}
    try:
        config = CommandConfig(**options)
        return _COMMANDS[config.command](config)
    except SolverError as error:
        print(f"Error: {error}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, OSError) as error:
        print(f"Error: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
