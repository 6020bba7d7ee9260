"""Home to simulation of strategy pairs and to the probes built on it.

Simulation follows boundary semantics: each step applies the delay and action chosen by the
strategy of the player owning the current location and records the region the move lands in.
"""

import logging
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel as PydanticBaseModel, ConfigDict

from .automaton import Configuration, Run, RunStep, TimedAction, TimedGameAutomaton
from .average_time_game import solve_average_time
from .boundary_graph import DEFAULT_VERTEX_CAP
from .errors import NotSimple
from .regions import Region, region_of, representatives
from .strategies import BoundaryStrategy, EpsilonStrategy, SimpleFunction

Strategy = Union[BoundaryStrategy, EpsilonStrategy]


class SimulationResult(PydanticBaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    run: Run
    regions: list[Region]
    """The region of the start configuration, then the region reached by every step"""
    running_averages: list[Fraction]
    """Average time per step after each step"""

    @property
    def average(self) -> Fraction:
        return self.run.average


def simulate(
    automaton: TimedGameAutomaton,
    start: Configuration,
    min_strategy: Strategy,
    max_strategy: Strategy,
    steps: int,
) -> SimulationResult:
    """Play a strategy pair for a number of steps from a start configuration.

    Raises:
        StrategyUndefined: If the moving player's strategy has no choice in a reached state.
    """
    if steps < 1:
        raise ValueError("Simulate at least one step.")
    strategies = {"min": min_strategy, "max": max_strategy}
    configuration = start
    region = Region(location=start.location, clock_region=region_of(start.valuation))
    regions = [region]
    run_steps = []
    running_averages = []
    total = Fraction(0)
    for step in range(1, steps + 1):
        strategy = strategies[automaton.owner(configuration.location)]
        choice = strategy.choose(automaton, configuration, region)
        valuation = configuration.valuation.advanced_by(choice.delay).reset(
            automaton.action(choice.action).resets
        )
        configuration = Configuration(location=choice.landing.location, valuation=valuation)
        region = choice.landing
        total += choice.delay
        run_steps.append(
            RunStep(
                timed_action=TimedAction(delay=choice.delay, action=choice.action),
                configuration=configuration,
            )
        )
        regions.append(region)
        running_averages.append(total / step)
    run = Run(initial=start, steps=tuple(run_steps), time=total)
    logging.debug(f"Simulated {steps} steps from {start}: average {run.average}")
    return SimulationResult(run=run, regions=regions, running_averages=running_averages)


def sample_states(region: Region, count: int) -> list[Configuration]:
    """Rational configurations inside a region (a single one if all clocks are integer)."""
    return [
        Configuration(location=region.location, valuation=valuation)
        for valuation in representatives(region.clock_region, count)
    ]


def regional_constancy_probe(
    automaton: TimedGameAutomaton,
    region: Region,
    samples: int = 3,
    cap: int = DEFAULT_VERTEX_CAP,
    horizon: Optional[int] = None,
) -> list[Fraction]:
    """Game values from sampled configurations of one region; they are expected to agree."""
    return [
        solve_average_time(automaton, state, cap=cap, horizon=horizon, check=False).value
        for state in sample_states(region, samples)
    ]


def simple_time_probe(
    automaton: TimedGameAutomaton,
    min_strategy: Strategy,
    max_strategy: Strategy,
    region: Region,
    steps: int,
    samples: int = 3,
) -> SimpleFunction:
    """Fit the total time of ``steps`` steps from sampled states of a region to ``e`` or
    ``e - s(c)``.

    Raises:
        NotSimple: If no such function fits.
    """
    states = sample_states(region, samples)
    totals = [
        simulate(automaton, state, min_strategy, max_strategy, steps).run.time for state in states
    ]
    if len(set(totals)) == 1 and totals[0].denominator == 1:
        return SimpleFunction(constant=int(totals[0]))
    for clock in automaton.clocks:
        shifted = {total + state.valuation[clock] for total, state in zip(totals, states)}
        if len(shifted) == 1:
            constant = shifted.pop()
            if constant.denominator == 1:
                return SimpleFunction(constant=int(constant), clock=clock)
    raise NotSimple(f"Total times {[str(t) for t in totals]} from {region} are not simple.")
