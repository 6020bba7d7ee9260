"""Home to bounded timed game automata and their concrete semantics.

Specific games are given as :py:class:`TimedGameAutomaton` objects, usually read from a JSON or
YAML file via :py:mod:`atgames.data_reader`.
"""

import logging
from fractions import Fraction
from typing import Literal, Optional, Union

from pydantic import BaseModel as PydanticBaseModel, ConfigDict, Field, PrivateAttr
from pydantic import ValidationInfo, field_validator, model_validator

from .clocks import ClockValuation, Zone, as_rational, as_zone
from .errors import LeftStateZone, NotEnabled, TargetOutsideS
from .regions import (
    ClockRegion,
    Region,
    action_successor,
    clock_region_in_zone,
    enumerate_regions,
    iter_future,
    region_of,
    time_successor,
)

Owner = Literal["min", "max"]


class Location(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    owner: Owner
    """The player who moves in this location"""
    state_constraint: Zone = Zone()
    """The part of the state zone S at this location"""

    @field_validator("state_constraint", mode="before")
    @classmethod
    def parse_state_constraint(cls, value):
        return as_zone(value)


class Action(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    resets: frozenset[str] = frozenset()
    """Clocks set to zero when the action fires"""
    enabled: dict[str, Zone] = {}
    """Enabledness zone per location; locations not listed use ``true``"""
    delta: dict[str, str] = {}
    """Target location per source location"""

    @field_validator("enabled", mode="before")
    @classmethod
    def parse_enabled(cls, value):
        return {location: as_zone(zone) for location, zone in dict(value).items()}


class Configuration(PydanticBaseModel):
    """A location together with a clock valuation."""

    model_config = ConfigDict(frozen=True)

    location: str
    valuation: ClockValuation

    def __str__(self):
        return f"({self.location}, {self.valuation})"


class TimedAction(PydanticBaseModel):
    """Wait ``delay`` time units, then fire ``action``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    delay: Fraction
    action: str

    @field_validator("delay", mode="before")
    @classmethod
    def delay_is_rational(cls, value):
        return as_rational(value)

    @model_validator(mode="after")
    def delay_non_negative(self):
        if self.delay < 0:
            raise ValueError(f"Delays must be non-negative, got {self.delay}.")
        return self


class TimedGameAutomaton(PydanticBaseModel):
    """A k-bounded timed automaton whose locations are split between players Min and Max.

    **Example**

        >>> from atgames import TimedGameAutomaton
        >>> automaton = TimedGameAutomaton(
        >>>     clocks=["c"],
        >>>     bound=1,
        >>>     locations=[{"name": "l", "owner": "min"}],
        >>>     actions=[
        >>>         {"name": "a", "resets": ["c"], "enabled": {"l": "c=1"}, "delta": {"l": "l"}}
        >>>     ],
        >>> )

    Structural mistakes (unknown names, duplicates) are rejected on construction. Semantic
    requirements (total δ, constants within the bound, availability of moves) are checked by
    :py:func:`validate`, which reports instead of raising.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    clocks: list[str] = Field(..., min_length=1)
    """Clock names"""
    bound: int = Field(..., gt=0)
    """The clock bound k"""
    locations: list[Location] = Field(..., min_length=1)
    actions: list[Action] = Field(..., min_length=1)
    initial: Optional[Configuration] = None
    """Optional start configuration"""

    _locations: dict[str, Location] = PrivateAttr(default_factory=dict)
    _actions: dict[str, Action] = PrivateAttr(default_factory=dict)

    @field_validator("initial", mode="before")
    @classmethod
    def parse_initial(cls, value, info: ValidationInfo):
        if value is None or isinstance(value, Configuration):
            return value
        if "bound" not in info.data:
            return value
        valuation = value.get("valuation", {})
        if isinstance(valuation, dict) and set(valuation) == {"values", "bound"}:
            valuation = ClockValuation.model_validate(valuation)
        if not isinstance(valuation, ClockValuation):
            valuation = ClockValuation(values=valuation, bound=info.data["bound"])
        return Configuration(location=value["location"], valuation=valuation)

    @model_validator(mode="after")
    def names_are_unique(self):
        for kind, names in [
            ("clock", self.clocks),
            ("location", [location.name for location in self.locations]),
            ("action", [action.name for action in self.actions]),
        ]:
            duplicates = sorted({name for name in names if names.count(name) > 1})
            if duplicates:
                raise ValueError(f"Duplicate {kind} names: {duplicates}")
        return self

    @model_validator(mode="after")
    def names_are_known(self):
        clocks = set(self.clocks)
        locations = {location.name for location in self.locations}
        for location in self.locations:
            unknown = location.state_constraint.clocks - clocks
            if unknown:
                raise ValueError(
                    f"State constraint of {location.name} uses unknown clocks {unknown}"
                )
        for action in self.actions:
            if not action.resets <= clocks:
                unknown = set(action.resets - clocks)
                raise ValueError(f"Action {action.name} resets unknown clocks {unknown}")
            for location, zone in action.enabled.items():
                if location not in locations:
                    raise ValueError(
                        f"Action {action.name} is enabled at unknown location {location}"
                    )
                if not zone.clocks <= clocks:
                    raise ValueError(
                        f"Guard of {action.name} at {location} uses unknown clocks "
                        f"{zone.clocks - clocks}"
                    )
            for source, target in action.delta.items():
                if source not in locations or target not in locations:
                    raise ValueError(
                        f"Transition {source} -{action.name}-> {target} uses an unknown location"
                    )
        if self.initial is not None:
            if self.initial.location not in locations:
                raise ValueError(f"Initial location {self.initial.location} is unknown")
            if set(self.initial.valuation.clocks) != clocks:
                raise ValueError("The initial valuation must assign every clock exactly once.")
            if self.initial.valuation.bound != self.bound:
                raise ValueError("The initial valuation must use the automaton's bound.")
        return self

    def model_post_init(self, __context):
        self._locations = {location.name: location for location in self.locations}
        self._actions = {action.name: action for action in self.actions}

    @property
    def location_names(self) -> list[str]:
        return [location.name for location in self.locations]

    @property
    def action_names(self) -> list[str]:
        return [action.name for action in self.actions]

    def location(self, name: str) -> Location:
        try:
            return self._locations[name]
        except KeyError:
            raise ValueError(f"Unknown location '{name}'.") from None

    def action(self, name: str) -> Action:
        try:
            return self._actions[name]
        except KeyError:
            raise ValueError(f"Unknown action '{name}'.") from None

    def owner(self, location: str) -> Owner:
        return self.location(location).owner

    def state_zone(self, location: str) -> Zone:
        return self.location(location).state_constraint

    def enabled_zone(self, action: str, location: str) -> Zone:
        return self.action(action).enabled.get(location, Zone.true())

    def target(self, location: str, action: str) -> Optional[str]:
        return self.action(action).delta.get(location)

    def configuration(
        self, location: str, valuation: dict[str, Union[Fraction, int, str]]
    ) -> Configuration:
        """Build a configuration of this automaton from plain values."""
        self.location(location)
        return Configuration(
            location=location, valuation=ClockValuation(values=valuation, bound=self.bound)
        )

    def zero_configuration(self, location: str) -> Configuration:
        return self.configuration(location, {clock: 0 for clock in self.clocks})

    def __str__(self):
        return (
            f"TimedGameAutomaton with {len(self.locations)} locations, {len(self.clocks)} clocks "
            f"(k={self.bound}) and {len(self.actions)} actions"
        )


class RunStep(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    timed_action: TimedAction
    configuration: Configuration
    """The configuration reached by the step"""


class Run(PydanticBaseModel):
    """A finite run: an initial configuration followed by timed transitions."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    initial: Configuration
    steps: tuple[RunStep, ...] = ()
    time: Fraction = Fraction(0)
    """Sum of all delays"""

    @field_validator("time", mode="before")
    @classmethod
    def time_is_rational(cls, value):
        return as_rational(value)

    @model_validator(mode="after")
    def time_is_sum_of_delays(self):
        total = sum((step.timed_action.delay for step in self.steps), Fraction(0))
        if total != self.time:
            raise ValueError(f"Run time {self.time} differs from the sum of delays {total}.")
        return self

    @classmethod
    def from_steps(cls, initial: Configuration, steps: list[RunStep]) -> "Run":
        total = sum((step.timed_action.delay for step in steps), Fraction(0))
        return cls(initial=initial, steps=tuple(steps), time=total)

    @classmethod
    def from_timed_actions(
        cls,
        automaton: TimedGameAutomaton,
        initial: Configuration,
        timed_actions: list[TimedAction],
    ) -> "Run":
        """Replay timed actions from a configuration, checking every transition."""
        steps = []
        configuration = initial
        for timed_action in timed_actions:
            configuration = timed_succ(configuration, timed_action, automaton)
            steps.append(RunStep(timed_action=timed_action, configuration=configuration))
        return cls.from_steps(initial, steps)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def last(self) -> Configuration:
        return self.steps[-1].configuration if self.steps else self.initial

    @property
    def average(self) -> Fraction:
        """Time per step."""
        if not self.steps:
            raise ValueError("The average time of an empty run is undefined.")
        return self.time / self.length

    def concatenate(self, other: "Run") -> "Run":
        if other.initial != self.last:
            raise ValueError(
                f"Cannot append a run starting in {other.initial} to one ending in {self.last}."
            )
        return Run(
            initial=self.initial, steps=self.steps + other.steps, time=self.time + other.time
        )


class ValidationReport(PydanticBaseModel):
    violations: list[str] = []

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def raise_if_invalid(self):
        if self.violations:
            raise ValueError("Invalid automaton:\n" + "\n".join(self.violations))

    def __str__(self):
        if self.is_valid:
            return "valid"
        return "invalid\n" + "\n".join(f"- {violation}" for violation in self.violations)


def _has_legal_move(region: Region, automaton: TimedGameAutomaton) -> bool:
    return any(
        action_successor(later, action, automaton) is not None
        for later in iter_future(region, automaton)
        for action in automaton.action_names
    )


def validate(automaton: TimedGameAutomaton) -> ValidationReport:
    """Check that δ is total, that all constants are at most k and that every region of S has a
    legal timed action.

    Args:
        automaton (TimedGameAutomaton): The automaton to check.

    Returns:
        ValidationReport: All violations found; the automaton is valid iff there are none.
    """
    violations = []
    for action in automaton.actions:
        for location in automaton.location_names:
            if location not in action.delta:
                violations.append(f"δ not total: no target for ({location}, {action.name})")

    zones = [
        (f"S at {location.name}", location.state_constraint) for location in automaton.locations
    ]
    zones += [
        (f"E({action.name}) at {location}", zone)
        for action in automaton.actions
        for location, zone in action.enabled.items()
    ]
    for description, zone in zones:
        for constraint in zone.constraints:
            if constraint.bound > automaton.bound:
                violations.append(
                    f"constant exceeds bound: {constraint} in {description} (k={automaton.bound})"
                )

    if violations:
        # region checks need a total δ and in-range constants
        return _report(automaton, violations)

    clock_regions = list(enumerate_regions(automaton.clocks, automaton.bound))
    regions_in_s = [
        Region(location=location.name, clock_region=clock_region)
        for location in automaton.locations
        for clock_region in clock_regions
        if clock_region_in_zone(clock_region, location.state_constraint)
    ]
    if not regions_in_s:
        violations.append("state zone S is empty")
    for region in regions_in_s:
        if not _has_legal_move(region, automaton):
            violations.append(f"no legal timed action from region {region}")
    return _report(automaton, violations)


def _report(automaton: TimedGameAutomaton, violations: list[str]) -> ValidationReport:
    if violations:
        logging.warning(f"{automaton} has {len(violations)} violation(s)")
    else:
        logging.info(f"Success - {automaton} is valid")
    return ValidationReport(violations=violations)


def delay(
    configuration: Configuration,
    time: Union[Fraction, int, str],
    automaton: TimedGameAutomaton,
) -> Configuration:
    """Let time pass in a configuration.

    Every point passed must stay in S. This is checked exactly by walking the region chain from
    the start region to the region of the end point.

    Raises:
        BoundExceeded: If some clock would pass k.
        LeftStateZone: If a region on the way lies outside S.
    """
    valuation = configuration.valuation.advanced_by(time)
    state_zone = automaton.state_zone(configuration.location)
    clock_region: Optional[ClockRegion] = region_of(configuration.valuation)
    end = region_of(valuation)
    while True:
        if clock_region is None or not clock_region_in_zone(clock_region, state_zone):
            raise LeftStateZone(
                f"Waiting {time} in {configuration} leaves the state zone {state_zone}."
            )
        if clock_region == end:
            break
        clock_region = time_successor(clock_region)
    return Configuration(location=configuration.location, valuation=valuation)


def apply_action(
    configuration: Configuration, action: str, automaton: TimedGameAutomaton
) -> Configuration:
    """Fire an action without delay.

    Raises:
        LeftStateZone: If the configuration is not in S.
        NotEnabled: If the guard does not hold or δ has no entry.
        TargetOutsideS: If the successor is not in S.
    """
    location, valuation = configuration.location, configuration.valuation
    if not automaton.state_zone(location).holds(valuation):
        raise LeftStateZone(f"{configuration} is outside the state zone.")
    if not automaton.enabled_zone(action, location).holds(valuation):
        raise NotEnabled(
            f"Action {action} is not enabled in {configuration} "
            f"(guard {automaton.enabled_zone(action, location)})."
        )
    target = automaton.target(location, action)
    if target is None:
        raise NotEnabled(f"δ has no entry for ({location}, {action}).")
    successor = Configuration(
        location=target, valuation=valuation.reset(automaton.action(action).resets)
    )
    if not automaton.state_zone(target).holds(successor.valuation):
        raise TargetOutsideS(
            f"Action {action} leads from {configuration} outside S to {successor}."
        )
    return successor


def timed_succ(
    configuration: Configuration, timed_action: TimedAction, automaton: TimedGameAutomaton
) -> Configuration:
    """Delay, then fire the action."""
    waited = delay(configuration, timed_action.delay, automaton)
    return apply_action(waited, timed_action.action, automaton)
