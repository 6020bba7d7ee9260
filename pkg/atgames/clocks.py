"""Home to clock valuations, simple clock constraints and zones.

All clock values are exact rationals. Floats are refused on input since guards such as ``c=1``
have to be compared exactly.
"""

import operator
import re
from fractions import Fraction
from math import floor, lcm
from typing import Iterable, Literal, Optional, Union

from pydantic import BaseModel as PydanticBaseModel, ConfigDict, Field, field_validator
from pydantic import model_validator

from .errors import BoundExceeded, UnknownClock

Relation = Literal["<", "<=", "=", ">=", ">"]

RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}

_CONJUNCT = re.compile(
    r"^\s*(?P<clock>[A-Za-z_]\w*)\s*(?:-\s*(?P<other>[A-Za-z_]\w*)\s*)?"
    r"(?P<relation><=|>=|==|=|<|>)\s*(?P<bound>\d+)\s*$"
)


def as_rational(value: Union[Fraction, int, str]) -> Fraction:
    """Convert an int, a Fraction or a string such as ``"3/10"`` or ``"0.25"`` to a Fraction.

    Floats are refused, because their binary expansion is not what the user wrote.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(
            f"Expected an exact rational (int, Fraction or 'p/q' string), got {value!r}."
        )
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Cannot read '{value}' as a rational number.") from None
    raise TypeError(f"Expected an exact rational (int, Fraction or 'p/q' string), got {value!r}.")


class ClockValuation(PydanticBaseModel):
    """A k-bounded assignment of exact non-negative rationals to clocks.

    **Example**

        >>> from atgames import ClockValuation
        >>> nu = ClockValuation(values={"c1": "1/5", "c2": "1/2"}, bound=1)
        >>> nu.frac("c2")
        Fraction(1, 2)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: dict[str, Fraction]
    """Clock names mapped to their current values"""
    bound: int = Field(..., gt=0)
    """The clock bound k. No clock may exceed it."""

    @field_validator("values", mode="before")
    @classmethod
    def values_are_rational(cls, values):
        return {str(clock): as_rational(value) for clock, value in dict(values).items()}

    @model_validator(mode="after")
    def values_within_bound(self):
        for clock, value in self.values.items():
            if not 0 <= value <= self.bound:
                raise ValueError(
                    f"Value {value} of clock {clock} lies outside [0, {self.bound}]."
                )
        return self

    def __hash__(self):
        return hash((self.bound, tuple(sorted(self.values.items()))))

    @classmethod
    def zero(cls, clocks: Iterable[str], bound: int) -> "ClockValuation":
        return cls(values={clock: 0 for clock in clocks}, bound=bound)

    @property
    def clocks(self) -> list[str]:
        return list(self.values)

    def __getitem__(self, clock: str) -> Fraction:
        try:
            return self.values[clock]
        except KeyError:
            raise UnknownClock(f"Unknown clock '{clock}'.") from None

    def int_part(self, clock: str) -> int:
        return floor(self[clock])

    def frac(self, clock: str) -> Fraction:
        """The fractional part of the value of a clock."""
        return self[clock] - floor(self[clock])

    @property
    def is_corner(self) -> bool:
        """Whether all clock values are integers."""
        return all(value.denominator == 1 for value in self.values.values())

    @property
    def denominator(self) -> int:
        """The least common denominator of all clock values."""
        return lcm(1, *(value.denominator for value in self.values.values()))

    def advanced_by(self, delay: Union[Fraction, int, str]) -> "ClockValuation":
        """The valuation after letting ``delay`` time units pass.

        Raises:
            BoundExceeded: If some clock would pass the bound k.
        """
        delay = as_rational(delay)
        if delay < 0:
            raise ValueError(f"Delays must be non-negative, got {delay}.")
        values = {clock: value + delay for clock, value in self.values.items()}
        too_large = [clock for clock, value in values.items() if value > self.bound]
        if too_large:
            raise BoundExceeded(
                f"Delay {delay} pushes clock(s) {', '.join(too_large)} above the bound "
                f"{self.bound}."
            )
        return ClockValuation(values=values, bound=self.bound)

    def reset(self, clocks: Iterable[str]) -> "ClockValuation":
        resets = set(clocks)
        unknown = resets - set(self.values)
        if unknown:
            raise UnknownClock(f"Cannot reset unknown clock(s) {sorted(unknown)}.")
        values = {clock: 0 if clock in resets else value for clock, value in self.values.items()}
        return ClockValuation(values=values, bound=self.bound)

    def __str__(self):
        return ", ".join(f"{clock}={value}" for clock, value in self.values.items())


class SimpleConstraint(PydanticBaseModel):
    """A single clock constraint ``c REL n`` or difference constraint ``c - c' REL n``."""

    model_config = ConfigDict(frozen=True)

    clock: str
    """The (first) constrained clock"""
    other_clock: Optional[str] = None
    """For difference constraints, the clock subtracted from ``clock``"""
    relation: Relation
    bound: int = Field(..., ge=0)
    """The integer constant compared against"""

    @property
    def kind(self) -> Literal["single", "difference"]:
        return "single" if self.other_clock is None else "difference"

    @property
    def clocks(self) -> tuple[str, ...]:
        if self.other_clock is None:
            return (self.clock,)
        return (self.clock, self.other_clock)

    def holds(self, valuation: ClockValuation) -> bool:
        value = valuation[self.clock]
        if self.other_clock is not None:
            value -= valuation[self.other_clock]
        return RELATIONS[self.relation](value, self.bound)

    def __str__(self):
        lhs = self.clock if self.other_clock is None else f"{self.clock}-{self.other_clock}"
        return f"{lhs}{self.relation}{self.bound}"


class Zone(PydanticBaseModel):
    """A conjunction of simple constraints. The empty conjunction is true.

    Zones are read from strings such as ``"c<=1 && c1-c2>=0"``; ``"true"`` and ``"false"`` are
    accepted as well.
    """

    model_config = ConfigDict(frozen=True)

    constraints: tuple[SimpleConstraint, ...] = ()
    """The conjuncts"""
    is_false: bool = False
    """Set for the explicitly unsatisfiable zone"""

    @classmethod
    def true(cls) -> "Zone":
        return cls()

    @classmethod
    def false(cls) -> "Zone":
        return cls(is_false=True)

    @classmethod
    def parse(cls, text: str) -> "Zone":
        """Read a zone from the constraint grammar.

        Args:
            text (str): Conjuncts ``c REL n`` or ``c - c' REL n`` joined by ``&&``, with REL one of
                ``<, <=, =, >=, >``.

        Returns:
            Zone: The parsed zone.
        """
        constraints = []
        for conjunct in text.split("&&"):
            token = conjunct.strip()
            if token in ("", "true"):
                continue
            if token == "false":
                return cls.false()
            match = _CONJUNCT.match(token)
            if match is None:
                raise ValueError(f"Cannot parse clock constraint '{token}'.")
            relation = "=" if match["relation"] == "==" else match["relation"]
            constraints.append(
                SimpleConstraint(
                    clock=match["clock"],
                    other_clock=match["other"],
                    relation=relation,
                    bound=int(match["bound"]),
                )
            )
        return cls(constraints=tuple(constraints))

    @property
    def is_true(self) -> bool:
        return not self.is_false and not self.constraints

    @property
    def constants(self) -> list[int]:
        return [constraint.bound for constraint in self.constraints]

    @property
    def clocks(self) -> set[str]:
        return {clock for constraint in self.constraints for clock in constraint.clocks}

    def holds(self, valuation: ClockValuation) -> bool:
        if self.is_false:
            return False
        return all(constraint.holds(valuation) for constraint in self.constraints)

    def __str__(self):
        if self.is_false:
            return "false"
        if not self.constraints:
            return "true"
        return " && ".join(str(constraint) for constraint in self.constraints)


def as_zone(value: Union[Zone, str, None]) -> Zone:
    """Accept zones given as strings in input files."""
    if value is None:
        return Zone.true()
    if isinstance(value, str):
        return Zone.parse(value)
    return value


def eval_constraint(
    valuation: ClockValuation, constraint: Union[Zone, SimpleConstraint, str]
) -> bool:
    """Check a valuation against a simple constraint or a conjunction of them.

    Raises:
        UnknownClock: If the constraint mentions a clock the valuation does not have.
    """
    if isinstance(constraint, str):
        constraint = Zone.parse(constraint)
    return constraint.holds(valuation)
