"""Home to the clock-region calculus.

A clock region is stored canonically as the integer part of every clock plus the ordered list
of fraction classes ``[X0, X1, ..., Xm]``: ``X0`` holds the clocks with zero fractional part,
the remaining classes are nonempty and ordered by strictly increasing fractional part.
"""

from collections import deque
from fractions import Fraction
from itertools import combinations, product
from typing import TYPE_CHECKING, Iterable, Iterator, Optional

from pydantic import BaseModel as PydanticBaseModel, ConfigDict, Field, model_validator

from .clocks import ClockValuation, SimpleConstraint, Zone, RELATIONS

if TYPE_CHECKING:
    from .automaton import TimedGameAutomaton


class ClockRegion(PydanticBaseModel):
    """An equivalence class of k-bounded clock valuations.

    **Example**

        >>> from atgames import ClockRegion
        >>> region = ClockRegion(
        >>>     int_parts={"c1": 1, "c2": 0}, frac_classes=[{"c1"}, {"c2"}], bound=2
        >>> )
        >>> print(region)
        c1=1, c2∈(0,1) | frac: {c2}
    """

    model_config = ConfigDict(frozen=True)

    int_parts: dict[str, int]
    """Integer part of every clock"""
    frac_classes: tuple[frozenset[str], ...]
    """``X0`` (possibly empty) followed by the positive fraction classes in increasing order"""
    bound: int = Field(..., gt=0)
    """The clock bound k"""

    @model_validator(mode="after")
    def is_canonical(self):
        if not self.frac_classes:
            raise ValueError("frac_classes must start with the zero class X0 (possibly empty).")
        listed = [clock for frac_class in self.frac_classes for clock in frac_class]
        if len(listed) != len(set(listed)) or set(listed) != set(self.int_parts):
            raise ValueError("Every clock must appear in exactly one fraction class.")
        if any(not frac_class for frac_class in self.frac_classes[1:]):
            raise ValueError("Positive fraction classes must be nonempty.")
        for clock, int_part in self.int_parts.items():
            if not 0 <= int_part <= self.bound:
                raise ValueError(
                    f"Integer part {int_part} of {clock} lies outside [0, {self.bound}]."
                )
            if int_part == self.bound and clock not in self.frac_classes[0]:
                raise ValueError(f"Clock {clock} at the bound {self.bound} must be in X0.")
        return self

    def __hash__(self):
        return hash(
            (
                self.bound,
                tuple(sorted(self.int_parts.items())),
                tuple(tuple(sorted(frac_class)) for frac_class in self.frac_classes),
            )
        )

    @property
    def clocks(self) -> list[str]:
        return list(self.int_parts)

    @property
    def zero_class(self) -> frozenset[str]:
        return self.frac_classes[0]

    @property
    def positive_classes(self) -> tuple[frozenset[str], ...]:
        return self.frac_classes[1:]

    @property
    def is_thin(self) -> bool:
        return bool(self.zero_class)

    @property
    def at_bound(self) -> bool:
        """Whether some clock reads exactly k, so that no positive delay is possible."""
        return any(self.int_parts[clock] == self.bound for clock in self.zero_class)

    def class_index(self, clock: str) -> int:
        for index, frac_class in enumerate(self.frac_classes):
            if clock in frac_class:
                return index
        raise KeyError(clock)

    def __str__(self):
        parts = []
        for clock in sorted(self.int_parts):
            int_part = self.int_parts[clock]
            if clock in self.zero_class:
                parts.append(f"{clock}={int_part}")
            else:
                parts.append(f"{clock}∈({int_part},{int_part + 1})")
        if self.positive_classes:
            order = " < ".join(
                "{" + ", ".join(sorted(frac_class)) + "}" for frac_class in self.positive_classes
            )
        else:
            order = "∅"
        return f"{', '.join(parts)} | frac: {order}"


class Region(PydanticBaseModel):
    """A location paired with a clock region."""

    model_config = ConfigDict(frozen=True)

    location: str
    clock_region: ClockRegion

    def __str__(self):
        return f"{self.location} | {self.clock_region}"


def region_of(valuation: ClockValuation) -> ClockRegion:
    """The clock region containing a valuation."""
    int_parts = {clock: valuation.int_part(clock) for clock in valuation.clocks}
    fracs = {clock: valuation.frac(clock) for clock in valuation.clocks}
    zero = frozenset(clock for clock, frac in fracs.items() if frac == 0)
    levels = sorted({frac for frac in fracs.values() if frac > 0})
    classes = [
        frozenset(clock for clock, frac in fracs.items() if frac == level) for level in levels
    ]
    return ClockRegion(int_parts=int_parts, frac_classes=(zero, *classes), bound=valuation.bound)


def in_region(valuation: ClockValuation, clock_region: ClockRegion) -> bool:
    return region_of(valuation) == clock_region


def _offsets(valuation: ClockValuation, clock_region: ClockRegion) -> dict[str, Fraction]:
    return {
        clock: valuation[clock] - clock_region.int_parts[clock] for clock in clock_region.clocks
    }


def in_closure(valuation: ClockValuation, clock_region: ClockRegion) -> bool:
    """Whether a valuation satisfies the non-strict relaxation of a clock region."""
    offsets = _offsets(valuation, clock_region)
    if any(not 0 <= offset <= 1 for offset in offsets.values()):
        return False
    if any(offsets[clock] != 0 for clock in clock_region.zero_class):
        return False
    previous = Fraction(0)
    for frac_class in clock_region.positive_classes:
        levels = {offsets[clock] for clock in frac_class}
        if len(levels) != 1:
            return False
        level = levels.pop()
        if level < previous:
            return False
        previous = level
    return True


def is_thin(clock_region: ClockRegion) -> bool:
    return clock_region.is_thin


def time_successor(clock_region: ClockRegion) -> Optional[ClockRegion]:
    """The next clock region reached by letting time pass, or None if some clock is at k."""
    if clock_region.at_bound or not clock_region.clocks:
        return None
    zero, *positive = clock_region.frac_classes
    if zero:
        return ClockRegion(
            int_parts=clock_region.int_parts,
            frac_classes=(frozenset(), zero, *positive),
            bound=clock_region.bound,
        )
    *lower, top = positive
    int_parts = dict(clock_region.int_parts)
    for clock in top:
        int_parts[clock] += 1
    return ClockRegion(
        int_parts=int_parts, frac_classes=(top, *lower), bound=clock_region.bound
    )


def reset_region(clock_region: ClockRegion, resets: Iterable[str]) -> ClockRegion:
    resets = frozenset(resets)
    if not resets:
        return clock_region
    int_parts = {
        clock: 0 if clock in resets else int_part
        for clock, int_part in clock_region.int_parts.items()
    }
    zero = clock_region.zero_class | resets
    positive = [frac_class - resets for frac_class in clock_region.positive_classes]
    return ClockRegion(
        int_parts=int_parts,
        frac_classes=(zero, *(frac_class for frac_class in positive if frac_class)),
        bound=clock_region.bound,
    )


def _difference_range(
    clock_region: ClockRegion, clock: str, other: Optional[str]
) -> tuple[int, bool]:
    """Where ``clock - other`` (or ``clock``) lies on the region.

    Returns ``(n, True)`` for the exact value n and ``(n, False)`` for the open interval
    ``(n, n+1)``.
    """
    if other is None:
        return clock_region.int_parts[clock], clock in clock_region.zero_class
    difference = clock_region.int_parts[clock] - clock_region.int_parts[other]
    index, other_index = clock_region.class_index(clock), clock_region.class_index(other)
    if index == other_index:
        return difference, True
    if index > other_index:
        return difference, False
    return difference - 1, False


def constraint_holds_on(clock_region: ClockRegion, constraint: SimpleConstraint) -> bool:
    value, exact = _difference_range(clock_region, constraint.clock, constraint.other_clock)
    if exact:
        return RELATIONS[constraint.relation](value, constraint.bound)
    if constraint.relation in ("<", "<="):
        return value + 1 <= constraint.bound
    if constraint.relation in (">", ">="):
        return value >= constraint.bound
    return False


def clock_region_in_zone(clock_region: ClockRegion, zone: Zone) -> bool:
    if zone.is_false:
        return False
    return all(constraint_holds_on(clock_region, constraint) for constraint in zone.constraints)


def zone_test(region: Region, zone: Zone) -> bool:
    """Whether the whole region satisfies the zone (zones are uniform on regions)."""
    return clock_region_in_zone(region.clock_region, zone)


def _ordered_partitions(clocks: list[str]) -> Iterator[list[frozenset[str]]]:
    if not clocks:
        yield []
        return
    for size in range(1, len(clocks) + 1):
        for block in combinations(clocks, size):
            rest = [clock for clock in clocks if clock not in block]
            for tail in _ordered_partitions(rest):
                yield [frozenset(block), *tail]


def enumerate_regions(clocks: Iterable[str], bound: int) -> Iterator[ClockRegion]:
    """All canonical clock regions over the given clocks, each exactly once."""
    clocks = sorted(clocks)
    for zero_size in range(len(clocks) + 1):
        for zero in combinations(clocks, zero_size):
            rest = [clock for clock in clocks if clock not in zero]
            for classes in _ordered_partitions(rest):
                ranges = [range(bound + 1) if clock in zero else range(bound) for clock in clocks]
                for ints in product(*ranges):
                    yield ClockRegion(
                        int_parts=dict(zip(clocks, ints)),
                        frac_classes=(frozenset(zero), *classes),
                        bound=bound,
                    )


def iter_future(region: Region, automaton: "TimedGameAutomaton") -> Iterator[Region]:
    state_zone = automaton.state_zone(region.location)
    clock_region = region.clock_region
    while clock_region is not None and clock_region_in_zone(clock_region, state_zone):
        yield Region(location=region.location, clock_region=clock_region)
        clock_region = time_successor(clock_region)


def future_chain(region: Region, automaton: "TimedGameAutomaton") -> list[Region]:
    """The regions passed by letting time elapse, as long as they stay inside S."""
    return list(iter_future(region, automaton))


def action_successor(
    region: Region, action: str, automaton: "TimedGameAutomaton"
) -> Optional[Region]:
    """The region reached by firing an action from anywhere in a region, if legal."""
    enabled = automaton.enabled_zone(action, region.location)
    if not clock_region_in_zone(region.clock_region, enabled):
        return None
    if not clock_region_in_zone(region.clock_region, automaton.state_zone(region.location)):
        return None
    target = automaton.target(region.location, action)
    if target is None:
        return None
    clock_region = reset_region(region.clock_region, automaton.action(action).resets)
    if not clock_region_in_zone(clock_region, automaton.state_zone(target)):
        return None
    return Region(location=target, clock_region=clock_region)


def reachable_regions(automaton: "TimedGameAutomaton", start: Region) -> list[Region]:
    """Breadth-first closure of the region automaton from a start region."""
    seen = {start: None}
    queue = deque([start])
    while queue:
        region = queue.popleft()
        for later in iter_future(region, automaton):
            for action in automaton.action_names:
                target = action_successor(later, action, automaton)
                if target is not None and target not in seen:
                    seen[target] = None
                    queue.append(target)
    return list(seen)


def representatives(clock_region: ClockRegion, count: int) -> list[ClockValuation]:
    """Rational valuations inside a clock region, spread across its fraction order.

    Values use the denominator ``2·(count+1)·|C|``. A region whose clocks all have integer
    values has a single representative.
    """
    if count < 1:
        raise ValueError("At least one representative must be requested.")
    if not clock_region.positive_classes:
        values = {clock: int_part for clock, int_part in clock_region.int_parts.items()}
        return [ClockValuation(values=values, bound=clock_region.bound)]
    slot = 2 * (count + 1)
    denominator = slot * max(len(clock_region.clocks), 1)
    samples = []
    for sample in range(count):
        values = {}
        for clock, int_part in clock_region.int_parts.items():
            index = clock_region.class_index(clock)
            if index == 0:
                values[clock] = Fraction(int_part)
            else:
                values[clock] = int_part + Fraction(
                    (index - 1) * slot + 2 * sample + 1, denominator
                )
        samples.append(ClockValuation(values=values, bound=clock_region.bound))
    return samples
