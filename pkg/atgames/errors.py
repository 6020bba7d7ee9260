"""Home to the exceptions raised by atgames.

Malformed input and illegal moves raise subclasses of ValueError. Exhausted resources and
undefined strategies raise subclasses of :py:class:`SolverError`.
"""


class UnknownClock(ValueError):
    """A constraint or valuation refers to a clock that does not exist."""


class BoundExceeded(ValueError):
    """Letting time pass would push a clock above the clock bound k."""


class LeftStateZone(ValueError):
    """A configuration, or a point passed while delaying, lies outside the state zone S."""


class NotEnabled(ValueError):
    """The action is not enabled in the given configuration."""


class TargetOutsideS(ValueError):
    """Taking the action would land outside the state zone S."""


class NotInFuture(ValueError):
    """The requested region cannot be reached from the configuration by letting time pass."""


class SolverError(RuntimeError):
    """Base class for resource and definedness failures."""


class ExplosionGuard(SolverError):
    """The boundary region graph grew beyond the vertex cap."""


class TooLarge(SolverError):
    """Brute-force enumeration would exceed the strategy-pair limit."""


class AmbiguousRounding(SolverError):
    """Two admissible cycle means are equally close to the estimate."""


class CertificationFailed(SolverError):
    """No strategy pair could be certified within the iteration horizon."""


class StrategyUndefined(SolverError):
    """A strategy was asked to move in a state it has no choice for."""


class EmptyWindow(SolverError):
    """No delay lands inside the open target region."""


class NotSimple(SolverError):
    """Total times do not fit a simple function."""
