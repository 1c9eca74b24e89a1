"""Exception hierarchy shared by every heliodec module."""


class HeliodecError(Exception):
    """Base class for all errors raised by heliodec."""


class DimensionError(HeliodecError, TypeError):
    """Quantities with incompatible dimensions were combined."""


class DomainError(HeliodecError, ValueError):
    """An argument lies outside the physical domain of an operation."""


class InfeasibleError(HeliodecError):
    """A feasibility search has no root inside its bracket."""


class InfeasibleEverywhereError(InfeasibleError):
    """The coherence margin is below target even at the low end of the bracket."""


class FeasibleEverywhereError(InfeasibleError):
    """The coherence margin stays above target over the whole bracket."""


class NoSolutionError(HeliodecError, ValueError):
    """An inversion has no physical solution (e.g. negative concentration)."""


class GridCapError(HeliodecError, ValueError):
    """A sweep grid has more points than the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"sweep grid has {count} points, cap is {cap}")
        self.count = count
        self.cap = cap


class ConfigError(HeliodecError, ValueError):
    """A configuration document could not be parsed or validated."""
