"""Exception types shared across the package."""


class TriPowMinError(Exception):
    """Base class for all package errors."""


class DegenerateTriangle(TriPowMinError):
    """The three vertices are collinear (or close enough to break the frame)."""


class InvalidExponent(TriPowMinError):
    """Exponent outside the domain of the requested operation."""


class PointNotInterior(TriPowMinError):
    """A strictly interior point was required."""


class PointNotFeasible(TriPowMinError):
    """The point lies outside the closed triangle beyond tolerance."""


class DidNotConverge(TriPowMinError):
    """An iterative oracle hit its iteration cap far from stationarity."""
