"""Exception types shared across the package."""


class CslGeoError(Exception):
    """Base class for all package-specific errors."""


class OffSphere(CslGeoError):
    """A point that should lie on the unit sphere does not."""


class DegenerateMetric(CslGeoError):
    """Induced metric is (numerically) singular at a chart point."""


class WrongDimension(CslGeoError):
    """An operation received data of an unsupported dimension."""


class ZeroMeanCurvature(CslGeoError):
    """Mean curvature vanishes where a unit JH direction is required."""


class NonpositiveEpsilon(CslGeoError):
    """Young-inequality parameter must be strictly positive."""


class EmptySampleSet(CslGeoError):
    """A classification was requested over zero samples."""


class InvalidParams(CslGeoError):
    """Family parameters violate a structural constraint."""


class NoOracle(CslGeoError):
    """No closed-form reference values exist for the requested family."""
