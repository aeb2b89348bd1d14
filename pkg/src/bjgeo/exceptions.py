"""Exception types raised across bjgeo."""


class BJGeoError(Exception):
    """Base class for all bjgeo errors."""


class DimensionError(BJGeoError, ValueError):
    pass


class NotUnitError(BJGeoError, ValueError):
    """A vector expected on the unit sphere is off it by more than tol."""


class NotSupportingError(BJGeoError, ValueError):
    """A functional offered as a support functional does not support the point."""


class SelectorConflictError(BJGeoError, ValueError):
    pass


class NotAttainedError(BJGeoError, ValueError):
    """A vector claimed to lie in M_T or m_T does not."""


class InconsistencyError(BJGeoError, RuntimeError):
    """Two independent computations of the same quantity disagree."""


class UnsupportedError(BJGeoError, NotImplementedError):
    pass


class InputError(BJGeoError, ValueError):
    """Malformed user input; ``field`` names the offending JSON path."""

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class SolverError(BJGeoError, RuntimeError):
    pass
