"""Exception types shared across the package."""


class GreenreconError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(GreenreconError, ValueError):
    """An argument is structurally invalid (bad shape, range, or flag combination)."""


class CompatibilityError(GreenreconError):
    """A boundary datum does not integrate to one within tolerance.

    Carries the measured integral so callers can report or renormalize.
    """

    def __init__(self, integral: float, tolerance: float):
        self.integral = float(integral)
        self.tolerance = float(tolerance)
        super().__init__(
            f"boundary datum integrates to {self.integral:.17g}, "
            f"expected 1 within {self.tolerance:g}"
        )


class DegenerateMapError(GreenreconError):
    """The derivative of a map vanishes (or nearly vanishes) on the boundary grid."""


class AliasingError(InvalidInputError):
    """Requested grid is too coarse for the polynomial degree of the map."""


class DataFormatError(GreenreconError):
    """A data file could not be parsed; carries the offending line number."""

    def __init__(self, path, line_no: int, message: str):
        self.path = str(path)
        self.line_no = int(line_no)
        super().__init__(f"{self.path}:{self.line_no}: {message}")
