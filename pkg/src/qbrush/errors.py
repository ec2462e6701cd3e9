"""Exception types shared across the engine."""


class QBrushError(Exception):
    """Base class for all engine errors."""


class ArgumentError(QBrushError, ValueError):
    """Bad argument to a simulator or brush operation."""


class ValidationError(QBrushError, ValueError):
    """One or more brush parameters are out of range.

    Carries ``violations``, a list of (field, message) pairs so callers can
    report every problem at once.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(f"{field}: {message}" for field, message in self.violations)
        super().__init__(msg or "invalid parameters")

    @property
    def field(self):
        return self.violations[0][0] if self.violations else None


class EmptyStrokeError(QBrushError, ValueError):
    """A stroke rasterized to an empty pixel mask."""


class TooManySegmentsError(QBrushError, ValueError):
    """A stroke is too short to be split into the requested segment count."""


class DegenerateHueMeanError(QBrushError, ValueError):
    """Circular hue mean undefined: the resultant vector is (numerically) zero."""


class RegionTooSmallError(QBrushError, ValueError):
    """Collage copy region has fewer than 3 pixels."""


class PlacementError(QBrushError, ValueError):
    """A paste target does not fit on the canvas."""


class PngDecodeError(QBrushError, ValueError):
    """Malformed PNG input; ``offset`` is the byte offset of the first problem."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class JobStateError(QBrushError, RuntimeError):
    """A job action was requested in an incompatible job state."""


class JobNotFoundError(QBrushError, KeyError):
    """Unknown job id."""

    def __init__(self, job_id):
        self.job_id = job_id
        super().__init__(f"unknown job: {job_id}")

    def __str__(self):
        return f"unknown job: {self.job_id}"


class BackendNotConfiguredError(QBrushError, RuntimeError):
    """The remote backend stub has no endpoint configured."""


class RemoteBackendError(QBrushError, RuntimeError):
    """The remote backend endpoint failed or returned a malformed reply."""


class ScriptError(QBrushError, ValueError):
    """A stroke script failed schema or syntax validation.

    ``location`` is a human-readable pointer (JSON path or line/column).
    """

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{message}" + (f" at {location}" if location else ""))
