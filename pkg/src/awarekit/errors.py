"""Exception types shared across the toolkit."""


class AwareKitError(Exception):
    """Base class for all toolkit errors."""


class NonFiniteNumber(AwareKitError, ValueError):
    """A NaN or infinity was found where canonical JSON requires finite numbers."""


class InvalidConfig(AwareKitError, ValueError):
    """A configuration document violates its invariants."""


class OutOfBounds(AwareKitError, ValueError):
    """A rectangle or coordinate falls outside the target image."""


class DecodeError(AwareKitError, ValueError):
    """A file exists but its content cannot be decoded."""


class DimensionMismatch(AwareKitError, ValueError):
    """Two patches that must share dimensions do not."""


class MissingClass(AwareKitError, ValueError):
    """A detectable glyph class has no training examples."""


class DegenerateCrop(AwareKitError, ValueError):
    """A training crop has zero variance and cannot act as a template."""


class NoMessage(AwareKitError, RuntimeError):
    """Render was requested before any message was ingested."""


class StaleMessage(AwareKitError, ValueError):
    """An out-of-order message was dropped by the renderer."""


class UnsortedLog(AwareKitError, ValueError):
    """A log that must be time-sorted is not."""


class EmptyInput(AwareKitError, ValueError):
    """An aggregate was requested over zero samples."""


class MissingArtifact(AwareKitError, FileNotFoundError):
    """A pipeline stage needs an artifact that a prior stage has not produced."""


class MissingCalibration(AwareKitError, ValueError):
    """The likelihood distinguisher was invoked without a calibration table."""
