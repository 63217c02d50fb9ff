"""Exception hierarchy shared across the toolkit.

Every failure that a caller can reasonably handle derives from AquaError;
plain ValueError is reserved for scalar domain violations (out-of-range
arguments to pure functions).
"""


class AquaError(Exception):
    """Base class for domain errors raised by this package."""


class PackageError(AquaError):
    """A scene package on disk is unreadable or incomplete."""


class MtlError(AquaError):
    """MTL metadata text could not be parsed or is missing required keys."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class TiffFormatError(AquaError):
    """The TIFF file uses a feature outside the supported baseline subset."""


class NoBimodalStructureError(AquaError):
    """A threshold window had no contrast to split (constant values)."""


class NoWaterNearSeedError(AquaError):
    """No water component was found within the search radius of the seed."""


class NotFoundError(AquaError):
    """A named resource (scene, lake, boundary) does not exist."""


class RegistryConflictError(AquaError):
    """A record with the same (scene_id, name) key is already registered."""


class RecordValidationError(AquaError):
    """A cadastral record violates one or more field constraints."""

    def __init__(self, problems: list[str]):
        super().__init__("invalid record: " + "; ".join(problems))
        self.problems = problems
