"""Exception hierarchy for the uvmark pipeline."""


class UvmarkError(Exception):
    """Base class for all pipeline errors."""


class InvalidArgumentError(UvmarkError, ValueError):
    """An argument violates an operation's precondition."""


class DimensionMismatchError(InvalidArgumentError):
    """Two images that must share dimensions do not."""


class AlternationViolationError(UvmarkError):
    """Two consecutive frames in a stream carry the same light kind."""

    def __init__(self, seq: int):
        self.seq = seq
        super().__init__(f"alternation violated at seq {seq}: same light kind as previous frame")


class MissingFileError(UvmarkError):
    """A manifest references a file that does not exist."""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"missing file: {path}")


class ManifestError(UvmarkError):
    """A stream manifest is malformed."""


class InsufficientDataError(UvmarkError):
    """Too few correspondences to fit a model."""


class DegenerateInputError(UvmarkError):
    """Input configuration is rank-deficient or non-invertible."""


class AlignmentFailedError(UvmarkError):
    """Robust estimation could not find a model with enough inliers."""
