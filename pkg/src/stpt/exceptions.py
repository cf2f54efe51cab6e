"""Exception types raised by the public API."""


class ShapeMismatchError(ValueError):
    """Operands have shapes that the operation cannot accept."""


class IncompatibleDimensionError(ValueError):
    """A required divisibility relation between dimensions does not hold."""


class RankOutOfRangeError(ValueError):
    """A truncation rank lies outside the admissible range."""


class IndexOutOfRangeError(ValueError):
    """A 1-based index or mode number lies outside its valid range."""


class DimensionOverflowError(ValueError):
    """A result would exceed the platform's addressable size."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to converge."""


class FileFormatError(ValueError):
    """A file does not conform to the expected on-disk format.

    Carries the byte offset of the offending field when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class TruncatedFileError(FileFormatError):
    """A file ends before its declared payload is complete."""


class DataValidationError(ValueError):
    """Input data contains values the library cannot work with (NaN/Inf)."""
