"""Exception types shared across the library."""


class SkewlieError(Exception):
    """Base class for all library errors."""


class RingMismatchError(SkewlieError):
    """Operands belong to incompatible ring descriptors."""


class DimensionMismatchError(SkewlieError):
    """Matrix operands have incompatible dimensions."""


class UnsupportedOperationError(SkewlieError):
    """The ring does not support the requested operation."""


class DegenerateIndexError(SkewlieError):
    """A pair index (i, j) with i == j where a genuine pair is required."""


class NotSkewError(SkewlieError):
    """A square matrix failed the skew-symmetry invariant."""


class PreconditionError(SkewlieError):
    """A checked mathematical precondition does not hold for the inputs."""


class IncompleteTableError(SkewlieError):
    """A basis-image table is missing one or more pairs (i, j)."""


class DimensionRangeError(SkewlieError):
    """Dimension outside the range the algorithm guarantees."""


class CapExceededError(SkewlieError):
    """An exhaustive enumeration would exceed the configured cap."""


class SchemaError(SkewlieError):
    """Malformed JSON input."""
