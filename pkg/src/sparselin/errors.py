"""Exception hierarchy shared across the package."""


class SparselinError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(SparselinError):
    """Vector or dataset dimensions do not agree."""


class EmptyDatasetError(SparselinError):
    """An operation that needs at least one example got none."""


class LabelError(SparselinError):
    """A label is invalid for the selected loss (classification needs -1/+1)."""


class NonFiniteError(SparselinError):
    """A prediction or gradient became NaN/Inf during training.

    Usually a sign that the regularization parameter is too small for the
    data scale.
    """


class LineError(SparselinError):
    """Base for errors tied to a specific line of a text file."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class ParseError(LineError):
    """Malformed token in a data or model file."""


class IndexOrderError(LineError):
    """Feature indices on a line are duplicated or not strictly increasing."""


class FormatError(SparselinError):
    """Model file has an unknown version, loss name, or non-finite value."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
