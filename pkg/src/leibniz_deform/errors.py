"""Exception types shared across the package."""


class LeibnizDeformError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(LeibnizDeformError):
    """Operands have incompatible dimensions, arities or bases."""


class PreconditionError(LeibnizDeformError):
    """A documented precondition of an operation was violated."""


class FormatError(LeibnizDeformError):
    """An input file or expression could not be parsed.

    Carries an optional (line, column) position for diagnostics.
    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
