"""Exception hierarchy.

Errors split into two families so callers (and the command line) can tell a
bad input file apart from a numerically degenerate problem.
"""


class RerBalanceError(Exception):
    """Base class for every error raised by this package."""


class DataError(RerBalanceError):
    """Input data is malformed, misaligned or too short."""


class DegenerateInputError(DataError, ValueError):
    pass


class FrequencyMismatchError(DataError, ValueError):
    pass


class NoOverlapError(DataError):
    pass


class InsufficientDataError(DataError):
    pass


class MissingSeriesError(DataError, KeyError):
    def __str__(self):  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class CsvFormatError(DataError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ConfigError(RerBalanceError, ValueError):
    """A run configuration is incomplete or references unknown names."""


class NumericalError(RerBalanceError):
    """The problem is well-formed but numerically degenerate."""


class DomainError(NumericalError, ValueError):
    """An argument lies outside the domain of a mathematical function."""


class ConvergenceError(NumericalError):
    pass


class CollinearityError(NumericalError):
    def __init__(self, message, columns=()):
        self.columns = tuple(columns)
        super().__init__(message)


class SingularityError(NumericalError, ZeroDivisionError):
    pass
