"""Exception types raised by the library.

Parse errors indicate a damaged or non-conforming input file; domain
errors indicate valid files used outside an operation's precondition.
The CLI maps parse errors to exit code 2 and domain errors to exit
code 3.
"""


class LogigrowError(Exception):
    """Base class for every library-specific error."""


class ParseError(LogigrowError):
    """Input file cannot be interpreted."""


class MissingColumn(ParseError):
    """A required CSV header column is absent."""


class MalformedRow(ParseError):
    """A CSV row holds an unparseable date or count cell.

    The offending 1-based row number (header row = 1) is kept on
    ``row_number``.
    """

    def __init__(self, message, row_number=None):
        super().__init__(message)
        self.row_number = row_number


class DomainError(LogigrowError, ValueError):
    """Operation precondition violated."""


class LocationNotFound(DomainError):
    """No row matched the requested location and date range."""


class MissingValue(DomainError):
    """A gap was found while extracting with the ``error`` policy."""


class AllMissing(DomainError):
    """The requested variable has no non-missing value."""


class SplitOutOfRange(DomainError):
    """Train/test split index falls outside the series."""


class EmptySeries(DomainError):
    """Descriptive statistics requested for an empty series."""


class ZeroVariance(DomainError):
    """Autocorrelation or R-squared requested for a constant series."""


class LagOutOfRange(DomainError):
    """Autocorrelation lag is negative or not smaller than the series."""


class TooShort(DomainError):
    """Series too short for the requested test."""


class SingularRegression(DomainError):
    """Collinear regressors in the nonlinearity test."""


class DegenerateSeries(DomainError):
    """Series unusable for parameter initialisation (constant or tiny)."""


class SingularNormalEquations(DomainError):
    """Damped normal equations remained unsolvable."""


class LengthMismatch(DomainError):
    """Paired vectors have different lengths."""


class EmptyInput(DomainError):
    """Metric requested for empty or too-short input."""


class ZeroActual(DomainError):
    """MAPE undefined because an actual value is zero."""


class NonFiniteState(LogigrowError):
    """ODE trajectory left the finite floats.

    ``step_index`` is the index of the integration step that produced
    the first non-finite state.
    """

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index
