"""Exception taxonomy shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates an operation's preconditions."""


class CsvParseError(ValueError):
    """A CSV payload cannot be parsed.

    Carries the 1-based line number of the offending row when known.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DegenerateInputError(RuntimeError):
    """The input is too degenerate for the requested statistic.

    Examples: zero-variance data queried without tie-breaking jitter, a null
    ensemble with zero spread, or a constant vector passed to a rank
    correlation.
    """
