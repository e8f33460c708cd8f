"""Exception hierarchy for Poissonize."""


class PoissonizeError(Exception):
    """Base class for all errors raised by the library."""


class ArgumentError(PoissonizeError, ValueError):
    """An argument violates an operation's precondition."""


class DomainError(ArgumentError):
    """An argument lies outside a function's mathematical domain."""


class ConfigError(ArgumentError):
    """A run configuration could not be parsed or is inconsistent."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{where}{message}")


class NumericError(PoissonizeError, ArithmeticError):
    """A computation produced a non-finite intermediate value."""

    def __init__(self, message: str, where=None):
        self.where = where
        if where is not None:
            message = f"{message} (at {where!r})"
        super().__init__(message)


class OutputError(PoissonizeError, OSError):
    """A result file could not be written."""


EXIT_OK = 0
EXIT_ARGUMENTS = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def exit_code(exc: BaseException) -> int:
    """Map an exception to the process exit code."""
    if isinstance(exc, ArgumentError):
        return EXIT_ARGUMENTS
    if isinstance(exc, NumericError):
        return EXIT_NUMERIC
    if isinstance(exc, OSError):
        return EXIT_IO
    return 1
