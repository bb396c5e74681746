"""Exception hierarchy shared by every module."""


class ExactRecError(Exception):
    """Base class for all package errors."""


class InvalidSizeError(ExactRecError, ValueError):
    pass


class InvalidParametersError(ExactRecError, ValueError):
    pass


class InvalidArgumentError(ExactRecError, ValueError):
    pass


class InvalidLabelingError(ExactRecError, ValueError):
    pass


class UndefinedAlphaError(ExactRecError, ValueError):
    pass


class GenerationError(ExactRecError, RuntimeError):
    """A randomized generator exhausted its retry budget."""


class TooLargeError(ExactRecError, ValueError):
    """Input exceeds the size an exhaustive routine accepts."""


class DisconnectedGraphError(ExactRecError, ValueError):
    pass


class GraphFormatError(ExactRecError, ValueError):
    """Malformed graph/observation/labels file. Carries the offending line number."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class NumericalError(ExactRecError, ArithmeticError):
    """Iterative numerical routine failed to converge."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message if residual is None else f"{message} (residual={residual:.3e})")


class ExperimentError(ExactRecError, RuntimeError):
    pass
