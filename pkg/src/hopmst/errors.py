"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class HopMSTError(Exception):
    exit_code = 3


class InputError(HopMSTError, ValueError):
    """Malformed input: bad edge-list, bad tree JSON, bad parameters."""

    exit_code = 2


class GraphFormatError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceTooLarge(InputError):
    pass


class GenerationError(InputError):
    pass


class InfeasibleError(HopMSTError):
    """The instance admits no solution for the requested parameters."""

    exit_code = 1

    def __init__(self, message: str, certificate=None):
        self.certificate = certificate
        super().__init__(message)


class DisconnectedGraphError(InfeasibleError):
    pass


class RoundBudgetExceeded(InfeasibleError):
    """Active non-root vertices remain after all allowed rounds."""


class MatchingStall(InfeasibleError):
    pass


class InvariantViolation(HopMSTError, AssertionError):
    exit_code = 3
