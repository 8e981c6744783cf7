from resources import ExitCode

class GeometricJoinError(Exception):
    exitCode: ExitCode = ExitCode.INPUT_ERROR

class InputError(GeometricJoinError):
    """Malformed input: bad arity, dimension mismatch, unknown label, bad config."""
    exitCode = ExitCode.INPUT_ERROR

class PreconditionError(InputError):
    """An operation was called outside the regime where its result is defined."""

class BudgetExceededError(GeometricJoinError):
    exitCode = ExitCode.BUDGET_EXCEEDED

class InternalConsistencyError(GeometricJoinError):
    """A proved statement was contradicted or a certificate failed its own check."""
    exitCode = ExitCode.INTERNAL_INCONSISTENCY
