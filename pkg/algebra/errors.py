"""
Exception types shared by every package.

Mathematical negatives (a map that is not an automorphism, a polynomial that is
not an identity) are returned as values, not raised.
"""

from typing import Optional


class AlgebraError(Exception):
    """Base class for all errors raised by this library."""


class ArityMismatch(AlgebraError, ValueError):
    """Two multi-indices of different arity were combined."""


class ContextMismatch(AlgebraError, ValueError):
    """Operands live in different rings, ranks or generator alphabets."""


class MissingAssignment(AlgebraError, ValueError):
    """An evaluation was asked for without a value for some variable or generator."""


class InvalidWord(AlgebraError, ValueError):
    """A word is empty, too short, or not a Lyndon word where one is required."""


class ZeroElementError(AlgebraError, ValueError):
    """The operation is undefined on the zero element."""


class NotCustomary(AlgebraError, ValueError):
    """The input is not a linear combination of customary polynomials."""


class HypothesisViolation(AlgebraError, ValueError):
    """A series problem does not meet the solvability hypotheses."""


class NotDependent(AlgebraError, ValueError):
    """The relator does not involve the last generator."""


class PreconditionViolation(AlgebraError, ValueError):
    """An operation was called outside its documented precondition."""


class SupportConditionViolation(AlgebraError):
    """The bracket remainder has a monomial outside the expected span."""


class ResourceExhausted(AlgebraError):
    """A memo, cache or support-size cap was exceeded."""


class BudgetExhausted(ResourceExhausted):
    """A randomized or grid search ran out of trials."""

    def __init__(self, message: str, trials: int = 0, max_rank: Optional[int] = None):
        super().__init__(message)
        self.trials = trials
        self.max_rank = max_rank


class NoRationalSeed(BudgetExhausted):
    """No rational seed point was found in the searched grid."""


class ExpressionSyntaxError(AlgebraError, ValueError):
    """The expression text does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownIdentifier(AlgebraError, ValueError):
    """An identifier does not name a generator of the target algebra."""


class PipelineError(AlgebraError):
    """A stage of the witness pipeline failed; wraps the underlying error."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
