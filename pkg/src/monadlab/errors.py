"""Exception types shared across the package."""


class MonadLabError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(MonadLabError):
    """Operands live over different coefficient fields or monomial orders."""


class PolyParseError(MonadLabError):
    """Syntax error in a polynomial expression; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class HomogeneityError(MonadLabError):
    """A graded-map entry is not homogeneous of the forced degree."""

    def __init__(self, row, col, expected, got):
        super().__init__(
            f"entry ({row},{col}): expected homogeneous of degree {expected}, got {got}"
        )
        self.row = row
        self.col = col
        self.expected = expected
        self.got = got


class ShapeError(MonadLabError):
    """Matrix shape does not match the declared free modules."""


class SchemaError(MonadLabError):
    """A monad file violates the file-format schema."""


class ValidationRequired(MonadLabError):
    """Operation requires a monad that passes validation first."""


class DegreeOverflowError(MonadLabError):
    """Exponent arithmetic exceeded the packed-representation guard (2**16)."""


class BudgetExceededError(MonadLabError):
    """A Groebner run exceeded its step/time budget.

    Carries a resumable checkpoint (basis and pending pairs) so the run can
    be continued instead of redone.
    """

    def __init__(self, message, checkpoint=None):
        super().__init__(message)
        self.checkpoint = checkpoint
