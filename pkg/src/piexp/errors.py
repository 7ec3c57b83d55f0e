"""Exception hierarchy shared by the engine and the command line front end."""


class PiexpError(Exception):
    """Base class for all engine errors."""


class FieldMismatchError(PiexpError, ValueError):
    """Two scalars (or matrices) from different cyclotomic fields were combined."""


class ValidationError(PiexpError, ValueError):
    """Input data (algebra table, structure, polynomial, problem file) is invalid.

    ``witness`` carries the offending basis indices when there is one.
    """

    def __init__(self, message, witness=None, location=None):
        super().__init__(message)
        self.witness = witness
        self.location = location


class InsufficientFieldError(ValidationError):
    """The base field lacks the roots of unity an operation needs."""

    def __init__(self, message, required_conductor):
        super().__init__(message)
        self.required_conductor = required_conductor


class BudgetExceededError(PiexpError):
    """An evaluation matrix would exceed the configured entry budget."""

    def __init__(self, message, rows, cols, budget):
        super().__init__(message)
        self.rows = rows
        self.cols = cols
        self.budget = budget


class InconsistencyError(PiexpError):
    """Two independent computations disagree; always indicates an engine bug."""


class NoInvariantComplementError(PiexpError):
    """The equivariant splitting system had no solution."""
