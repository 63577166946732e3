"""Exception taxonomy.

The CLI maps these onto exit codes: validation failures exit 1, exhausted
budgets exit 2, and internal contradictions (states the underlying
combinatorial facts rule out for validated inputs) exit 3.
"""


class ValidationError(ValueError):
    """An input failed a structural or semantic check."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainError(ValidationError):
    """A coloring was queried outside its declared domain."""

    def __init__(self, message: str, point=None):
        super().__init__(message, witness=point)
        self.point = point


class SchemaError(ValidationError):
    """A serialized file violates the expected schema."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message, witness=field)
        self.field = field


class NotRegressiveError(ValidationError):
    """A coloring handed to a solver fails its regressivity requirement."""


class PreconditionError(ValidationError):
    """A solution transformer was handed data outside its certified window."""


class InsufficientDataError(ValidationError):
    """A finite input is too short for the requested extraction."""


class BudgetExceededError(RuntimeError):
    """A search ran out of its node or scan budget."""


class ApartExtractionError(BudgetExceededError):
    """Apart-set extraction ran out of budget; carries partial progress."""

    def __init__(self, message: str, elements: tuple = (), blocks: tuple = ()):
        super().__init__(message)
        self.elements = elements
        self.blocks = blocks


class InternalContradictionError(RuntimeError):
    """Reached a state that cannot occur for validated inputs; signals a bug."""
