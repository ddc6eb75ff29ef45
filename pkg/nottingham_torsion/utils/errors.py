class NottinghamError(Exception):
    """Base class for every error raised by the nottingham_torsion package."""
    pass


class UsageError(NottinghamError, ValueError):
    """Raised when operands are incompatible (prime, precision) or an argument is out of range."""
    pass


class DomainError(NottinghamError, ValueError):
    """Raised when a character or type falls outside the domain of an operation."""
    pass


class InconsistencyError(NottinghamError):
    """Raised when a character contradicts the type it is claimed to have."""
    pass


class PreconditionError(NottinghamError):
    """Raised when an input is not in the form an algorithm stage expects."""
    pass


class LiteralParseError(NottinghamError, ValueError):
    """
    Raised when a series or character literal cannot be parsed.

    Attributes:
        offset (int): Byte offset of the offending token in the input text.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class BudgetExceededError(NottinghamError):
    """
    Raised when an exhaustive search would exceed the configured budget.

    Attributes:
        cost (int): Number of candidate evaluations the search would need.
        budget (int): The configured limit.
    """

    def __init__(self, cost: int, budget: int, what: str = "search"):
        super().__init__(f"{what} needs {cost} candidate evaluations, budget is {budget}")
        self.cost = cost
        self.budget = budget


class ConfigurationError(NottinghamError):
    """Raised when a setting read from the environment is invalid."""
    pass
