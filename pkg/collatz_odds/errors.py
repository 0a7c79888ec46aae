# errors.py


class CollatzError(ValueError):
    """Base class for every precondition or coherence failure in the toolkit."""
    pass


class NotPositiveOddError(CollatzError):
    """Raised when a value required to be a positive odd integer is not one."""
    pass


class ValuationError(CollatzError):
    """Raised when the 2-adic valuation is requested for zero."""
    pass


class TerminalNumberError(CollatzError):
    """Raised when an ascent is requested from an odd multiple of 3."""
    pass


class ParityError(CollatzError):
    """Raised when a doubling count has the wrong parity for its odd."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class TerminalReachedError(CollatzError):
    """Raised when an ascent schedule runs into a terminal number before it ends."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class InvalidArgumentError(CollatzError):
    """Raised when an argument violates a documented precondition."""
    pass


class CoherenceError(CollatzError):
    """Raised when an internal cross-check disagrees with a direct computation."""
    pass
