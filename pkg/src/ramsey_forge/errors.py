"""Exception types shared by every module.

Each class corresponds to one failure kind; the CLI maps them onto exit codes
(``HypothesisFailed`` -> 1, everything else -> 2).
"""


class RamseyForgeError(Exception):
    """Base class for all library errors."""


class InvalidInput(RamseyForgeError, ValueError):
    pass


class UnsupportedField(RamseyForgeError, ValueError):
    pass


class WrongResidue(RamseyForgeError, ValueError):
    """Field order has the wrong residue mod 4 for the requested construction."""


class DeletionTooLarge(RamseyForgeError, ValueError):
    pass


class DegenerateInput(RamseyForgeError, ValueError):
    pass


class AsymmetricMatrix(RamseyForgeError, ValueError):
    pass


class BudgetExceeded(RamseyForgeError, RuntimeError):
    def __init__(self, message, *, budget=None, required=None):
        super().__init__(message)
        self.budget = budget
        self.required = required


class HypothesisFailed(RamseyForgeError):
    """A bound was invoked outside its hypotheses.

    ``report`` carries whatever was evaluated before the failing clause, so
    callers can show the margin.
    """

    def __init__(self, message, *, clause=None, report=None):
        super().__init__(message)
        self.clause = clause
        self.report = report or {}


class NotStronglyRegular(RamseyForgeError):
    """Raised by ``srg_params`` with a witness explaining the failure."""

    def __init__(self, message, *, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalAssertionFailure(RamseyForgeError, AssertionError):
    """A proven identity failed to hold; indicates a bug, never rounded away."""
