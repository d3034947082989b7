"""Exception hierarchy shared by all modules.

``PreconditionError`` covers every "the inputs violate a documented
precondition" case; the CLI maps it to exit code 2.
"""


class Error(Exception):
    """Base class for all package errors."""


class PreconditionError(Error):
    """Inputs violate a documented precondition of the operation."""


class InvalidParams(PreconditionError):
    """Rejected (m, k) pair: need m >= 0 and odd k >= 1."""


class NonUnitConstantTerm(PreconditionError):
    """Series inversion requires constant term +1 or -1."""


class InvalidExponent(PreconditionError):
    """Pochhammer-type constructors require exponent and step >= 1."""


class EvenInput(PreconditionError):
    """Operation is defined for odd n only."""


class InvalidInterval(PreconditionError):
    """Divisor-interval endpoints must satisfy 0 <= y <= z."""


class CapacityExceeded(PreconditionError):
    """Requested size exceeds the configured memory/order budget."""


class DomainError(PreconditionError):
    """Parameter outside the identity's stated domain (m < k-1)."""


class PreconditionUnmet(PreconditionError):
    """A witness constructor's prime/ratio bound fails; message names it."""


class BudgetExhausted(PreconditionError):
    """Witness search ran out of budget; carries the partial results."""

    def __init__(self, message, reports):
        super().__init__(message)
        self.reports = reports


class BudgetExceeded(PreconditionError):
    """Enumeration oracle asked for n above its budget."""


class CounterOverflow(Error):
    """A sieve counter saturated; the table contents cannot be trusted."""
