"""Exception types shared across factorlab."""


class FactorlabError(Exception):
    """Base class for all library errors."""


class BudgetExceeded(FactorlabError):
    """A size cap or search budget was hit.

    ``partial`` carries whatever was computed before the budget ran out
    (e.g. an incomplete :class:`~factorlab.zerosum.AtomTable`), or ``None``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ContractViolation(FactorlabError):
    """A category oracle broke the factorization-engine contract."""
