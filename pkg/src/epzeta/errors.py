"""Exception taxonomy shared by all modules.

Every contract violation raises one of these; plain ValueError/TypeError are
reserved for genuine programming errors (bad argument types and the like).
"""


class EpzetaError(Exception):
    """Base class for all errors raised by this package."""


class NotPositiveDefinite(EpzetaError):
    """Quadratic form fails a > 0, 4ac - b^2 > 0."""


class CapacityExceeded(EpzetaError):
    """An enumeration or sweep would exceed the configured memory budget."""


class DomainError(EpzetaError):
    """Argument outside the mathematical domain of the operation."""


class PoleAt(EpzetaError):
    """Evaluation requested exactly at a pole."""

    def __init__(self, where, message=None):
        self.where = where
        super().__init__(message or f"pole at {where}")


class PrecisionExceeded(EpzetaError):
    """A guaranteed accuracy bound cannot be met for the requested input."""


class QuadratureFailure(EpzetaError):
    """Adaptive quadrature refinement did not converge."""


class HypothesisViolated(EpzetaError):
    """Sampled derivative data contradicts a lemma's hypothesis."""


class RootFindFailure(EpzetaError):
    """Bisection/Newton iteration failed to bracket or converge."""


class NoStationaryPoint(EpzetaError):
    """The stationary-phase equation has no solution in the admissible range."""


class SingularPoint(EpzetaError):
    """Evaluation at the vanishing-bracket edge of the dual phase."""


class ContractError(EpzetaError):
    """Structured input violates a documented precondition."""
