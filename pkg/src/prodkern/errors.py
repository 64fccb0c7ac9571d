"""Exception types shared across the package."""


class ProdkernError(Exception):
    """Base class for all library-specific errors."""


class DomainError(ProdkernError):
    """A point lies outside the admissible domain of an operation."""


class BudgetError(ProdkernError):
    """A computation budget was exhausted before the tolerance was met."""


class EscapeOverflowError(ProdkernError):
    """An orbit modulus exceeded the overflow guard during iteration."""


class PoleError(ProdkernError):
    """Evaluation was requested at (or numerically on top of) a pole."""


class RankDeficiencyError(ProdkernError):
    """A probe Gram matrix is numerically rank deficient."""
