"""Exception hierarchy shared by every module."""


class SagbiForgeError(Exception):
    """Base class for all library errors."""


class DimensionError(SagbiForgeError, ValueError):
    """Vectors or tables of mismatched length."""


class EmptyInputError(SagbiForgeError, ValueError):
    """An operation needs a nonzero polynomial or a nonempty set."""


class DomainError(SagbiForgeError, ValueError):
    """Parameters outside the supported range (e.g. a < 2 for K_{a,b})."""


class UnitIdealError(SagbiForgeError, ValueError):
    """The ideal is the whole ring."""


class StrategyError(SagbiForgeError, ValueError):
    """A computation strategy was requested whose precondition fails."""


class ParseError(SagbiForgeError, ValueError):
    """Malformed polynomial text."""


class BudgetExceeded(SagbiForgeError, RuntimeError):
    """A time or degree budget ran out before the computation finished."""
