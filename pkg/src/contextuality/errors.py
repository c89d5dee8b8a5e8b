"""Exception types shared across the package.

Every library error derives from ContextualityError so callers can catch one
base class. Input validation failures (bad JSON, broken invariants) raise
InvalidScenario / InvalidBehavior; precondition failures of individual
algorithms raise the more specific classes below.
"""


class ContextualityError(Exception):
    """Base class for all errors raised by this package."""


class InvalidScenario(ContextualityError):
    """A scenario violates a structural invariant (reported first violation)."""


class InvalidBehavior(ContextualityError):
    """A behavior table is malformed: wrong cells, bad rationals, sum != 1."""


class SubsetNotInContext(ContextualityError):
    """A marginal was requested for measurements outside the chosen context."""


class NonSimpleScenario(ContextualityError):
    """An operation requires every context to have exactly two measurements."""


class NonDichotomic(ContextualityError):
    """An operation requires every measurement to have exactly two outcomes."""


class NotCycle(ContextualityError):
    """An operation requires the compatibility graph to be a single n-cycle."""


class WrongScenarioShape(ContextualityError):
    """The scenario does not match the shape a specialized detector expects."""


class NotNondisturbing(ContextualityError):
    """A probabilistic precondition failed: context marginals disagree."""


class NotPossibilisticallyND(ContextualityError):
    """A possibilistic precondition failed: Boolean marginals disagree."""


class EnumerationCapExceeded(ContextualityError):
    """The global-assignment space exceeds the configured enumeration cap."""


class InvalidModel(ContextualityError):
    """A quantum model violates projector or commutation invariants."""


class NegativeProbability(ContextualityError):
    """A computed probability is negative beyond the zero-clamp tolerance."""


class DegenerateParams(ContextualityError):
    """Construction parameters sit on a degenerate configuration."""
