"""Exception hierarchy shared across the package.

Every error that callers are expected to branch on has its own class;
the CLI maps them to stable exit codes.
"""


class IfcdmsError(Exception):
    """Base class for all package-specific errors."""


class DistributionError(IfcdmsError, ValueError):
    """Probability data violates its contract (negative mass, bad normalization)."""


class ShapeError(IfcdmsError, ValueError):
    """Array arity or alphabet sizes do not match the operation's contract."""


class DomainError(IfcdmsError, ValueError):
    """Parameters lie outside the validity domain of the requested formula."""


class LPFailureError(IfcdmsError, RuntimeError):
    """The feasibility solver aborted for numerical reasons (not infeasibility)."""


class BudgetExceededError(IfcdmsError, RuntimeError):
    """A combinatorial resource guard was hit before the computation started."""


class ParseError(IfcdmsError, ValueError):
    """An external document (channel JSON) could not be parsed or validated."""


class InternalConsistencyError(IfcdmsError, RuntimeError):
    """Two internal evaluation routes disagreed beyond numerical tolerance."""
