"""Exception hierarchy.

Exit-code mapping used by the CLI:
  ParseError            -> 1
  PreconditionError     -> 2
  CapExceeded, BudgetExceeded -> 3
InternalError is deliberately not caught anywhere: it signals a failed
cross-check between two independent computations of the same object and
must surface with a full traceback.
"""


class GForgeError(Exception):
    """Base class for all package errors."""


class ParseError(GForgeError):
    """Malformed input document or unknown schema field."""


class PreconditionError(GForgeError):
    """Input is well formed but violates a documented precondition."""


class GroupError(PreconditionError):
    """Multiplication table is not a group, or element out of range."""


class CocycleError(PreconditionError):
    """Exponent table fails the cocycle or normalization conditions."""


class PresentationError(PreconditionError):
    """Presentation components are inconsistent with each other."""


class CapExceeded(GForgeError):
    """A configured structural cap (sizes, dimensions) was exceeded."""


class BudgetExceeded(GForgeError):
    """An enumeration exceeded its configured work budget."""


class InternalError(GForgeError):
    """Two independent computations of the same invariant disagree."""
