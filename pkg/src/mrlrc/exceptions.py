"""Exception hierarchy for the mrlrc package."""


class MRLRCError(Exception):
    """Base class for all errors raised by mrlrc."""


class FieldError(MRLRCError, ValueError):
    """Invalid field construction or arithmetic (non-prime p, reducible modulus, 1/0...)."""


class ContextMismatchError(FieldError):
    """Arithmetic between elements of different field contexts."""


class CapExceededError(MRLRCError):
    """An enumeration or field-size cap would be exceeded."""

    def __init__(self, message, needed=None, cap=None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap


class ExhaustedError(MRLRCError):
    """A deterministic enumeration ran out of candidates."""


class PlanError(MRLRCError, ValueError):
    """Route preconditions or parameter constraints are not met."""


class ConstructionError(MRLRCError):
    """No valid inner family, coprime family or extension for the parameters."""


class NotAdmissibleError(MRLRCError, ValueError):
    """An erasure pattern outside the correctable set."""


class SingularSystemError(MRLRCError):
    """A linear system that should be uniquely solvable is not."""


class PatternError(MRLRCError, ValueError):
    """A malformed erasure pattern (index out of range, duplicate, wrong group count)."""
