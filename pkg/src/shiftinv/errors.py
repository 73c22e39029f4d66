"""Exception hierarchy.

Validation and precondition errors are user-facing. ``TheoremViolation`` is
a bug sentinel: it fires only when a check that is guaranteed by theory
fails, which means the implementation is wrong.
"""


class ShiftInvError(Exception):
    pass


class ValidationError(ShiftInvError, ValueError):
    pass


class SpecMismatchError(ValidationError):
    pass


class ScaleExceeded(ValidationError):
    pass


class PreconditionFailed(ShiftInvError):
    pass


class TheoremViolation(ShiftInvError):
    pass
