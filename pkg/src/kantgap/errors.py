"""Exception hierarchy for kantgap.

Input validation failures subclass ``ValueError`` through ``InputError`` so
callers can catch either the semantic type or the builtin.
``PostconditionError`` is reserved for the executable proof-step checks
(Jensen mass bound, marginal domination, cover/matching equality); those
fire only on internal bugs, never on bad user input.
"""


class TransportError(Exception):
    """Base class for all kantgap errors."""


class InputError(TransportError, ValueError):
    """Invalid user-supplied data or parameters."""


class DimensionMismatchError(InputError):
    """Objects over incompatible spaces were combined."""


class NegativeWeightError(InputError):
    """A marginal weight, mass or scale was negative."""


class InfeasibleMassError(TransportError):
    """Requested shipped mass exceeds what finite-cost cells can carry."""


class MassMismatchError(InputError):
    """Densities (f, g) with unequal total masses; no coupling can exist."""


class DensityUndefinedError(TransportError):
    """A coupling charges an atom whose reference marginal weight is zero."""


class DeficitMismatchError(TransportError):
    """Row and column deficits of a partial coupling have different masses."""


class NotSquareError(InputError):
    """The capacity functional needs one space with one shared marginal."""


class NotApplicableError(TransportError):
    """The relaxed dual presumes at least one finite-cost full coupling."""


class PreconditionError(TransportError):
    """A documented operation precondition was violated."""


class InstanceTooLargeError(InputError):
    """Brute-force oracle called beyond its exhaustive-search size limit."""


class PostconditionError(TransportError):
    """An internally asserted identity failed (indicates a bug)."""
