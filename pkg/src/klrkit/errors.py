"""Exception hierarchy shared by all klrkit modules."""


class KlrkitError(Exception):
    """Base class for every error raised deliberately by klrkit."""


class UnsupportedTypeError(KlrkitError, ValueError):
    """A (type, rank) pair outside the supported simply-laced families."""


class InvariantViolation(KlrkitError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class NotDivisible(InvariantViolation, ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


class NotInIdeal(InvariantViolation, ArithmeticError):
    """A truncated series is not a multiple of the requested linear form."""


class NonzeroConstantTerm(KlrkitError, ValueError):
    """Series substitution needs series without constant term."""


class InconsistentPhi(InvariantViolation):
    """Two inductive rules assigned different AR-vertices to one root."""


class IncompletePhi(InvariantViolation):
    """The inductive closure did not reach every positive root."""


class NonUniqueIntertwiner(InvariantViolation):
    """The intertwiner space is not one-dimensional."""


class ZeroIntertwiner(InvariantViolation):
    """The intertwiner vanishes on the tensor of extremal vectors."""


class PoleTooHigh(InvariantViolation):
    """An R-matrix entry has a pole at the expansion point beyond what is cancelled."""
