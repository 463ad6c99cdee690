"""Exception types shared across the package.

Everything raised on purpose derives from :class:`PisotSpectraError`, so
callers (and the command line driver) can distinguish domain failures from
genuine bugs with a single ``except`` clause.
"""

from __future__ import annotations


class PisotSpectraError(Exception):
    """Base class for all deliberate failures in this package."""


class NotPisotError(PisotSpectraError):
    """The polynomial's dominant root is not a Pisot number.

    Raised when some non-dominant root has modulus >= 1 (up to the
    certification margin), or when the input is otherwise outside the
    Pisot class.
    """


class NoDominantRealRootError(NotPisotError):
    """No real root exceeding 1 exists, so there is nothing to certify."""


class NotSquarefreeError(PisotSpectraError):
    """The input polynomial has a repeated root."""


class PrecisionExhaustedError(PisotSpectraError):
    """The working precision cannot certify the requested quantity."""


class AmbiguousRoundingError(PisotSpectraError):
    """A value sits too close to a half-integer to round reliably.

    Only raised for numerical near-ties that the exact half-integer test
    could not resolve; genuine half-integers in the ring are handled
    exactly and never raise.
    """


class InvalidToleranceError(PisotSpectraError):
    """A tolerance or threshold parameter is outside its legal range."""


class InvalidDeltaError(PisotSpectraError):
    """A distance threshold is not strictly below the certified bound."""


class BudgetExceededError(PisotSpectraError):
    """An enumeration would visit more candidates than the caller allowed."""
