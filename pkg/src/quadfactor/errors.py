"""Exception hierarchy."""


class QuadError(Exception):
    """Base class for every error raised by quadfactor."""


class InvalidDiskError(QuadError, ValueError):
    """The input does not describe a quadriculated disk."""


class BoardParseError(InvalidDiskError):
    """A board or complex text could not be parsed."""


class NotABoardError(QuadError, ValueError):
    """An operation restricted to boards received a general disk."""


class SurgeryError(QuadError, ValueError):
    """Cut and paste was requested along an unusable diagonal."""


class FactorizationError(QuadError, ArithmeticError):
    """An exact identity inside the factorization failed to hold."""
