"""Exception hierarchy.

Input problems derive from :class:`InputError` (a ``ValueError``), numerical
failures from :class:`NumericalError` (an ``ArithmeticError``). The CLI maps
the two branches to exit codes 2 and 3.
"""


class TailError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TailError, ValueError):
    pass


class InvalidDistribution(InputError):
    pass


class InvalidProbability(InputError):
    pass


class DistributionsIdentical(InputError):
    pass


class UnsupportedFamily(InputError):
    pass


class EmptyInput(InputError):
    pass


class InvalidModel(InputError):
    pass


class RequiresTwoGroups(InputError):
    pass


class InvalidRanges(InputError):
    pass


class NumericalError(TailError, ArithmeticError):
    pass


class CutoffUnderflow(NumericalError):
    """The requested top fraction is too small to locate a cutoff for."""


class NoExceedances(UserWarning):
    """A simulation produced no variates above the cutoff."""
