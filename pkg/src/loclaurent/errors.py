"""
Exception hierarchy shared by every loclaurent package. Each class carries the
exit code the command line interface returns when it escapes a command.
"""


class LocLaurentError(ValueError):
    """
    Base class for all loclaurent errors.
    """
    exit_code: int = 1


class SpecMismatch(LocLaurentError):
    """
    Operands live over different coefficient algebras.
    """


class NotAUnit(LocLaurentError):
    """
    An element that had to be inverted is not a unit of its algebra.
    """
    exit_code = 4


class WindowTooSmall(LocLaurentError):
    """
    A polynomial does not fit inside the requested series window.
    """


class DirectionMismatch(LocLaurentError):
    """
    Series expanded at z=0 combined with series expanded at z=infinity.
    """


class EmptyWindow(LocLaurentError):
    """
    A series operation leaves no degree on which the result is known.
    """


class InconsistentData(LocLaurentError):
    """
    Fixed-point data that cannot come from a compact Hamiltonian circle space.
    """
    exit_code = 3


class NonPolynomialSum(InconsistentData):
    """
    A sum of rational functions that should be a Laurent polynomial keeps a pole.
    """


class FactorizationMismatch(InconsistentData):
    """
    The split of a lambda class into its two halves does not multiply back.
    """


class DenominatorVanishes(LocLaurentError):
    """
    Evaluation point is a root of some denominator (or zero).
    """
    exit_code = 5


class PreconditionViolated(LocLaurentError):
    """
    A verification check was asked to run outside its hypotheses.
    """


class DatasetParseError(LocLaurentError):
    """
    Dataset file could not be parsed. The message names a line/column or a field path.
    """
    exit_code = 2
