import logging
import time
from fractions import Fraction
from typing import Union

ExactScalar = Fraction

RationalLike = Union[int, str, Fraction]


def to_scalar(value: RationalLike) -> Fraction:
    """
    Converts an int, a "p/q" string or a Fraction into an exact scalar.
    Floats are refused: nothing in the core is allowed to be inexact.

    :param value: Value to convert
    :type value: Union[int, str, Fraction]

    :return: Fraction in lowest terms with positive denominator
    :rtype: Fraction
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"`{value!r}` is not an exact rational")
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"`{value}` is not a rational of the form p/q")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"`{value}` has a zero denominator")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """
    Canonical text form of a rational: "p/q" with q > 0, and just "p" when q == 1
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def suppress_warnings(prefix : str):
    """
    With logging module, suppresses any warnings that are coming from a logger
    with a given prefix
    """

    names = logging.root.manager.loggerDict
    names = list(filter(lambda x: x.startswith(prefix), names))
    for name in names:
        logging.getLogger(name).setLevel(logging.ERROR)


def configure_logging(level : str = "WARNING", suppress_log_keywords : str = None):
    """
    Sets the root log level and silences any comma separated logger prefixes

    :param level: Name of the log level (e.g. "INFO")
    :type level: str

    :param suppress_log_keywords: Comma separated logger name prefixes to silence
    :type suppress_log_keywords: str
    """
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(getattr(logging, level.upper(), logging.WARNING))
    if suppress_log_keywords is not None:
        for prefix in suppress_log_keywords.split(","):
            suppress_warnings(prefix.strip())


class Timer:
    """
    Utility class for timing computations
    """
    def __init__(self):
        self.time = time.perf_counter()

    def hit(self) -> float:
        """
        Restarts timer and returns the time in seconds since last restart or initialization
        """
        new_time = time.perf_counter()
        res = new_time - self.time
        self.time = new_time
        return res
