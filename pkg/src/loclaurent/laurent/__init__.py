"""
Sparse Laurent polynomials over a coefficient algebra and the two completions
used to invert them: series at z=0 (finitely many negative powers) and series
at z=infinity (finitely many positive powers). Series are always exact on an
explicit finite window of degrees.
"""
import logging
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterator, Mapping, Optional, Tuple, Union

from loclaurent.algebra import AlgebraElement, AlgebraSpec, alg_invert
from loclaurent.errors import (
    DenominatorVanishes,
    DirectionMismatch,
    EmptyWindow,
    NotAUnit,
    SpecMismatch,
    WindowTooSmall,
)
from loclaurent.utils import to_scalar

logger = logging.getLogger(__name__)

Coefficient = Union[Fraction, AlgebraElement]


class Direction(str, Enum):
    """Supported series completions"""

    AT_ZERO = "at-zero"
    AT_INFINITY = "at-infinity"

    @property
    def opposite(self) -> "Direction":
        return Direction.AT_INFINITY if self is Direction.AT_ZERO else Direction.AT_ZERO


def get_direction(name: Union[str, Direction]) -> Direction:
    """
    Returns the direction with the given name
    """
    for direction in Direction:
        if name == direction or name == direction.value:
            return direction
    supported = [d.value for d in Direction]
    raise ValueError(f"`{name}` is not a supported direction. " f"Supported directions are: {supported}")


def coefficient_zero(spec: Optional[AlgebraSpec]) -> Coefficient:
    return Fraction(0) if spec is None else spec.zero()


def coefficient_one(spec: Optional[AlgebraSpec]) -> Coefficient:
    return Fraction(1) if spec is None else spec.one()


def coefficient_inverse(c: Coefficient) -> Coefficient:
    """
    Inverse of a scalar or algebra coefficient.

    :raises NotAUnit: for zero scalars and non-units of the algebra
    """
    if isinstance(c, AlgebraElement):
        return alg_invert(c)
    if c == 0:
        raise NotAUnit("0 is not a unit")
    return 1 / Fraction(c)


def _coerce(c, spec: Optional[AlgebraSpec]) -> Coefficient:
    if spec is None:
        if isinstance(c, AlgebraElement):
            raise SpecMismatch("algebra coefficient given to a scalar polynomial")
        return to_scalar(c)
    if isinstance(c, AlgebraElement):
        if c.spec != spec:
            raise SpecMismatch("coefficient belongs to a different algebra")
        return c
    return spec.scalar(c)


class LaurentPoly:
    """
    Finitely supported map degree -> coefficient. ``spec`` is None in scalar mode
    (coefficients are Fractions) and an :class:`AlgebraSpec` otherwise. Zero
    coefficients are never stored. Instances are treated as immutable.

    :param coeffs: Mapping from integer degree to coefficient (ints, "p/q" strings,
        Fractions, or AlgebraElements of ``spec``)
    :param spec: Coefficient algebra, or None for rationals
    """
    __slots__ = ("_coeffs", "spec")

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None, spec: Optional[AlgebraSpec] = None):
        self.spec = spec
        cleaned: Dict[int, Coefficient] = {}
        for degree, c in (coeffs or {}).items():
            c = _coerce(c, spec)
            if c:
                cleaned[int(degree)] = c
        self._coeffs = dict(sorted(cleaned.items()))

    @classmethod
    def _raw(cls, coeffs: Dict[int, Coefficient], spec: Optional[AlgebraSpec]) -> "LaurentPoly":
        # trusted constructor: coefficients already of the right kind
        p = cls.__new__(cls)
        p.spec = spec
        p._coeffs = dict(sorted((d, c) for d, c in coeffs.items() if c))
        return p

    @classmethod
    def zero(cls, spec: Optional[AlgebraSpec] = None) -> "LaurentPoly":
        return cls._raw({}, spec)

    @classmethod
    def one(cls, spec: Optional[AlgebraSpec] = None) -> "LaurentPoly":
        return cls._raw({0: coefficient_one(spec)}, spec)

    @classmethod
    def monomial(cls, degree: int, coefficient=1, spec: Optional[AlgebraSpec] = None) -> "LaurentPoly":
        return cls({degree: coefficient}, spec)

    # === ACCESS ===

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def low(self) -> int:
        """
        Lowest degree with a nonzero coefficient
        """
        if not self._coeffs:
            raise ValueError("the zero polynomial has no lowest degree")
        return next(iter(self._coeffs))

    @property
    def high(self) -> int:
        """
        Highest degree with a nonzero coefficient
        """
        if not self._coeffs:
            raise ValueError("the zero polynomial has no highest degree")
        return next(reversed(self._coeffs))

    def support(self) -> Tuple[int, ...]:
        return tuple(self._coeffs)

    def items(self) -> Iterator[Tuple[int, Coefficient]]:
        return iter(self._coeffs.items())

    def coefficient(self, degree: int) -> Coefficient:
        return self._coeffs.get(degree, coefficient_zero(self.spec))

    def to_dict(self) -> Dict[int, Coefficient]:
        return dict(self._coeffs)

    # === ARITHMETIC ===

    def _check(self, other: "LaurentPoly"):
        if self.spec != other.spec:
            raise SpecMismatch("polynomials have different coefficient algebras")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out[d] + c if d in out else c
        return LaurentPoly._raw(out, self.spec)

    def __neg__(self):
        return LaurentPoly._raw({d: -c for d, c in self._coeffs.items()}, self.spec)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            out: Dict[int, Coefficient] = {}
            for i, a in self._coeffs.items():
                for j, b in other._coeffs.items():
                    out[i + j] = out[i + j] + a * b if i + j in out else a * b
            return LaurentPoly._raw(out, self.spec)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor) -> "LaurentPoly":
        """
        Multiplies every coefficient by a scalar or an algebra element
        """
        if isinstance(factor, AlgebraElement):
            factor = _coerce(factor, self.spec)
        elif not isinstance(factor, (int, Fraction, str)) or isinstance(factor, bool):
            return NotImplemented
        else:
            factor = to_scalar(factor)
        return LaurentPoly._raw({d: c * factor for d, c in self._coeffs.items()}, self.spec)

    def shift(self, n: int) -> "LaurentPoly":
        """
        Multiplies by z**n
        """
        return LaurentPoly._raw({d + n: c for d, c in self._coeffs.items()}, self.spec)

    def reflect(self) -> "LaurentPoly":
        """
        Substitutes z -> 1/z
        """
        return LaurentPoly._raw({-d: c for d, c in self._coeffs.items()}, self.spec)

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient], spec: Optional[AlgebraSpec] = None) -> "LaurentPoly":
        """
        Applies ``fn`` to every coefficient. The result lives over ``spec``.
        """
        return LaurentPoly._raw({d: fn(c) for d, c in self._coeffs.items()}, spec)

    def evaluate(self, z0) -> Fraction:
        """
        Exact value at a nonzero rational point (scalar mode only)

        :raises DenominatorVanishes: when z0 is 0 and the polynomial has negative powers
        """
        if self.spec is not None:
            raise SpecMismatch("only scalar polynomials can be evaluated at a point")
        z0 = to_scalar(z0)
        if z0 == 0:
            if any(d < 0 for d in self._coeffs):
                raise DenominatorVanishes("cannot evaluate negative powers of z at z=0")
            return self.coefficient(0)
        return sum((c * z0 ** d for d, c in self._coeffs.items()), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.spec == other.spec and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.spec, tuple(self._coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"{d}: {c}" for d, c in self._coeffs.items())
        return f"LaurentPoly({{{terms}}})"


class TruncatedSeries:
    """
    Laurent series known exactly on the degree window [low, high].

    At z=0, every coefficient below ``low`` is zero and ``high`` is a truncation
    bound. At z=infinity it is the mirror image: coefficients above ``high`` are
    zero and ``low`` is the truncation bound.

    :param direction: Completion the series lives in
    :param low: Lowest degree of the window
    :param high: Highest degree of the window
    :param coeffs: Coefficients on the window (missing degrees are zero)
    :param spec: Coefficient algebra, None for rationals
    """
    __slots__ = ("direction", "low", "high", "_coeffs", "spec")

    def __init__(self, direction: Direction, low: int, high: int,
                 coeffs: Optional[Mapping[int, object]] = None, spec: Optional[AlgebraSpec] = None):
        if high < low:
            raise EmptyWindow(f"window [{low}, {high}] is empty")
        self.direction = get_direction(direction)
        self.low = low
        self.high = high
        self.spec = spec
        cleaned = {}
        for d, c in (coeffs or {}).items():
            c = _coerce(c, spec)
            if not c:
                continue
            if d < low or d > high:
                raise WindowTooSmall(f"degree {d} lies outside the window [{low}, {high}]")
            cleaned[d] = c
        self._coeffs = dict(sorted(cleaned.items()))

    @classmethod
    def _raw(cls, direction: Direction, low: int, high: int, coeffs: Dict[int, Coefficient],
             spec: Optional[AlgebraSpec]) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s.direction, s.low, s.high, s.spec = direction, low, high, spec
        s._coeffs = dict(sorted((d, c) for d, c in coeffs.items() if c and low <= d <= high))
        return s

    @property
    def window(self) -> Tuple[int, int]:
        return self.low, self.high

    def items(self) -> Iterator[Tuple[int, Coefficient]]:
        return iter(self._coeffs.items())

    def coefficient(self, degree: int) -> Coefficient:
        """
        Exact coefficient of z**degree.

        :raises WindowTooSmall: when the degree lies on the unknown side of the window
        """
        if self.low <= degree <= self.high:
            return self._coeffs.get(degree, coefficient_zero(self.spec))
        if self.direction is Direction.AT_ZERO and degree < self.low:
            return coefficient_zero(self.spec)
        if self.direction is Direction.AT_INFINITY and degree > self.high:
            return coefficient_zero(self.spec)
        raise WindowTooSmall(f"degree {degree} is beyond the known window [{self.low}, {self.high}]")

    def lowest_nonzero(self) -> Optional[int]:
        return next(iter(self._coeffs), None)

    def highest_nonzero(self) -> Optional[int]:
        return next(reversed(self._coeffs), None)

    def to_poly(self) -> LaurentPoly:
        """
        Coefficients on the window as a polynomial. Left inverse of :func:`embed`.
        """
        return LaurentPoly._raw(dict(self._coeffs), self.spec)

    # === ARITHMETIC ===

    def _check(self, other: "TruncatedSeries"):
        if self.direction is not other.direction:
            raise DirectionMismatch("cannot combine series at z=0 with series at z=infinity")
        if self.spec != other.spec:
            raise SpecMismatch("series have different coefficient algebras")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_add(self, other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, AlgebraElement):
            factor = _coerce(other, self.spec)
        elif isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            factor = Fraction(other)
        else:
            return NotImplemented
        return TruncatedSeries._raw(self.direction, self.low, self.high,
                                    {d: c * factor for d, c in self._coeffs.items()}, self.spec)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def shift(self, n: int) -> "TruncatedSeries":
        """
        Multiplies by z**n; the window moves with the coefficients
        """
        return TruncatedSeries._raw(self.direction, self.low + n, self.high + n,
                                    {d + n: c for d, c in self._coeffs.items()}, self.spec)

    def reflect(self) -> "TruncatedSeries":
        """
        Substitutes z -> 1/z, exchanging the two completions
        """
        return TruncatedSeries._raw(self.direction.opposite, -self.high, -self.low,
                                    {-d: c for d, c in self._coeffs.items()}, self.spec)

    def restrict(self, low: int, high: int) -> "TruncatedSeries":
        """
        Narrows the known window to [low, high] intersected with the current one.
        On the vanishing side the window may be extended freely.
        """
        if self.direction is Direction.AT_ZERO:
            new_low, new_high = low, min(high, self.high)
            if new_low > self.high:
                raise EmptyWindow(f"[{low}, {high}] lies beyond the known window [{self.low}, {self.high}]")
        else:
            new_low, new_high = max(low, self.low), high
            if new_high < self.low:
                raise EmptyWindow(f"[{low}, {high}] lies beyond the known window [{self.low}, {self.high}]")
        if new_high < new_low:
            raise EmptyWindow(f"window [{new_low}, {new_high}] is empty")
        dropped = [d for d in self._coeffs if d < new_low or d > new_high]
        if self.direction is Direction.AT_ZERO and any(d < new_low for d in dropped):
            raise WindowTooSmall(f"series has nonzero terms below {new_low}")
        if self.direction is Direction.AT_INFINITY and any(d > new_high for d in dropped):
            raise WindowTooSmall(f"series has nonzero terms above {new_high}")
        return TruncatedSeries._raw(self.direction, new_low, new_high, self._coeffs, self.spec)

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient],
                         spec: Optional[AlgebraSpec] = None) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.direction, self.low, self.high,
                                    {d: fn(c) for d, c in self._coeffs.items()}, spec)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.direction is other.direction and self.window == other.window
                and self.spec == other.spec and self._coeffs == other._coeffs)

    def __repr__(self):
        terms = ", ".join(f"{d}: {c}" for d, c in self._coeffs.items())
        return f"TruncatedSeries({self.direction.value}, [{self.low}, {self.high}], {{{terms}}})"


def embed(p: LaurentPoly, direction: Union[str, Direction], order: int) -> TruncatedSeries:
    """
    Lossless re-window of a polynomial into one of the two series rings.

    :param p: Polynomial to embed
    :param direction: Target completion
    :param order: Truncation bound: the top of the window at z=0, the bottom at z=infinity

    :raises WindowTooSmall: when the support of ``p`` crosses the truncation bound
    """
    direction = get_direction(direction)
    if p.is_zero:
        return TruncatedSeries._raw(direction, order, order, {}, p.spec)
    if direction is Direction.AT_ZERO:
        if order < p.high:
            raise WindowTooSmall(f"order {order} is below the top degree {p.high}")
        return TruncatedSeries._raw(direction, p.low, order, p.to_dict(), p.spec)
    if order > p.low:
        raise WindowTooSmall(f"order {order} is above the bottom degree {p.low}")
    return TruncatedSeries._raw(direction, order, p.high, p.to_dict(), p.spec)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """
    Sum, known wherever both summands are known
    """
    a._check(b)
    if a.direction is Direction.AT_ZERO:
        low, high = min(a.low, b.low), min(a.high, b.high)
    else:
        low, high = max(a.low, b.low), max(a.high, b.high)
    out = dict(a._coeffs)
    for d, c in b._coeffs.items():
        out[d] = out[d] + c if d in out else c
    return TruncatedSeries._raw(a.direction, low, high, out, a.spec)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """
    Cauchy product truncated to the degrees where it is determined by the known coefficients
    """
    a._check(b)
    if a.direction is Direction.AT_ZERO:
        low = a.low + b.low
        high = min(a.high + b.low, b.high + a.low)
    else:
        high = a.high + b.high
        low = max(a.low + b.high, b.low + a.high)
    out: Dict[int, Coefficient] = {}
    for i, x in a._coeffs.items():
        for j, y in b._coeffs.items():
            d = i + j
            if low <= d <= high:
                out[d] = out[d] + x * y if d in out else x * y
    return TruncatedSeries._raw(a.direction, low, high, out, a.spec)
