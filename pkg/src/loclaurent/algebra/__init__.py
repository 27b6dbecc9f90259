"""
Finite-dimensional commutative unital algebras over the rationals, given by
structure constants. These stand in for the rationalized K-theory of a fixed
component; the point algebra is the ground field itself.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from loclaurent.errors import NotAUnit, SpecMismatch
from loclaurent.utils import RationalLike, to_scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AxiomViolation:
    """
    First failure found while validating an algebra.

    :param axiom: One of "shape", "commutativity", "associativity", "unit"
    :param indices: Basis indices at which the axiom fails
    :param message: Human readable description
    """
    axiom: str
    indices: Tuple[int, ...]
    message: str


@dataclass(frozen=True)
class AlgebraReport:
    """
    Outcome of :func:`algebra_validate`. ``violation`` is None exactly when the algebra passes.
    """
    violation: Optional[AxiomViolation] = None

    @property
    def passed(self) -> bool:
        return self.violation is None


@dataclass(frozen=True, eq=True)
class AlgebraSpec:
    """
    Commutative algebra with basis e_0..e_{d-1} and e_i * e_j = sum_k c[i][j][k] e_k.

    :param basis_labels: Names of the basis vectors, length d
    :type basis_labels: Tuple[str]

    :param structure_constants: d x d x d nested tuple of Fractions
    :type structure_constants: Tuple[Tuple[Tuple[Fraction]]]

    :param unit: Coordinates of the multiplicative unit, length d
    :type unit: Tuple[Fraction]
    """
    basis_labels: Tuple[str, ...]
    structure_constants: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    unit: Tuple[Fraction, ...]
    _products: Tuple[Tuple[int, int, int, Fraction], ...] = field(
        default=(), init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        # sparse list of nonzero constants, used by every multiplication
        d = len(self.basis_labels)
        products = []
        for i in range(min(d, len(self.structure_constants))):
            for j in range(min(d, len(self.structure_constants[i]))):
                for k, c in enumerate(self.structure_constants[i][j][:d]):
                    if c:
                        products.append((i, j, k, c))
        object.__setattr__(self, "_products", tuple(products))

    @property
    def dimension(self) -> int:
        return len(self.basis_labels)

    @classmethod
    def build(
        cls,
        basis_labels: Sequence[str],
        structure_constants: Sequence[Sequence[Sequence[RationalLike]]],
        unit: Sequence[RationalLike],
    ) -> "AlgebraSpec":
        """
        Builds a spec from loosely typed nested sequences (ints, "p/q" strings or Fractions).
        No axiom is checked here; see :func:`algebra_validate`.
        """
        constants = tuple(
            tuple(tuple(to_scalar(c) for c in row) for row in plane)
            for plane in structure_constants
        )
        return cls(tuple(basis_labels), constants, tuple(to_scalar(u) for u in unit))

    @classmethod
    def point(cls) -> "AlgebraSpec":
        """
        The ground field: K-theory of a point.
        """
        return cls.build(["1"], [[[1]]], [1])

    @classmethod
    def dual_numbers(cls, label : str = "eps") -> "AlgebraSpec":
        """
        Q[eps]/(eps^2), basis {1, eps}. This is also the rationalized K-theory of the
        projective line with eps = O(1) - 1.
        """
        return cls.build(
            ["1", label],
            [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
            [1, 0],
        )

    def element(self, coords: Sequence[RationalLike]) -> "AlgebraElement":
        return AlgebraElement(self, tuple(to_scalar(c) for c in coords))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (Fraction(0),) * self.dimension)

    def basis(self, i : int) -> "AlgebraElement":
        coords = [Fraction(0)] * self.dimension
        coords[i] = Fraction(1)
        return AlgebraElement(self, tuple(coords))

    def scalar(self, value: RationalLike) -> "AlgebraElement":
        """
        value * unit
        """
        return to_scalar(value) * self.one()

    @property
    def is_point(self) -> bool:
        return self.dimension == 1 and self.structure_constants == (((Fraction(1),),),) and self.unit == (Fraction(1),)


@dataclass(frozen=True)
class AlgebraElement:
    """
    Element of an :class:`AlgebraSpec` in coordinates.

    Supports ``+``, ``-``, ``*`` (with elements and with rational scalars) and truthiness
    (False exactly for zero).
    """
    spec: AlgebraSpec
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.spec.dimension:
            raise SpecMismatch(
                f"element has {len(self.coords)} coordinates but its algebra has dimension {self.spec.dimension}"
            )

    def _check(self, other: "AlgebraElement"):
        if self.spec != other.spec:
            raise SpecMismatch("elements belong to different coefficient algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return alg_add(self, other)

    def __neg__(self):
        return AlgebraElement(self.spec, tuple(-c for c in self.coords))

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return alg_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            factor = Fraction(other)
            return AlgebraElement(self.spec, tuple(factor * c for c in self.coords))
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coords)

    def is_unit(self) -> bool:
        try:
            alg_invert(self)
        except NotAUnit:
            return False
        return True

    def inverse(self) -> "AlgebraElement":
        return alg_invert(self)

    def __repr__(self):
        terms = [f"{c}*{label}" for c, label in zip(self.coords, self.spec.basis_labels) if c]
        return "AlgebraElement(" + (" + ".join(terms) if terms else "0") + ")"


def algebra_validate(spec: AlgebraSpec) -> AlgebraReport:
    """
    Checks shape, commutativity, associativity and the unit law coordinate-wise.
    Reports the first violated axiom together with the offending basis indices.

    :param spec: Algebra to check
    :type spec: AlgebraSpec

    :rtype: AlgebraReport
    """
    d = spec.dimension
    c = spec.structure_constants
    if d < 1:
        return AlgebraReport(AxiomViolation("shape", (), "dimension must be positive"))
    if len(spec.unit) != d:
        return AlgebraReport(AxiomViolation("shape", (), f"unit has length {len(spec.unit)}, expected {d}"))
    if len(c) != d or any(len(plane) != d for plane in c) or any(len(row) != d for plane in c for row in plane):
        return AlgebraReport(AxiomViolation("shape", (), f"structure constants must be a {d}x{d}x{d} array"))

    for i in range(d):
        for j in range(i + 1, d):
            if c[i][j] != c[j][i]:
                return AlgebraReport(AxiomViolation(
                    "commutativity", (i, j),
                    f"e_{i}*e_{j} != e_{j}*e_{i}",
                ))

    for i in range(d):
        for j in range(d):
            for l in range(d):
                # (e_i e_j) e_l vs e_i (e_j e_l), coordinate m
                for m in range(d):
                    left = sum(c[i][j][k] * c[k][l][m] for k in range(d))
                    right = sum(c[j][l][k] * c[i][k][m] for k in range(d))
                    if left != right:
                        return AlgebraReport(AxiomViolation(
                            "associativity", (i, j, l),
                            f"(e_{i}*e_{j})*e_{l} != e_{i}*(e_{j}*e_{l}) in coordinate {m}",
                        ))

    one = spec.one()
    for i in range(d):
        if alg_mul(one, spec.basis(i)) != spec.basis(i):
            return AlgebraReport(AxiomViolation("unit", (i,), f"unit*e_{i} != e_{i}"))

    return AlgebraReport()


def alg_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """
    Coordinate-wise exact sum
    """
    a._check(b)
    return AlgebraElement(a.spec, tuple(x + y for x, y in zip(a.coords, b.coords)))


def alg_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """
    Bilinear product through the structure constants
    """
    a._check(b)
    out = [Fraction(0)] * a.spec.dimension
    x, y = a.coords, b.coords
    for i, j, k, c in a.spec._products:
        if x[i] and y[j]:
            out[k] += c * x[i] * y[j]
    return AlgebraElement(a.spec, tuple(out))


def multiplication_matrix(a: AlgebraElement) -> List[List[Fraction]]:
    """
    Matrix of b -> a*b; column j holds the coordinates of a*e_j
    """
    d = a.spec.dimension
    columns = [alg_mul(a, a.spec.basis(j)).coords for j in range(d)]
    return [[columns[j][i] for j in range(d)] for i in range(d)]


def alg_invert(a: AlgebraElement) -> AlgebraElement:
    """
    Returns b with a*b = unit by solving the linear system of multiplication by a.

    :raises NotAUnit: when the multiplication matrix is singular
    """
    spec = a.spec
    if spec.dimension == 1:
        # a*e_0 = a_0 c_000 e_0
        m = a.coords[0] * spec.structure_constants[0][0][0]
        if m == 0:
            raise NotAUnit(f"{a!r} is not a unit")
        return AlgebraElement(spec, (spec.unit[0] / m,))

    matrix = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row]
                           for row in multiplication_matrix(a)])
    if matrix.det() == 0:
        raise NotAUnit(f"{a!r} is not a unit")
    rhs = sympy.Matrix([sympy.Rational(u.numerator, u.denominator) for u in spec.unit])
    solution = matrix.LUsolve(rhs)
    b = AlgebraElement(spec, tuple(Fraction(int(v.p), int(v.q)) for v in solution))
    logger.debug("inverted %r -> %r", a, b)
    return b
