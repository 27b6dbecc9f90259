"""
Fixed-point data of a Hamiltonian circle space: for each fixed component its
moment value, the restriction of the prequantum line bundle (with trivial
action), the weight decomposition of its conjugated normal bundle, and the
pushforward to a point.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

from loclaurent.algebra import AlgebraElement, AlgebraSpec, algebra_validate
from loclaurent.errors import SpecMismatch
from loclaurent.laurent import LaurentPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalSummand:
    """
    Weight-k isotypic piece of the conjugated normal bundle of a fixed component.

    :param weight: Nonzero circle weight k
    :type weight: int

    :param rank: Rank n of the piece
    :type rank: int

    :param exterior_powers: Classes of Lambda^0, ..., Lambda^n
    :type exterior_powers: Tuple[AlgebraElement]
    """
    weight: int
    rank: int
    exterior_powers: Tuple[AlgebraElement, ...]

    @classmethod
    def point(cls, weight: int, rank: int = 1, spec: AlgebraSpec = None) -> "NormalSummand":
        """
        Summand over a point (or trivial over any component): Lambda^j = C(n, j)
        """
        spec = spec or AlgebraSpec.point()
        return cls(weight, rank, tuple(spec.scalar(comb(rank, j)) for j in range(rank + 1)))

    @property
    def determinant(self) -> AlgebraElement:
        """
        Top exterior power
        """
        return self.exterior_powers[-1]


@dataclass(frozen=True)
class FixedComponent:
    """
    One connected component F_r of the fixed point set.

    :param label: Name of the component
    :param moment_weight: Integer moment value phi_r
    :param line_class: Class l_r of the line bundle restricted to F_r
    :param normal: Normal summands with pairwise distinct weights
    :param pushforward: Linear functional q_! on the basis of the algebra
    :param spec: Rationalized K-theory of F_r
    """
    label: str
    moment_weight: int
    line_class: AlgebraElement
    normal: Tuple[NormalSummand, ...]
    pushforward: Tuple[Fraction, ...]
    spec: AlgebraSpec

    @classmethod
    def point(cls, label: str, moment_weight: int, weights: Sequence[Tuple[int, int]] = (),
              line_class=1) -> "FixedComponent":
        """
        Isolated fixed point.

        :param weights: (weight, rank) pairs of the normal representation
        :param line_class: Rational multiple of the trivial class
        """
        spec = AlgebraSpec.point()
        return cls(
            label=label,
            moment_weight=moment_weight,
            line_class=spec.scalar(line_class),
            normal=tuple(NormalSummand.point(w, n, spec) for w, n in weights),
            pushforward=(Fraction(1),),
            spec=spec,
        )

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(s.weight for s in self.normal)

    @property
    def positive_weights(self) -> Tuple[int, ...]:
        return tuple(w for w in self.weights if w > 0)

    @property
    def negative_weights(self) -> Tuple[int, ...]:
        return tuple(w for w in self.weights if w < 0)

    @property
    def is_point_mode(self) -> bool:
        return self.spec.is_point and self.pushforward == (Fraction(1),)

    def push(self, a: AlgebraElement) -> Fraction:
        """
        Applies q_! to a class of F_r
        """
        if a.spec != self.spec:
            raise SpecMismatch(f"class does not live on component {self.label}")
        return sum((q * c for q, c in zip(self.pushforward, a.coords)), Fraction(0))

    def push_poly(self, p: LaurentPoly) -> LaurentPoly:
        """
        Applies q_! coefficientwise
        """
        return p.map_coefficients(self.push, None)

    def data_key(self) -> tuple:
        """
        Everything but the label; two components with equal keys are the same fixed-point data
        """
        return (self.moment_weight, self.line_class, tuple(sorted(self.normal, key=lambda s: s.weight)),
                self.pushforward, self.spec)


@dataclass(frozen=True)
class ManifoldData:
    """
    Localization-relevant shadow of a compact Hamiltonian circle space.

    :param components: Fixed components
    :param metadata: Free text provenance
    """
    components: Tuple[FixedComponent, ...]
    metadata: str = ""

    @property
    def phi_min(self) -> int:
        return min(c.moment_weight for c in self.components)

    @property
    def phi_max(self) -> int:
        return max(c.moment_weight for c in self.components)

    @property
    def is_point_mode(self) -> bool:
        return all(c.is_point_mode for c in self.components)

    def positive_part(self) -> Tuple[FixedComponent, ...]:
        """
        Components with phi_r > 0
        """
        return tuple(c for c in self.components if c.moment_weight > 0)

    def at_level(self, level: int) -> Tuple[FixedComponent, ...]:
        return tuple(c for c in self.components if c.moment_weight == level)

    def is_minimum(self, c: FixedComponent) -> bool:
        """
        Whether c sits at the minimum of the moment map; for valid data this holds exactly when P_r = 1
        """
        return c.moment_weight == self.phi_min

    def is_maximum(self, c: FixedComponent) -> bool:
        return c.moment_weight == self.phi_max


@dataclass(frozen=True)
class Violation:
    """
    One failed check, located by a dotted path into the data
    """
    path: str
    message: str

    def __str__(self):
        return f"{self.path}: {self.message}"


@dataclass
class ValidationReport:
    """
    All violations found by :func:`validate_manifold`; passes when empty
    """
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, path: str, message: str):
        self.violations.append(Violation(path, message))

    def extend(self, other: "ValidationReport", prefix: str = "", context: str = ""):
        for v in other.violations:
            message = f"{v.message} ({context})" if context else v.message
            self.violations.append(Violation(prefix + v.path, message))


def validate_component(c: FixedComponent, path: str = "") -> ValidationReport:
    """
    Checks one component in isolation: algebra axioms, classes living in its algebra,
    pushforward length, summand shapes, distinct nonzero weights and unit determinants.
    """
    report = ValidationReport()
    algebra = algebra_validate(c.spec)
    if not algebra.passed:
        v = algebra.violation
        report.add(f"{path}algebra", f"{v.axiom} fails at {v.indices}: {v.message}")
        return report
    if c.line_class.spec != c.spec:
        report.add(f"{path}line_class", "does not live in the component's algebra")
    if len(c.pushforward) != c.spec.dimension:
        report.add(f"{path}pushforward", f"has length {len(c.pushforward)}, expected {c.spec.dimension}")

    seen = {}
    for i, s in enumerate(c.normal):
        spath = f"{path}summands[{i}]"
        if s.weight == 0:
            report.add(f"{spath}.weight", "weight 0 cannot occur in a normal bundle")
        if s.rank < 1:
            report.add(f"{spath}.rank", f"rank must be positive, got {s.rank}")
            continue
        if s.weight in seen:
            report.add(f"{spath}.weight", f"weight {s.weight} repeats summand {seen[s.weight]}")
        seen.setdefault(s.weight, i)
        if len(s.exterior_powers) != s.rank + 1:
            report.add(f"{spath}.exterior_powers",
                       f"expected {s.rank + 1} classes for rank {s.rank}, got {len(s.exterior_powers)}")
            continue
        if any(e.spec != c.spec for e in s.exterior_powers):
            report.add(f"{spath}.exterior_powers", "classes do not live in the component's algebra")
            continue
        if s.exterior_powers[0] != c.spec.one():
            report.add(f"{spath}.exterior_powers[0]", "Lambda^0 must be the unit")
        if c.spec.is_point:
            expected = tuple(c.spec.scalar(comb(s.rank, j)) for j in range(s.rank + 1))
            if s.exterior_powers != expected:
                report.add(f"{spath}.exterior_powers", "over a point Lambda^j must be the binomial coefficient C(n, j)")
        if not s.determinant.is_unit():
            report.add(f"{spath}.exterior_powers[{s.rank}]", "top exterior power is not a unit")
    return report


def validate_manifold(m: ManifoldData) -> ValidationReport:
    """
    Validates fixed-point data. Besides the per-component checks, the only
    extrema of the moment map are the global ones: a component has no negative
    weights exactly when it sits at the minimum, and no positive weights exactly
    when it sits at the maximum.

    :param m: Data to validate
    :type m: ManifoldData

    :return: Report listing every violation
    :rtype: ValidationReport
    """
    report = ValidationReport()
    if not m.components:
        report.add("components", "at least one fixed component is required")
        return report

    phi_min, phi_max = m.phi_min, m.phi_max
    labels = set()
    for r, c in enumerate(m.components):
        path = f"components[{r}]"
        if c.label in labels:
            report.add(f"{path}.label", f"label `{c.label}` is used twice")
        labels.add(c.label)
        report.extend(validate_component(c), prefix=f"{path}.", context=f"component `{c.label}`")

        no_negative = not c.negative_weights
        no_positive = not c.positive_weights
        at_min = c.moment_weight == phi_min
        at_max = c.moment_weight == phi_max
        if no_negative and not at_min:
            report.add(path, f"component `{c.label}` at phi={c.moment_weight} has no negative weights but the minimum is {phi_min} (a local minimum)")
        if at_min and not no_negative:
            report.add(path, f"component `{c.label}` attains the minimum phi={phi_min} but has negative weights {c.negative_weights}")
        if no_positive and not at_max:
            report.add(path, f"component `{c.label}` at phi={c.moment_weight} has no positive weights but the maximum is {phi_max} (a local maximum)")
        if at_max and not no_positive:
            report.add(path, f"component `{c.label}` attains the maximum phi={phi_max} but has positive weights {c.positive_weights}")

    if report.passed:
        logger.debug("validated %d components, phi in [%d, %d]", len(m.components), phi_min, phi_max)
    else:
        logger.info("validation found %d violations", len(report.violations))
    return report
