"""
Bundled example spaces. Builders for whole families live next to the registry;
every registered example is a zero-argument function returning an ExampleRecord.
"""
from fractions import Fraction
from typing import Callable, Dict, List

from loclaurent.algebra import AlgebraSpec
from loclaurent.errors import LocLaurentError
from loclaurent.laurent import LaurentPoly
from loclaurent.localization import FixedComponent, ManifoldData, NormalSummand
from loclaurent.verification import CutTriple
from loclaurent.verification.suite import ExampleRecord

# specifies a dictionary of example builders
_EXAMPLES: Dict[str, Callable[[], ExampleRecord]] = {}  # registry


def register_example(name):
    """Decorator used to register an example builder
    Args:
        name: Name of the example, defaults to the function name
    """

    def register_builder(fn, name):
        _EXAMPLES[name] = fn
        return fn

    if isinstance(name, str):
        return lambda fn: register_builder(fn, name)

    fn = name
    return register_builder(fn, fn.__name__.replace("_", "-"))


def example_names() -> List[str]:
    return sorted(_EXAMPLES)


def get_example(name: str) -> ExampleRecord:
    """
    Builds the bundled example with the given name
    """
    if name not in _EXAMPLES:
        raise LocLaurentError(f"unknown example `{name}`. Bundled examples are: {example_names()}")
    return _EXAMPLES[name]()


def bundled_records() -> List[ExampleRecord]:
    return [get_example(name) for name in example_names()]


# === FAMILIES ===


def sphere(a: int, b: int) -> ManifoldData:
    """
    The 2-sphere rotated once around its axis, with a line bundle of degree a + b:
    south pole at phi=-a (weight +1), north pole at phi=b (weight -1).
    Q(M) = z^-b + ... + z^a.
    """
    return ManifoldData(
        (FixedComponent.point("south", -a, [(1, 1)]), FixedComponent.point("north", b, [(-1, 1)])),
        metadata=f"rotated sphere, bundle degree {a + b}",
    )


def sphere_character(a: int, b: int) -> LaurentPoly:
    return LaurentPoly({k: 1 for k in range(-b, a + 1)})


def cp2_triangle(d: int) -> ManifoldData:
    """
    The projective plane with O(d) and the subcircle (1, 2) of the standard torus.
    Fixed points are the vertices of the moment triangle with corners (0,0), (d,0), (0,d).
    """
    return ManifoldData(
        (
            FixedComponent.point("v00", 0, [(1, 1), (2, 1)]),
            FixedComponent.point("vd0", d, [(-1, 1), (1, 1)]),
            FixedComponent.point("v0d", 2 * d, [(-2, 1), (-1, 1)]),
        ),
        metadata=f"CP2 with O({d}), subcircle (1,2)",
    )


def triangle_character(d: int) -> LaurentPoly:
    """
    Lattice points (p1, p2) of the dilated triangle, each contributing z^-(p1 + 2 p2)
    """
    counts: Dict[int, int] = {}
    for p1 in range(d + 1):
        for p2 in range(d - p1 + 1):
            counts[-(p1 + 2 * p2)] = counts.get(-(p1 + 2 * p2), 0) + 1
    return LaurentPoly(counts)


def projective_line_component(label: str, moment_weight: int, degree: int, normal_weight: int) -> FixedComponent:
    """
    A fixed projective line carrying O(degree), with normal bundle O(1) of the given weight.
    K-theory is Q[eta]/(eta^2) with eta = O(1) - 1, so O(n) = 1 + n*eta; the conjugated
    normal class is O(-1) = 1 - eta. The pushforward is the Euler characteristic:
    q(1) = 1, q(eta) = 1.
    """
    spec = AlgebraSpec.dual_numbers("eta")
    return FixedComponent(
        label=label,
        moment_weight=moment_weight,
        line_class=spec.element([1, degree]),
        normal=(NormalSummand(normal_weight, 1, (spec.one(), spec.element([1, -1]))),),
        pushforward=(Fraction(1), Fraction(1)),
        spec=spec,
    )


def cp2_line(d: int, c: int) -> ManifoldData:
    """
    The projective plane with O(d) and the subcircle (1, 0), moment map shifted by -c:
    the line x=0 is fixed at phi=-c, the vertex (d,0) is isolated at phi=d-c.
    Q(M) = sum_j (d - j + 1) z^(c - j).
    """
    return ManifoldData(
        (
            projective_line_component("line", -c, d, 1),
            FixedComponent.point("vertex", d - c, [(-1, 2)]),
        ),
        metadata=f"CP2 with O({d}), subcircle (1,0), shift {c}",
    )


# === REGISTERED EXAMPLES ===


@register_example("sphere(1,1)")
def _sphere_1_1() -> ExampleRecord:
    return ExampleRecord("sphere(1,1)", sphere(1, 1), sphere_character(1, 1), 1,
                         "H0 of O(2) on the projective line: 3 weights, one of them trivial")


@register_example("sphere(3,1)")
def _sphere_3_1() -> ExampleRecord:
    return ExampleRecord("sphere(3,1)", sphere(3, 1), sphere_character(3, 1), 1,
                         "same phi>0 data as sphere(1,1); lattice count of [-1, 3]")


@register_example
def shifted_sphere() -> ExampleRecord:
    return ExampleRecord("shifted-sphere", sphere(0, 2), sphere_character(0, 2), 1,
                         "minimum at 0; geometric series oracle")


@register_example
def point_space() -> ExampleRecord:
    m = ManifoldData((FixedComponent.point("point", 0),), metadata="a single point")
    return ExampleRecord("point-space", m, LaurentPoly.one(), 1, "M is a point")


@register_example("cp2-triangle")
def _cp2_triangle() -> ExampleRecord:
    return ExampleRecord("cp2-triangle", cp2_triangle(3), triangle_character(3), 1,
                         "lattice points of the triangle of size 3 sliced by p1 + 2 p2")


@register_example
def dual_number_synthetic() -> ExampleRecord:
    """
    Sphere(1,1) times a projective line with trivial action and O(1): each pole becomes a
    fixed projective line with trivial normal twist and q(l) = 2.
    """
    spec = AlgebraSpec.dual_numbers("eta")

    def component(label, phi, weight):
        return FixedComponent(
            label=label,
            moment_weight=phi,
            line_class=spec.element([1, 1]),
            normal=(NormalSummand(weight, 1, (spec.one(), spec.one())),),
            pushforward=(Fraction(1), Fraction(1)),
            spec=spec,
        )

    m = ManifoldData((component("south", -1, 1), component("north", 1, -1)),
                     metadata="sphere times projective line, dual-number coefficients")
    return ExampleRecord("dual-number-synthetic", m, LaurentPoly({-1: 2, 0: 2, 1: 2}), 2,
                         "series expansions at z=0 and z=infinity only")


@register_example("sphere(1,1)-cut")
def _sphere_1_1_cut() -> ExampleRecord:
    plus = ManifoldData((FixedComponent.point("north", 1, [(-1, 1)]), FixedComponent.point("reduced", 0, [(1, 1)])))
    minus = ManifoldData((FixedComponent.point("south", -1, [(1, 1)]), FixedComponent.point("reduced", 0, [(-1, 1)])))
    cut = CutTriple(sphere(1, 1), plus, 1, "reduced space is a point", minus_cut=minus)
    return ExampleRecord("sphere(1,1)-cut", cut, sphere_character(1, 1), 1, "reduced space is a point")


@register_example("sphere(2,2)-cut")
def _sphere_2_2_cut() -> ExampleRecord:
    plus = ManifoldData((FixedComponent.point("north", 2, [(-1, 1)]), FixedComponent.point("reduced", 0, [(1, 1)])))
    cut = CutTriple(sphere(2, 2), plus, 1, "reduced space is a point")
    return ExampleRecord("sphere(2,2)-cut", cut, sphere_character(2, 2), 1, "H0 of O(4): one trivial weight")


@register_example
def cp2_line_cut() -> ExampleRecord:
    """
    CP2 with O(3) cut at the level x = 1 of the subcircle (1,0). The reduced space is the
    projective line over the segment x = 1, carrying O(2).
    """
    d, c = 3, 1
    plus = ManifoldData(
        (projective_line_component("reduced", 0, d - c, 1), FixedComponent.point("vertex", d - c, [(-1, 2)]))
    )
    cut = CutTriple(cp2_line(d, c), plus, d - c + 1, "lattice points on the segment x = 1 of the triangle")
    character = LaurentPoly({c - j: d - j + 1 for j in range(d + 1)})
    return ExampleRecord("cp2-line-cut", cut, character, d - c + 1,
                         "lattice points of the triangle counted by columns")

