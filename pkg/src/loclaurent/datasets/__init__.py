"""
Dataset files: JSON documents describing fixed-point data, an optional positive
cut and the expected outputs. Rationals are written as "p/q" strings (plain
integers are accepted) and are never parsed from floats.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, StrictInt, ValidationError

from loclaurent.algebra import AlgebraElement, AlgebraSpec
from loclaurent.errors import DatasetParseError
from loclaurent.laurent import LaurentPoly
from loclaurent.localization import FixedComponent, ManifoldData, NormalSummand
from loclaurent.utils import format_rational, to_scalar
from loclaurent.verification import CutTriple
from loclaurent.verification.suite import ExampleRecord

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
POINT_ALGEBRA = "point"

RationalText = Union[StrictInt, str]
ElementText = Union[StrictInt, str, List[RationalText]]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class AlgebraModel(_Model):
    basis: List[str]
    structure_constants: List[List[List[RationalText]]]
    unit: List[RationalText]


class SummandModel(_Model):
    weight: StrictInt
    rank: StrictInt = 1
    exterior_powers: Optional[List[ElementText]] = None


class ComponentModel(_Model):
    label: str
    phi: StrictInt
    line_class: ElementText = 1
    summands: List[SummandModel] = []
    pushforward: Optional[List[RationalText]] = None
    algebra: Optional[str] = None


class CutModel(_Model):
    plus_components: List[ComponentModel]
    minus_components: Optional[List[ComponentModel]] = None
    reduced_quantization: StrictInt
    note: str = ""
    free_on_zero_level: bool = True


class ExpectedModel(_Model):
    character: Optional[List[Tuple[StrictInt, RationalText]]] = None
    invariant: Optional[StrictInt] = None
    note: str = ""


class DatasetFile(_Model):
    """
    On-disk layout of a dataset, ``schema_version`` 1.

    In point mode every component is an isolated fixed point: exterior powers
    default to binomial coefficients and the pushforward to (1). In algebra mode
    components live over the top-level ``algebra`` unless they name one of
    ``algebras`` (or "point") in their own ``algebra`` field.
    """
    schema_version: Literal[1]
    mode: Literal["point", "algebra"]
    name: str = ""
    metadata: str = ""
    algebra: Optional[AlgebraModel] = None
    algebras: Dict[str, AlgebraModel] = {}
    components: List[ComponentModel]
    cut: Optional[CutModel] = None
    expected: Optional[ExpectedModel] = None


@dataclass(frozen=True)
class Dataset:
    """
    A parsed dataset file
    """
    name: str
    mode: str
    manifold: ManifoldData
    cut: Optional[CutTriple] = None
    expected_character: Optional[LaurentPoly] = None
    expected_invariant: Optional[int] = None
    note: str = ""

    def as_record(self) -> ExampleRecord:
        return ExampleRecord(
            name=self.name,
            data=self.cut if self.cut is not None else self.manifold,
            expected_character=self.expected_character,
            expected_invariant=self.expected_invariant,
            note=self.note,
        )


def loc_to_path(loc: Sequence[Union[str, int]]) -> str:
    """
    ("components", 1, "summands", 0, "weight") -> "components[1].summands[0].weight"
    """
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


# === FILE -> DATA ===


def _scalar(value, path: str) -> Fraction:
    try:
        return to_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise DatasetParseError(f"{path}: {e}")


def _algebra(model: AlgebraModel, path: str) -> AlgebraSpec:
    d = len(model.basis)
    if d == 0:
        raise DatasetParseError(f"{path}.basis: at least one basis vector is required")
    if len(model.unit) != d:
        raise DatasetParseError(f"{path}.unit: expected {d} coordinates, got {len(model.unit)}")
    if len(model.structure_constants) != d or any(
        len(plane) != d or any(len(row) != d for row in plane) for plane in model.structure_constants
    ):
        raise DatasetParseError(f"{path}.structure_constants: expected a {d}x{d}x{d} array")
    constants = [[[_scalar(c, f"{path}.structure_constants[{i}][{j}][{k}]") for k, c in enumerate(row)]
                  for j, row in enumerate(plane)] for i, plane in enumerate(model.structure_constants)]
    unit = [_scalar(u, f"{path}.unit[{i}]") for i, u in enumerate(model.unit)]
    return AlgebraSpec.build(model.basis, constants, unit)


def _element(value, spec: AlgebraSpec, path: str) -> AlgebraElement:
    if isinstance(value, list):
        if len(value) != spec.dimension:
            raise DatasetParseError(f"{path}: expected {spec.dimension} coordinates, got {len(value)}")
        return spec.element([_scalar(c, f"{path}[{i}]") for i, c in enumerate(value)])
    return spec.scalar(_scalar(value, path))


def _component(model: ComponentModel, spec: AlgebraSpec, path: str) -> FixedComponent:
    normal = []
    for i, s in enumerate(model.summands):
        spath = f"{path}.summands[{i}]"
        if s.exterior_powers is None:
            powers = tuple(spec.scalar(comb(s.rank, j)) for j in range(max(s.rank, 0) + 1))
        else:
            powers = tuple(_element(e, spec, f"{spath}.exterior_powers[{j}]") for j, e in enumerate(s.exterior_powers))
        normal.append(NormalSummand(s.weight, s.rank, powers))

    if model.pushforward is None:
        if not spec.is_point:
            raise DatasetParseError(f"{path}.pushforward: required for components over a non-point algebra")
        pushforward = (Fraction(1),)
    else:
        pushforward = tuple(_scalar(q, f"{path}.pushforward[{i}]") for i, q in enumerate(model.pushforward))

    return FixedComponent(
        label=model.label,
        moment_weight=model.phi,
        line_class=_element(model.line_class, spec, f"{path}.line_class"),
        normal=tuple(normal),
        pushforward=pushforward,
        spec=spec,
    )


def _components(models: Sequence[ComponentModel], file: DatasetFile, default: Optional[AlgebraSpec],
                named: Dict[str, AlgebraSpec], path: str) -> Tuple[FixedComponent, ...]:
    out = []
    for r, model in enumerate(models):
        cpath = f"{path}[{r}]"
        if file.mode == "point":
            if model.algebra not in (None, POINT_ALGEBRA):
                raise DatasetParseError(f"{cpath}.algebra: point-mode components cannot name an algebra")
            spec = AlgebraSpec.point()
        elif model.algebra == POINT_ALGEBRA:
            spec = AlgebraSpec.point()
        elif model.algebra is not None:
            if model.algebra not in named:
                raise DatasetParseError(f"{cpath}.algebra: unknown algebra `{model.algebra}`")
            spec = named[model.algebra]
        elif default is not None:
            spec = default
        else:
            raise DatasetParseError(f"{cpath}: no algebra given and the file has no top-level algebra")
        out.append(_component(model, spec, cpath))
    return tuple(out)


def dataset_from_model(file: DatasetFile) -> Dataset:
    """
    Builds the in-memory data of a schema-valid file. The data are not validated
    here; see :func:`loclaurent.localization.validate_manifold`.

    :raises DatasetParseError: for values the schema cannot express (bad rationals,
        coordinate counts, unknown algebra names)
    """
    if file.mode == "point" and (file.algebra is not None or file.algebras):
        raise DatasetParseError("algebra: algebra sections are only allowed in algebra mode")
    if POINT_ALGEBRA in file.algebras:
        raise DatasetParseError(f"algebras.{POINT_ALGEBRA}: the name is reserved")
    default = _algebra(file.algebra, "algebra") if file.algebra is not None else None
    named = {name: _algebra(model, f"algebras.{name}") for name, model in sorted(file.algebras.items())}

    manifold = ManifoldData(_components(file.components, file, default, named, "components"), file.metadata)
    cut = None
    if file.cut is not None:
        minus = None
        if file.cut.minus_components is not None:
            minus = ManifoldData(_components(file.cut.minus_components, file, default, named, "cut.minus_components"))
        cut = CutTriple(
            original=manifold,
            plus_cut=ManifoldData(_components(file.cut.plus_components, file, default, named, "cut.plus_components")),
            reduced_quantization=file.cut.reduced_quantization,
            note=file.cut.note,
            minus_cut=minus,
            free_on_zero_level=file.cut.free_on_zero_level,
        )

    expected_character, expected_invariant, note = None, None, ""
    if file.expected is not None:
        if file.expected.character is not None:
            expected_character = LaurentPoly(
                {d: _scalar(c, f"expected.character[{i}][1]") for i, (d, c) in enumerate(file.expected.character)}
            )
        expected_invariant = file.expected.invariant
        note = file.expected.note

    return Dataset(file.name, file.mode, manifold, cut, expected_character, expected_invariant, note)


def parse_dataset(text: str) -> Dataset:
    """
    Parses the JSON text of a dataset file.

    :raises DatasetParseError: with ``line L column C`` for malformed JSON and a
        dotted field path for schema violations
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DatasetParseError(f"line {e.lineno} column {e.colno}: {e.msg}")
    try:
        file = DatasetFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise DatasetParseError(f"{loc_to_path(first['loc']) or '<root>'}: {first['msg']}")
    return dataset_from_model(file)


def load_dataset(path: str) -> Dataset:
    """
    Reads and parses a dataset file

    :param path: Path to a JSON dataset
    :type path: str
    """
    try:
        with open(path, mode="r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise DatasetParseError(f"cannot read `{path}`: {e.strerror}")
    dataset = parse_dataset(text)
    logger.debug("loaded `%s` with %d components", path, len(dataset.manifold.components))
    return dataset


# === DATA -> FILE ===


def _algebra_model(spec: AlgebraSpec) -> AlgebraModel:
    return AlgebraModel(
        basis=list(spec.basis_labels),
        structure_constants=[[[format_rational(c) for c in row] for row in plane] for plane in spec.structure_constants],
        unit=[format_rational(u) for u in spec.unit],
    )


def _element_text(a: AlgebraElement) -> ElementText:
    if a.spec.is_point:
        return format_rational(a.coords[0])
    return [format_rational(c) for c in a.coords]


def _component_model(c: FixedComponent, mode: str, names: Dict[AlgebraSpec, Optional[str]]) -> ComponentModel:
    summands = []
    for s in c.normal:
        binomial = tuple(c.spec.scalar(comb(s.rank, j)) for j in range(s.rank + 1))
        powers = None if s.exterior_powers == binomial else [_element_text(e) for e in s.exterior_powers]
        summands.append(SummandModel(weight=s.weight, rank=s.rank, exterior_powers=powers))
    return ComponentModel(
        label=c.label,
        phi=c.moment_weight,
        line_class=_element_text(c.line_class),
        summands=summands,
        pushforward=None if c.is_point_mode else [format_rational(q) for q in c.pushforward],
        algebra=None if mode == "point" else names[c.spec],
    )


def record_to_model(record: ExampleRecord, metadata: Optional[str] = None) -> DatasetFile:
    """
    Serializable form of an example record. Point mode is used when every component
    (cut spaces included) is an isolated point.
    """
    spaces = [record.manifold]
    cut = record.cut
    if cut is not None:
        spaces += [cut.plus_cut] + ([cut.minus_cut] if cut.minus_cut is not None else [])
    components = [c for m in spaces for c in m.components]
    mode = "point" if all(c.is_point_mode for c in components) else "algebra"

    # first non-point algebra becomes the top-level one, later ones are named
    names: Dict[AlgebraSpec, Optional[str]] = {AlgebraSpec.point(): POINT_ALGEBRA}
    algebra, algebras = None, {}
    for c in components:
        if c.spec in names:
            continue
        if algebra is None:
            algebra = c.spec
            names[c.spec] = None
        else:
            name = f"algebra{len(algebras) + 1}"
            algebras[name] = _algebra_model(c.spec)
            names[c.spec] = name

    def models(m: ManifoldData) -> List[ComponentModel]:
        return [_component_model(c, mode, names) for c in m.components]

    expected = None
    if record.expected_character is not None or record.expected_invariant is not None or record.note:
        expected = ExpectedModel(
            character=None if record.expected_character is None else
            [(d, format_rational(c)) for d, c in record.expected_character.items()],
            invariant=record.expected_invariant,
            note=record.note,
        )

    return DatasetFile(
        schema_version=SCHEMA_VERSION,
        mode=mode,
        name=record.name,
        metadata=record.manifold.metadata if metadata is None else metadata,
        algebra=None if algebra is None else _algebra_model(algebra),
        algebras=algebras,
        components=models(record.manifold),
        cut=None if cut is None else CutModel(
            plus_components=models(cut.plus_cut),
            minus_components=None if cut.minus_cut is None else models(cut.minus_cut),
            reduced_quantization=cut.reduced_quantization,
            note=cut.note,
            free_on_zero_level=cut.free_on_zero_level,
        ),
        expected=expected,
    )


def dump_dataset(record: ExampleRecord) -> str:
    """
    JSON text of a record, stable across runs
    """
    return record_to_model(record).model_dump_json(indent=2, exclude_none=True) + "\n"


def write_dataset(record: ExampleRecord, path: str):
    with open(path, mode="w", encoding="utf-8") as f:
        f.write(dump_dataset(record))
    logger.info("wrote `%s` to %s", record.name, path)
