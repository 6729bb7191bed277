"""Relational data model: typed cells, schemas, tuples, datasets and FDs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable, NamedTuple, Sequence

from .errors import DegenerateFD, ParseFailure, SchemaMismatch, UnknownAttribute


class Kind(Enum):
    STRING = "string"
    NUMERIC = "numeric"


@dataclass(frozen=True, eq=False, slots=True)
class CellValue:
    """One cell. Numeric cells keep their source text next to the parsed number.

    Equality and hashing use the canonical value: the text for strings and the
    number for numerics, so ``"12.50"`` and ``"12.5"`` are the same numeric cell.
    """

    kind: Kind
    text: str
    number: float | None = None

    def __post_init__(self):
        if self.kind is Kind.NUMERIC:
            if self.number is None:
                raise ParseFailure(f"numeric cell {self.text!r} has no number")
        elif self.number is not None:
            raise ParseFailure(f"string cell {self.text!r} carries a number")

    @classmethod
    def string(cls, text: str) -> CellValue:
        return cls(Kind.STRING, text)

    @classmethod
    def numeric(cls, value: float | str) -> CellValue:
        if isinstance(value, str):
            return cell_kind(value, Kind.NUMERIC)
        return cls(Kind.NUMERIC, repr(float(value)), float(value))

    @property
    def key(self) -> tuple:
        """Canonical comparison key; also a total sort key across kinds."""
        if self.kind is Kind.NUMERIC:
            return (1, self.number, "")
        return (0, 0.0, self.text)

    @property
    def is_empty(self) -> bool:
        return self.kind is Kind.STRING and self.text == ""

    def __eq__(self, other):
        if not isinstance(other, CellValue):
            return NotImplemented
        if self.kind is not other.kind:
            return False
        if self.kind is Kind.NUMERIC:
            return self.number == other.number
        return self.text == other.text

    def __hash__(self):
        if self.kind is Kind.NUMERIC:
            return hash(self.number)
        return hash(self.text)

    def __repr__(self):
        if self.kind is Kind.NUMERIC:
            return f"Num({self.text})"
        return repr(self.text)

    def __str__(self):
        return self.text


def _parse_number(text: str) -> float | None:
    try:
        value = float(text)
    except ValueError:
        return None
    # nan/inf would break value equality, keep them as strings
    return value if math.isfinite(value) else None


def cell_kind(raw: str, declared: Kind | None = None) -> CellValue:
    """Build a cell from raw text, trimming surrounding whitespace.

    With ``declared`` the text is parsed as that kind; otherwise it becomes
    numeric iff it parses as a finite real number.
    """
    text = raw.strip()
    if declared is Kind.STRING:
        return CellValue(Kind.STRING, text)
    number = _parse_number(text) if text else None
    if declared is Kind.NUMERIC:
        if number is None:
            raise ParseFailure(f"cannot parse {raw!r} as a number")
        return CellValue(Kind.NUMERIC, text, number)
    if number is not None:
        return CellValue(Kind.NUMERIC, text, number)
    return CellValue(Kind.STRING, text)


@dataclass(frozen=True, slots=True)
class Attribute:
    id: int
    name: str
    kind: Kind = Kind.STRING


@dataclass(frozen=True)
class Schema:
    attributes: tuple[Attribute, ...]
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        attrs = tuple(self.attributes)
        object.__setattr__(self, "attributes", attrs)
        if not attrs:
            raise SchemaMismatch("schema must have at least one attribute")
        by_name = {}
        for position, attr in enumerate(attrs):
            if attr.id != position:
                raise SchemaMismatch(f"attribute {attr.name!r} has id {attr.id}, expected {position}")
            if attr.name in by_name:
                raise SchemaMismatch(f"duplicate attribute name {attr.name!r}")
            by_name[attr.name] = attr
        object.__setattr__(self, "_by_name", by_name)

    @classmethod
    def from_names(cls, names: Sequence[str], kinds: dict[str, Kind] | None = None) -> Schema:
        kinds = kinds or {}
        return cls(tuple(Attribute(i, n, kinds.get(n, Kind.STRING)) for i, n in enumerate(names)))

    def __len__(self):
        return len(self.attributes)

    def __getitem__(self, attr_id: int) -> Attribute:
        return self.attributes[attr_id]

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def id_of(self, name: str) -> int:
        try:
            return self._by_name[name].id
        except KeyError:
            raise UnknownAttribute(f"unknown attribute {name!r}") from None

    def name_of(self, attr_id: int) -> str:
        if not 0 <= attr_id < len(self.attributes):
            raise UnknownAttribute(f"unknown attribute id {attr_id}")
        return self.attributes[attr_id].name

    def has_id(self, attr_id: int) -> bool:
        return 0 <= attr_id < len(self.attributes)


@dataclass(frozen=True, slots=True)
class Row:
    """A tuple of the relation: a stable id plus one cell per attribute."""

    tuple_id: Hashable
    values: tuple[CellValue, ...]

    def __getitem__(self, attr_id: int) -> CellValue:
        return self.values[attr_id]

    def __len__(self):
        return len(self.values)

    def replace(self, updates: dict[int, CellValue]) -> Row:
        if not updates:
            return self
        values = list(self.values)
        for attr_id, value in updates.items():
            values[attr_id] = value
        return Row(self.tuple_id, tuple(values))


def make_row(schema: Schema, tuple_id: Hashable, raw: Sequence[str | CellValue]) -> Row:
    """Parse raw strings against the schema's declared kinds."""
    if len(raw) != len(schema):
        raise SchemaMismatch(f"tuple {tuple_id!r} has {len(raw)} values, schema has {len(schema)}")
    values = tuple(
        v if isinstance(v, CellValue) else cell_kind(v, attr.kind)
        for v, attr in zip(raw, schema.attributes)
    )
    return Row(tuple_id, values)


@dataclass(frozen=True)
class Dataset:
    schema: Schema
    rows: tuple[Row, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        arity = len(self.schema)
        kinds = [a.kind for a in self.schema.attributes]
        seen = set()
        for row in rows:
            if row.tuple_id in seen:
                raise SchemaMismatch(f"duplicate tuple id {row.tuple_id!r}")
            seen.add(row.tuple_id)
            if len(row.values) != arity:
                raise SchemaMismatch(f"tuple {row.tuple_id!r} has arity {len(row.values)}, expected {arity}")
            for value, kind in zip(row.values, kinds):
                if value.kind is not kind:
                    raise SchemaMismatch(f"tuple {row.tuple_id!r}: {value!r} is not {kind.value}")

    @classmethod
    def from_records(
        cls,
        names: Sequence[str],
        records: Iterable[Sequence[str]],
        kinds: dict[str, Kind] | None = None,
        ids: Sequence[Hashable] | None = None,
    ) -> Dataset:
        schema = Schema.from_names(names, kinds)
        records = list(records)
        ids = list(range(len(records))) if ids is None else list(ids)
        return cls(schema, tuple(make_row(schema, i, r) for i, r in zip(ids, records)))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def with_rows(self, rows: Iterable[Row]) -> Dataset:
        return Dataset(self.schema, tuple(rows))

    def column(self, attr_id: int) -> list[CellValue]:
        return [row.values[attr_id] for row in self.rows]


@dataclass(frozen=True, slots=True)
class FunctionalDependency:
    """``lhs -> rhs`` over attribute ids. ``lhs`` is kept sorted and duplicate-free."""

    lhs: tuple[int, ...]
    rhs: int

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(sorted(set(self.lhs))))

    @classmethod
    def from_names(cls, schema: Schema, lhs: Iterable[str], rhs: str) -> FunctionalDependency:
        return cls(tuple(schema.id_of(n) for n in lhs), schema.id_of(rhs))

    @property
    def attributes(self) -> tuple[int, ...]:
        return self.lhs + (self.rhs,)

    def describe(self, schema: Schema) -> str:
        return f"{', '.join(schema.name_of(a) for a in self.lhs)} -> {schema.name_of(self.rhs)}"


def validate_fds(schema: Schema, fds: Sequence[FunctionalDependency]) -> list[FunctionalDependency]:
    """Check every FD against the schema; the input order is preserved."""
    for fd in fds:
        for attr_id in fd.attributes:
            if not schema.has_id(attr_id):
                raise UnknownAttribute(f"attribute id {attr_id} is not in the schema")
        if not fd.lhs:
            raise DegenerateFD("functional dependency has an empty left-hand side")
        if fd.rhs in fd.lhs:
            raise DegenerateFD(f"{fd.describe(schema)}: right-hand side repeats a left-hand attribute")
    return list(fds)


class AttributeValuePair(NamedTuple):
    attribute: int
    value: CellValue


def tuple_pairs(row: Row) -> list[AttributeValuePair]:
    return [AttributeValuePair(i, v) for i, v in enumerate(row.values)]


def fd_attributes(fds: Iterable[FunctionalDependency]) -> list[int]:
    """Attribute ids covered by at least one FD, ascending."""
    covered = set()
    for fd in fds:
        covered.update(fd.attributes)
    return sorted(covered)
