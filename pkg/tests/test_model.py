import pytest

from wmrr.errors import DegenerateFD, ParseFailure, SchemaMismatch, UnknownAttribute
from wmrr.model import (
    CellValue,
    Dataset,
    FunctionalDependency,
    Kind,
    Row,
    Schema,
    cell_kind,
    fd_attributes,
    tuple_pairs,
    validate_fds,
)


@pytest.fixture
def nc_schema():
    return Schema.from_names(["Nation", "Capital"])


def test_validate_fds_accepts_well_formed(nc_schema):
    fds = [FunctionalDependency.from_names(nc_schema, ["Nation"], "Capital")]
    assert validate_fds(nc_schema, fds) == fds


def test_validate_fds_rejects_rhs_in_lhs(nc_schema):
    with pytest.raises(DegenerateFD):
        validate_fds(nc_schema, [FunctionalDependency((0,), 0)])


def test_validate_fds_rejects_unknown_attribute(nc_schema):
    with pytest.raises(UnknownAttribute):
        FunctionalDependency.from_names(nc_schema, ["ZIP"], "Capital")
    with pytest.raises(UnknownAttribute):
        validate_fds(nc_schema, [FunctionalDependency((5,), 1)])


def test_validate_fds_keeps_order(nc_schema):
    fds = [FunctionalDependency((1,), 0), FunctionalDependency((0,), 1)]
    assert validate_fds(nc_schema, fds) == fds


def test_cell_kind_inference():
    assert cell_kind("12.5").kind is Kind.NUMERIC
    assert cell_kind(" 12.5 ").number == 12.5
    assert cell_kind("China").kind is Kind.STRING
    assert cell_kind("nan").kind is Kind.STRING
    assert cell_kind("").is_empty
    assert cell_kind("42", Kind.STRING).kind is Kind.STRING


def test_cell_kind_declared_numeric_failure():
    with pytest.raises(ParseFailure):
        cell_kind("abc", Kind.NUMERIC)


def test_numeric_equality_is_canonical():
    assert cell_kind("12.50") == cell_kind("12.5")
    assert hash(cell_kind("12.50")) == hash(cell_kind("12.5"))
    assert cell_kind("12") != CellValue.string("12")


def test_dataset_checks_ids_and_arity():
    schema = Schema.from_names(["A", "B"])
    s = CellValue.string
    with pytest.raises(SchemaMismatch):
        Dataset(schema, (Row(1, (s("x"), s("y"))), Row(1, (s("x"), s("z")))))
    with pytest.raises(SchemaMismatch):
        Dataset(schema, (Row(1, (s("x"),)),))
    with pytest.raises(SchemaMismatch):
        Schema.from_names(["A", "A"])


def test_dataset_checks_kinds():
    schema = Schema.from_names(["A"], {"A": Kind.NUMERIC})
    with pytest.raises(SchemaMismatch):
        Dataset(schema, (Row(0, (CellValue.string("x"),)),))


def test_from_records_and_column():
    d = Dataset.from_records(["A", "B"], [("x", "1"), ("y", "2")], kinds={"B": Kind.NUMERIC})
    assert [r.tuple_id for r in d.rows] == [0, 1]
    assert d.column(1) == [CellValue.numeric(1.0), CellValue.numeric(2.0)]


def test_row_replace_and_pairs():
    s = CellValue.string
    row = Row("t", (s("a"), s("b")))
    new = row.replace({1: s("c")})
    assert new.values == (s("a"), s("c")) and row.values[1] == s("b")
    assert [(p.attribute, p.value) for p in tuple_pairs(row)] == [(0, s("a")), (1, s("b"))]


def test_fd_normalises_lhs_and_lists_attributes():
    fd = FunctionalDependency((3, 1, 3), 0)
    assert fd.lhs == (1, 3)
    assert fd.attributes == (1, 3, 0)
    assert fd_attributes([fd, FunctionalDependency((0,), 2)]) == [0, 1, 2, 3]
