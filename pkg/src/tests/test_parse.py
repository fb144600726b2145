import json
from fractions import Fraction

import pytest
from hypothesis import given

from src.jobs.parse import (
    MatrixDocument,
    load_json,
    parse_map,
    parse_matrix,
    parse_poly,
    parse_scalar,
    parse_space,
    parse_tuple,
    parse_vectors,
    poly_literal,
    scalar_literal,
    validate_document,
)
from src.neutro.errors import FlavorViolation, ParseError
from src.neutro.scalars import FieldDescriptor, NNum
from src.tests.strategies import field_and_matrix, field_and_scalars, fields, polys

Z3 = FieldDescriptor.prime(3)


def test_scalars():
    assert parse_scalar("2I@N(Z3)") == NNum(Z3, 0, 2)
    assert parse_scalar("I+3@N(Q)") == parse_scalar("3+I@N(Q)")
    assert parse_scalar("-1/2-I@N(Q)") == NNum(FieldDescriptor.rationals(), Fraction(-1, 2), -1)
    assert parse_scalar("2", Z3) == NNum(Z3, 2, 0)


def test_scalar_parts_are_not_repeated():
    with pytest.raises(ParseError) as exc:
        parse_scalar("1+2@N(Q)")
    assert "repeated real part" in exc.value.detail


def test_zero_denominators_are_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_scalar("1/0@N(Q)")
    assert exc.value.expected == "nonzero denominator"
    assert (exc.value.line, exc.value.column) == (1, 1)
    with pytest.raises(ParseError) as exc:
        parse_matrix("[[1/0]]@N(Q)")
    assert exc.value.column == 3
    with pytest.raises(ParseError):
        parse_poly("x^2 + 1/0@N(Q)")
    with pytest.raises(ParseError):
        parse_scalar("2I+1/0@N(Z5)")


def test_pure_field_rejects_real_parts():
    with pytest.raises(FlavorViolation):
        parse_scalar("2@Z3I")


def test_missing_field_tag():
    with pytest.raises(ParseError) as exc:
        parse_scalar("2I")
    assert (exc.value.line, exc.value.column) == (1, 3)
    assert exc.value.expected == "@<field tag>"


def test_matrix_errors_carry_a_position():
    with pytest.raises(ParseError) as exc:
        parse_matrix("[[I,0],[2,]]@N(Z3)")
    assert (exc.value.line, exc.value.column) == (1, 11)
    assert exc.value.headline().startswith("ParseError line=1 col=11")


def test_matrix_rows_must_be_rectangular():
    with pytest.raises(ParseError) as exc:
        parse_matrix("[[1,2],[3]]@N(Q)")
    assert "row 2 has 1 entries" in exc.value.detail


def test_matrix_document():
    doc = json.dumps({"field": "N(Z3)", "rows": [["I", "0"], ["2", 2]]})
    assert parse_matrix(doc) == parse_matrix("[[I,0],[2,2]]@N(Z3)")


def test_poly_document_and_literal_agree():
    doc = json.dumps({"field": "N(Z3)", "poly": "x^2 + (2I+1)x + 2I"})
    assert parse_poly(doc) == parse_poly("x^2 + (2I+1)x + 2I@N(Z3)")
    assert parse_poly("0@N(Q)").degree == float("-inf")


def test_poly_term_errors():
    with pytest.raises(ParseError):
        parse_poly("x^ + 1@N(Q)")
    with pytest.raises(ParseError):
        parse_poly("x + + 1@N(Q)")


def test_tuples_use_the_callers_field():
    assert parse_tuple("(1, 2I)", Z3) == [Z3.one, NNum(Z3, 0, 2)]


def test_bad_json_reports_the_column():
    with pytest.raises(ParseError) as exc:
        load_json('{"a": }')
    assert (exc.value.line, exc.value.column) == (1, 7)


def test_documents_are_validated():
    with pytest.raises(ParseError) as exc:
        validate_document(MatrixDocument, {"field": "N(Q)", "rows": []})
    assert "rows" in exc.value.detail
    with pytest.raises(ParseError):
        parse_space(json.dumps({"kind": "TypeIII", "components": [{"shape": "tuple:2", "scalars": "Q"}]}))


def test_vectors_need_one_literal_per_component():
    space = {"components": [{"shape": "tuple:2", "scalars": "N(Z3)"}, {"shape": "tuple:1", "scalars": "N(Z3)"}]}
    doc = parse_vectors(json.dumps({"space": space, "vectors": [["(1,I)", "(2)"]]}))
    assert doc.space.n == 2
    with pytest.raises(ParseError):
        parse_vectors(json.dumps({"space": space, "vectors": [["(1,I)"]]}))


def test_maps_need_one_matrix_per_component():
    plane = {"components": [{"shape": "tuple:2", "scalars": "N(Z3)"}]}
    T = parse_map(json.dumps({"domain": plane, "mats": [[["1", "0"], ["0", "I"]]]}))
    assert T.mats[0] == parse_matrix("[[1,0],[0,I]]@N(Z3)")
    with pytest.raises(ParseError):
        parse_map(json.dumps({"domain": plane, "mats": []}))


@given(field_and_matrix(3))
def test_matrix_text_reads_back(case):
    _, A = case
    assert parse_matrix(A.literal()) == A


@given(field_and_scalars(3))
def test_scalar_text_reads_back(case):
    _, xs = case
    for x in xs:
        assert parse_scalar(scalar_literal(x)) == x


@given(fields.flatmap(polys))
def test_poly_text_reads_back(f):
    assert parse_poly(poly_literal(f)) == f
