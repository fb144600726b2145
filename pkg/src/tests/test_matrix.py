import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.jobs.parse import parse_matrix, parse_poly
from src.neutro.errors import NonSquare, NonUnitLeadingCoefficient, ShapeMismatch, Singular
from src.neutro.matrix import (
    NMatrix,
    m_adjugate,
    m_charpoly,
    m_charpoly_slots,
    m_companion,
    m_det,
    m_inverse,
    m_is_invertible,
    m_power,
    m_similarity_check,
)
from src.neutro.poly import p_eval_matrix
from src.neutro.sampling import random_invertible, random_poly
from src.neutro.scalars import FieldDescriptor, NNum
from src.tests.strategies import field_and_matrix, fields, matrices


@pytest.mark.parametrize("literal, expected", [
    ("[[I,0],[2,2]]@N(Z3)", "x^2 + (2I+1)x + 2I"),
    ("[[0,I],[I,1]]@N(Z2)", "x^2 + x + I"),
    ("[[I,0,1],[0,1,0],[I,0,0]]@N(Z2)", "x^3 + (I+1)x^2 + I"),
    ("[[3,1,I],[2,2I,1],[2I,2,0]]@N(Z5)", "x^3 + (3I+2)x^2 + (4I+1)x + (3I+1)"),
    ("[[4I,0,2,I],[3I,I,0,7],[0,I,0,0],[8,0,7I,4I]]@N(Q)", "x^4 - 9Ix^3 + 16Ix^2 - 63Ix + 87I"),
])
def test_charpoly_of_worked_matrices(literal, expected):
    assert str(m_charpoly(parse_matrix(literal))) == expected


def test_det():
    A = parse_matrix("[[I,0],[2,2]]@N(Z3)")
    assert m_det(A) == NNum(A.field, 0, 2)


def test_inverse_reports_the_singular_slot():
    with pytest.raises(Singular) as exc:
        m_inverse(parse_matrix("[[I,0],[0,1]]@N(Z3)"))
    assert exc.value.headline() == "Singular slot=0"
    assert not m_is_invertible(parse_matrix("[[1,0],[0,2+I]]@N(Z3)"))


def test_shapes_are_checked():
    A = parse_matrix("[[1,2,3],[4,5,6]]@N(Q)")
    with pytest.raises(NonSquare):
        m_det(A)
    with pytest.raises(ShapeMismatch):
        A @ A


@given(fields, st.randoms(use_true_random=False), st.integers(min_value=1, max_value=3))
def test_inverse_of_invertible(field, rng, n):
    A = random_invertible(rng, field, n)
    assert m_inverse(A) @ A == NMatrix.identity(field, n)
    assert A @ m_inverse(A) == NMatrix.identity(field, n)


@given(field_and_matrix(3))
def test_adjugate_identity(case):
    field, A = case
    assert A @ m_adjugate(A) == NMatrix.identity(field, A.rows).scale(m_det(A))


@given(field_and_matrix(3))
def test_charpoly_agrees_with_slot_route(case):
    _, A = case
    f = m_charpoly(A)
    assert f == m_charpoly_slots(A)
    assert f.is_monic()
    assert p_eval_matrix(f, A).is_zero()


@given(fields.flatmap(lambda f: st.tuples(matrices(f, 2, 3), matrices(f, 3, 2))))
def test_transpose_reverses_products(pair):
    A, B = pair
    assert (A @ B).T == B.T @ A.T


@given(field_and_matrix(3))
def test_power(case):
    field, A = case
    assert m_power(A, 0) == NMatrix.identity(field, A.rows)
    assert m_power(A, 3) == A @ A @ A


@given(fields, st.randoms(use_true_random=False), st.integers(min_value=1, max_value=4))
def test_companion_has_the_polynomial_as_charpoly(field, rng, degree):
    f = random_poly(rng, field, degree, monic=True)
    assert m_charpoly(m_companion(f)) == f


def test_companion_needs_monic():
    with pytest.raises(NonUnitLeadingCoefficient):
        m_companion(parse_poly("2x + 1@N(Q)"))


@given(field_and_matrix(3), st.randoms(use_true_random=False))
def test_similarity_check(case, rng):
    field, A = case
    P = random_invertible(rng, field, A.rows)
    B = m_inverse(P) @ A @ P
    assert m_similarity_check(A, B, P)
    assert m_charpoly(A) == m_charpoly(B)


def test_pure_entries_widen_to_the_full_ring():
    A = parse_matrix("[[I,2I],[0,I]]@Z3I")
    assert A.field == FieldDescriptor.from_tag("Z3I")
    assert m_charpoly(A).field.tag == "N(Z3)"
    assert str(m_charpoly(A)) == "x^2 + Ix + I"


def test_pure_matrices_invert_with_i_as_the_unit():
    A = parse_matrix("[[I,0],[0,I]]@Z3I")
    assert m_inverse(A) == A
    B = parse_matrix("[[2I,0],[0,I]]@Z3I")
    assert m_inverse(B) == B
    assert m_inverse(B).field.tag == "Z3I"
    C = parse_matrix("[[I,I],[0,2I]]@Z5I")
    assert m_inverse(C) @ C == NMatrix.identity(C.field, 2)
    assert m_is_invertible(C)
    with pytest.raises(Singular) as exc:
        m_inverse(parse_matrix("[[I,I],[I,I]]@Z3I"))
    assert exc.value.headline() == "Singular slot=1"
