import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.jobs.parse import parse_matrix, parse_tuple
from src.neutro.errors import (
    NotACharacteristicValue,
    NotInvariant,
    UndecidableOverQ,
    UnsupportedField,
    ZeroVector,
)
from src.neutro.matrix import NMatrix, m_charpoly
from src.neutro.poly import p_divides
from src.neutro.sampling import random_splitting
from src.neutro.scalars import NNum
from src.neutro.spectral import (
    Flag,
    cayley_hamilton_check,
    cyclic,
    cyclic_basis,
    diagonalizable,
    dn_decompose,
    eigvecs,
    format_vector,
    jordan_form,
    minpoly,
    primary_decomposition,
    rational_form,
    spectrum,
    t_annihilator,
    t_conductor,
    triangularizable,
)
from src.tests.strategies import field_and_matrix, fields

NILPOTENT = "[[0,0],[1,0]]@N(Z3)"


def test_spectrum_pairs_slot_roots():
    lines = spectrum(parse_matrix("[[I,0],[2,2]]@N(Z3)")).lines()
    assert lines == [
        "charpoly x^2 + (2I+1)x + 2I",
        "roots {I, 2I, 2, 2+2I}",
        "slot 0 spectrum {0, 2}",
        "slot 1 spectrum {1, 2}",
        "complete true",
    ]


def test_characteristic_vectors():
    A = parse_matrix("[[I,0],[2,2]]@N(Z3)")
    c = NNum(A.field, 2, 0)
    vs = eigvecs(A, c)
    assert [format_vector(v) for v in vs] == ["(0,1)"]
    for v in vs:
        assert A.apply(v) == [c * x for x in v]
    with pytest.raises(NotACharacteristicValue):
        eigvecs(A, A.field.one)


def test_minimal_polynomial_with_different_slot_degrees():
    result = minpoly(parse_matrix("[[1,0],[0,I]]@N(Z3)"))
    assert result.lines() == [
        "minpoly x^2 + 2x",
        "principal false",
        "slot 0: x^2 + 2x",
        "slot 1: x + 2",
        "NonPrincipalMinPoly",
    ]
    assert result.flags == [Flag.NON_PRINCIPAL_MINPOLY]


@given(field_and_matrix(3))
def test_cayley_hamilton(case):
    _, A = case
    assert cayley_hamilton_check(A)
    assert p_divides(minpoly(A).polynomial, m_charpoly(A)) or not minpoly(A).principal


def test_annihilator_and_cyclic_basis():
    A = parse_matrix(NILPOTENT)
    v = parse_tuple("(1,0)", A.field)
    assert t_annihilator(A, v).lines("annihilator") == [
        "annihilator x^2", "principal true", "slot 0: x^2", "slot 1: x^2",
    ]
    assert cyclic_basis(A, v).lines() == ["slot degrees (2, 2)", "(1,0)", "(0,1)"]
    with pytest.raises(ZeroVector):
        t_annihilator(A, parse_tuple("(0,0)", A.field))


def test_conductor():
    A = parse_matrix(NILPOTENT)
    v = parse_tuple("(1,0)", A.field)
    result = t_conductor(A, v, [parse_tuple("(0,1)", A.field)])
    assert result.lines("conductor")[0] == "conductor x"
    with pytest.raises(NotInvariant):
        t_conductor(A, v, [parse_tuple("(1,0)", A.field)])


@given(fields, st.randoms(use_true_random=False), st.integers(min_value=1, max_value=3))
def test_dn_decomposition(field, rng, n):
    A = random_splitting(rng, field, n)
    report = dn_decompose(A)
    D, N = report.recombined["D"], report.recombined["N"]
    assert D + N == A
    assert D @ N == N @ D
    assert diagonalizable(D)


def test_jordan_form_uses_lower_ones():
    report = jordan_form(parse_matrix("[[1,0],[1,1]]@N(Z3)"))
    assert report.lines()[0] == "kind Jordan"
    assert str(report.recombined["J"]) == "[[1,0],[1,1]]"


def test_jordan_form_with_different_slot_blocks():
    report = jordan_form(parse_matrix("[[I,0],[I,I]]@N(Z3)"))
    assert report.recombined is None
    assert report.flags == [Flag.SLOT_STRUCTURE_MISMATCH]
    assert "flag SlotStructureMismatch" in report.lines()


def test_rational_form_and_cyclic_generators():
    A = parse_matrix("[[0,1],[1,0]]@N(Z3)")
    report = rational_form(A)
    assert "f1 = x^2 + 2" in report.lines()
    assert report.recombined["R"] == A
    gens = cyclic(parse_matrix(NILPOTENT))
    assert gens.lines()[0] == "kind Cyclic"
    assert len(gens.vectors["z"]) == 1


def test_primary_decomposition():
    report = primary_decomposition(parse_matrix("[[1,0],[0,2]]@N(Z3)"))
    E1, E2 = report.recombined["E1"], report.recombined["E2"]
    assert E1 + E2 == NMatrix.identity(E1.field, 2)
    assert (E1 @ E2).is_zero()
    with pytest.raises(UnsupportedField):
        primary_decomposition(parse_matrix("[[1,0],[0,2]]@N(Q)"))


def test_diagonalizable():
    assert diagonalizable(parse_matrix("[[1,0],[0,I]]@N(Z3)"))
    assert not diagonalizable(parse_matrix(NILPOTENT))
    assert diagonalizable(parse_matrix(NILPOTENT)).lines("diagonalizable") == ["diagonalizable false"]
    with pytest.raises(UndecidableOverQ):
        diagonalizable(parse_matrix("[[0,-2],[1,0]]@N(Q)"))


def test_triangularizable():
    result = triangularizable(parse_matrix(NILPOTENT))
    assert result.holds
    assert result.lines("triangularizable")[0] == "triangularizable true"
