from fractions import Fraction

import pytest
from hypothesis import given

from src.neutro.errors import FlavorViolation, NotInvertible, NotPrime, ParseError, ScanTooLarge
from src.neutro.scalars import (
    FieldDescriptor,
    Flavor,
    GroupAxiom,
    NNum,
    ScanOperation,
    Slot,
    SubgroupLabel,
    check_group_axioms,
    format_scalar,
    group_scan,
    nn_inverse,
    nn_narrow,
    nn_recombine,
)
from src.tests.strategies import field_and_scalars

Q = FieldDescriptor.rationals()
Z3 = FieldDescriptor.prime(3)


def test_multiplication_absorbs_i():
    """(a+bI)(c+dI) = ac + (ad+bc+bd)I, so I*I = I."""
    I = NNum(Q, 0, 1)
    assert I * I == I
    assert NNum(Q, 1, 1) * NNum(Q, 2, 3) == NNum(Q, 2, 8)


def test_inverse_recombines_slot_inverses():
    x = NNum(Q, 1, 1)
    inv = nn_inverse(x)
    assert inv == NNum(Q, 1, Fraction(-1, 2))
    assert x * inv == 1


def test_inverse_names_the_vanishing_slot():
    with pytest.raises(NotInvertible) as exc:
        nn_inverse(NNum(Z3, 0, 1))
    assert exc.value.headline() == "NotInvertible slot=0"
    with pytest.raises(NotInvertible) as exc:
        nn_inverse(NNum(Z3, 1, 2))
    assert exc.value.witness["slot"] is Slot.AT1


def test_pure_ring_unit_is_i():
    pure = FieldDescriptor.from_tag("Z5I")
    assert pure.flavor is Flavor.PURE
    assert pure.one == NNum(pure, 0, 1)
    assert nn_inverse(NNum(pure, 0, 2)) == NNum(pure, 0, 3)


def test_flavor_is_checked_on_construction():
    with pytest.raises(FlavorViolation):
        NNum(FieldDescriptor.from_tag("Q"), 0, 1)
    with pytest.raises(FlavorViolation):
        NNum(FieldDescriptor.from_tag("Z3I"), 1, 1)


def test_narrowing_is_checked():
    assert nn_narrow(NNum(Z3, 2, 0), Flavor.REAL).field.tag == "Z3"
    assert nn_narrow(NNum(Z3, 0, 2), Flavor.PURE).field.tag == "Z3I"
    with pytest.raises(FlavorViolation):
        nn_narrow(NNum(Z3, 1, 1), Flavor.REAL)


def test_field_tags():
    assert FieldDescriptor.from_tag("N(Z3)") == Z3
    assert FieldDescriptor.from_tag("Q").flavor is Flavor.REAL
    assert FieldDescriptor.from_tag("N(Q)").tag == "N(Q)"
    with pytest.raises(ParseError):
        FieldDescriptor.from_tag("N(Z3")
    with pytest.raises(NotPrime):
        FieldDescriptor.from_tag("N(Z4)")


def test_recombine_places_slot_values():
    c = nn_recombine(Z3.base(2), Z3.base(1), Z3)
    assert c.split == (2, 1)
    assert c == NNum(Z3, 2, 2)


def test_format_scalar():
    assert format_scalar(1, 1) == "1+I"
    assert format_scalar(Fraction(0), Fraction(-1)) == "-I"
    assert format_scalar(Fraction(-3, 4), Fraction(2)) == "-3/4+2I"
    assert format_scalar(Fraction(1), Fraction(3), i_first=True) == "3I+1"
    assert str(NNum(Z3, 0, 2)) == "2I"
    assert str(NNum(Z3, 0, -1)) == "2I"
    assert str(Q.zero) == "0"


@given(field_and_scalars(3))
def test_ring_axioms(case):
    _, (x, y, z) = case
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0


@given(field_and_scalars(2))
def test_evaluation_is_a_homomorphism(case):
    _, (x, y) = case
    for s in Slot:
        assert (x * y).eval(s) == x.eval(s) * y.eval(s)
        assert (x + y).eval(s) == x.eval(s) + y.eval(s)


@given(field_and_scalars(1))
def test_units_have_inverses(case):
    _, (x,) = case
    if x.is_unit():
        assert x * nn_inverse(x) == 1
    else:
        with pytest.raises(NotInvertible):
            nn_inverse(x)


def test_additive_scan_of_z4():
    report = group_scan(4, ScanOperation.ADDITIVE)
    lines = report.lines()
    assert report.order == 16
    assert report.is_group
    assert "  {0, 2I} PseudoNeutrosophicSubgroup" in lines
    assert "  {0, 2I, 2, 2+2I} NeutrosophicSubgroup" in lines
    labels = {label for _, label in report.subgroups}
    assert labels == {SubgroupLabel.REAL, SubgroupLabel.PSEUDO, SubgroupLabel.NEUTROSOPHIC}


def test_additive_subgroups_are_closed():
    for elements, _ in group_scan(6, ScanOperation.ADDITIVE).subgroups:
        members = set(elements)
        for a, b in elements:
            for c, d in elements:
                assert ((a + c) % 6, (b + d) % 6) in members


def test_axiom_check_is_exhaustive():
    elements = [(a, b) for a in range(3) for b in range(3)]
    generators = [(1, 0), (0, 1)]

    def subtract(x, y):
        return ((x[0] - y[0]) % 3, (x[1] - y[1]) % 3)

    def add_unreduced(x, y):
        return (x[0] + y[0], x[1] + y[1])

    assert check_group_axioms(elements, subtract, (0, 0), generators) == (
        GroupAxiom.ASSOCIATIVITY, ((0, 0), (1, 0), (0, 1)))
    assert check_group_axioms(elements, add_unreduced, (0, 0), generators) == (
        GroupAxiom.CLOSURE, ((0, 1), (0, 2)))
    assert group_scan(3, ScanOperation.ADDITIVE).failed_axiom is None


def test_multiplicative_scan_finds_missing_inverse():
    report = group_scan(5, ScanOperation.MULTIPLICATIVE)
    assert not report.is_group
    assert "witness: I has no inverse" in report.lines()
    assert report.failed_axiom is GroupAxiom.INVERSE
    assert report.order == 8


def test_scan_limits():
    with pytest.raises(ScanTooLarge):
        group_scan(65, ScanOperation.ADDITIVE)
    with pytest.raises(NotPrime):
        group_scan(6, ScanOperation.MULTIPLICATIVE)
