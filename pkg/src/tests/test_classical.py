from fractions import Fraction

import pytest

from src.neutro import classical as cl
from src.neutro.base import RATIONALS, BaseField, show
from src.neutro.errors import DivisionByZero, FieldMismatch

Z2 = BaseField(2)
Z3 = BaseField(3)
Z5 = BaseField(5)


def q(*values):
    return [Fraction(v) for v in values]


def test_prime_field_elements_are_sympy_domain_elements():
    x = Z5(7)
    assert Z5.domain.of_type(x)
    assert Z5.owns(x) and not Z3.owns(x)
    assert x == 2
    assert show(Z5(-1)) == "4"
    assert Z5(Fraction(1, 2)) == 3
    assert Z5.lower(Z5.lift(x)) == x
    assert RATIONALS.lower(RATIONALS.lift(Fraction(-3, 4))) == Fraction(-3, 4)


def test_field_boundaries_are_checked():
    with pytest.raises(FieldMismatch):
        Z3(Z5(1))
    with pytest.raises(FieldMismatch):
        RATIONALS(Z5(1))
    with pytest.raises(DivisionByZero):
        Z5(Fraction(1, 5))


def test_nullspace_has_one_vector_per_free_column():
    assert cl.nullspace(RATIONALS, [q(1, 2, 3)]) == [q(-2, 1, 0), q(-3, 0, 1)]
    assert cl.nullspace(Z3, [[Z3(1), Z3(1)]]) == [[Z3(2), Z3(1)]]


def test_rref_rank_det_and_inverse():
    M = [q(1, 2), q(3, 4)]
    R, pivots = cl.rref(RATIONALS, M)
    assert (R, pivots) == (cl.identity(RATIONALS, 2), [0, 1])
    assert cl.det(RATIONALS, M) == -2
    assert cl.inverse(RATIONALS, M) == [q(-2, 1), [Fraction(3, 2), Fraction(-1, 2)]]
    singular = [[Z3(1), Z3(2)], [Z3(2), Z3(1)]]
    assert cl.rank(Z3, singular) == 1
    assert cl.inverse(Z3, singular) is None


def test_charpoly_and_minpoly():
    M = [q(1, 2), q(3, 4)]
    assert cl.charpoly(RATIONALS, M) == q(-2, -5, 1)
    assert cl.minpoly(RATIONALS, cl.identity(RATIONALS, 3)) == q(-1, 1)


def test_division_and_gcds():
    f, d = q(-1, 0, 1), q(-1, 1)
    assert cl.pdivmod(RATIONALS, f, d) == (q(1, 1), [])
    assert cl.pgcd(RATIONALS, q(-1, 0, 1), q(2, 2)) == q(1, 1)
    g, s, t = cl.pxgcd(Z5, [Z5(1), Z5(0), Z5(1)], [Z5(0), Z5(1)])
    assert g == [Z5(1)]
    assert cl.padd(cl.pmul(s, [Z5(1), Z5(0), Z5(1)]), cl.pmul(t, [Z5(0), Z5(1)])) == [Z5(1)]
    with pytest.raises(ZeroDivisionError):
        cl.pdivmod(RATIONALS, f, [])


def test_roots_and_factorization():
    assert cl.roots(RATIONALS, q(1, -3, 2)) == [Fraction(1, 2), Fraction(1)]
    assert cl.roots(Z5, [Z5(-1), Z5(0), Z5(1)]) == [1, 4]
    found, rest = cl.root_multiplicities(Z3, [Z3(2), Z3(0), Z3(0), Z3(1)])
    assert found == [(1, 3)] and rest == [1]
    assert cl.factor(Z2, [Z2(1), Z2(1), Z2(1)]) == [([1, 1, 1], 1)]
    assert cl.factor(Z2, [Z2(1), Z2(0), Z2(1)]) == [([1, 1], 2)]
    assert not cl.splits(RATIONALS, q(-2, 0, 1))
    assert cl.squarefree(Z3, [Z3(0), Z3(1), Z3(1)])
    assert not cl.squarefree(Z3, [Z3(0), Z3(0), Z3(0), Z3(1)])


def test_invariant_factors_form_a_divisibility_chain():
    assert cl.invariant_factors(RATIONALS, cl.identity(RATIONALS, 2)) == [q(-1, 1), q(-1, 1)]
    diag = [q(1, 0, 0), q(0, 1, 0), q(0, 0, 2)]
    assert cl.invariant_factors(RATIONALS, diag) == [q(-1, 1), q(2, -3, 1)]
    rotation = cl.companion(Z3, [Z3(1), Z3(0), Z3(1)])
    assert cl.invariant_factors(Z3, rotation) == [[1, 0, 1]]
