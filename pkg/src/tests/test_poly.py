import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.jobs.parse import parse_poly
from src.neutro.errors import (
    CharacteristicNotZero,
    InfiniteRootSet,
    NonUnitLeadingCoefficient,
    ShapeMismatch,
    SplitDegenerate,
)
from src.neutro.poly import (
    NPoly,
    p_compose_linear,
    p_divides,
    p_divmod,
    p_eval,
    p_from_taylor,
    p_gcd,
    p_multiplicity,
    p_profile,
    p_roots,
    p_taylor,
)
from src.neutro.sampling import random_poly
from src.neutro.scalars import FieldDescriptor, NNum, Slot
from src.tests.strategies import fields, polys, scalars

Q = FieldDescriptor.rationals()
Z3 = FieldDescriptor.prime(3)


def test_text_form():
    f = parse_poly("x^2 + (2I+1)x + 2I@N(Z3)")
    assert str(f) == "x^2 + (2I+1)x + 2I"
    assert f.coeffs == (NNum(Z3, 0, 2), NNum(Z3, 1, 2), Z3.one)
    assert str(parse_poly("x^4 - 9Ix^3 + 16Ix^2 - 63Ix + 87I@N(Q)")) == "x^4 - 9Ix^3 + 16Ix^2 - 63Ix + 87I"


def test_like_terms_are_collected():
    scattered = parse_poly("x^4 + 2I + Ix^2 + 2x^2@N(Z3)")
    assert scattered == parse_poly("x^4 + (I+2)x^2 + 2I@N(Z3)")


def test_roots_pair_slot_roots():
    f = parse_poly("x^2 + (2I+1)x + 2I@N(Z3)")
    roots = p_roots(f)
    assert [str(r) for r in roots] == ["I", "2I", "2", "2+2I"]
    assert all(not p_eval(f, r) for r in roots)


def test_roots_when_one_slot_image_vanishes():
    """Over Zp a zero slot image admits every base element in that slot."""
    f = parse_poly("Ix - I@N(Z3)")
    assert [str(r) for r in p_roots(f)] == ["I", "1", "2+2I"]
    with pytest.raises(InfiniteRootSet):
        p_roots(parse_poly("Ix - I@N(Q)"))


def test_divmod_needs_a_unit_leading_coefficient():
    f = parse_poly("x^3 + 1@N(Z3)")
    with pytest.raises(NonUnitLeadingCoefficient):
        p_divmod(f, parse_poly("Ix + 1@N(Z3)"))


@given(fields, st.randoms(use_true_random=False), st.integers(min_value=0, max_value=5),
       st.integers(min_value=1, max_value=3))
def test_division_identity(field, rng, deg_f, deg_d):
    f = random_poly(rng, field, deg_f)
    d = random_poly(rng, field, deg_d)
    q, r = p_divmod(f, d)
    assert d * q + r == f
    assert r.degree < d.degree
    assert p_divides(d, d * q)


def test_gcd_is_monic_and_divides():
    f = parse_poly("x^2 - 1@N(Q)")
    g = parse_poly("x^2 + 2x + 1@N(Q)")
    d = p_gcd(f, g)
    assert str(d) == "x + 1"
    assert p_divides(d, f) and p_divides(d, g)


def test_gcd_with_different_slot_degrees():
    f = NPoly.x(Q)
    g = parse_poly("x - I@N(Q)")
    with pytest.raises(SplitDegenerate):
        p_gcd(f, g)


def test_degree_profile():
    profile = p_profile(parse_poly("Ix^2 + x@N(Q)"))
    assert (profile.deg_at0, profile.deg_at1) == (1, 2)
    assert profile.split_degenerate


@given(polys(Q, 4), scalars(Q))
def test_taylor_expansion_rebuilds_the_polynomial(f, c):
    assert p_from_taylor(p_taylor(f, c), c) == f


def test_taylor_needs_characteristic_zero():
    with pytest.raises(CharacteristicNotZero):
        p_taylor(parse_poly("x^2 + 1@N(Z3)"), Z3.one)


def test_multiplicity_counts_repeated_factors():
    c = NNum(Q, 1, 1)
    f = NPoly.linear(c) ** 3 * NPoly.linear(NNum(Q, 5, 0))
    assert p_multiplicity(f, c) == 3
    assert p_multiplicity(f, NNum(Q, 2, 0)) == 0


def test_compose_linear():
    f = parse_poly("x^2@N(Q)")
    g = parse_poly("x - 1@N(Q)")
    assert str(p_compose_linear(f, g)) == "x^2 - 2x + 1"
    with pytest.raises(ShapeMismatch):
        p_compose_linear(f, f)


@given(polys(Q, 3))
def test_slot_images_are_coefficient_evaluations(f):
    for s in Slot:
        assert f.slot(s) == [c.eval(s) for c in f.coeffs][:len(f.slot(s))]
