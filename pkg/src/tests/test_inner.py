import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.jobs.parse import parse_vectors
from src.neutro.errors import (
    DependentInput,
    NonInvertibleNorm,
    NotOrthogonal,
    UnorderedField,
    UnsupportedRegime,
)
from src.neutro.inner import (
    InnerSpaceContext,
    best_approx,
    bessel_check,
    gram_schmidt,
    nn_nonneg,
    nn_positive,
    norm_sq,
    orth_complement,
    orthogonal,
    positivity,
    projection_matrix,
    split_check,
)
from src.neutro.nspace import map_apply, map_compose
from src.neutro.sampling import random_independent, random_space, random_vector
from src.neutro.scalars import FieldDescriptor, NNum

Q = FieldDescriptor.rationals()
PLANE = {"components": [{"shape": "tuple:2", "scalars": "N(Q)"}]}
PLANE_Z5 = {"components": [{"shape": "tuple:2", "scalars": "N(Z5)"}]}


def vectors(*vs, space=None, beta=None):
    doc = {"space": space or PLANE, "vectors": [[v] for v in vs]}
    if beta is not None:
        doc["beta"] = [beta]
    return parse_vectors(json.dumps(doc))


def test_gram_schmidt():
    doc = vectors("(1,0)", "(1,1)")
    assert [str(v) for v in gram_schmidt(doc.vectors)] == ["(1,0)", "(0,1)"]


def test_gram_schmidt_rejects_dependent_input():
    with pytest.raises(DependentInput):
        gram_schmidt(vectors("(1,0)", "(2,0)").vectors)


def test_gram_schmidt_needs_unit_norms():
    with pytest.raises(NonInvertibleNorm) as exc:
        gram_schmidt(vectors("(1,2)", space=PLANE_Z5).vectors)
    assert exc.value.witness["index"] == 1


@given(st.randoms(use_true_random=False))
def test_gram_schmidt_output_is_orthogonal(rng):
    V = random_space(rng, Q, n=2)
    vs = random_independent(rng, V, 2)
    if vs is None:
        return
    try:
        out = gram_schmidt(vs)
    except NonInvertibleNorm:
        return
    assert orthogonal(out[0], out[1])


def test_best_approximation():
    doc = vectors("(1,0)", beta="(1,1)")
    assert str(best_approx(doc.beta, doc.vectors)) == "(1,0)"
    with pytest.raises(NotOrthogonal):
        best_approx(doc.beta, vectors("(1,0)", "(1,1)").vectors)


@given(st.randoms(use_true_random=False))
def test_projection_is_idempotent(rng):
    V = random_space(rng, Q, n=1)
    w = random_vector(rng, V)
    if not all(n.is_unit() for n in norm_sq(w)):
        return
    E = projection_matrix(V, [w])
    assert map_compose(E, E).mats == E.mats
    beta = random_vector(rng, V)
    assert map_apply(E, beta) == best_approx(beta, [w])


def test_orthogonal_complement():
    doc = vectors("(1,I)")
    report = orth_complement(doc.vectors, doc.space)
    assert report.lines() == ["dims (1)", "(-I,1)"]
    assert all(orthogonal(u, doc.vectors[0]) for u in report.vectors)


def test_split_check():
    assert split_check(vectors("(1,0)").vectors).lines() == ["split true", "gram det (1)"]
    report = split_check(vectors("(1,2)", space=PLANE_Z5).vectors)
    assert not report.holds
    assert orthogonal(report.witness, report.witness)


def test_bessel():
    doc = vectors("(1,0)", beta="(1,1)")
    assert bessel_check(doc.beta, doc.vectors).lines() == [
        "lhs (1)", "rhs (2)", "holds true", "equality false",
    ]
    inside = vectors("(1,0)", beta="(3,0)")
    report = bessel_check(inside.beta, inside.vectors)
    assert report.holds and report.equality


def test_positivity_uses_the_evaluation_order():
    assert positivity(vectors("(1,-I)").vectors[0]).lines() == ["component 1: (v/v) = 1+I positive true"]
    assert positivity(vectors("(I,0)").vectors[0]).holds == (False,)
    assert nn_nonneg(NNum(Q, 1, -1))
    assert not nn_positive(NNum(Q, 1, -1))


def test_order_needs_the_rationals():
    Z3 = FieldDescriptor.prime(3)
    with pytest.raises(UnorderedField):
        nn_positive(Z3.one)
    space = {"components": [{"shape": "tuple:2", "scalars": "N(Z3)"}]}
    doc = vectors("(1,0)", space=space, beta="(1,1)")
    with pytest.raises(UnorderedField):
        bessel_check(doc.beta, doc.vectors)


def test_inner_products_need_neutrosophic_scalars():
    space = {"components": [{"shape": "tuple:2", "scalars": "Q", "entries": "N(Q)"}]}
    with pytest.raises(UnsupportedRegime):
        InnerSpaceContext.of(vectors(space=space).space)
