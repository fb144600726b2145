import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.jobs.parse import parse_map, parse_vectors
from src.neutro.errors import FieldMismatch, IncompleteSum, InfiniteDimension, NotABasis, UnsupportedRegime
from src.neutro.nspace import (
    ClassificationLabel,
    ComponentAmbient,
    FoldKind,
    NFoldMap,
    NFoldSpace,
    Shape,
    SlotCount,
    Subspace,
    annihilator,
    direct_sum_check,
    dual_basis,
    functional_apply,
    kernel_basis,
    map_apply,
    map_compose,
    map_identity,
    map_inverse,
    nbasis,
    projections_from_sum,
    rank_nullity,
    space_dim,
    standard_basis,
    subspace_classify,
    transpose_map,
)
from src.neutro.sampling import random_invertible, random_map, random_space, random_vector
from src.neutro.scalars import FieldDescriptor
from src.tests.strategies import fields

Z3 = FieldDescriptor.prime(3)
PLANE = {"components": [{"shape": "tuple:2", "scalars": "N(Z3)"}]}


def vectors(*vs, space=None, **extra):
    return parse_vectors(json.dumps({"space": space or PLANE, "vectors": [list(v) for v in vs], **extra}))


def linear_map(*mats, domain=None):
    return parse_map(json.dumps({"domain": domain or PLANE, "mats": list(mats)}))


def test_dimension_report():
    doc = vectors(space={"components": [{"shape": "tuple:2", "scalars": "N(Z3)"},
                                        {"shape": "matrix:2x2", "scalars": "N(Z3)"}]})
    assert str(space_dim(doc.space)) == "(2, 4) total 6"
    typed = vectors(space={"kind": "TypeII", "components": [{"shape": "tuple:2", "scalars": "N(Z3)"},
                                                            {"shape": "tuple:3", "scalars": "N(Z5)"}]})
    assert str(space_dim(typed.space)) == "(2, 3)"


def test_real_scalars_over_neutrosophic_entries_double_the_dimension():
    amb = ComponentAmbient(Shape.tuple(2), FieldDescriptor.from_tag("Q"), FieldDescriptor.from_tag("N(Q)"))
    assert amb.dim == 4


def test_type_one_components_must_share_a_field():
    comps = [ComponentAmbient(Shape.tuple(2), Z3, Z3),
             ComponentAmbient(Shape.tuple(2), FieldDescriptor.prime(5), FieldDescriptor.prime(5))]
    with pytest.raises(FieldMismatch):
        NFoldSpace.build(FoldKind.TYPE_I, comps)


def test_basis_keeps_the_earliest_vectors():
    doc = vectors(["(1,0)"], ["(I,0)"], ["(0,1)"])
    B = nbasis(doc.vectors)
    assert B.lines() == ["component 1 dim 2", "  (1,0)", "  (0,1)"]
    assert B.dims == (SlotCount(2, 2),)


def test_basis_with_different_slot_ranks():
    B = nbasis(vectors(["(I,0)"]).vectors)
    assert B.dims[0] == SlotCount(0, 1)
    assert str(B.dims[0]) == "SlotRankMismatch(0,1)"
    assert B.flags == ["SlotRankMismatch component=1"]
    assert B.lines()[1] == "  (I,0)"


def test_polynomial_components_need_a_degree_bound():
    doc = vectors(["x^2 + I"], space={"components": [{"shape": "poly:inf", "scalars": "N(Q)"}]})
    with pytest.raises(InfiniteDimension):
        nbasis(doc.vectors)


def test_dual_basis_is_biorthogonal():
    B = nbasis(vectors(["(1,I)"], ["(0,1)"]).vectors)
    (functionals,) = dual_basis(B)
    for k, f in enumerate(functionals):
        for j, alpha in enumerate(B.vectors(0)):
            assert functional_apply(f, alpha) == (1 if k == j else 0)


def test_dual_basis_needs_a_full_basis():
    with pytest.raises(NotABasis):
        dual_basis(nbasis(vectors(["(1,0)"]).vectors))


def test_dual_needs_functionals_to_exist():
    space = {"components": [{"shape": "tuple:2", "scalars": "Q", "entries": "N(Q)"}]}
    B = standard_basis(vectors(space=space).space)
    with pytest.raises(UnsupportedRegime):
        dual_basis(B)


def test_rank_nullity():
    T = linear_map("[[1,0],[0,0]]")
    report = rank_nullity(T)
    assert report.lines() == ["component 1: rank 1 nullity 1 dim 2"]
    assert report.holds()
    assert [str(v) for v in kernel_basis(T)] == ["(0,1)"]


def test_rank_nullity_with_different_slot_ranks():
    T = linear_map("[[I,0],[0,1]]")
    report = rank_nullity(T)
    assert report.lines() == ["component 1: rank SlotRankMismatch(1,2) nullity SlotRankMismatch(1,0) dim 2"]
    assert report.holds()
    kernel = kernel_basis(T)
    assert [str(v) for v in kernel] == ["(1+2I,0)"]
    assert map_apply(T, kernel[0]).is_zero()


@given(fields, st.randoms(use_true_random=False))
def test_kernel_vectors_map_to_zero(field, rng):
    V = random_space(rng, field)
    T = random_map(rng, V, V)
    report = rank_nullity(T)
    assert report.holds()
    for v in kernel_basis(T):
        assert map_apply(T, v).is_zero()


@given(fields, st.randoms(use_true_random=False))
def test_composition_applies_right_to_left(field, rng):
    V = random_space(rng, field)
    S, T = random_map(rng, V, V), random_map(rng, V, V)
    v = random_vector(rng, V)
    assert map_apply(map_compose(S, T), v) == map_apply(S, map_apply(T, v))


@given(fields, st.randoms(use_true_random=False))
def test_inverse_map(field, rng):
    V = random_space(rng, field)
    mats = tuple(random_invertible(rng, amb.scalars, amb.dim) for amb in V.components)
    T = NFoldMap(V, V, tuple(range(V.n)), mats)
    v = random_vector(rng, V)
    assert map_apply(map_inverse(T), map_apply(T, v)) == v
    assert map_compose(map_inverse(T), T).mats == map_identity(V).mats


def test_annihilator():
    doc = vectors(["(1,0)"])
    report = annihilator(Subspace.spanned_by(doc.space, doc.vectors))
    assert report.lines() == ["component 1 dim W 1 dim W° 1", "  f1(0,1)"]


def test_transpose_map_transposes_the_matrix():
    T = linear_map("[[1,2],[0,1]]")
    Tt = transpose_map(T)
    assert Tt.mats[0] == T.mats[0].T
    assert rank_nullity(Tt).rank == rank_nullity(T).rank


def test_direct_sum():
    doc = vectors(subspaces=[[["(1,0)"]], [["(0,1)"]]])
    assert direct_sum_check(doc.subspaces).lines() == ["direct true"]
    E1, E2 = projections_from_sum(doc.subspaces)
    assert map_compose(E1, E1).mats == E1.mats
    assert map_compose(E1, E2).mats[0].is_zero()


def test_overlapping_sum_is_not_direct():
    doc = vectors(subspaces=[[["(1,0)"]], [["(2,0)"]]])
    report = direct_sum_check(doc.subspaces)
    assert not report.direct
    assert report.lines()[0] == "direct false"
    with pytest.raises(IncompleteSum):
        projections_from_sum(doc.subspaces)


@pytest.mark.parametrize("generator, context, expected", [
    ("(1,0)", None, "PseudoStrong"),
    ("(I,0)", None, "StrongNeutrosophic"),
    ("(I,0)", ["Z3"], "SpecialSubNeutrosophic(Z3)"),
    ("(I,0)", ["N(Z5)"], "Invalid"),
])
def test_classification(generator, context, expected):
    doc = vectors([generator])
    W = Subspace.spanned_by(doc.space, doc.vectors)
    ctx = [FieldDescriptor.from_tag(t) for t in context] if context else None
    result = subspace_classify(W, doc.space, ctx)
    assert result.lines() == [f"component 1: {expected}", f"overall: {expected} (TypeI)"]


def test_mixed_components_are_quasi_pseudo():
    space = {"components": [{"shape": "tuple:2", "scalars": "N(Z3)"}, {"shape": "tuple:2", "scalars": "N(Z3)"}]}
    doc = vectors(["(I,0)", "(1,0)"], space=space)
    result = subspace_classify(Subspace.spanned_by(doc.space, doc.vectors), doc.space)
    assert result.labels == (ClassificationLabel.STRONG, ClassificationLabel.PSEUDO_STRONG)
    assert result.overall == "QuasiPseudo"


def test_real_scalar_classification():
    space = {"components": [{"shape": "tuple:2", "scalars": "Q", "entries": "N(Q)"}]}
    for generator, expected in (("(I,1)", "NeutrosophicSubspace"), ("(1,2)", "PseudoRealSubspace")):
        doc = vectors([generator], space=space)
        result = subspace_classify(Subspace.spanned_by(doc.space, doc.vectors), doc.space)
        assert result.overall == expected
