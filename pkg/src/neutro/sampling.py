"""Seeded random instances for the verify suites and the property tests."""
from __future__ import annotations

import random
from typing import Sequence

from . import classical as cl
from .matrix import NMatrix, m_recombine
from .nspace import (
    ComponentAmbient,
    FoldKind,
    NFoldMap,
    NFoldSpace,
    NFoldVector,
    Shape,
    independent,
)
from .poly import NPoly
from .scalars import FieldDescriptor, Flavor, NNum

FIELD_TAGS = ("N(Z2)", "N(Z3)", "N(Z5)", "N(Q)")


def random_scalar(rng: random.Random, field: FieldDescriptor, bound: int = 5) -> NNum:
    base = field.base
    a = base.random(rng, bound) if field.flavor is not Flavor.PURE else base.zero
    b = base.random(rng, bound) if field.flavor is not Flavor.REAL else base.zero
    return NNum(field, a, b)


def random_unit(rng: random.Random, field: FieldDescriptor, bound: int = 5) -> NNum:
    while True:
        x = random_scalar(rng, field, bound)
        if x.is_unit():
            return x


def random_matrix(rng: random.Random, field: FieldDescriptor, rows: int, cols: int | None = None) -> NMatrix:
    cols = rows if cols is None else cols
    return NMatrix(field, tuple(tuple(random_scalar(rng, field) for _ in range(cols)) for _ in range(rows)))


def random_invertible(rng: random.Random, field: FieldDescriptor, n: int) -> NMatrix:
    """Unit lower times unit upper triangular, with unit diagonals in both slots."""
    L = [[random_scalar(rng, field) if j < i else (random_unit(rng, field) if i == j else field.zero)
          for j in range(n)] for i in range(n)]
    U = [[random_scalar(rng, field) if j > i else (field.one if i == j else field.zero)
          for j in range(n)] for i in range(n)]
    return NMatrix.of(field, L) @ NMatrix.of(field, U)


def random_splitting(rng: random.Random, field: FieldDescriptor, n: int) -> NMatrix:
    """P T P^-1 with T lower triangular; its characteristic polynomial splits in both slots."""
    base = field.base
    slots = []
    for _ in range(2):
        T = [[base.random(rng, 3) if j <= i else base.zero for j in range(n)] for i in range(n)]
        while True:
            P = [[base.random(rng, 3) for _ in range(n)] for _ in range(n)]
            Pinv = cl.inverse(base, P)
            if Pinv is not None:
                break
        slots.append(cl.matmul(cl.matmul(P, T), Pinv))
    return m_recombine(slots[0], slots[1], field)


def random_poly(rng: random.Random, field: FieldDescriptor, degree: int, monic: bool = False) -> NPoly:
    coeffs = [random_scalar(rng, field) for _ in range(degree)]
    coeffs.append(field.one if monic else random_unit(rng, field))
    return NPoly(field, tuple(coeffs))


def random_space(rng: random.Random, field: FieldDescriptor, n: int = 2, max_size: int = 3) -> NFoldSpace:
    """A TypeI space over ``field`` with random tuple or matrix components."""
    comps = []
    for _ in range(n):
        if rng.random() < 0.5:
            shape = Shape.tuple(rng.randint(1, max_size))
        else:
            shape = Shape.matrix(rng.randint(1, 2), rng.randint(1, 2))
        comps.append(ComponentAmbient(shape, field, field))
    return NFoldSpace.build(FoldKind.TYPE_I, comps)


def random_vector(rng: random.Random, V: NFoldSpace) -> NFoldVector:
    return V.vector(*[[random_scalar(rng, amb.entries) for _ in range(amb.size)] for amb in V.components])


def random_vectors(rng: random.Random, V: NFoldSpace, k: int) -> list[NFoldVector]:
    return [random_vector(rng, V) for _ in range(k)]


def random_independent(rng: random.Random, V: NFoldSpace, k: int, attempts: int = 50) -> list[NFoldVector] | None:
    for _ in range(attempts):
        vs = random_vectors(rng, V, k)
        if independent(vs):
            return vs
    return None


def random_map(rng: random.Random, V: NFoldSpace, W: NFoldSpace,
               assignment: Sequence[int] | None = None) -> NFoldMap:
    if assignment is None:
        assignment = list(range(V.n))
        rng.shuffle(assignment)
    mats = []
    for i, j in enumerate(assignment):
        src, dst = V.components[i], W.components[j]
        mats.append(random_matrix(rng, src.scalars, dst.dim, src.dim))
    return NFoldMap(V, W, tuple(assignment), tuple(mats))
