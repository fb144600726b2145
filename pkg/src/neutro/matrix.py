"""
Matrices over N(K).

The determinant is a cofactor expansion (no division), so it is correct in the
ring. Inverses and anything needing a field go through the evaluation split:
both slot images are handled over the base field and recombined entrywise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from . import classical as cl
from .errors import FieldMismatch, NonSquare, NonUnitLeadingCoefficient, ShapeMismatch, Singular, VerificationFailed
from .poly import NPoly, p_recombine
from .scalars import SLOTS, FieldDescriptor, Flavor, NNum, Slot, nn_recombine

T = TypeVar("T")


@dataclass(frozen=True, eq=False)
class NMatrix:
    field: FieldDescriptor
    entries: tuple[tuple[NNum, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ShapeMismatch("a matrix needs at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ShapeMismatch("ragged rows")
        rows = tuple(tuple(_coerce(self.field, x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)

    # --- constructors ---
    @classmethod
    def of(cls, field: FieldDescriptor, rows: Sequence[Sequence]) -> "NMatrix":
        """Build from NNum entries or base values (ints, Fractions)."""
        return cls(field, tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, field: FieldDescriptor, n: int) -> "NMatrix":
        return cls(field, tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, field: FieldDescriptor, rows: int, cols: int) -> "NMatrix":
        return cls(field, tuple(tuple(field.zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diagonal(cls, values: Sequence[NNum]) -> "NMatrix":
        field = values[0].field
        for v in values[1:]:
            field = field.widen(v.field)
        n = len(values)
        return cls(field, tuple(tuple(values[i] if i == j else field.zero for j in range(n)) for i in range(n)))

    # --- shape ---
    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> NNum:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[NNum]:
        return [row[j] for row in self.entries]

    # --- algebra ---
    def _field_with(self, other: "NMatrix") -> FieldDescriptor:
        if self.field.base != other.field.base:
            raise FieldMismatch(f"{self.field.tag} vs {other.field.tag}")
        return self.field.widen(other.field)

    def __add__(self, other: "NMatrix") -> "NMatrix":
        return m_add(self, other)

    def __sub__(self, other: "NMatrix") -> "NMatrix":
        return m_sub(self, other)

    def __neg__(self) -> "NMatrix":
        return NMatrix(self.field, tuple(tuple(-x for x in row) for row in self.entries))

    def __matmul__(self, other: "NMatrix") -> "NMatrix":
        return m_mul(self, other)

    def scale(self, c) -> "NMatrix":
        return m_scale(c, self)

    def apply(self, v: Sequence[NNum]) -> list[NNum]:
        """Matrix times a column vector."""
        if len(v) != self.cols:
            raise ShapeMismatch(f"{self.rows}x{self.cols} times length {len(v)}")
        out = []
        for row in self.entries:
            acc = self.field.zero
            for a, x in zip(row, v):
                acc = acc + a * x
            out.append(acc)
        return out

    @property
    def T(self) -> "NMatrix":
        return m_transpose(self)

    def slot(self, slot: Slot) -> cl.Matrix:
        return [[x.eval(slot) for x in row] for row in self.entries]

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, NMatrix):
            return NotImplemented
        return self.field.base == other.field.base and self.entries == other.entries

    def __hash__(self):
        return hash((self.field.base, self.entries))

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.entries) + "]"

    def literal(self) -> str:
        return f"{self}@{self.field.tag}"

    def __repr__(self):
        return f"NMatrix({self.literal()})"


def _coerce(field: FieldDescriptor, x) -> NNum:
    if isinstance(x, NNum):
        if x.field.base != field.base:
            raise FieldMismatch(f"{x.field.tag} vs {field.tag}")
        return NNum(field, x.a, x.b)
    return NNum(field, x, 0)


def m_require_square(A: NMatrix) -> None:
    if not A.is_square:
        raise NonSquare(f"{A.rows}x{A.cols}")


def _require_shape(A: NMatrix, B: NMatrix) -> None:
    if A.shape != B.shape:
        raise ShapeMismatch(f"{A.rows}x{A.cols} vs {B.rows}x{B.cols}")


# --- ring operations ---

def m_add(A: NMatrix, B: NMatrix) -> NMatrix:
    _require_shape(A, B)
    field = A._field_with(B)
    return NMatrix(field, tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries)))


def m_sub(A: NMatrix, B: NMatrix) -> NMatrix:
    _require_shape(A, B)
    field = A._field_with(B)
    return NMatrix(field, tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries)))


def m_mul(A: NMatrix, B: NMatrix) -> NMatrix:
    if A.cols != B.rows:
        raise ShapeMismatch(f"{A.rows}x{A.cols} times {B.rows}x{B.cols}")
    field = A._field_with(B)
    cols = [B.column(j) for j in range(B.cols)]
    out = []
    for row in A.entries:
        new_row = []
        for col in cols:
            acc = field.zero
            for a, b in zip(row, col):
                acc = acc + a * b
            new_row.append(acc)
        out.append(tuple(new_row))
    return NMatrix(field, tuple(out))


def m_scale(c, A: NMatrix) -> NMatrix:
    if isinstance(c, NNum):
        if c.field.base != A.field.base:
            raise FieldMismatch(f"{c.field.tag} vs {A.field.tag}")
        field = A.field.widen(c.field)
    else:
        field = A.field
    return NMatrix(field, tuple(tuple(c * x for x in row) for row in A.entries))


def m_transpose(A: NMatrix) -> NMatrix:
    return NMatrix(A.field, tuple(zip(*A.entries)))


def m_identity(field: FieldDescriptor, n: int) -> NMatrix:
    return NMatrix.identity(field, n)


def m_zero(field: FieldDescriptor, rows: int, cols: int) -> NMatrix:
    return NMatrix.zero(field, rows, cols)


def m_power(A: NMatrix, k: int) -> NMatrix:
    m_require_square(A)
    result = NMatrix.identity(A.field.full() if A.field.flavor is Flavor.PURE else A.field, A.rows)
    for _ in range(k):
        result = result @ A
    return result


# --- split ---

def m_split(A: NMatrix) -> tuple[cl.Matrix, cl.Matrix]:
    return A.slot(Slot.AT0), A.slot(Slot.AT1)


def m_recombine(M0: cl.Matrix, M1: cl.Matrix, field: FieldDescriptor) -> NMatrix:
    if len(M0) != len(M1) or any(len(r0) != len(r1) for r0, r1 in zip(M0, M1)):
        raise ShapeMismatch("slot matrices have different shapes")
    rows = [[nn_recombine(u, v, field) for u, v in zip(r0, r1)] for r0, r1 in zip(M0, M1)]
    target = field
    for row in rows:
        for x in row:
            target = target.widen(x.field)
    return NMatrix(target, tuple(tuple(row) for row in rows))


# --- determinant ---

def cofactor_det(grid: Sequence[Sequence[T]], zero: T, one: T) -> T:
    """
    Determinant by Laplace expansion, memoized over column subsets.
    Only ring operations (+, -, *) are used.
    """
    n = len(grid)
    partial: dict[int, T] = {0: one}
    for i in range(n):
        nxt: dict[int, T] = {}
        for used, value in partial.items():
            for j in range(n):
                bit = 1 << j
                if used & bit:
                    continue
                # inversions added by placing column j after the columns in ``used``
                odd = bin(used >> (j + 1)).count("1") % 2
                term = value * grid[i][j]
                key = used | bit
                prev = nxt.get(key, zero)
                nxt[key] = prev - term if odd else prev + term
        partial = nxt
    return partial.get((1 << n) - 1, one if n == 0 else zero)


def m_det(A: NMatrix) -> NNum:
    m_require_square(A)
    field = A.field.full() if A.field.flavor is Flavor.PURE else A.field
    return cofactor_det([[NNum(field, x.a, x.b) for x in row] for row in A.entries], field.zero, field.one)


def m_adjugate(A: NMatrix) -> NMatrix:
    """Transpose of the cofactor matrix; A @ adj(A) = det(A) * identity."""
    m_require_square(A)
    n = A.rows
    field = A.field.full() if A.field.flavor is Flavor.PURE else A.field
    if n == 1:
        return NMatrix.identity(field, 1)
    out = []
    for j in range(n):
        row = []
        for i in range(n):
            minor = [[A.entries[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = cofactor_det([[NNum(field, x.a, x.b) for x in mr] for mr in minor], field.zero, field.one)
            row.append(cof if (i + j) % 2 == 0 else -cof)
        out.append(tuple(row))
    return NMatrix(field, tuple(out))


# --- characteristic polynomial ---

def m_charpoly(A: NMatrix) -> NPoly:
    """
    det(xI - A) expanded symbolically over NPoly entries, cross-checked
    against the classical characteristic polynomials of both slot images.
    """
    m_require_square(A)
    field = A.field.full() if A.field.flavor is Flavor.PURE else A.field
    x = NPoly.x(field)
    grid = [[(x if i == j else NPoly(field)) - NPoly.const(A.entries[i][j]) for j in range(A.cols)]
            for i in range(A.rows)]
    f = cofactor_det(grid, NPoly(field), NPoly.const(field.one))
    oracle = p_recombine(*(cl.charpoly(field.base, A.slot(s)) for s in SLOTS), field)
    if f != oracle:
        raise VerificationFailed(f"charpoly {f} disagrees with slot oracle {oracle}")
    return f


def m_charpoly_slots(A: NMatrix) -> NPoly:
    """Characteristic polynomial from the two classical slot computations only."""
    m_require_square(A)
    field = A.field.full() if A.field.flavor is Flavor.PURE else A.field
    return p_recombine(*(cl.charpoly(field.base, A.slot(s)) for s in SLOTS), field)


# --- inverse and similarity ---

def _unit_slots(field: FieldDescriptor) -> tuple[Slot, ...]:
    # slot 0 of a pure matrix is identically zero, only slot 1 carries it
    return (Slot.AT1,) if field.flavor is Flavor.PURE else SLOTS


def m_inverse(A: NMatrix) -> NMatrix:
    """Inverse in the matrix ring over A's own scalars; over KI the unit is I times the identity."""
    m_require_square(A)
    base = A.field.base
    inverses = []
    for s in _unit_slots(A.field):
        inv = cl.inverse(base, A.slot(s))
        if inv is None:
            raise Singular(f"slot={int(s)}", slot=s)
        inverses.append(inv)
    if len(inverses) == 1:
        inverses.insert(0, cl.zeros(base, A.rows, A.rows))
    field = A.field
    result = m_recombine(inverses[0], inverses[1], field)
    if result @ A != NMatrix.identity(field, A.rows):
        raise VerificationFailed("recombined inverse does not invert")
    return result


def m_is_invertible(A: NMatrix) -> bool:
    m_require_square(A)
    return all(cl.det(A.field.base, A.slot(s)) != 0 for s in _unit_slots(A.field))


def m_similarity_check(A: NMatrix, B: NMatrix, P: NMatrix) -> bool:
    """True iff B = P^-1 A P; a true answer is followed by a charpoly agreement check."""
    for M in (A, B, P):
        m_require_square(M)
    if not (A.shape == B.shape == P.shape):
        raise ShapeMismatch(f"sizes {A.rows}, {B.rows}, {P.rows}")
    holds = m_inverse(P) @ A @ P == B
    if holds and m_charpoly(A) != m_charpoly(B):
        raise VerificationFailed("similar matrices with different characteristic polynomials")
    return holds


def m_companion(f: NPoly) -> NMatrix:
    """Companion matrix of a monic f: ones below the diagonal, last column -c_0..-c_{k-1}."""
    if not f.is_monic():
        raise NonUnitLeadingCoefficient(f"companion of non-monic {f}")
    k = int(f.degree)
    if k < 1:
        raise ShapeMismatch("companion of a constant polynomial")
    field = f.field
    rows = [[field.zero] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = field.one
    for i in range(k):
        rows[i][k - 1] = -f.coeffs[i]
    return NMatrix(field, tuple(tuple(r) for r in rows))


def m_map_entries(A: NMatrix, fn: Callable[[NNum], NNum], field: FieldDescriptor | None = None) -> NMatrix:
    return NMatrix(field or A.field, tuple(tuple(fn(x) for x in row) for row in A.entries))
