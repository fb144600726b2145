"""
n-fold vector spaces V = V1 U ... U Vn over an n-field.

Each component fixes a scalar regime when the space is built:

  R1       real scalars K acting on entries; every entry a + bI expands to
           K-coordinates, and linear algebra is classical over K.
  R2_FULL  scalars N(K); linear algebra runs in both evaluation slots.
  R2_PURE  scalars KI; coordinates are the I-coefficients, classical over K.

Internally a component part is a flat tuple of NNum (row-major for matrix
ambients, ascending coefficients for polynomial ambients). A "channel" is one
classical coordinate system of a component: one for R1 and R2_PURE, two (the
slots) for R2_FULL.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from . import classical as cl
from .base import Element
from .errors import (
    AssignmentMismatch,
    FieldMismatch,
    IncompleteSum,
    InfiniteDimension,
    NotABasis,
    ParseError,
    ShapeMismatch,
    Singular,
    SpaceMismatch,
    UnsupportedRegime,
)
from .matrix import NMatrix
from .poly import NPoly, format_poly
from .scalars import SLOTS, FieldDescriptor, Flavor, NNum, Slot, nn_recombine

Part = tuple[NNum, ...]


class FoldKind(Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"


class Regime(Enum):
    R1 = "R1"
    R2_FULL = "R2_FULL"
    R2_PURE = "R2_PURE"


@dataclass(frozen=True)
class NFoldField:
    components: tuple[FieldDescriptor, ...]
    kind: FoldKind = FoldKind.TYPE_I

    def __post_init__(self):
        if not self.components:
            raise SpaceMismatch("an n-field needs at least one component")
        if self.kind is FoldKind.TYPE_I:
            if len(set(self.components)) != 1:
                raise FieldMismatch("TypeI n-field components must be equal")
            return
        for i, f in enumerate(self.components):
            for g in self.components[i + 1:]:
                if f == g or f.contains(g) or g.contains(f):
                    raise FieldMismatch(f"TypeII components {f.tag} and {g.tag} are not mutually non-containing")

    @property
    def n(self) -> int:
        return len(self.components)


class ShapeKind(Enum):
    TUPLE = "tuple"
    MATRIX = "matrix"
    POLY = "poly"


@dataclass(frozen=True)
class Shape:
    kind: ShapeKind
    rows: int | None = 1
    cols: int = 1

    @classmethod
    def tuple(cls, n: int) -> "Shape":
        return cls(ShapeKind.TUPLE, n, 1)

    @classmethod
    def matrix(cls, r: int, c: int) -> "Shape":
        return cls(ShapeKind.MATRIX, r, c)

    @classmethod
    def poly(cls, degree: int | None) -> "Shape":
        """Polynomials of degree <= ``degree``; None is the unbounded ambient."""
        return cls(ShapeKind.POLY, degree, 1)

    @classmethod
    def parse(cls, text: str) -> "Shape":
        m = _SHAPE.fullmatch(text.strip())
        if not m:
            raise ParseError(f"bad shape {text!r}", expected="tuple:<n>, matrix:<r>x<c>, poly:<d> or poly:inf")
        if m["tuple"]:
            return cls.tuple(int(m["tuple"]))
        if m["r"]:
            return cls.matrix(int(m["r"]), int(m["c"]))
        return cls.poly(None if m["deg"] == "inf" else int(m["deg"]))

    @property
    def bounded(self) -> bool:
        return self.rows is not None

    @property
    def size(self) -> int:
        if self.rows is None:
            raise InfiniteDimension("unbounded polynomial ambient")
        if self.kind is ShapeKind.POLY:
            return self.rows + 1
        return self.rows * self.cols

    def __str__(self):
        if self.kind is ShapeKind.TUPLE:
            return f"tuple:{self.rows}"
        if self.kind is ShapeKind.MATRIX:
            return f"matrix:{self.rows}x{self.cols}"
        return f"poly:{'inf' if self.rows is None else self.rows}"


_SHAPE = re.compile(r"tuple:(?P<tuple>\d+)|matrix:(?P<r>\d+)x(?P<c>\d+)|poly:(?P<deg>\d+|inf)")


@dataclass(frozen=True)
class ComponentAmbient:
    shape: Shape
    scalars: FieldDescriptor
    entries: FieldDescriptor

    def __post_init__(self):
        if self.scalars.base != self.entries.base:
            raise FieldMismatch(f"scalars {self.scalars.tag} vs entries {self.entries.tag}")
        if self.scalars.flavor is Flavor.FULL and self.entries.flavor is not Flavor.FULL:
            raise UnsupportedRegime(f"{self.entries.tag} entries are not a module over {self.scalars.tag}")
        if self.scalars.flavor is Flavor.PURE and self.entries.flavor is not Flavor.PURE:
            raise UnsupportedRegime(f"{self.entries.tag} entries are not a module over {self.scalars.tag}")

    @property
    def regime(self) -> Regime:
        if self.scalars.flavor is Flavor.REAL:
            return Regime.R1
        return Regime.R2_FULL if self.scalars.flavor is Flavor.FULL else Regime.R2_PURE

    @property
    def base(self):
        return self.scalars.base

    @property
    def channels(self) -> int:
        return 2 if self.regime is Regime.R2_FULL else 1

    @property
    def entry_width(self) -> int:
        if self.regime is Regime.R1 and self.entries.flavor is Flavor.FULL:
            return 2
        return 1

    @property
    def size(self) -> int:
        return self.shape.size

    @property
    def dim(self) -> int:
        """Coordinate count per channel."""
        return self.size * self.entry_width

    # --- parts ---
    def part(self, value) -> Part:
        """Flatten and check a tuple, NMatrix or NPoly into this ambient."""
        if isinstance(value, NMatrix):
            if self.shape.kind is not ShapeKind.MATRIX or value.shape != (self.shape.rows, self.shape.cols):
                raise SpaceMismatch(f"{value.rows}x{value.cols} matrix in {self.shape}")
            flat = [x for row in value.entries for x in row]
        elif isinstance(value, NPoly):
            if self.shape.kind is not ShapeKind.POLY:
                raise SpaceMismatch(f"polynomial in {self.shape}")
            if self.shape.bounded and value.degree > self.shape.rows:
                raise SpaceMismatch(f"degree {value.degree} above {self.shape.rows}")
            flat = list(value.coeffs)
            if self.shape.bounded:
                flat += [self.entries.zero] * (self.size - len(flat))
        else:
            flat = list(value)
            if self.shape.bounded and len(flat) != self.size:
                raise SpaceMismatch(f"{len(flat)} entries in {self.shape}")
        return tuple(_entry(self.entries, x) for x in flat)

    def zero_part(self) -> Part:
        return tuple(self.entries.zero for _ in range(self.size))

    def unit_part(self, k: int) -> Part:
        """The k-th standard coordinate vector of this component."""
        pos, width = divmod(k, self.entry_width)
        if self.regime is Regime.R1 and self.entries.flavor is Flavor.FULL:
            unit = NNum(self.entries, 1, 0) if width == 0 else NNum(self.entries, 0, 1)
        elif self.entries.flavor is Flavor.PURE:
            unit = NNum(self.entries, 0, 1)
        else:
            unit = self.entries.one
        return tuple(unit if i == pos else self.entries.zero for i in range(self.size))

    def format(self, part: Part) -> str:
        if self.shape.kind is ShapeKind.TUPLE:
            return "(" + ",".join(str(x) for x in part) + ")"
        if self.shape.kind is ShapeKind.MATRIX:
            c = self.shape.cols
            rows = [part[i:i + c] for i in range(0, len(part), c)]
            return "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in rows) + "]"
        return format_poly(NPoly(self.entries, part))

    def native(self, part: Part):
        if self.shape.kind is ShapeKind.MATRIX:
            c = self.shape.cols
            return NMatrix(self.entries, tuple(part[i:i + c] for i in range(0, len(part), c)))
        if self.shape.kind is ShapeKind.POLY:
            return NPoly(self.entries, part)
        return part

    # --- channel coordinates ---
    def encode(self, part: Part) -> list[list[Element]]:
        if self.regime is Regime.R2_FULL:
            return [[x.eval(s) for x in part] for s in SLOTS]
        if self.regime is Regime.R2_PURE:
            return [[x.b for x in part]]
        if self.entries.flavor is Flavor.FULL:
            return [[c for x in part for c in (x.a, x.b)]]
        if self.entries.flavor is Flavor.PURE:
            return [[x.b for x in part]]
        return [[x.a for x in part]]

    def decode(self, coords: Sequence[Sequence[Element]]) -> Part:
        if self.regime is Regime.R2_FULL:
            return tuple(_recombine(u, v, self.entries) for u, v in zip(coords[0], coords[1]))
        (flat,) = coords
        if self.entries.flavor is Flavor.PURE:
            return tuple(NNum(self.entries, 0, v) for v in flat)
        if self.regime is Regime.R1 and self.entries.flavor is Flavor.FULL:
            return tuple(NNum(self.entries, flat[i], flat[i + 1]) for i in range(0, len(flat), 2))
        return tuple(NNum(self.entries, v, 0) for v in flat)

    def scalar(self, c) -> NNum:
        """Coerce into the scalar ring of this component."""
        if isinstance(c, NNum):
            if c.field.base != self.base:
                raise FieldMismatch(f"{c.field.tag} vs {self.scalars.tag}")
            return NNum(self.scalars, c.a, c.b)
        return NNum(self.scalars, c, 0)

    def scalar_channels(self, c: NNum) -> list[Element]:
        if self.regime is Regime.R2_FULL:
            return [c.eval(s) for s in SLOTS]
        if self.regime is Regime.R2_PURE:
            return [c.b]
        return [c.a]

    def scalar_from_channel(self, ch: int, value: Element) -> NNum:
        """Scalar whose channel ``ch`` coordinate is ``value`` and every other is zero."""
        if self.regime is Regime.R2_FULL:
            zero = self.base.zero
            return _recombine(value, zero, self.scalars) if ch == 0 else _recombine(zero, value, self.scalars)
        if self.regime is Regime.R2_PURE:
            return NNum(self.scalars, 0, value)
        return NNum(self.scalars, value, 0)

    def decode_channel(self, ch: int, coords: Sequence[Element]) -> Part:
        """Part whose channel ``ch`` coordinates are ``coords`` and every other channel is zero."""
        zeros = [self.base.zero] * len(coords)
        return self.decode([coords if k == ch else zeros for k in range(self.channels)])

    def matrix_channels(self, M: NMatrix) -> list[cl.Matrix]:
        if self.regime is Regime.R2_FULL:
            return [M.slot(s) for s in SLOTS]
        if self.regime is Regime.R2_PURE:
            return [M.slot(Slot.AT1)]
        return [M.slot(Slot.AT0)]

    def matrix_from_channels(self, mats: Sequence[cl.Matrix]) -> NMatrix:
        rows = len(mats[0])
        cols = len(mats[0][0]) if rows else 0
        return NMatrix(self.scalars, tuple(
            tuple(self._scalar_from_all([m[i][j] for m in mats]) for j in range(cols)) for i in range(rows)))

    def _scalar_from_all(self, values: Sequence[Element]) -> NNum:
        if self.regime is Regime.R2_FULL:
            return _recombine(values[0], values[1], self.scalars)
        return self.scalar_from_channel(0, values[0])


def _recombine(u, v, field: FieldDescriptor) -> NNum:
    c = nn_recombine(u, v, field)
    return NNum(field, c.a, c.b)


def _entry(field: FieldDescriptor, x) -> NNum:
    if isinstance(x, NNum):
        if x.field.base != field.base:
            raise FieldMismatch(f"{x.field.tag} vs {field.tag}")
        return NNum(field, x.a, x.b)
    return NNum(field, x, 0)


@dataclass(frozen=True)
class NFoldSpace:
    field: NFoldField
    components: tuple[ComponentAmbient, ...]

    def __post_init__(self):
        if len(self.components) != self.field.n:
            raise SpaceMismatch(f"{len(self.components)} components over a {self.field.n}-field")
        for amb, f in zip(self.components, self.field.components):
            if amb.scalars != f:
                raise FieldMismatch(f"component scalars {amb.scalars.tag} vs field {f.tag}")

    @classmethod
    def build(cls, kind: FoldKind, components: Iterable[ComponentAmbient]) -> "NFoldSpace":
        comps = tuple(components)
        return cls(NFoldField(tuple(c.scalars for c in comps), kind), comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def vector(self, *parts) -> "NFoldVector":
        if len(parts) != self.n:
            raise SpaceMismatch(f"{len(parts)} parts for a {self.n}-fold space")
        return NFoldVector(self, tuple(amb.part(p) for amb, p in zip(self.components, parts)))

    def zero(self) -> "NFoldVector":
        return NFoldVector(self, tuple(amb.zero_part() for amb in self.components))

    def supported(self, i: int, part: Part) -> "NFoldVector":
        """The n-vector equal to ``part`` in component i and zero elsewhere."""
        parts = [amb.zero_part() if k != i else part for k, amb in enumerate(self.components)]
        return NFoldVector(self, tuple(parts))


@dataclass(frozen=True)
class NFoldVector:
    space: NFoldSpace
    parts: tuple[Part, ...]

    def _same(self, other: "NFoldVector") -> None:
        if other.space != self.space:
            raise SpaceMismatch("vectors from different spaces")

    def __add__(self, other: "NFoldVector") -> "NFoldVector":
        self._same(other)
        return NFoldVector(self.space, tuple(
            tuple(x + y for x, y in zip(p, q)) for p, q in zip(self.parts, other.parts)))

    def __neg__(self) -> "NFoldVector":
        return NFoldVector(self.space, tuple(tuple(-x for x in p) for p in self.parts))

    def __sub__(self, other: "NFoldVector") -> "NFoldVector":
        return self + (-other)

    def scale(self, *scalars) -> "NFoldVector":
        """Scale by one scalar for every component, or one scalar per component."""
        if len(scalars) == 1:
            scalars = scalars * self.space.n
        if len(scalars) != self.space.n:
            raise SpaceMismatch(f"{len(scalars)} scalars for a {self.space.n}-fold vector")
        parts = []
        for amb, c, p in zip(self.space.components, scalars, self.parts):
            s = amb.scalar(c)
            parts.append(tuple(_entry(amb.entries, s * x) for x in p))
        return NFoldVector(self.space, tuple(parts))

    def is_zero(self) -> bool:
        return all(not x for p in self.parts for x in p)

    def __str__(self):
        return " ∪ ".join(amb.format(p) for amb, p in zip(self.space.components, self.parts))


# --- dimension bookkeeping ---

@dataclass(frozen=True, eq=False)
class SlotCount:
    """A per-slot count; single-channel regimes repeat the same value."""

    at0: int
    at1: int

    @classmethod
    def of(cls, values: Sequence[int]) -> "SlotCount":
        return cls(values[0], values[-1])

    @property
    def mismatch(self) -> bool:
        return self.at0 != self.at1

    @property
    def value(self) -> int | None:
        return None if self.mismatch else self.at0

    def __eq__(self, other):
        if isinstance(other, SlotCount):
            return (self.at0, self.at1) == (other.at0, other.at1)
        if isinstance(other, int):
            return not self.mismatch and self.at0 == other
        return NotImplemented

    def __hash__(self):
        return hash((self.at0, self.at1))

    def __add__(self, other: "SlotCount") -> "SlotCount":
        return SlotCount(self.at0 + other.at0, self.at1 + other.at1)

    def __str__(self):
        return f"SlotRankMismatch({self.at0},{self.at1})" if self.mismatch else str(self.at0)


@dataclass(frozen=True)
class DimReport:
    components: tuple[SlotCount, ...]
    total: int | None

    def __str__(self):
        text = "(" + ", ".join(str(c) for c in self.components) + ")"
        return text if self.total is None else f"{text} total {self.total}"


def space_dim(V: NFoldSpace) -> DimReport:
    dims = tuple(SlotCount(amb.dim, amb.dim) for amb in V.components)
    total = sum(d.at0 for d in dims) if V.field.kind is FoldKind.TYPE_I else None
    return DimReport(dims, total)


# --- independence and bases ---

@dataclass(frozen=True)
class Independence:
    independent: bool
    component: int | None = None
    witness: tuple[NNum, ...] | None = None

    def __bool__(self):
        return self.independent


def _require_same_space(vectors: Sequence[NFoldVector]) -> NFoldSpace:
    if not vectors:
        raise SpaceMismatch("empty vector list")
    V = vectors[0].space
    if any(v.space != V for v in vectors):
        raise SpaceMismatch("vectors from different spaces")
    return V


def channel_columns(amb: ComponentAmbient, parts: Sequence[Part]) -> list[cl.Matrix]:
    """Per channel, the coordinate matrix whose columns are the encoded parts."""
    encoded = [amb.encode(p) for p in parts]
    return [cl.columns([e[ch] for e in encoded], amb.dim) for ch in range(amb.channels)]


def _component_dependency(amb: ComponentAmbient, parts: Sequence[Part]) -> tuple[NNum, ...] | None:
    for ch, M in enumerate(channel_columns(amb, parts)):
        kernel = cl.nullspace(amb.base, M, len(parts))
        if kernel:
            return tuple(amb.scalar_from_channel(ch, c) for c in kernel[0])
    return None


def independent(vectors: Sequence[NFoldVector]) -> Independence:
    """Per component test; the witness is a nonzero coefficient vector with zero combination."""
    V = _require_same_space(vectors)
    for i, amb in enumerate(V.components):
        require_finite(amb)
        witness = _component_dependency(amb, [v.parts[i] for v in vectors])
        if witness is not None:
            return Independence(False, i, witness)
    return Independence(True)


def combine(amb: ComponentAmbient, coeffs: Sequence[NNum], parts: Sequence[Part]) -> Part:
    out = list(amb.zero_part())
    for c, p in zip(coeffs, parts):
        out = [x + c * y for x, y in zip(out, p)]
    return tuple(_entry(amb.entries, x) for x in out)


def pair_channels(amb: ComponentAmbient, per_channel: Sequence[Sequence[Sequence[Element]]]) -> tuple[list[Part], SlotCount]:
    """
    Assemble parts from per-channel coordinate lists. Equal counts pair
    positionally; unequal counts give a generating set supported in one slot.
    """
    count = SlotCount.of([len(vs) for vs in per_channel])
    if amb.channels == 1:
        return [amb.decode([v]) for v in per_channel[0]], count
    if not count.mismatch:
        return [amb.decode([u, w]) for u, w in zip(*per_channel)], count
    parts = [amb.decode_channel(0, u) for u in per_channel[0]]
    parts += [amb.decode_channel(1, w) for w in per_channel[1]]
    return parts, count


@dataclass(frozen=True)
class NBasis:
    space: NFoldSpace
    parts: tuple[tuple[Part, ...], ...]
    dims: tuple[SlotCount, ...]

    @property
    def flags(self) -> list[str]:
        return [f"SlotRankMismatch component={i + 1}" for i, d in enumerate(self.dims) if d.mismatch]

    def vectors(self, i: int) -> list[NFoldVector]:
        return [self.space.supported(i, p) for p in self.parts[i]]

    def lines(self) -> list[str]:
        out = []
        for i, (amb, ps) in enumerate(zip(self.space.components, self.parts)):
            out.append(f"component {i + 1} dim {self.dims[i]}")
            out.extend(f"  {amb.format(p)}" for p in ps)
        out.extend(self.flags)
        return out


def _component_basis(amb: ComponentAmbient, parts: Sequence[Part]) -> tuple[list[Part], SlotCount]:
    chosen = _pivot_parts(amb, parts)
    if chosen is not None:
        return chosen, SlotCount(len(chosen), len(chosen))
    per_channel = []
    for ch, M in enumerate(channel_columns(amb, parts)):
        pivots = cl.rref(amb.base, M)[1]
        per_channel.append([amb.encode(parts[k])[ch] for k in pivots])
    return pair_channels(amb, per_channel)


def _pivot_parts(amb: ComponentAmbient, parts: Sequence[Part]) -> list[Part] | None:
    """Leftmost-pivot selection when every channel picks the same input vectors."""
    chosen = None
    for M in channel_columns(amb, parts):
        pivots = cl.rref(amb.base, M)[1] if parts else []
        if chosen is None:
            chosen = pivots
        elif pivots != chosen:
            return None
    return [parts[k] for k in chosen or []]


def nbasis(spanning: Sequence[NFoldVector]) -> NBasis:
    """Deterministic leftmost-pivot basis per component; earliest-listed vectors win."""
    V = _require_same_space(spanning)
    parts, dims = [], []
    for i, amb in enumerate(V.components):
        require_finite(amb)
        ps, d = _component_basis(amb, [v.parts[i] for v in spanning])
        parts.append(tuple(ps))
        dims.append(d)
    return NBasis(V, tuple(parts), tuple(dims))


def standard_basis(V: NFoldSpace) -> NBasis:
    parts = tuple(tuple(amb.unit_part(k) for k in range(amb.dim)) for amb in V.components)
    return NBasis(V, parts, tuple(SlotCount(amb.dim, amb.dim) for amb in V.components))


# --- maps ---

@dataclass(frozen=True)
class NFoldMap:
    """
    Componentwise linear map. ``assignment[i]`` is the codomain component that
    domain component i maps to; ``mats[i]`` is its matrix in standard
    coordinates (dim of target x dim of source, over the component scalars).
    """

    domain: NFoldSpace
    codomain: NFoldSpace
    assignment: tuple[int, ...]
    mats: tuple[NMatrix, ...]

    def __post_init__(self):
        if len(self.assignment) != self.domain.n or len(self.mats) != self.domain.n:
            raise AssignmentMismatch(f"{len(self.assignment)} assignments for {self.domain.n} components")
        if len(set(self.assignment)) != len(self.assignment):
            raise AssignmentMismatch("two components are mapped to the same target")
        if any(not 0 <= j < self.codomain.n for j in self.assignment):
            raise AssignmentMismatch(f"target out of range 1..{self.codomain.n}")
        mats = []
        for i, (j, M) in enumerate(zip(self.assignment, self.mats)):
            src, dst = self.domain.components[i], self.codomain.components[j]
            if src.scalars != dst.scalars:
                raise SpaceMismatch(f"component {i + 1} scalars {src.scalars.tag} vs {dst.scalars.tag}")
            if M.shape != (dst.dim, src.dim):
                raise ShapeMismatch(f"component {i + 1} matrix {M.rows}x{M.cols}, expected {dst.dim}x{src.dim}")
            mats.append(NMatrix(src.scalars, M.entries))
        object.__setattr__(self, "mats", tuple(mats))

    def channel_matrices(self, i: int) -> list[cl.Matrix]:
        return self.domain.components[i].matrix_channels(self.mats[i])

    def lines(self) -> list[str]:
        return [f"component {i + 1} -> {j + 1}: {M}" for i, (j, M) in enumerate(zip(self.assignment, self.mats))]


def map_apply(T: NFoldMap, v: NFoldVector) -> NFoldVector:
    if v.space != T.domain:
        raise SpaceMismatch("vector is not in the map's domain")
    parts = [amb.zero_part() for amb in T.codomain.components]
    for i, j in enumerate(T.assignment):
        src, dst = T.domain.components[i], T.codomain.components[j]
        coords = src.encode(v.parts[i])
        parts[j] = dst.decode([cl.matvec(M, c) for M, c in zip(T.channel_matrices(i), coords)])
    return NFoldVector(T.codomain, tuple(parts))


def map_compose(S: NFoldMap, T: NFoldMap) -> NFoldMap:
    """S after T."""
    if T.codomain != S.domain:
        raise SpaceMismatch("codomain of the first map is not the domain of the second")
    assignment = tuple(S.assignment[j] for j in T.assignment)
    mats = tuple(S.mats[j] @ T.mats[i] for i, j in enumerate(T.assignment))
    return NFoldMap(T.domain, S.codomain, assignment, mats)


def map_add(S: NFoldMap, T: NFoldMap) -> NFoldMap:
    if S.domain != T.domain or S.codomain != T.codomain:
        raise SpaceMismatch("maps between different spaces")
    if S.assignment != T.assignment:
        raise AssignmentMismatch(f"{_assign_text(S)} vs {_assign_text(T)}")
    return NFoldMap(S.domain, S.codomain, S.assignment, tuple(a + b for a, b in zip(S.mats, T.mats)))


def map_scale(c, T: NFoldMap) -> NFoldMap:
    mats = tuple(M.scale(T.domain.components[i].scalar(c)) for i, M in enumerate(T.mats))
    return NFoldMap(T.domain, T.codomain, T.assignment, mats)


def map_identity(V: NFoldSpace) -> NFoldMap:
    mats = tuple(NMatrix.identity(amb.scalars, amb.dim) for amb in V.components)
    return NFoldMap(V, V, tuple(range(V.n)), mats)


def map_inverse(T: NFoldMap) -> NFoldMap:
    if T.domain.n != T.codomain.n:
        raise AssignmentMismatch("assignment is not a bijection")
    inverse_assign = [0] * T.codomain.n
    mats: list[NMatrix | None] = [None] * T.codomain.n
    for i, j in enumerate(T.assignment):
        src = T.domain.components[i]
        inverted = []
        for ch, M in enumerate(T.channel_matrices(i)):
            inv = cl.inverse(src.base, M) if len(M) == len(M[0]) else None
            if inv is None:
                raise Singular(f"component={i + 1} slot={ch}" if src.channels == 2 else f"component={i + 1}")
            inverted.append(inv)
        inverse_assign[j] = i
        mats[j] = src.matrix_from_channels(inverted)
    return NFoldMap(T.codomain, T.domain, tuple(inverse_assign), tuple(mats))


def map_equal(S: NFoldMap, T: NFoldMap) -> bool:
    return S.assignment == T.assignment and S.mats == T.mats


def _assign_text(T: NFoldMap) -> str:
    return "[" + ",".join(str(j + 1) for j in T.assignment) + "]"


# --- kernels and rank ---

@dataclass(frozen=True)
class RankNullity:
    rank: tuple[SlotCount, ...]
    nullity: tuple[SlotCount, ...]
    dims: tuple[int, ...]

    def holds(self) -> bool:
        return all(r + n == SlotCount(d, d) for r, n, d in zip(self.rank, self.nullity, self.dims))

    def lines(self) -> list[str]:
        return [f"component {i + 1}: rank {r} nullity {n} dim {d}"
                for i, (r, n, d) in enumerate(zip(self.rank, self.nullity, self.dims))]


def kernel_basis(T: NFoldMap) -> list[NFoldVector]:
    out = []
    for i, amb in enumerate(T.domain.components):
        per_channel = [cl.nullspace(amb.base, M, amb.dim) for M in T.channel_matrices(i)]
        parts, _ = pair_channels(amb, per_channel)
        out.extend(T.domain.supported(i, p) for p in parts)
    return out


def rank_nullity(T: NFoldMap) -> RankNullity:
    ranks, nullities, dims = [], [], []
    for i, amb in enumerate(T.domain.components):
        r = [cl.rank(amb.base, M) for M in T.channel_matrices(i)]
        ranks.append(SlotCount.of(r))
        nullities.append(SlotCount.of([amb.dim - x for x in r]))
        dims.append(amb.dim)
    return RankNullity(tuple(ranks), tuple(nullities), tuple(dims))


# --- functionals and duals ---

@dataclass(frozen=True)
class NFunctional:
    """f(v) = sum row[k] * v_k on component ``component`` (standard coordinates)."""

    space: NFoldSpace
    component: int
    row: tuple[NNum, ...]

    def __str__(self):
        return f"f{self.component + 1}(" + ",".join(str(x) for x in self.row) + ")"


def require_finite(amb: ComponentAmbient) -> None:
    if not amb.shape.bounded:
        raise InfiniteDimension(f"component ambient {amb.shape}")


def _require_dual(amb: ComponentAmbient) -> None:
    require_finite(amb)
    if amb.regime is Regime.R1 and amb.entries.flavor is not Flavor.REAL:
        raise UnsupportedRegime(f"no linear functionals over {amb.scalars.tag} on {amb.entries.tag} entries")


def functional_apply(f: NFunctional, v: NFoldVector) -> NNum:
    if v.space != f.space:
        raise SpaceMismatch("vector is not in the functional's space")
    amb = f.space.components[f.component]
    acc = amb.scalars.zero
    for c, x in zip(f.row, v.parts[f.component]):
        acc = acc + c * x
    return _entry(amb.scalars, acc)


def dual_basis(B: NBasis) -> list[list[NFunctional]]:
    """Per component, the functionals f_k with f_k(alpha_j) = delta_kj."""
    V = B.space
    out = []
    for i, amb in enumerate(V.components):
        _require_dual(amb)
        parts = B.parts[i]
        if len(parts) != amb.dim:
            raise NotABasis(f"component {i + 1} has {len(parts)} vectors, dimension {amb.dim}")
        rows_per_channel = []
        for ch, M in enumerate(channel_columns(amb, parts)):
            inv = cl.inverse(amb.base, M)
            if inv is None:
                raise NotABasis(f"component {i + 1} vectors are dependent" + (f" in slot {ch}" if amb.channels == 2 else ""))
            rows_per_channel.append(inv)
        functionals = []
        for k in range(amb.dim):
            row = amb.decode([rows[k] for rows in rows_per_channel])
            functionals.append(NFunctional(V, i, tuple(amb.scalar(x) for x in row)))
        out.append(functionals)
    return out


@dataclass(frozen=True)
class AnnihilatorReport:
    functionals: tuple[tuple[NFunctional, ...], ...]
    dims: tuple[SlotCount, ...]
    subspace_dims: tuple[SlotCount, ...]

    def lines(self) -> list[str]:
        out = []
        for i, fs in enumerate(self.functionals):
            out.append(f"component {i + 1} dim W {self.subspace_dims[i]} dim W° {self.dims[i]}")
            out.extend(f"  {f}" for f in fs)
        return out


@dataclass(frozen=True)
class Subspace:
    """A subspace given by generators, listed per component."""

    space: NFoldSpace
    generators: tuple[tuple[Part, ...], ...]

    @classmethod
    def spanned_by(cls, space: NFoldSpace, vectors: Iterable[NFoldVector]) -> "Subspace":
        vectors = list(vectors)
        if any(v.space != space for v in vectors):
            raise SpaceMismatch("generator outside the space")
        return cls(space, tuple(tuple(v.parts[i] for v in vectors) for i in range(space.n)))

    @classmethod
    def from_parts(cls, space: NFoldSpace, per_component: Sequence[Sequence]) -> "Subspace":
        return cls(space, tuple(tuple(amb.part(p) for p in ps) for amb, ps in zip(space.components, per_component)))

    def channel_rank(self, i: int) -> SlotCount:
        amb = self.space.components[i]
        gens = self.generators[i]
        if not gens:
            return SlotCount(0, 0)
        return SlotCount.of([len(cl.rref(amb.base, M)[1]) for M in channel_columns(amb, gens)])


def annihilator(W: Subspace) -> AnnihilatorReport:
    V = W.space
    functionals, dims, wdims = [], [], []
    for i, amb in enumerate(V.components):
        _require_dual(amb)
        per_channel = []
        for ch in range(amb.channels):
            rows = [amb.encode(p)[ch] for p in W.generators[i]]
            per_channel.append(cl.nullspace(amb.base, rows, amb.dim) if rows else
                               [[amb.base.one if a == b else amb.base.zero for a in range(amb.dim)]
                                for b in range(amb.dim)])
        rows, count = pair_channels(amb, per_channel)
        functionals.append(tuple(NFunctional(V, i, tuple(amb.scalar(x) for x in r)) for r in rows))
        dims.append(count)
        wdims.append(W.channel_rank(i))
    return AnnihilatorReport(tuple(functionals), tuple(dims), tuple(wdims))


def dual_space(V: NFoldSpace) -> NFoldSpace:
    comps = []
    for amb in V.components:
        _require_dual(amb)
        comps.append(ComponentAmbient(Shape.tuple(amb.dim), amb.scalars, amb.scalars))
    return NFoldSpace(V.field, tuple(comps))


def transpose_map(T: NFoldMap, bases: tuple[NBasis, NBasis] | None = None) -> NFoldMap:
    """
    The transpose T^t : W* -> V*. Its matrix is the transpose of the matrix
    of T, taken in ``bases`` (domain basis, codomain basis) when given.
    """
    if T.domain.n != T.codomain.n:
        raise AssignmentMismatch("transpose needs a bijective assignment")
    dom, cod = dual_space(T.codomain), dual_space(T.domain)
    assign = [0] * T.codomain.n
    mats: list[NMatrix | None] = [None] * T.codomain.n
    for i, j in enumerate(T.assignment):
        src, dst = T.domain.components[i], T.codomain.components[j]
        channel_mats = T.channel_matrices(i)
        if bases is not None:
            channel_mats = _in_bases(src, dst, channel_mats, bases[0].parts[i], bases[1].parts[j])
        assign[j] = i
        mats[j] = src.matrix_from_channels([cl.transpose(M) for M in channel_mats])
    return NFoldMap(dom, cod, tuple(assign), tuple(mats))


def _in_bases(src: ComponentAmbient, dst: ComponentAmbient, mats: list[cl.Matrix],
              src_basis: Sequence[Part], dst_basis: Sequence[Part]) -> list[cl.Matrix]:
    out = []
    P_all = channel_columns(src, src_basis)
    Q_all = channel_columns(dst, dst_basis)
    for ch, (M, P, Q) in enumerate(zip(mats, P_all, Q_all)):
        Qinv = cl.inverse(dst.base, Q) if len(Q) == len(Q[0]) else None
        if Qinv is None or len(P) != len(P[0]) or cl.det(src.base, P) == 0:
            raise NotABasis("transpose needs bases of both components")
        out.append(cl.matmul(cl.matmul(Qinv, M), P))
    return out


# --- direct sums ---

@dataclass(frozen=True)
class DirectSumReport:
    direct: bool
    witness: NFoldVector | None = None
    component: int | None = None

    def lines(self) -> list[str]:
        if self.direct:
            return ["direct true"]
        return ["direct false", f"witness {self.witness} (component {self.component + 1})"]


def _normalize(base, coords: list[Element]) -> list[Element]:
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        return coords
    inv = base.one / lead
    return [c * inv for c in coords]


def direct_sum_check(subspaces: Sequence[Subspace]) -> DirectSumReport:
    """Direct iff, in every channel of every component, the ranks add up."""
    if not subspaces:
        raise SpaceMismatch("no subspaces")
    V = subspaces[0].space
    if any(W.space != V for W in subspaces):
        raise SpaceMismatch("subspaces of different spaces")
    for i, amb in enumerate(V.components):
        require_finite(amb)
        for ch in range(amb.channels):
            bases = []
            for W in subspaces:
                vecs = [amb.encode(p)[ch] for p in W.generators[i]]
                piv = cl.pivot_indices(amb.base, vecs, amb.dim)
                bases.append([vecs[k] for k in piv])
            flat = [v for b in bases for v in b]
            kernel = cl.nullspace(amb.base, cl.columns(flat, amb.dim), len(flat)) if flat else []
            if kernel:
                c = kernel[0]
                # the first summand's share of a vanishing combination
                owner = next(k for k, b in enumerate(bases) if b and any(
                    c[sum(len(x) for x in bases[:k]) + t] != 0 for t in range(len(b))))
                offset = sum(len(x) for x in bases[:owner])
                share = [amb.base.zero] * amb.dim
                for t, v in enumerate(bases[owner]):
                    share = [s + c[offset + t] * x for s, x in zip(share, v)]
                part = amb.decode_channel(ch, _normalize(amb.base, share))
                return DirectSumReport(False, V.supported(i, part), i)
    return DirectSumReport(True)


def projections_from_sum(subspaces: Sequence[Subspace]) -> list[NFoldMap]:
    """E_k with E_k^2 = E_k, E_j E_k = 0, sum E_k = identity and range(E_k) = W_k."""
    report = direct_sum_check(subspaces)
    if not report.direct:
        raise IncompleteSum(f"sum is not direct, witness {report.witness}")
    V = subspaces[0].space
    per_sub: list[list[NMatrix]] = [[] for _ in subspaces]
    for i, amb in enumerate(V.components):
        channel_projs: list[list[cl.Matrix]] = [[] for _ in subspaces]
        for ch in range(amb.channels):
            bases, owners = [], []
            for k, W in enumerate(subspaces):
                vecs = [amb.encode(p)[ch] for p in W.generators[i]]
                for t in cl.pivot_indices(amb.base, vecs, amb.dim):
                    bases.append(vecs[t])
                    owners.append(k)
            if len(bases) != amb.dim:
                raise IncompleteSum(f"component {i + 1} summands span {len(bases)} of {amb.dim}")
            C = cl.columns(bases, amb.dim)
            Cinv = cl.inverse(amb.base, C)
            for k in range(len(subspaces)):
                D = [[amb.base.one if r == c and owners[c] == k else amb.base.zero for c in range(amb.dim)]
                     for r in range(amb.dim)]
                channel_projs[k].append(cl.matmul(cl.matmul(C, D), Cinv))
        for k in range(len(subspaces)):
            per_sub[k].append(amb.matrix_from_channels(channel_projs[k]))
    return [NFoldMap(V, V, tuple(range(V.n)), tuple(mats)) for mats in per_sub]


# --- taxonomy ---

class ClassificationLabel(Enum):
    NEUTROSOPHIC = "NeutrosophicSubspace"
    PSEUDO_REAL = "PseudoRealSubspace"
    QUASI_PSEUDO = "QuasiPseudo"
    SPECIAL = "SpecialSubNeutrosophic"
    STRONG = "StrongNeutrosophic"
    PSEUDO_STRONG = "PseudoStrong"
    INVALID = "Invalid"


@dataclass(frozen=True)
class Classification:
    labels: tuple[ClassificationLabel, ...]
    subfields: tuple[str | None, ...]
    kind: FoldKind

    @property
    def overall(self) -> str:
        labels = set(self.labels)
        if ClassificationLabel.INVALID in labels:
            return ClassificationLabel.INVALID.value
        if len(labels) == 1:
            return self.component_text(0)
        neutro = {ClassificationLabel.NEUTROSOPHIC, ClassificationLabel.STRONG, ClassificationLabel.SPECIAL}
        pseudo = {ClassificationLabel.PSEUDO_REAL, ClassificationLabel.PSEUDO_STRONG}
        if labels & neutro and labels & pseudo and labels <= neutro | pseudo:
            return ClassificationLabel.QUASI_PSEUDO.value
        return "Mixed(" + ",".join(self.component_text(i) for i in range(len(self.labels))) + ")"

    def component_text(self, i: int) -> str:
        label = self.labels[i]
        if label is ClassificationLabel.SPECIAL:
            return f"{label.value}({self.subfields[i]})"
        return label.value

    def lines(self) -> list[str]:
        out = [f"component {i + 1}: {self.component_text(i)}" for i in range(len(self.labels))]
        out.append(f"overall: {self.overall} ({self.kind.value})")
        return out


def _classify_component(amb: ComponentAmbient, gens: Sequence[Part], context: FieldDescriptor) -> tuple[ClassificationLabel, str | None]:
    if context.base != amb.base or not amb.scalars.contains(context):
        return ClassificationLabel.INVALID, None
    # closure of the span under the context scalars inside the entry domain
    if context.flavor is not Flavor.REAL and not amb.entries.contains(FieldDescriptor(context.base, Flavor.PURE)):
        return ClassificationLabel.INVALID, None
    neutro = any(x.b != 0 for p in gens for x in p)
    if context == amb.scalars:
        if amb.scalars.flavor is Flavor.REAL:
            return (ClassificationLabel.NEUTROSOPHIC if neutro else ClassificationLabel.PSEUDO_REAL), None
        return (ClassificationLabel.STRONG if neutro else ClassificationLabel.PSEUDO_STRONG), None
    if neutro:
        return ClassificationLabel.SPECIAL, context.tag
    return ClassificationLabel.PSEUDO_STRONG, None


def subspace_classify(W: Subspace, V: NFoldSpace, scalar_context: Sequence[FieldDescriptor] | None = None) -> Classification:
    """Label each component of W against V; ``scalar_context`` defaults to V's own scalars."""
    context = list(scalar_context) if scalar_context is not None else [amb.scalars for amb in V.components]
    labels, subfields = [], []
    for i, amb in enumerate(V.components):
        if W.space != V or len(context) != V.n:
            labels.append(ClassificationLabel.INVALID)
            subfields.append(None)
            continue
        label, sub = _classify_component(amb, W.generators[i], context[i])
        labels.append(label)
        subfields.append(sub)
    return Classification(tuple(labels), tuple(subfields), V.field.kind)
