"""
Operator theory for matrices over N(K).

Every result here is computed on the two slot images over the base field and
recombined only when the slot structures match; otherwise the report carries
a flag and per-slot data. Recombined identities are re-checked with exact
matrix arithmetic before anything is returned.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Sequence

from . import classical as cl
from . import config
from .base import BaseField, Element, show
from .errors import (
    DoesNotSplit,
    NotACharacteristicValue,
    NotInvariant,
    ShapeMismatch,
    UndecidableOverQ,
    UnsupportedField,
    VerificationFailed,
    ZeroVector,
)
from .matrix import NMatrix, m_charpoly, m_det, m_recombine, m_require_square, m_similarity_check
from .poly import NPoly, format_poly, p_eval_matrix, p_recombine
from .scalars import SLOTS, FieldDescriptor, Flavor, NNum, Slot, nn_recombine

Vector = list[NNum]


class DecompositionKind(Enum):
    DN = "DN"
    PRIMARY = "Primary"
    RATIONAL = "Rational"
    JORDAN = "Jordan"
    CYCLIC = "Cyclic"


class Flag(Enum):
    NON_PRINCIPAL_MINPOLY = "NonPrincipalMinPoly"
    SLOT_STRUCTURE_MISMATCH = "SlotStructureMismatch"
    DOES_NOT_SPLIT = "DoesNotSplit"


def _field(A: NMatrix) -> FieldDescriptor:
    return A.field.full() if A.field.flavor is Flavor.PURE else A.field


def format_base_poly(f: cl.Poly, base: BaseField) -> str:
    return format_poly(NPoly(FieldDescriptor(base, Flavor.REAL), tuple(f)))


def format_base_matrix(M: cl.Matrix) -> str:
    return "[" + ",".join("[" + ",".join(show(x) for x in row) + "]" for row in M) + "]"


def format_vector(v: Sequence[NNum]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# --- spectrum ---

@dataclass(frozen=True)
class SpectrumReport:
    matrix: NMatrix
    charpoly: NPoly
    roots: tuple[NNum, ...]
    slot_spectra: tuple[tuple[Element, ...], tuple[Element, ...]]
    complete: bool

    def lines(self) -> list[str]:
        return [
            f"charpoly {self.charpoly}",
            "roots {" + ", ".join(str(r) for r in self.roots) + "}",
            "slot 0 spectrum {" + ", ".join(show(x) for x in self.slot_spectra[0]) + "}",
            "slot 1 spectrum {" + ", ".join(show(x) for x in self.slot_spectra[1]) + "}",
            f"complete {str(self.complete).lower()}",
        ]


def spectrum(A: NMatrix) -> SpectrumReport:
    """Characteristic values: every slot-root pair (r0, r1) recombined and checked by det(A - cI) = 0."""
    m_require_square(A)
    field = _field(A)
    base = field.base
    f = m_charpoly(A)
    slot_spectra = tuple(tuple(cl.roots(base, f.slot(s))) for s in SLOTS)
    complete = not base.is_rational or all(cl.splits(base, f.slot(s)) for s in SLOTS)
    ident = NMatrix.identity(field, A.rows)
    roots = []
    for r0 in slot_spectra[0]:
        for r1 in slot_spectra[1]:
            c = nn_recombine(r0, r1, field)
            if m_det(A - ident.scale(c)):
                raise VerificationFailed(f"{c} is not a characteristic value")
            roots.append(c)
    return SpectrumReport(A, f, tuple(sorted(roots, key=NNum.key)), slot_spectra, complete)


def _pair_vectors(base: BaseField, field: FieldDescriptor, per_slot: Sequence[Sequence[list[Element]]]) -> list[Vector]:
    """Positional pairing for equal counts, otherwise vectors supported in a single slot."""
    v0, v1 = per_slot
    if len(v0) == len(v1):
        return [[nn_recombine(u, w, field) for u, w in zip(a, b)] for a, b in zip(v0, v1)]
    zero = base.zero
    out = [[nn_recombine(u, zero, field) for u in a] for a in v0]
    out += [[nn_recombine(zero, w, field) for w in b] for b in v1]
    return out


def eigvecs(A: NMatrix, c: NNum) -> list[Vector]:
    """Generating set of {v : Av = cv} from the slot null spaces of A_s - c_s I."""
    m_require_square(A)
    field = _field(A)
    base = field.base
    if m_det(A - NMatrix.identity(field, A.rows).scale(c)):
        raise NotACharacteristicValue(str(c))
    per_slot = []
    for s in SLOTS:
        As = A.slot(s)
        shifted = cl.msub(As, cl.mscale(c.eval(s), cl.identity(base, A.rows)))
        per_slot.append(cl.nullspace(base, shifted, A.rows))
    vectors = _pair_vectors(base, field, per_slot)
    for v in vectors:
        if A.apply(v) != [c * x for x in v]:
            raise VerificationFailed(f"A v != c v for v = {format_vector(v)}")
    return vectors


# --- annihilators ---

@dataclass(frozen=True)
class AnnihilatorResult:
    polynomial: NPoly
    principal: bool
    slot_minpolys: tuple[cl.Poly, cl.Poly]

    @property
    def flags(self) -> list[Flag]:
        return [] if self.principal else [Flag.NON_PRINCIPAL_MINPOLY]

    def lines(self, label: str = "minpoly") -> list[str]:
        base = self.polynomial.field.base
        out = [f"{label} {self.polynomial}", f"principal {str(self.principal).lower()}"]
        out += [f"slot {int(s)}: {format_base_poly(self.slot_minpolys[s], base)}" for s in SLOTS]
        out += [flag.value for flag in self.flags]
        return out


def recombine_monic(f0: cl.Poly, f1: cl.Poly, field: FieldDescriptor) -> tuple[NPoly, bool]:
    """Coefficientwise recombination of two monic slot polynomials; the shorter is padded by x^d."""
    d0, d1 = len(f0), len(f1)
    principal = d0 == d1
    zero = field.base.zero
    if d0 < d1:
        f0 = [zero] * (d1 - d0) + list(f0)
    elif d1 < d0:
        f1 = [zero] * (d0 - d1) + list(f1)
    return p_recombine(f0, f1, field), principal


def minpoly(A: NMatrix) -> AnnihilatorResult:
    m_require_square(A)
    field = _field(A)
    slot_minpolys = tuple(cl.minpoly(field.base, A.slot(s)) for s in SLOTS)
    f, principal = recombine_monic(*slot_minpolys, field)
    if not p_eval_matrix(f, A).is_zero():
        raise VerificationFailed(f"minimal polynomial {f} does not annihilate")
    return AnnihilatorResult(f, principal, slot_minpolys)


def cayley_hamilton_check(A: NMatrix) -> bool:
    m_require_square(A)
    base = _field(A).base
    f = m_charpoly(A)
    if not p_eval_matrix(f, A).is_zero():
        return False
    return all(cl.divides(base, cl.minpoly(base, A.slot(s)), f.slot(s)) for s in SLOTS)


def _vector_slot(v: Sequence[NNum], s: Slot) -> list[Element]:
    return [x.eval(s) for x in v]


def _check_vector(A: NMatrix, v: Sequence[NNum]) -> None:
    if len(v) != A.rows:
        raise ShapeMismatch(f"vector of length {len(v)} for a {A.rows}x{A.cols} matrix")


def _apply_poly(f: NPoly, A: NMatrix, v: Sequence[NNum]) -> Vector:
    return p_eval_matrix(f, A).apply(list(v))


def t_annihilator(A: NMatrix, v: Sequence[NNum]) -> AnnihilatorResult:
    """Monic p of least slot degrees with p(A)v = 0."""
    m_require_square(A)
    _check_vector(A, v)
    if all(not x for x in v):
        raise ZeroVector("annihilator of the zero vector")
    field = _field(A)
    slots = tuple(cl.vector_annihilator(field.base, A.slot(s), _vector_slot(v, s)) for s in SLOTS)
    f, principal = recombine_monic(*slots, field)
    if any(_apply_poly(f, A, v)):
        raise VerificationFailed(f"{f} does not annihilate {format_vector(v)}")
    return AnnihilatorResult(f, principal, slots)


@dataclass(frozen=True)
class CyclicBasis:
    vectors: tuple[Vector, ...]
    slot_degrees: tuple[int, int]

    def lines(self) -> list[str]:
        out = [f"slot degrees ({self.slot_degrees[0]}, {self.slot_degrees[1]})"]
        out += [format_vector(v) for v in self.vectors]
        return out


def cyclic_basis(A: NMatrix, v: Sequence[NNum]) -> CyclicBasis:
    """v, Av, ..., A^(k-1)v with k the larger slot annihilator degree; dim Z(v; A) = deg p_v per slot."""
    ann = t_annihilator(A, v)
    base = _field(A).base
    degrees = tuple(len(f) - 1 for f in ann.slot_minpolys)
    vectors = []
    w = list(v)
    for _ in range(max(degrees)):
        vectors.append(w)
        w = A.apply(w)
    for s, k in zip(SLOTS, degrees):
        krylov = [_vector_slot(u, s) for u in vectors[:k]]
        if k and cl.rank(base, cl.columns(krylov, A.rows)) != k:
            raise VerificationFailed(f"slot {int(s)} cyclic subspace dimension differs from {k}")
    return CyclicBasis(tuple(vectors), degrees)


def t_conductor(A: NMatrix, v: Sequence[NNum], W: Sequence[Sequence[NNum]]) -> AnnihilatorResult:
    """Monic g of least slot degrees with g(A)v in W; W must be A-invariant in both slots."""
    m_require_square(A)
    _check_vector(A, v)
    for w in W:
        _check_vector(A, w)
    field = _field(A)
    base = field.base
    slots = []
    for s in SLOTS:
        As = A.slot(s)
        Ws = [_vector_slot(w, s) for w in W]
        for w, ws in zip(W, Ws):
            if not cl.in_span(base, cl.matvec(As, ws), Ws):
                raise NotInvariant(f"slot={int(s)} vector={format_vector(w)}", slot=s)
        g = cl.conductor(base, As, _vector_slot(v, s), Ws)
        if not cl.in_span(base, cl.matvec(cl.peval_matrix(base, g, As), _vector_slot(v, s)), Ws):
            raise VerificationFailed(f"slot {int(s)} conductor does not send v into W")
        if not cl.divides(base, g, cl.minpoly(base, As)):
            raise VerificationFailed(f"slot {int(s)} conductor does not divide the minimal polynomial")
        slots.append(g)
    f, principal = recombine_monic(slots[0], slots[1], field)
    return AnnihilatorResult(f, principal, (slots[0], slots[1]))


# --- decompositions ---

@dataclass
class SlotDecomposition:
    matrices: dict[str, cl.Matrix] = dc_field(default_factory=dict)
    polys: dict[str, cl.Poly] = dc_field(default_factory=dict)
    structure: list = dc_field(default_factory=list)


@dataclass
class DecompositionReport:
    kind: DecompositionKind
    matrix: NMatrix
    recombined: dict[str, NMatrix] | None
    per_slot: tuple[SlotDecomposition, SlotDecomposition]
    polys: dict[str, NPoly] = dc_field(default_factory=dict)
    vectors: dict[str, list[Vector]] = dc_field(default_factory=dict)
    flags: list[Flag] = dc_field(default_factory=list)

    def lines(self) -> list[str]:
        base = self.matrix.field.base
        out = [f"kind {self.kind.value}"]
        out += [f"flag {flag.value}" for flag in self.flags]
        for name, f in self.polys.items():
            out.append(f"{name} = {f}")
        if self.recombined:
            for name, M in self.recombined.items():
                out.append(f"{name} = {M}")
        for name, vs in self.vectors.items():
            out.append(f"{name} = " + ", ".join(format_vector(v) for v in vs))
        for s, slot in zip(SLOTS, self.per_slot):
            out.append(f"slot {int(s)}: structure {slot.structure}")
            for name, f in slot.polys.items():
                out.append(f"  {name} = {format_base_poly(f, base)}")
            for name, M in slot.matrices.items():
                out.append(f"  {name} = {format_base_matrix(M)}")
        return out


def _factor_roots(base: BaseField, f: cl.Poly) -> list[tuple[Element, int]]:
    found, rest = cl.root_multiplicities(base, f)
    if cl.degree(rest) > 0:
        raise DoesNotSplit(f"{format_base_poly(f, base)} over {base.tag}")
    return found


def _idempotents(base: BaseField, factors: Sequence[cl.Poly], modulus: cl.Poly) -> list[cl.Poly]:
    """Polynomials e_i with e_i = 1 mod factors[i], 0 mod the others; sum e_i = 1 mod ``modulus``."""
    out = []
    for i, fi in enumerate(factors):
        gi = [base.one]
        for j, fj in enumerate(factors):
            if j != i:
                gi = cl.pmul(gi, fj)
        _, _, t = cl.pxgcd(base, fi, gi)
        out.append(cl.pdivmod(base, cl.pmul(t, gi), modulus)[1])
    return out


def _slot_dn(base: BaseField, As: cl.Matrix) -> SlotDecomposition:
    n = len(As)
    chi = cl.charpoly(base, As)
    roots = _factor_roots(base, chi)
    factors = [cl.ppow(base, cl.linear(base, r), m) for r, m in roots]
    idem = _idempotents(base, factors, chi)
    d_poly: cl.Poly = []
    for (r, _), e in zip(roots, idem):
        d_poly = cl.padd(d_poly, cl.pscale(r, e))
    D = cl.peval_matrix(base, d_poly, As)
    N = cl.msub(As, D)
    return SlotDecomposition({"D": D, "N": N}, {"d": d_poly}, [m for _, m in roots] or [n])


def _verify(condition: bool, what: str) -> None:
    if not condition:
        raise VerificationFailed(what)


def dn_decompose(A: NMatrix) -> DecompositionReport:
    """A = D + N with D diagonalizable, N nilpotent, DN = ND; D = d(A) for a recombined polynomial d."""
    m_require_square(A)
    field = _field(A)
    base = field.base
    slots = tuple(_slot_dn(base, A.slot(s)) for s in SLOTS)
    D = m_recombine(slots[0].matrices["D"], slots[1].matrices["D"], field)
    N = m_recombine(slots[0].matrices["N"], slots[1].matrices["N"], field)
    d = p_recombine(slots[0].polys["d"], slots[1].polys["d"], field)
    n = A.rows
    _verify(D + N == A, "A != D + N")
    _verify(D @ N == N @ D, "DN != ND")
    power = NMatrix.identity(field, n)
    for _ in range(n):
        power = power @ N
    _verify(power.is_zero(), "N is not nilpotent")
    _verify(p_eval_matrix(d, A) == D, "D is not d(A)")
    for s in SLOTS:
        m = cl.minpoly(base, D.slot(s))
        _verify(cl.squarefree(base, m) and cl.splits(base, m), f"slot {int(s)} D is not diagonalizable")
    return DecompositionReport(DecompositionKind.DN, A, {"D": D, "N": N}, slots, polys={"d": d})


def _require_prime(A: NMatrix, what: str) -> BaseField:
    base = _field(A).base
    if base.is_rational:
        raise UnsupportedField(f"{what} needs a prime field base")
    return base


def _slot_primary(base: BaseField, As: cl.Matrix) -> SlotDecomposition:
    m = cl.minpoly(base, As)
    factored = cl.factor(base, m)
    powers = [cl.ppow(base, p, r) for p, r in factored]
    idem = _idempotents(base, powers, m)
    mats = {f"E{k + 1}": cl.peval_matrix(base, e, As) for k, e in enumerate(idem)}
    polys = {f"p{k + 1}": p for k, (p, _) in enumerate(factored)}
    return SlotDecomposition(mats, polys, [(len(p) - 1, r) for p, r in factored])


def primary_decomposition(A: NMatrix) -> DecompositionReport:
    """Projections E_i onto the primary components of the slot minimal polynomials."""
    m_require_square(A)
    base = _require_prime(A, "primary decomposition")
    field = _field(A)
    n = A.rows
    slots = tuple(_slot_primary(base, A.slot(s)) for s in SLOTS)
    for s, slot in zip(SLOTS, slots):
        Es = list(slot.matrices.values())
        total = cl.zeros(base, n, n)
        for i, E in enumerate(Es):
            _verify(cl.matmul(E, E) == E, f"slot {int(s)} E{i + 1} is not idempotent")
            for j, F in enumerate(Es):
                if i != j:
                    _verify(cl.is_zero_matrix(cl.matmul(E, F)), f"slot {int(s)} E{i + 1}E{j + 1} != 0")
            total = cl.madd(total, E)
        _verify(total == cl.identity(base, n), f"slot {int(s)} projections do not sum to the identity")
    if len(slots[0].matrices) != len(slots[1].matrices):
        return DecompositionReport(DecompositionKind.PRIMARY, A, None, slots,
                                   flags=[Flag.SLOT_STRUCTURE_MISMATCH])
    recombined = {name: m_recombine(slots[0].matrices[name], slots[1].matrices[name], field)
                  for name in slots[0].matrices}
    polys = {name: p_recombine(slots[0].polys[name], slots[1].polys[name], field)
             for name in slots[0].polys}
    ident = NMatrix.identity(field, n)
    total = NMatrix.zero(field, n, n)
    for E in recombined.values():
        _verify(E @ E == E, "recombined projection is not idempotent")
        total = total + E
    _verify(total == ident, "recombined projections do not sum to the identity")
    return DecompositionReport(DecompositionKind.PRIMARY, A, recombined, slots, polys=polys)


def _similarity(base: BaseField, As: cl.Matrix, Bs: cl.Matrix) -> cl.Matrix:
    P = cl.similarity_transform(base, As, Bs, random.Random(0), config.SIMILARITY_TRIES)
    if P is None:
        raise VerificationFailed("no invertible similarity found")
    return P


def _slot_rational(base: BaseField, As: cl.Matrix) -> SlotDecomposition:
    factors = cl.invariant_factors(base, As)
    for f, g in zip(factors, factors[1:]):
        _verify(cl.divides(base, f, g), "invariant factors do not form a divisibility chain")
    R = cl.block_diagonal(base, [cl.companion(base, f) for f in factors])
    P = _similarity(base, As, R)
    polys = {f"f{k + 1}": f for k, f in enumerate(factors)}
    return SlotDecomposition({"R": R, "P": P}, polys, [len(f) - 1 for f in factors])


def rational_form(A: NMatrix) -> DecompositionReport:
    """Block-companion form of the invariant factors, recombined when the slot degree sequences match."""
    m_require_square(A)
    field = _field(A)
    base = field.base
    slots = tuple(_slot_rational(base, A.slot(s)) for s in SLOTS)
    if slots[0].structure != slots[1].structure:
        return DecompositionReport(DecompositionKind.RATIONAL, A, None, slots,
                                   flags=[Flag.SLOT_STRUCTURE_MISMATCH])
    R = m_recombine(slots[0].matrices["R"], slots[1].matrices["R"], field)
    P = m_recombine(slots[0].matrices["P"], slots[1].matrices["P"], field)
    _verify(m_similarity_check(A, R, P), "rational form is not similar to A")
    polys = {name: p_recombine(slots[0].polys[name], slots[1].polys[name], field) for name in slots[0].polys}
    return DecompositionReport(DecompositionKind.RATIONAL, A, {"R": R, "P": P}, slots, polys=polys)


def cyclic(A: NMatrix) -> DecompositionReport:
    """Cyclic generators z_i with Z(z_i; A) the blocks of the rational form."""
    report = rational_form(A)
    report.kind = DecompositionKind.CYCLIC
    field = _field(A)
    gens = []
    for slot in report.per_slot:
        P = slot.matrices["P"]
        starts, at = [], 0
        for deg in slot.structure:
            starts.append([row[at] for row in P])
            at += deg
        gens.append(starts)
        slot.matrices = {"P": P}
    if report.recombined is not None:
        report.vectors["z"] = _pair_vectors(field.base, field, gens)
        for z, f in zip(report.vectors["z"], report.polys.values()):
            ann = t_annihilator(A, z)
            _verify(ann.polynomial == f, "cyclic generator annihilator differs from its invariant factor")
        report.recombined = {"P": report.recombined["P"]}
    return report


def _jordan_blocks(base: BaseField, As: cl.Matrix) -> list[tuple[Element, int]]:
    n = len(As)
    blocks = []
    for r, m in _factor_roots(base, cl.charpoly(base, As)):
        shifted = cl.msub(As, cl.mscale(r, cl.identity(base, n)))
        ranks = [n]
        power = cl.identity(base, n)
        for _ in range(m + 1):
            power = cl.matmul(power, shifted)
            ranks.append(cl.rank(base, power))
        for k in range(m, 0, -1):
            exact = (ranks[k - 1] - ranks[k]) - (ranks[k] - ranks[k + 1])
            blocks.extend([(r, k)] * exact)
    return sorted(blocks, key=lambda b: (-b[1], base.key(b[0])))


def _slot_jordan(base: BaseField, As: cl.Matrix) -> SlotDecomposition:
    blocks = _jordan_blocks(base, As)
    J = cl.block_diagonal(base, [cl.jordan_block(base, r, k) for r, k in blocks])
    P = _similarity(base, As, J)
    return SlotDecomposition({"J": J, "P": P}, {}, [k for _, k in blocks])


def jordan_form(A: NMatrix) -> DecompositionReport:
    """Elementary Jordan blocks (ones below the diagonal), recombined when slot block sizes match."""
    m_require_square(A)
    field = _field(A)
    base = field.base
    slots = tuple(_slot_jordan(base, A.slot(s)) for s in SLOTS)
    if slots[0].structure != slots[1].structure:
        return DecompositionReport(DecompositionKind.JORDAN, A, None, slots,
                                   flags=[Flag.SLOT_STRUCTURE_MISMATCH])
    J = m_recombine(slots[0].matrices["J"], slots[1].matrices["J"], field)
    P = m_recombine(slots[0].matrices["P"], slots[1].matrices["P"], field)
    _verify(m_similarity_check(A, J, P), "Jordan form is not similar to A")
    return DecompositionReport(DecompositionKind.JORDAN, A, {"J": J, "P": P}, slots)


# --- diagonalizable / triangularizable ---

@dataclass(frozen=True)
class FormTest:
    holds: bool
    form: NMatrix | None = None
    P: NMatrix | None = None

    def __bool__(self):
        return self.holds

    def lines(self, label: str) -> list[str]:
        out = [f"{label} {str(self.holds).lower()}"]
        if self.form is not None:
            out += [f"form = {self.form}", f"P = {self.P}"]
        return out


def _slot_minpoly_split(base: BaseField, As: cl.Matrix) -> tuple[cl.Poly, bool]:
    m = cl.minpoly(base, As)
    _, rest = cl.root_multiplicities(base, m)
    if cl.degree(rest) > 0 and base.is_rational:
        raise UndecidableOverQ(f"{format_base_poly(m, base)} may have irrational roots")
    return m, cl.degree(rest) == 0


def diagonalizable(A: NMatrix) -> FormTest:
    """Both slot minimal polynomials are products of distinct linear factors."""
    m_require_square(A)
    field = _field(A)
    base = field.base
    n = A.rows
    Ps, Ds = [], []
    for s in SLOTS:
        As = A.slot(s)
        m, split = _slot_minpoly_split(base, As)
        if not split or not cl.squarefree(base, m):
            return FormTest(False)
        cols, diag = [], []
        for r in cl.roots(base, m):
            for v in cl.nullspace(base, cl.msub(As, cl.mscale(r, cl.identity(base, n))), n):
                cols.append(v)
                diag.append(r)
        Ps.append(cl.columns(cols, n))
        D = cl.zeros(base, n, n)
        for i, r in enumerate(diag):
            D[i][i] = r
        Ds.append(D)
    D = m_recombine(Ds[0], Ds[1], field)
    P = m_recombine(Ps[0], Ps[1], field)
    _verify(m_similarity_check(A, D, P), "diagonal form is not similar to A")
    return FormTest(True, D, P)


def triangularizable(A: NMatrix) -> FormTest:
    """Both slot minimal polynomials split; the witness is the (lower-triangular) Jordan form."""
    m_require_square(A)
    base = _field(A).base
    for s in SLOTS:
        _, split = _slot_minpoly_split(base, A.slot(s))
        if not split:
            return FormTest(False)
    field = _field(A)
    slots = [_slot_jordan(base, A.slot(s)) for s in SLOTS]
    T = m_recombine(slots[0].matrices["J"], slots[1].matrices["J"], field)
    P = m_recombine(slots[0].matrices["P"], slots[1].matrices["P"], field)
    _verify(m_similarity_check(A, T, P), "triangular form is not similar to A")
    return FormTest(True, T, P)
