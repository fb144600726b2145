"""
Polynomials in one variable with coefficients in N(K).

Degree is the raw coefficient-list degree. Because a leading coefficient may
be a zero divisor, the slot images can have smaller degrees; ``p_profile``
exposes both. Division, gcd and root finding run per slot over the base field
and recombine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from . import classical as cl
from .errors import (
    CharacteristicNotZero,
    DivisionByZero,
    FieldMismatch,
    InfiniteRootSet,
    NonUnitLeadingCoefficient,
    NotInvertible,
    ShapeMismatch,
    SplitDegenerate,
    ZeroPolynomial,
)
from .scalars import SLOTS, FieldDescriptor, Flavor, NNum, Slot, format_scalar, nn_inverse, nn_recombine

if TYPE_CHECKING:
    from .matrix import NMatrix

NEG_INF = float("-inf")


@dataclass(frozen=True, eq=False)
class NPoly:
    """Ascending coefficients, no trailing zeros; the zero polynomial has none."""

    field: FieldDescriptor
    coeffs: tuple[NNum, ...] = ()

    def __post_init__(self):
        cs = [_coerce(self.field, c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # --- constructors ---
    @classmethod
    def x(cls, field: FieldDescriptor) -> "NPoly":
        field = field.full() if field.flavor is Flavor.PURE else field
        return cls(field, (field.zero, field.one))

    @classmethod
    def const(cls, c: NNum) -> "NPoly":
        return cls(c.field, (c,))

    @classmethod
    def linear(cls, c: NNum) -> "NPoly":
        """x - c"""
        field = c.field.full() if c.field.flavor is Flavor.PURE else c.field
        return cls(field, (-c, field.one))

    # --- properties ---
    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> NNum:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == 1

    def coeff(self, k: int) -> NNum:
        return self.coeffs[k] if k < len(self.coeffs) else self.field.zero

    # --- arithmetic ---
    def _check(self, other: "NPoly") -> FieldDescriptor:
        if not isinstance(other, NPoly):
            raise TypeError(f"expected NPoly, got {type(other).__name__}")
        if self.field.base != other.field.base:
            raise FieldMismatch(f"{self.field.tag} vs {other.field.tag}")
        return self.field.widen(other.field)

    def __add__(self, other: "NPoly") -> "NPoly":
        field = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return NPoly(field, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> "NPoly":
        return NPoly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "NPoly") -> "NPoly":
        return self + (-other)

    def __mul__(self, other) -> "NPoly":
        if isinstance(other, NNum):
            return p_scale(other, self)
        field = self._check(other)
        if not self.coeffs or not other.coeffs:
            return NPoly(field)
        out = [field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return NPoly(field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "NPoly":
        result = NPoly.const(self.field.full().one if self.field.flavor is Flavor.PURE else self.field.one)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, c: NNum) -> NNum:
        return p_eval(self, c)

    def __eq__(self, other):
        if not isinstance(other, NPoly):
            return NotImplemented
        return self.field.base == other.field.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.base, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def slot(self, slot: Slot) -> cl.Poly:
        return cl.trim([c.eval(slot) for c in self.coeffs])

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NPoly({self}@{self.field.tag})"


def _coerce(field: FieldDescriptor, c) -> NNum:
    if isinstance(c, NNum):
        if c.field.base != field.base:
            raise FieldMismatch(f"{c.field.tag} vs {field.tag}")
        return NNum(field, c.a, c.b)
    return NNum(field, c, 0)


@dataclass(frozen=True)
class EvalDegreeProfile:
    deg_at0: int | float
    deg_at1: int | float

    @property
    def split_degenerate(self) -> bool:
        return self.deg_at0 != self.deg_at1


# --- ring operations ---

def p_add(f: NPoly, g: NPoly) -> NPoly:
    return f + g


def p_sub(f: NPoly, g: NPoly) -> NPoly:
    return f - g


def p_mul(f: NPoly, g: NPoly) -> NPoly:
    return f * g


def p_scale(c: NNum, f: NPoly) -> NPoly:
    if c.field.base != f.field.base:
        raise FieldMismatch(f"{c.field.tag} vs {f.field.tag}")
    field = f.field.widen(c.field)
    return NPoly(field, tuple(c * a for a in f.coeffs))


# --- split ---

def p_split(f: NPoly) -> tuple[cl.Poly, cl.Poly]:
    return f.slot(Slot.AT0), f.slot(Slot.AT1)


def p_recombine(f0: cl.Poly, f1: cl.Poly, field: FieldDescriptor) -> NPoly:
    """The polynomial whose slot images are f0 and f1 (coefficientwise recombination)."""
    base = field.base
    zero = base.zero
    n = max(len(f0), len(f1))
    coeffs = [nn_recombine(f0[i] if i < len(f0) else zero, f1[i] if i < len(f1) else zero, field)
              for i in range(n)]
    target = field
    for c in coeffs:
        target = target.widen(c.field)
    return NPoly(target, tuple(coeffs))


def p_profile(f: NPoly) -> EvalDegreeProfile:
    f0, f1 = p_split(f)
    return EvalDegreeProfile(cl.degree(f0), cl.degree(f1))


# --- division ---

def _unit_inverse(c: NNum) -> NNum:
    """Inverse in N(K); a pure-flavor I is not a unit of the full ring."""
    return nn_inverse(NNum(c.field.full(), c.a, c.b))


def p_divmod(f: NPoly, d: NPoly) -> tuple[NPoly, NPoly]:
    """f = d*q + r with r = 0 or deg r < deg d; the leading coefficient of d must be a unit."""
    field = f._check(d)
    if not d.coeffs:
        raise DivisionByZero("divisor is the zero polynomial")
    try:
        inv = _unit_inverse(d.lead)
    except NotInvertible as exc:
        raise NonUnitLeadingCoefficient(f"{d.lead} {exc.detail}", slot=exc.witness.get("slot")) from exc
    field = field.full() if field.flavor is not Flavor.FULL else field
    r = list(NPoly(field, f.coeffs).coeffs)
    q = [field.zero] * max(len(r) - len(d.coeffs) + 1, 0)
    dc = d.coeffs
    while len(r) >= len(dc):
        shift = len(r) - len(dc)
        t = r[-1] * inv
        q[shift] = t
        for i, c in enumerate(dc):
            r[i + shift] = r[i + shift] - t * c
        r.pop()
        while r and not r[-1]:
            r.pop()
    return NPoly(field, tuple(q)), NPoly(field, tuple(r))


def p_divides(d: NPoly, f: NPoly) -> bool:
    return not p_divmod(f, d)[1]


# --- evaluation ---

def p_eval(f: NPoly, c: NNum) -> NNum:
    field = f.field.widen(c.field)
    acc = field.zero
    for coeff in reversed(f.coeffs):
        acc = acc * c + coeff
    return acc


def p_eval_matrix(f: NPoly, A: "NMatrix") -> "NMatrix":
    """Horner evaluation f(A); constants act as scalar multiples of the identity."""
    from .matrix import NMatrix, m_require_square

    m_require_square(A)
    field = f.field.widen(A.field)
    n = A.rows
    ident = NMatrix.identity(field, n)
    acc = NMatrix.zero(field, n, n)
    for coeff in reversed(f.coeffs):
        acc = acc @ A + ident.scale(coeff)
    return acc


# --- calculus ---

def p_derivative(f: NPoly) -> NPoly:
    return NPoly(f.field, tuple(c * i for i, c in enumerate(f.coeffs))[1:])


def _require_char_zero(f: NPoly) -> None:
    if not f.field.base.is_rational:
        raise CharacteristicNotZero(f"base {f.field.base.tag}")


def p_taylor(f: NPoly, c: NNum) -> list[NNum]:
    """Coefficients t_k = D^k f(c) / k! with f(x) = sum t_k (x - c)^k."""
    _require_char_zero(f)
    out = []
    g = f
    for k in range(len(f.coeffs)):
        out.append(p_eval(g, c) / Fraction(math.factorial(k)))
        g = p_derivative(g)
    return out


def p_compose_linear(f: NPoly, g: NPoly) -> NPoly:
    """f(g) for a g of degree at most one, by Horner's rule."""
    if g.degree > 1:
        raise ShapeMismatch(f"inner polynomial of degree {g.degree}")
    field = f.field.widen(g.field)
    acc = NPoly(field)
    for coeff in reversed(f.coeffs):
        acc = acc * g + NPoly.const(NNum(field, coeff.a, coeff.b))
    return acc


def p_from_taylor(ts: Sequence[NNum], c: NNum) -> NPoly:
    """Rebuild sum t_k (x - c)^k; the inverse of ``p_taylor``."""
    field = c.field.full()
    return p_compose_linear(NPoly(field, tuple(ts)), NPoly.linear(NNum(field, c.a, c.b)))


def p_multiplicity(f: NPoly, c: NNum) -> int:
    """Least k with D^k f(c) != 0."""
    _require_char_zero(f)
    if not f.coeffs:
        raise ZeroPolynomial("multiplicity of a root of the zero polynomial")
    g, k = f, 0
    while not p_eval(g, c):
        g = p_derivative(g)
        k += 1
    return k


# --- gcd ---

def p_gcd(f: NPoly, g: NPoly) -> NPoly:
    """Monic gcd computed per slot and recombined coefficientwise."""
    field = f._check(g)
    if not f.coeffs and not g.coeffs:
        raise ZeroPolynomial("gcd(0, 0)")
    base = field.base
    slot_gcds = [cl.pgcd(base, f.slot(s), g.slot(s)) for s in SLOTS]
    d0, d1 = slot_gcds
    if cl.degree(d0) != cl.degree(d1):
        raise SplitDegenerate(f"slot degrees {_deg_text(d0)} and {_deg_text(d1)}",
                              slot_gcds=slot_gcds)
    return p_recombine(d0, d1, field.full() if field.flavor is Flavor.PURE else field)


def p_coprime(f: NPoly, g: NPoly) -> bool:
    return p_gcd(f, g).degree == 0


def _deg_text(f: cl.Poly) -> str:
    return "-inf" if not f else str(len(f) - 1)


# --- roots ---

def p_roots(f: NPoly) -> list[NNum]:
    """
    Roots in N(K): every pair of slot roots (r0, r1) is recombined and kept
    when f vanishes there. Slot roots are the linear factors of each slot
    image, so over Q only rational roots appear.
    """
    if not f.coeffs:
        raise ZeroPolynomial("every scalar is a root")
    field = f.field.full()
    base = field.base
    slot_roots = []
    for s in SLOTS:
        image = f.slot(s)
        if not image:
            if base.is_rational:
                raise InfiniteRootSet(f"slot={int(s)} image is zero over Q", slot=s)
            slot_roots.append(list(base.elements()))
        else:
            slot_roots.append(cl.roots(base, image))
    found = []
    for r0 in slot_roots[0]:
        for r1 in slot_roots[1]:
            c = nn_recombine(r0, r1, field)
            if not p_eval(f, c):
                found.append(c)
    return sorted(found, key=NNum.key)


# --- text ---

def _term(c: NNum, k: int) -> str:
    if k == 0:
        text = format_scalar(c.a, c.b, i_first=True)
        return f"({text})" if c.a != 0 and c.b != 0 else text
    power = "x" if k == 1 else f"x^{k}"
    if c == 1:
        return power
    if c == -1 and c.field.base.is_rational:
        return "-" + power
    text = format_scalar(c.a, c.b, i_first=True)
    if c.a != 0 and c.b != 0:
        text = f"({text})"
    return text + power


def format_poly(f: NPoly) -> str:
    """Descending degree, zero terms omitted, two-part coefficients parenthesized."""
    terms = [_term(c, k) for k, c in reversed(list(enumerate(f.coeffs))) if c]
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def polys_from_slots(pairs: Iterable[tuple[cl.Poly, cl.Poly]], field: FieldDescriptor) -> list[NPoly]:
    return [p_recombine(f0, f1, field) for f0, f1 in pairs]
