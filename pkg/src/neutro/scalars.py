"""
The scalar ring N(K) = {a + bI : a, b in K} with I*I = I, its real and pure
flavors, the evaluation split, and finite group scans over <Zn U I>.

Multiplication: (a + bI)(c + dI) = ac + (ad + bc + bd)I.
Evaluation split: e0(a + bI) = a, e1(a + bI) = a + b; both are ring
homomorphisms and together give N(K) = K x K.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from enum import Enum, IntEnum
from typing import Callable, Sequence

from sympy import divisors, isprime, primitive_root

from . import config
from .base import RATIONALS, SCALAR_TYPES, BaseField, Element, show
from .errors import FieldMismatch, FlavorViolation, NotInvertible, NotPrime, ParseError, ScanTooLarge


class Flavor(Enum):
    REAL = "Real"
    FULL = "FullNeutrosophic"
    PURE = "PureNeutrosophic"


class Slot(IntEnum):
    AT0 = 0
    AT1 = 1


SLOTS = (Slot.AT0, Slot.AT1)


@dataclass(frozen=True)
class FieldDescriptor:
    base: BaseField = RATIONALS
    flavor: Flavor = Flavor.FULL

    @classmethod
    def rationals(cls, flavor: Flavor = Flavor.FULL) -> "FieldDescriptor":
        return cls(RATIONALS, flavor)

    @classmethod
    def prime(cls, p: int, flavor: Flavor = Flavor.FULL) -> "FieldDescriptor":
        return cls(BaseField(p), flavor)

    @classmethod
    def from_tag(cls, tag: str) -> "FieldDescriptor":
        """Parse ``Q``, ``Z<p>``, ``N(Q)``, ``N(Z<p>)``, ``QI`` or ``Z<p>I``."""
        m = _TAG.fullmatch(tag.strip())
        if not m:
            raise ParseError(f"bad field tag {tag!r}", expected="Q, Z<p>, N(Q), N(Z<p>), QI or Z<p>I")
        base = RATIONALS if m["base"] == "Q" else BaseField(int(m["base"][1:]))
        if m["wrap"]:
            return cls(base, Flavor.FULL)
        return cls(base, Flavor.PURE if m["pure"] else Flavor.REAL)

    @property
    def tag(self) -> str:
        if self.flavor is Flavor.FULL:
            return f"N({self.base.tag})"
        if self.flavor is Flavor.PURE:
            return f"{self.base.tag}I"
        return self.base.tag

    @property
    def p(self) -> int | None:
        return self.base.p

    def full(self) -> "FieldDescriptor":
        return FieldDescriptor(self.base, Flavor.FULL)

    def real(self) -> "FieldDescriptor":
        return FieldDescriptor(self.base, Flavor.REAL)

    def widen(self, other: "FieldDescriptor") -> "FieldDescriptor":
        if self.base != other.base:
            raise FieldMismatch(f"{self.tag} vs {other.tag}")
        return self if self.flavor is other.flavor else self.full()

    def contains(self, other: "FieldDescriptor") -> bool:
        """True when ``other`` is a subring of this descriptor (same base)."""
        if self.base != other.base:
            return False
        return self.flavor is other.flavor or self.flavor is Flavor.FULL

    def admits(self, a: Element, b: Element) -> bool:
        if self.flavor is Flavor.REAL:
            return b == 0
        if self.flavor is Flavor.PURE:
            return a == 0
        return True

    def __call__(self, a=0, b=0) -> "NNum":
        return NNum(self, a, b)

    @property
    def zero(self) -> "NNum":
        return NNum(self, 0, 0)

    @property
    def one(self) -> "NNum":
        """Multiplicative unit; in the pure ring KI the unit is I."""
        if self.flavor is Flavor.PURE:
            return NNum(self, 0, 1)
        return NNum(self, 1, 0)

    def elements(self):
        """All elements of a finite descriptor, ordered by (a, b)."""
        vals = list(self.base.elements())
        for a, b in itertools.product(vals, vals):
            if self.admits(a, b):
                yield NNum(self, a, b)

    def __str__(self):
        return self.tag


_TAG = re.compile(r"(?P<wrap>N\()?(?P<base>Q|Z\d+)(?(wrap)\)|(?P<pure>I)?)")


@dataclass(frozen=True, eq=False)
class NNum:
    """A neutrosophic scalar a + bI, canonical and flavor-checked on construction."""

    field: FieldDescriptor
    a: Element = dc_field(default=0)
    b: Element = dc_field(default=0)

    def __post_init__(self):
        base = self.field.base
        a, b = base(self.a), base(self.b)
        if not self.field.admits(a, b):
            raise FlavorViolation(f"{format_scalar(a, b)} is not in {self.field.tag}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    # --- coercion ---
    def _other(self, other) -> "NNum":
        if isinstance(other, NNum):
            if other.field.base != self.field.base:
                raise FieldMismatch(f"{self.field.tag} vs {other.field.tag}")
            return other
        if isinstance(other, SCALAR_TYPES):
            value = self.field.base(other)
            return NNum(self.field if self.field.admits(value, 0) else self.field.real(), value, 0)
        return NotImplemented

    # --- ring operations ---
    def __add__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return NNum(self.field.widen(y.field), self.a + y.a, self.b + y.b)

    __radd__ = __add__

    def __neg__(self):
        return NNum(self.field, -self.a, -self.b)

    def __sub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return NNum(self.field.widen(y.field), self.a - y.a, self.b - y.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        if isinstance(other, SCALAR_TYPES):
            # scaling by a base element keeps the flavor
            return NNum(self.field, self.a * y.a, self.b * y.a)
        a, b, c, d = self.a, self.b, y.a, y.b
        return NNum(self.field.widen(y.field), a * c, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        if isinstance(other, SCALAR_TYPES):
            inv = self.field.base.one / self.field.base(other)
            return NNum(self.field, self.a * inv, self.b * inv)
        return self * nn_inverse(y)

    def __pow__(self, k: int):
        result = self.field.one
        for _ in range(k):
            result = result * self
        return result

    # --- comparisons (value equality over a shared base) ---
    def __eq__(self, other):
        if isinstance(other, NNum):
            return self.field.base == other.field.base and self.a == other.a and self.b == other.b
        if isinstance(other, SCALAR_TYPES):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.base, self.a, self.b))

    def __bool__(self):
        return not (self.a == 0 and self.b == 0)

    # --- split ---
    def eval(self, slot: Slot) -> Element:
        return self.a if slot == Slot.AT0 else self.a + self.b

    @property
    def split(self) -> tuple[Element, Element]:
        return self.a, self.a + self.b

    def is_unit(self) -> bool:
        if self.field.flavor is Flavor.PURE:
            return self.b != 0
        return self.a != 0 and self.a + self.b != 0

    def key(self):
        k = self.field.base.key
        return (k(self.a), k(self.b))

    def __str__(self):
        return format_scalar(self.a, self.b)

    def __repr__(self):
        return f"NNum({self}@{self.field.tag})"


# --- Module-level operations ---

def nn_add(x: NNum, y: NNum) -> NNum:
    return x + y


def nn_sub(x: NNum, y: NNum) -> NNum:
    return x - y


def nn_mul(x: NNum, y: NNum) -> NNum:
    return x * y


def nn_neg(x: NNum) -> NNum:
    return -x


def nn_eval(x: NNum, slot: Slot) -> Element:
    return x.eval(slot)


def nn_recombine(u: Element, v: Element, field: FieldDescriptor) -> NNum:
    """The scalar with e0 = u and e1 = v, i.e. u + (v - u)I."""
    base = field.base
    u, v = base(u), base(v)
    a, b = u, v - u
    target = field if field.admits(a, b) else field.full()
    return NNum(target, a, b)


def nn_inverse(x: NNum) -> NNum:
    """Inverse in N(K) (or in KI for the pure flavor, whose unit is I)."""
    if x.field.flavor is Flavor.PURE:
        if x.b == 0:
            raise NotInvertible("slot=1", slot=Slot.AT1)
        return NNum(x.field, 0, x.field.base.one / x.b)
    u, v = x.split
    if u == 0:
        raise NotInvertible("slot=0", slot=Slot.AT0)
    if v == 0:
        raise NotInvertible("slot=1", slot=Slot.AT1)
    one = x.field.base.one
    return nn_recombine(one / u, one / v, x.field)


def nn_narrow(x: NNum, flavor: Flavor) -> NNum:
    """Checked narrowing into another flavor over the same base."""
    return NNum(FieldDescriptor(x.field.base, flavor), x.a, x.b)


def format_scalar(a, b, i_first: bool = False) -> str:
    """Canonical scalar text: real part first, zero parts omitted, ``I`` not ``1I``."""
    parts = []
    if b != 0:
        text = show(b)
        parts.append({"1": "I", "-1": "-I"}.get(text, f"{text}I"))
    if a != 0:
        parts.append(show(a))
    if not parts:
        return "0"
    if len(parts) == 1:
        return parts[0]
    first, second = (parts[0], parts[1]) if i_first else (parts[1], parts[0])
    return first + (second if second.startswith("-") else "+" + second)


# --- Group scans ---

class ScanOperation(Enum):
    ADDITIVE = "AdditiveModN"
    MULTIPLICATIVE = "MultiplicativeNonzeroModN"


class SubgroupLabel(Enum):
    NEUTROSOPHIC = "NeutrosophicSubgroup"
    PSEUDO = "PseudoNeutrosophicSubgroup"
    REAL = "RealSubgroup"


class GroupAxiom(Enum):
    CLOSURE = "closure"
    ASSOCIATIVITY = "associativity"
    IDENTITY = "identity"
    INVERSE = "inverse"


Pair = tuple[int, int]


@dataclass(frozen=True)
class GroupScanReport:
    modulus: int
    operation: ScanOperation
    order: int
    is_group: bool
    failure_witness: tuple[Pair, ...] | None
    subgroups: list[tuple[tuple[Pair, ...], SubgroupLabel]]
    failed_axiom: GroupAxiom | None = None

    def lines(self) -> list[str]:
        n = self.modulus
        out = [f"{self.operation.value} n={n}", f"order {self.order}",
               f"is_group {str(self.is_group).lower()}"]
        if self.failed_axiom is not None:
            shown = [format_pair(e, n) for e in self.failure_witness or ()]
            if self.failed_axiom is GroupAxiom.CLOSURE:
                out.append(f"witness: {shown[0]} * {shown[1]} leaves the set")
            elif self.failed_axiom is GroupAxiom.ASSOCIATIVITY:
                out.append(f"witness: ({shown[0]} * {shown[1]}) * {shown[2]} is not associative")
            elif self.failed_axiom is GroupAxiom.INVERSE:
                out.append(f"witness: {shown[0]} has no inverse")
            else:
                out.append("witness: no identity element")
        out.append(f"subgroups: {len(self.subgroups)}")
        for elements, label in self.subgroups:
            body = ", ".join(format_pair(e, n) for e in elements)
            out.append(f"  {{{body}}} {label.value}")
        return out


def format_pair(e: Pair, n: int) -> str:
    return format_scalar(e[0] % n, e[1] % n)


def _label(elements: tuple[Pair, ...]) -> SubgroupLabel:
    real = [e for e in elements if e[1] == 0]
    if len(real) == len(elements):
        return SubgroupLabel.REAL
    return SubgroupLabel.NEUTROSOPHIC if len(real) > 1 else SubgroupLabel.PSEUDO


def check_group_axioms(
    elements: Sequence[Pair],
    op: Callable[[Pair, Pair], Pair],
    identity: Pair,
    generators: Sequence[Pair],
) -> tuple[GroupAxiom | None, tuple[Pair, ...] | None]:
    """
    Exhaustive axiom check of a finite operation table. Returns the first
    failed axiom and its witness, or (None, None) for a group.

    Associativity is tested as (x*g)*y == x*(g*y) for every x, y and every
    ``g`` in ``generators``, which must generate the set under ``op``
    (Light's associativity test).
    """
    members = set(elements)
    for x, y in itertools.product(elements, repeat=2):
        if op(x, y) not in members:
            return GroupAxiom.CLOSURE, (x, y)
    for g in generators:
        for x, y in itertools.product(elements, repeat=2):
            if op(op(x, g), y) != op(x, op(g, y)):
                return GroupAxiom.ASSOCIATIVITY, (x, g, y)
    if identity not in members or any(op(identity, x) != x or op(x, identity) != x for x in elements):
        return GroupAxiom.IDENTITY, None
    for x in elements:
        if not any(op(x, y) == identity for y in elements):
            return GroupAxiom.INVERSE, (x,)
    return None, None


def _additive_subgroups(n: int) -> list[tuple[Pair, ...]]:
    # Subgroups of Zn x Zn <-> lattices between nZ^2 and Z^2 in Hermite form
    # [[a, b], [0, d]] with a | n, d | n, 0 <= b < d and (n/a)*b = 0 mod d.
    found = []
    divs = divisors(n)
    for a in divs:
        for d in divs:
            for b in range(d):
                if (n // a) * b % d:
                    continue
                elems = {((x * a) % n, (x * b + y * d) % n)
                         for x in range(n // a) for y in range(n // d)}
                if 1 < len(elems) < n * n:
                    found.append(tuple(sorted(elems)))
    return found


def _scan_additive(n: int) -> GroupScanReport:
    def add(x: Pair, y: Pair) -> Pair:
        return ((x[0] + y[0]) % n, (x[1] + y[1]) % n)

    elements = [(a, b) for a in range(n) for b in range(n)]
    failed, witness = check_group_axioms(elements, add, (0, 0), [(1, 0), (0, 1)])
    subgroups = sorted(_additive_subgroups(n), key=lambda s: (len(s), s))
    return GroupScanReport(n, ScanOperation.ADDITIVE, n * n, failed is None, witness,
                           [(s, _label(s)) for s in subgroups], failed)


def _scan_multiplicative(p: int) -> GroupScanReport:
    def mul(x: Pair, y: Pair) -> Pair:
        a, b = x
        c, d = y
        return (a * c % p, (a * d + b * c + b * d) % p)

    elements = [(g, 0) for g in range(1, p)] + [(0, g) for g in range(1, p)]
    failed, witness = check_group_axioms(elements, mul, (1, 0), elements)

    # cyclic subgroups H of Zp*, and the groups H*I whose identity is I
    g = primitive_root(p) if p > 2 else 1
    subgroups = []
    for d in divisors(p - 1):
        if d == 1:
            continue
        step = (p - 1) // d
        h = sorted({pow(g, step * k, p) for k in range(d)})
        subgroups.append((tuple((v, 0) for v in h), SubgroupLabel.REAL))
        subgroups.append((tuple((0, v) for v in h), SubgroupLabel.PSEUDO))
    subgroups.sort(key=lambda s: (len(s[0]), s[0]))
    return GroupScanReport(p, ScanOperation.MULTIPLICATIVE, len(elements), failed is None, witness, subgroups, failed)


def group_scan(n: int, operation: ScanOperation) -> GroupScanReport:
    """Exhaustive group-axiom scan of <Zn U I> with labeled subgroups."""
    if n < 2:
        raise ScanTooLarge(f"n={n} below 2")
    if n > config.SCAN_LIMIT:
        raise ScanTooLarge(f"n={n} limit={config.SCAN_LIMIT}")
    if operation is ScanOperation.ADDITIVE:
        return _scan_additive(n)
    if not isprime(n):
        raise NotPrime(f"n={n}")
    return _scan_multiplicative(n)
