"""
Base fields underneath N(K): the rationals (``fractions.Fraction``) and the
prime fields Zp (elements of sympy's ``GF(p)`` domain).

Everything above this module treats base elements generically through
``+ - * /``, ``== 0`` and the helpers on ``BaseField``. ``BaseField.domain``
is the matching sympy domain (``QQ`` or ``GF(p)``); classical.py lifts into
it before handing work to DomainMatrix and the polynomial rings.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.domains.modularinteger import ModularInteger

from .errors import DivisionByZero, FieldMismatch, NotPrime, UnsupportedField

Element = Union[Fraction, ModularInteger]

# values NNum accepts as base scalars
SCALAR_TYPES = (int, Fraction, ModularInteger)


@lru_cache(maxsize=None)
def prime_field(p: int) -> Domain:
    return GF(p)


def _fraction_mod(q: Fraction, p: int) -> int:
    if q.denominator % p == 0:
        raise DivisionByZero(f"denominator {q.denominator} vanishes in Z{p}")
    return q.numerator * pow(q.denominator, -1, p) % p


def show(x) -> str:
    """Plain text of a base element; Zp values print as 0..p-1."""
    if isinstance(x, ModularInteger):
        return str(int(x) % x.mod)
    return str(x)


@dataclass(frozen=True)
class BaseField:
    """Q when ``p`` is None, otherwise the prime field Zp (primality-checked)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or not isprime(self.p)):
            raise NotPrime(f"p={self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"Z{self.p}"

    @property
    def domain(self) -> Domain:
        return QQ if self.p is None else prime_field(self.p)

    def __call__(self, value) -> Element:
        """Convert an int, Fraction or matching GF(p) element into this field."""
        if isinstance(value, ModularInteger):
            if value.mod != self.p:
                raise FieldMismatch(f"{self.tag} vs Z{value.mod}")
            return value
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return self.domain(_fraction_mod(value, self.p))
        return self.domain(int(value) % self.p)

    def lift(self, x: Element):
        """The sympy domain element for ``x``."""
        x = self(x)
        if self.p is None:
            return QQ(x.numerator, x.denominator)
        return x

    def lower(self, y) -> Element:
        """Inverse of ``lift``."""
        if self.p is None:
            return Fraction(int(y.numerator), int(y.denominator))
        return self.domain.convert(y)

    @property
    def zero(self) -> Element:
        return self(0)

    @property
    def one(self) -> Element:
        return self(1)

    def owns(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, ModularInteger) and x.mod == self.p

    def elements(self) -> Iterator[Element]:
        if self.p is None:
            raise UnsupportedField("Q cannot be enumerated")
        return (self.domain(v) for v in range(self.p))

    def key(self, x: Element):
        """Total order used only for deterministic sorting."""
        return x if self.p is None else int(x) % self.p

    def random(self, rng: random.Random, bound: int = 5) -> Element:
        if self.p is None:
            return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        return self.domain(rng.randrange(self.p))

    def random_nonzero(self, rng: random.Random, bound: int = 5) -> Element:
        while True:
            x = self.random(rng, bound)
            if x != 0:
                return x

    def __str__(self):
        return self.tag


RATIONALS = BaseField()
