"""
Classical exact linear algebra and polynomial algebra over a base field
(Q or Zp). This is the per-slot engine: every neutrosophic computation is
split into two of these, run here, and recombined.

Matrices are lists of rows, vectors are lists, polynomials are coefficient
lists in ascending degree with no trailing zeros (``[]`` is zero). The heavy
lifting goes through sympy: ``DomainMatrix`` over ``QQ``/``GF(p)`` for
elimination, determinants, inverses and characteristic polynomials, the
univariate ring ``K[x]`` for division, gcds and factorization, and the
Smith normal form over ``K[x]`` for invariant factors.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import Symbol
from sympy.polys.domains.polynomialring import PolynomialRing
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as smith_invariants
from sympy.polys.rings import PolyElement

from .base import RATIONALS, BaseField, Element

Matrix = list[list[Element]]
Vector = list[Element]
Poly = list[Element]

X = Symbol("x")


def field_of(x: Element) -> BaseField:
    """The base field an element lives in."""
    p = getattr(x, "mod", None)
    return RATIONALS if p is None else BaseField(p)


# --- sympy conversions ---

def to_domain_matrix(F: BaseField, M: Matrix, cols: int | None = None) -> DomainMatrix:
    n = cols if cols is not None else (len(M[0]) if M else 0)
    return DomainMatrix([[F.lift(x) for x in row] for row in M], (len(M), n), F.domain)


def from_domain_matrix(F: BaseField, D: DomainMatrix) -> Matrix:
    return [[F.lower(y) for y in row] for row in D.to_list()]


@lru_cache(maxsize=None)
def poly_ring(F: BaseField) -> PolynomialRing:
    """K[x] as a sympy domain; its ``.ring`` builds the elements."""
    return F.domain.poly_ring(X)


def to_ring(F: BaseField, f: Poly) -> PolyElement:
    return poly_ring(F).ring.from_list([F.lift(c) for c in reversed(f)])


def from_ring(F: BaseField, g: PolyElement) -> Poly:
    return trim([F.lower(c) for c in reversed(g.to_dense())])


# --- matrices ---

def zeros(F: BaseField, rows: int, cols: int) -> Matrix:
    return [[F.zero for _ in range(cols)] for _ in range(rows)]


def identity(F: BaseField, n: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B or not A[0] or not B[0]:
        return [[] for _ in A]
    F = field_of(A[0][0])
    return from_domain_matrix(F, to_domain_matrix(F, A).matmul(to_domain_matrix(F, B)))


def matvec(A: Matrix, v: Vector) -> Vector:
    if not v:
        return [0 for _ in A]
    return [row[0] for row in matmul(A, [[x] for x in v])]


def madd(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def msub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mscale(c: Element, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def mpow(F: BaseField, A: Matrix, k: int) -> Matrix:
    if not A:
        return []
    return from_domain_matrix(F, to_domain_matrix(F, A).pow(k))


def is_zero_matrix(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


def rref(F: BaseField, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with leftmost pivots."""
    if not M or not M[0]:
        return [list(row) for row in M], []
    R, pivots = to_domain_matrix(F, M).rref()
    return from_domain_matrix(F, R), list(pivots)


def rank(F: BaseField, M: Matrix) -> int:
    return to_domain_matrix(F, M).rank() if M and M[0] else 0


def nullspace(F: BaseField, M: Matrix, cols: int | None = None) -> list[Vector]:
    """Basis of {x : Mx = 0}, one vector per free column (free entry 1)."""
    n = cols if cols is not None else (len(M[0]) if M else 0)
    if not M:
        return identity(F, n)
    R, pivots = rref(F, M)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [F.zero] * n
        v[free] = F.one
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][free]
        basis.append(v)
    return basis


def solve(F: BaseField, M: Matrix, b: Vector) -> Vector | None:
    """One solution of Mx = b, or None when inconsistent."""
    n = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = [F.zero] * n
    for row, pc in enumerate(pivots):
        x[pc] = R[row][n]
    return x


def columns(vectors: Sequence[Vector], length: int) -> Matrix:
    """Matrix whose columns are ``vectors`` (``length`` rows)."""
    return [[v[i] for v in vectors] for i in range(length)]


def pivot_indices(F: BaseField, vectors: Sequence[Vector], length: int) -> list[int]:
    """Indices of the earliest vectors forming a basis of their span."""
    if not vectors or length == 0:
        return []
    return rref(F, columns(vectors, length))[1]


def in_span(F: BaseField, v: Vector, vectors: Sequence[Vector]) -> bool:
    if all(x == 0 for x in v):
        return True
    if not vectors:
        return False
    return solve(F, columns(vectors, len(v)), v) is not None


def det(F: BaseField, M: Matrix) -> Element:
    if not M:
        return F.one
    return F.lower(to_domain_matrix(F, M).det())


def inverse(F: BaseField, M: Matrix) -> Matrix | None:
    """Exact inverse, or None when singular."""
    if not M:
        return []
    D = to_domain_matrix(F, M)
    if D.rank() < len(M):
        return None
    return from_domain_matrix(F, D.inv())


def charpoly(F: BaseField, M: Matrix) -> Poly:
    """det(xI - M), ascending."""
    if not M:
        return [F.one]
    desc = to_domain_matrix(F, M).charpoly()
    return trim([F.lower(c) for c in reversed(desc)])


# --- Krylov dependencies ---

def first_dependency(F: BaseField, vectors: Iterable[Vector], base: Sequence[Vector] = ()) -> Poly:
    """
    Smallest k with v_k in span(base, v_0, ..., v_{k-1}); returns the monic
    x^k - sum c_i x^i where v_k = w + sum c_i v_i for some w in span(base).
    """
    seen: list[Vector] = []
    for k, v in enumerate(vectors):
        gens = list(base) + seen
        if all(x == 0 for x in v):
            coeffs = [F.zero] * k
        elif gens:
            sol = solve(F, columns(gens, len(v)), v)
            if sol is None:
                seen.append(v)
                continue
            coeffs = sol[len(base):]
        else:
            seen.append(v)
            continue
        return [-c for c in coeffs] + [F.one]
    raise ValueError("vector sequence ended before a dependency appeared")


def krylov(A: Matrix, v: Vector) -> Iterable[Vector]:
    while True:
        yield v
        v = matvec(A, v)


def matrix_powers(F: BaseField, A: Matrix) -> Iterable[Vector]:
    P = identity(F, len(A))
    while True:
        yield [x for row in P for x in row]
        P = matmul(P, A)


def minpoly(F: BaseField, A: Matrix) -> Poly:
    return first_dependency(F, matrix_powers(F, A))


def vector_annihilator(F: BaseField, A: Matrix, v: Vector) -> Poly:
    return first_dependency(F, krylov(A, v))


def conductor(F: BaseField, A: Matrix, v: Vector, W: Sequence[Vector]) -> Poly:
    return first_dependency(F, krylov(A, v), base=W)


# --- polynomials ---

def trim(f: Sequence[Element]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Poly) -> int | float:
    return len(f) - 1 if f else float("-inf")


def padd(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        if i < len(f) and i < len(g):
            out.append(f[i] + g[i])
        else:
            out.append(f[i] if i < len(f) else g[i])
    return trim(out)


def pneg(f: Poly) -> Poly:
    return [-c for c in f]


def psub(f: Poly, g: Poly) -> Poly:
    return padd(f, pneg(g))


def pmul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    F = field_of(f[-1])
    return from_ring(F, to_ring(F, f) * to_ring(F, g))


def pscale(c: Element, f: Poly) -> Poly:
    return trim([c * a for a in f])


def ppow(F: BaseField, f: Poly, k: int) -> Poly:
    return from_ring(F, to_ring(F, f) ** k)


def pdivmod(F: BaseField, f: Poly, d: Poly) -> tuple[Poly, Poly]:
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    q, r = divmod(to_ring(F, f), to_ring(F, d))
    return from_ring(F, q), from_ring(F, r)


def monic(F: BaseField, f: Poly) -> Poly:
    if not f:
        return []
    inv = F.one / f[-1]
    return [c * inv for c in f]


def pgcd(F: BaseField, f: Poly, g: Poly) -> Poly:
    return from_ring(F, to_ring(F, f).gcd(to_ring(F, g)).monic())


def pxgcd(F: BaseField, f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """(d, s, t) with s*f + t*g = d = monic gcd."""
    if not trim(f) and not trim(g):
        return [], [], []
    s, t, d = to_ring(F, f).gcdex(to_ring(F, g))
    return from_ring(F, d), from_ring(F, s), from_ring(F, t)


def peval(f: Poly, x: Element, zero: Element) -> Element:
    acc = zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def peval_matrix(F: BaseField, f: Poly, A: Matrix) -> Matrix:
    n = len(A)
    acc = zeros(F, n, n)
    for c in reversed(f):
        acc = madd(matmul(acc, A), mscale(c, identity(F, n)))
    return acc


def divides(F: BaseField, d: Poly, f: Poly) -> bool:
    return not pdivmod(F, f, d)[1]


def linear(F: BaseField, root: Element) -> Poly:
    return [-root, F.one]


def factor_list(F: BaseField, f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted."""
    _, factors = to_ring(F, f).factor_list()
    out = [(from_ring(F, g.monic()), k) for g, k in factors]
    return sorted(out, key=lambda gm: poly_key(F, gm[0]))


def root_multiplicities(F: BaseField, f: Poly) -> tuple[list[tuple[Element, int]], Poly]:
    """Linear factors (root, multiplicity) and the cofactor with no base-field root."""
    f = trim(f)
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    found, rest = [], [F.one]
    for g, k in factor_list(F, f):
        if degree(g) == 1:
            found.append((-g[0], k))
        else:
            rest = pmul(rest, ppow(F, g, k))
    return sorted(found, key=lambda rm: F.key(rm[0])), rest


def roots(F: BaseField, f: Poly) -> list[Element]:
    """Distinct roots in the base field, sorted."""
    return [r for r, _ in root_multiplicities(F, f)[0]]


def splits(F: BaseField, f: Poly) -> bool:
    return degree(root_multiplicities(F, f)[1]) == 0


def squarefree(F: BaseField, f: Poly) -> bool:
    f = trim(f)
    return bool(f) and to_ring(F, f).is_squarefree


def factor(F: BaseField, f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factorization."""
    return factor_list(F, monic(F, f))


def poly_key(F: BaseField, f: Poly):
    return (len(f), [F.key(c) for c in reversed(f)])


def companion(F: BaseField, f: Poly) -> Matrix:
    """Companion matrix: ones on the subdiagonal, last column -c_0..-c_{k-1}."""
    k = len(f) - 1
    C = zeros(F, k, k)
    for i in range(1, k):
        C[i][i - 1] = F.one
    for i in range(k):
        C[i][k - 1] = -f[i]
    return C


def block_diagonal(F: BaseField, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    M = zeros(F, n, n)
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                M[at + i][at + j] = x
        at += len(b)
    return M


def jordan_block(F: BaseField, value: Element, size: int) -> Matrix:
    """Elementary Jordan block with the ones below the diagonal."""
    J = zeros(F, size, size)
    for i in range(size):
        J[i][i] = value
        if i + 1 < size:
            J[i + 1][i] = F.one
    return J


def invariant_factors(F: BaseField, A: Matrix) -> list[Poly]:
    """Non-unit invariant factors of xI - A (Smith form over K[x]), ascending."""
    n = len(A)
    if n == 0:
        return []
    Kx = poly_ring(F)
    R = Kx.ring
    x = R.gens[0]
    rows = [[(x if i == j else R.zero) - R.ground_new(F.lift(A[i][j])) for j in range(n)] for i in range(n)]
    diag = list(smith_invariants(DomainMatrix(rows, (n, n), Kx)))
    # gcd/lcm sweep so that each entry divides the next
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            diag[i], diag[j] = diag[i].gcd(diag[j]), diag[i].lcm(diag[j])
    return [monic(F, from_ring(F, d)) for d in diag if d.degree() > 0]


def similarity_transform(F: BaseField, A: Matrix, B: Matrix, rng: random.Random, tries: int) -> Matrix | None:
    """An invertible P with AP = PB (so B = P^-1 A P), searched in the intertwiner space."""
    n = len(A)
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [F.zero] * (n * n)
            for k in range(n):
                row[k * n + j] = row[k * n + j] + A[i][k]
                row[i * n + k] = row[i * n + k] - B[k][j]
            eqs.append(row)
    basis = nullspace(F, eqs, n * n)
    if not basis:
        return None
    candidates = [basis[0]] if len(basis) == 1 else []
    candidates += [_combine(F, basis, rng) for _ in range(tries)]
    for flat in candidates:
        P = [flat[i * n:(i + 1) * n] for i in range(n)]
        if det(F, P) != 0:
            return P
    return None


def _combine(F: BaseField, basis: list[Vector], rng: random.Random) -> Vector:
    coeffs = [F.random(rng, 3) for _ in basis]
    out = [F.zero] * len(basis[0])
    for c, v in zip(coeffs, basis):
        out = [o + c * x for o, x in zip(out, v)]
    return out
