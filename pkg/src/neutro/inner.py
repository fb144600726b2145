"""
Standard n-inner products on strong spaces: (u/v) = sum u_k v_k per component,
orthogonality, Gram-Schmidt, best approximation, complements and Bessel.

Order on N(Q) is the evaluation order: x >= 0 iff e0(x) >= 0 and e1(x) >= 0.
Order-based checks raise UnorderedField over Zp.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import classical as cl
from .errors import (
    DependentInput,
    NonInvertibleNorm,
    NotInvertible,
    NotOrthogonal,
    SpaceMismatch,
    UnorderedField,
    UnsupportedRegime,
    VerificationFailed,
)
from .nspace import (
    ComponentAmbient,
    NFoldMap,
    NFoldSpace,
    NFoldVector,
    Regime,
    SlotCount,
    independent,
    pair_channels,
    require_finite,
)
from .scalars import Flavor, NNum, nn_inverse


@dataclass(frozen=True)
class InnerSpaceContext:
    space: NFoldSpace
    orderable: bool

    @classmethod
    def of(cls, V: NFoldSpace) -> "InnerSpaceContext":
        for i, amb in enumerate(V.components):
            if amb.regime is Regime.R1 and amb.entries.flavor is not Flavor.REAL:
                raise UnsupportedRegime(f"component {i + 1}: inner products need neutrosophic scalars")
        return cls(V, all(amb.base.is_rational for amb in V.components))


# --- order ---

def _require_ordered(x: NNum) -> None:
    if not x.field.base.is_rational:
        raise UnorderedField(f"no order on {x.field.base.tag}")


def nn_nonneg(x: NNum) -> bool:
    _require_ordered(x)
    return all(v >= 0 for v in x.split)


def nn_positive(x: NNum) -> bool:
    _require_ordered(x)
    return all(v > 0 for v in x.split)


# --- products ---

def _check(u: NFoldVector, v: NFoldVector) -> None:
    if u.space != v.space:
        raise SpaceMismatch("vectors from different spaces")


def _component_dot(amb: ComponentAmbient, p, q) -> NNum:
    acc = amb.scalars.zero
    for x, y in zip(p, q):
        acc = acc + x * y
    return NNum(amb.scalars, acc.a, acc.b)


def dot(u: NFoldVector, v: NFoldVector) -> tuple[NNum, ...]:
    _check(u, v)
    return tuple(_component_dot(amb, p, q) for amb, p, q in zip(u.space.components, u.parts, v.parts))


def norm_sq(v: NFoldVector) -> tuple[NNum, ...]:
    return dot(v, v)


def orthogonal(u: NFoldVector, v: NFoldVector) -> bool:
    return all(not d for d in dot(u, v))


@dataclass(frozen=True)
class PositivityReport:
    norms: tuple[NNum, ...]
    holds: tuple[bool, ...]

    def lines(self) -> list[str]:
        return [f"component {i + 1}: (v/v) = {n} positive {str(h).lower()}"
                for i, (n, h) in enumerate(zip(self.norms, self.holds))]


def positivity(v: NFoldVector) -> PositivityReport:
    """(v/v) > 0 per nonzero component under the evaluation order; zero components pass."""
    norms = norm_sq(v)
    holds = tuple(nn_positive(n) if any(p) else nn_nonneg(n) for n, p in zip(norms, v.parts))
    return PositivityReport(norms, holds)


def _unit_inverse(n: NNum, index: int, component: int) -> NNum:
    try:
        return nn_inverse(n)
    except NotInvertible as exc:
        raise NonInvertibleNorm(f"index={index} component={component + 1} norm={n}", index=index) from exc


def _coefficients(beta: NFoldVector, alpha: NFoldVector, index: int) -> list[NNum]:
    """(beta/alpha) / ||alpha||^2 per component."""
    out = []
    for i, (d, n) in enumerate(zip(dot(beta, alpha), norm_sq(alpha))):
        out.append(d * _unit_inverse(n, index, i))
    return out


# --- span helpers ---

def _in_span(v: NFoldVector, vectors: Sequence[NFoldVector]) -> bool:
    for i, amb in enumerate(v.space.components):
        target = amb.encode(v.parts[i])
        gens = [amb.encode(w.parts[i]) for w in vectors]
        for ch in range(amb.channels):
            if not cl.in_span(amb.base, target[ch], [g[ch] for g in gens]):
                return False
    return True


# --- Gram-Schmidt ---

def gram_schmidt(vectors: Sequence[NFoldVector]) -> list[NFoldVector]:
    """alpha_{m+1} = beta_{m+1} - sum_k (beta_{m+1}/alpha_k) / ||alpha_k||^2 alpha_k."""
    if not vectors:
        return []
    ind = independent(vectors)
    if not ind:
        raise DependentInput(f"component={ind.component + 1}", witness=ind.witness)
    out: list[NFoldVector] = []
    for m, beta in enumerate(vectors):
        alpha = beta
        for k, prev in enumerate(out):
            alpha = alpha - prev.scale(*_coefficients(beta, prev, k + 1))
        for i, n in enumerate(norm_sq(alpha)):
            _unit_inverse(n, m + 1, i)
        out.append(alpha)
    for i, a in enumerate(out):
        for b in out[i + 1:]:
            if not orthogonal(a, b):
                raise VerificationFailed("Gram-Schmidt output is not orthogonal")
    for k in range(1, len(out) + 1):
        prefix_a, prefix_b = out[:k], list(vectors[:k])
        if not (all(_in_span(a, prefix_b) for a in prefix_a) and all(_in_span(b, prefix_a) for b in prefix_b)):
            raise VerificationFailed(f"prefix span {k} changed")
    return out


# --- best approximation ---

def _require_orthogonal(W: Sequence[NFoldVector]) -> None:
    for i, a in enumerate(W):
        for j, b in enumerate(W[i + 1:], start=i + 1):
            if not orthogonal(a, b):
                raise NotOrthogonal(f"vectors {i + 1} and {j + 1}")


def best_approx(beta: NFoldVector, W_orth: Sequence[NFoldVector]) -> NFoldVector:
    """alpha = sum (beta/alpha_k) / ||alpha_k||^2 alpha_k; beta - alpha is orthogonal to W."""
    _require_orthogonal(W_orth)
    alpha = beta.space.zero()
    for k, a in enumerate(W_orth):
        if a.space != beta.space:
            raise SpaceMismatch("basis vector outside the space of beta")
        alpha = alpha + a.scale(*_coefficients(beta, a, k + 1))
    residual = beta - alpha
    if not all(orthogonal(residual, a) for a in W_orth):
        raise VerificationFailed("residual is not orthogonal to W")
    return alpha


def projection_matrix(V: NFoldSpace, W_orth: Sequence[NFoldVector]) -> NFoldMap:
    """The map beta -> best_approx(beta, W_orth), in standard coordinates."""
    InnerSpaceContext.of(V)
    mats = []
    for i, amb in enumerate(V.components):
        require_finite(amb)
        columns = []
        for k in range(amb.dim):
            e = V.supported(i, amb.unit_part(k))
            columns.append(amb.encode(best_approx(e, W_orth).parts[i]))
        per_channel = [cl.columns([c[ch] for c in columns], amb.dim) for ch in range(amb.channels)]
        mats.append(amb.matrix_from_channels(per_channel))
    return NFoldMap(V, V, tuple(range(V.n)), tuple(mats))


# --- complements ---

@dataclass(frozen=True)
class ComplementReport:
    vectors: tuple[NFoldVector, ...]
    dims: tuple[SlotCount, ...]

    def lines(self) -> list[str]:
        out = ["dims (" + ", ".join(str(d) for d in self.dims) + ")"]
        out += [str(v) for v in self.vectors]
        return out


def orth_complement(S: Sequence[NFoldVector], V: NFoldSpace) -> ComplementReport:
    """Generators of S-perp: the dot-with-each-generator system solved per slot and recombined."""
    InnerSpaceContext.of(V)
    if any(v.space != V for v in S):
        raise SpaceMismatch("generator outside the ambient")
    vectors, dims = [], []
    for i, amb in enumerate(V.components):
        require_finite(amb)
        per_channel = []
        for ch in range(amb.channels):
            rows = [amb.encode(v.parts[i])[ch] for v in S]
            per_channel.append(cl.nullspace(amb.base, rows, amb.dim))
        parts, count = pair_channels(amb, per_channel)
        vectors.extend(V.supported(i, p) for p in parts)
        dims.append(count)
    return ComplementReport(tuple(vectors), tuple(dims))


@dataclass(frozen=True)
class SplitReport:
    holds: bool
    gram_dets: tuple[NNum, ...]
    witness: NFoldVector | None = None

    def lines(self) -> list[str]:
        out = [f"split {str(self.holds).lower()}",
               "gram det (" + ", ".join(str(d) for d in self.gram_dets) + ")"]
        if self.witness is not None:
            out.append(f"witness {self.witness}")
        return out


def split_check(W: Sequence[NFoldVector]) -> SplitReport:
    """
    V = W (+) W-perp iff, in every channel, the Gram matrix of a basis of W is
    nonsingular. A kernel vector c of a singular Gram matrix gives the witness
    sum c_k w_k, which lies in W and in W-perp.
    """
    if not W:
        raise SpaceMismatch("empty generator list")
    V = W[0].space
    InnerSpaceContext.of(V)
    if any(w.space != V for w in W):
        raise SpaceMismatch("generator outside the ambient")
    dets, witness = [], None
    for i, amb in enumerate(V.components):
        require_finite(amb)
        channel_dets = []
        for ch in range(amb.channels):
            coords = [amb.encode(w.parts[i])[ch] for w in W]
            basis = [coords[k] for k in cl.pivot_indices(amb.base, coords, amb.dim)]
            gram = [[sum((x * y for x, y in zip(a, b)), amb.base.zero) for b in basis] for a in basis]
            channel_dets.append(cl.det(amb.base, gram) if basis else amb.base.one)
            kernel = cl.nullspace(amb.base, gram, len(basis)) if basis else []
            if kernel and witness is None:
                share = [sum((c * v[r] for c, v in zip(kernel[0], basis)), amb.base.zero) for r in range(amb.dim)]
                witness = V.supported(i, amb.decode_channel(ch, share))
            if not kernel:
                perp = cl.nullspace(amb.base, basis, amb.dim)
                if cl.rank(amb.base, cl.columns(basis + perp, amb.dim)) != amb.dim:
                    raise VerificationFailed(f"component {i + 1}: W + W-perp is not the whole space")
        dets.append(amb.matrix_from_channels([[[d]] for d in channel_dets])[0, 0])
    return SplitReport(witness is None, tuple(dets), witness)


# --- Bessel ---

@dataclass(frozen=True)
class BesselReport:
    lhs: tuple[NNum, ...]
    rhs: tuple[NNum, ...]
    holds: bool
    equality: bool

    def lines(self) -> list[str]:
        return [
            "lhs (" + ", ".join(str(x) for x in self.lhs) + ")",
            "rhs (" + ", ".join(str(x) for x in self.rhs) + ")",
            f"holds {str(self.holds).lower()}",
            f"equality {str(self.equality).lower()}",
        ]


def bessel_check(beta: NFoldVector, orth_set: Sequence[NFoldVector]) -> BesselReport:
    """sum (beta/alpha_k)^2 / ||alpha_k||^2 <= ||beta||^2, slotwise under the evaluation order."""
    for amb in beta.space.components:
        if not amb.base.is_rational:
            raise UnorderedField(f"no order on {amb.base.tag}")
    _require_orthogonal(orth_set)
    rhs = norm_sq(beta)
    lhs = [amb.scalars.zero for amb in beta.space.components]
    for k, a in enumerate(orth_set):
        coeffs = _coefficients(beta, a, k + 1)
        for i, (c, d) in enumerate(zip(coeffs, dot(beta, a))):
            lhs[i] = lhs[i] + c * d
    lhs_t = tuple(NNum(amb.scalars, x.a, x.b) for amb, x in zip(beta.space.components, lhs))
    holds = all(nn_nonneg(r - l) for l, r in zip(lhs_t, rhs))
    equality = best_approx(beta, orth_set) == beta
    if equality != all(l == r for l, r in zip(lhs_t, rhs)):
        raise VerificationFailed("Bessel equality disagrees with membership in the span")
    return BesselReport(lhs_t, rhs, holds, equality)
