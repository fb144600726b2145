"""
Seeded randomized property suites.

Trial k of a suite draws from ``random.Random(seed * 1_000_003 + k)`` over
field ``fields[k % len(fields)]``, so a report depends only on the suite
name, seed, trial count and field list. Documented refusals (a dependent
input, a non-unit norm) count as expected errors, not failures.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from src.jobs.router import Job, VerifySuite
from src.neutro import classical as cl
from src.neutro import config, inner, nspace, spectral
from src.neutro import sampling as smp
from src.neutro.errors import (
    DependentInput,
    NonInvertibleNorm,
    ParseError,
    UnknownSuite,
    VerificationFailed,
)
from src.neutro.matrix import m_charpoly, m_det, m_inverse, m_is_invertible
from src.neutro.nspace import ComponentAmbient, FoldKind, NFoldSpace, Shape
from src.neutro.poly import p_eval_matrix, p_split
from src.neutro.scalars import SLOTS, FieldDescriptor, NNum, ScanOperation, group_scan, nn_inverse

SUITES = ("ring-axioms", "split-commutation", "rank-nullity", "cayley-hamilton",
          "dual-reconstruction", "gram-schmidt", "bessel", "taxonomy")


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    EXPECTED_ERROR = "expected-error"


@dataclass(frozen=True)
class TrialResult:
    status: Status
    detail: str = ""


PASSED = TrialResult(Status.PASS)


def _fail(detail: str) -> TrialResult:
    return TrialResult(Status.FAIL, detail)


# --- ring axioms ---

def _axioms(x: NNum, y: NNum, z: NNum) -> str | None:
    one, zero = NNum(x.field, 1, 0), x.field.zero
    checks = [
        ("additive associativity", (x + y) + z == x + (y + z)),
        ("additive commutativity", x + y == y + x),
        ("multiplicative associativity", (x * y) * z == x * (y * z)),
        ("multiplicative commutativity", x * y == y * x),
        ("distributivity", x * (y + z) == x * y + x * z),
        ("additive identity", x + zero == x),
        ("multiplicative identity", x * one == x),
        ("additive inverse", not (x - x)),
    ]
    for s in SLOTS:
        checks.append((f"slot {int(s)} additive", (x + y).eval(s) == x.eval(s) + y.eval(s)))
        checks.append((f"slot {int(s)} multiplicative", (x * y).eval(s) == x.eval(s) * y.eval(s)))
    if x.is_unit():
        checks.append(("unit inverse", x * nn_inverse(x) == one))
    for name, ok in checks:
        if not ok:
            return f"{name} fails at x={x} y={y} z={z}"
    return None


def ring_axioms_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    """Exhaustive over N(Z2) and N(Z3) on the first trial of each field, sampled otherwise."""
    indeterminate = NNum(field, 0, 1)
    if indeterminate * indeterminate != indeterminate:
        return _fail("I*I != I")
    if first and field.p is not None and field.p <= 3:
        triples = itertools.product(list(field.elements()), repeat=3)
    else:
        triples = ((smp.random_scalar(rng, field), smp.random_scalar(rng, field), smp.random_scalar(rng, field))
                   for _ in range(20))
    for x, y, z in triples:
        bad = _axioms(x, y, z)
        if bad:
            return _fail(bad)
    return PASSED


# --- split commutation ---

def split_commutation_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    base = field.base
    x, y = smp.random_scalar(rng, field), smp.random_scalar(rng, field)
    for s in SLOTS:
        if (x * y).eval(s) != x.eval(s) * y.eval(s) or (x - y).eval(s) != x.eval(s) - y.eval(s):
            return _fail(f"slot {int(s)} scalar ops at x={x} y={y}")
    f, g = smp.random_poly(rng, field, rng.randint(0, 3)), smp.random_poly(rng, field, rng.randint(0, 3))
    for s, (f_s, g_s, fg_s, sum_s) in zip(SLOTS, zip(p_split(f), p_split(g), p_split(f * g), p_split(f + g))):
        if fg_s != cl.trim(cl.pmul(f_s, g_s)) or sum_s != cl.trim(cl.padd(f_s, g_s)):
            return _fail(f"slot {int(s)} polynomial ops at f={f} g={g}")
    A = smp.random_matrix(rng, field, rng.randint(1, 3))
    for s in SLOTS:
        A_s = A.slot(s)
        if m_det(A).eval(s) != cl.det(base, A_s):
            return _fail(f"slot {int(s)} det at A={A.literal()}")
        if m_charpoly(A).slot(s) != cl.trim(cl.charpoly(base, A_s)):
            return _fail(f"slot {int(s)} charpoly at A={A.literal()}")
        m_s = cl.minpoly(base, A_s)
        if not cl.divides(base, m_s, spectral.minpoly(A).polynomial.slot(s)):
            return _fail(f"slot {int(s)} minpoly at A={A.literal()}")
    if m_is_invertible(A):
        inv = m_inverse(A)
        if any(inv.slot(s) != cl.inverse(base, A.slot(s)) for s in SLOTS):
            return _fail(f"inverse at A={A.literal()}")
    elif all(cl.inverse(base, A.slot(s)) is not None for s in SLOTS):
        return _fail(f"invertibility at A={A.literal()}")
    return PASSED


# --- rank-nullity ---

def _space(rng: random.Random, scalars: FieldDescriptor, entries: FieldDescriptor, n: int) -> NFoldSpace:
    comps = [ComponentAmbient(Shape.tuple(rng.randint(1, 3)), scalars, entries) for _ in range(n)]
    return NFoldSpace.build(FoldKind.TYPE_I, comps)


def rank_nullity_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    """Alternates the strong regime with real scalars acting on neutrosophic entries."""
    n = rng.randint(1, 3)
    scalars = field if k % 2 == 0 else field.real()
    V, W = _space(rng, scalars, field, n), _space(rng, scalars, field, n)
    T = smp.random_map(rng, V, W)
    report = nspace.rank_nullity(T)
    if not report.holds():
        return _fail("; ".join(report.lines()) + " for " + "; ".join(T.lines()))
    for v in nspace.kernel_basis(T):
        if not nspace.map_apply(T, v).is_zero():
            return _fail(f"kernel vector {v} is not sent to zero by " + "; ".join(T.lines()))
    return PASSED


# --- Cayley-Hamilton ---

def cayley_hamilton_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    A = smp.random_matrix(rng, field, 2 + k % 3)
    if not p_eval_matrix(m_charpoly(A), A).is_zero():
        return _fail(f"f(A) != 0 at A={A.literal()}")
    if not spectral.cayley_hamilton_check(A):
        return _fail(f"minimal polynomial does not divide the characteristic polynomial at A={A.literal()}")
    return PASSED


# --- dual bases ---

def _full_basis(rng: random.Random, V: NFoldSpace) -> nspace.NBasis:
    for _ in range(20):
        B = nspace.nbasis(smp.random_vectors(rng, V, max(amb.dim for amb in V.components) + 2))
        if all(d == amb.dim for d, amb in zip(B.dims, V.components)):
            return B
    return nspace.standard_basis(V)


def dual_reconstruction_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    V = smp.random_space(rng, field)
    B = _full_basis(rng, V)
    duals = nspace.dual_basis(B)
    for i, (amb, functionals) in enumerate(zip(V.components, duals)):
        alphas = B.vectors(i)
        for a, f in enumerate(functionals):
            for b, alpha in enumerate(alphas):
                value = nspace.functional_apply(f, alpha)
                if value != (1 if a == b else 0):
                    return _fail(f"{f} at basis vector {alpha} gives {value}")
    v = smp.random_vector(rng, V)
    rebuilt = V.zero()
    for i, functionals in enumerate(duals):
        for f, alpha in zip(functionals, B.vectors(i)):
            rebuilt = rebuilt + alpha.scale(nspace.functional_apply(f, v))
    if rebuilt != v:
        return _fail(f"vector reconstruction gives {rebuilt} for {v}")
    for i, (amb, functionals) in enumerate(zip(V.components, duals)):
        g = nspace.NFunctional(V, i, tuple(smp.random_scalar(rng, amb.scalars) for _ in range(amb.dim)))
        row = [amb.scalars.zero] * amb.dim
        for f, alpha in zip(functionals, B.vectors(i)):
            c = nspace.functional_apply(g, alpha)
            row = [r + c * x for r, x in zip(row, f.row)]
        if tuple(row) != g.row:
            return _fail(f"functional reconstruction of {g}")
    W = nspace.Subspace.spanned_by(V, smp.random_vectors(rng, V, rng.randint(0, 2)))
    ann = nspace.annihilator(W)
    for i, amb in enumerate(V.components):
        if ann.subspace_dims[i] + ann.dims[i] != nspace.SlotCount(amb.dim, amb.dim):
            return _fail(f"component {i + 1}: dim W {ann.subspace_dims[i]} + dim W° {ann.dims[i]} != {amb.dim}")
    T = smp.random_map(rng, V, smp.random_space(rng, field, n=V.n))
    rank, rank_t = nspace.rank_nullity(T).rank, nspace.rank_nullity(nspace.transpose_map(T)).rank
    for i, j in enumerate(T.assignment):
        if rank[i] != rank_t[j]:
            return _fail(f"rank {rank[i]} vs transpose rank {rank_t[j]} for " + "; ".join(T.lines()))
    return PASSED


# --- inner products ---

def _orthogonal_set(rng: random.Random, field: FieldDescriptor):
    V = smp.random_space(rng, field)
    k = rng.randint(1, min(amb.dim for amb in V.components))
    vectors = smp.random_independent(rng, V, k)
    if vectors is None:
        return V, None, None
    return V, vectors, inner.gram_schmidt(vectors)


def gram_schmidt_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    """Every tenth trial plants a dependent set that must be refused."""
    if k % 10 == 9:
        V = smp.random_space(rng, field)
        v = smp.random_vector(rng, V)
        try:
            inner.gram_schmidt([v, v.scale(NNum(field, 2, 0)), smp.random_vector(rng, V)])
        except DependentInput as e:
            return TrialResult(Status.EXPECTED_ERROR, e.headline())
        return _fail(f"dependent set accepted: {v}, 2*{v}")
    try:
        V, vectors, out = _orthogonal_set(rng, field)
    except NonInvertibleNorm as e:
        return TrialResult(Status.EXPECTED_ERROR, e.headline())
    if vectors is None:
        return PASSED
    for a, b in itertools.combinations(out, 2):
        if not inner.orthogonal(a, b):
            return _fail(f"{a} and {b} are not orthogonal")
    for m, v in enumerate(vectors):
        if inner.best_approx(v, out[:m + 1]) != v:
            return _fail(f"{v} left the span of the first {m + 1} outputs")
    return PASSED


def bessel_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    """Bessel's inequality, equality on planted in-span vectors, projection idempotence and re-ordering."""
    try:
        V, vectors, out = _orthogonal_set(rng, field)
    except NonInvertibleNorm as e:
        return TrialResult(Status.EXPECTED_ERROR, e.headline())
    if vectors is None:
        return PASSED
    if k % 2:
        beta = V.zero()
        for w in out:
            beta = beta + w.scale(smp.random_scalar(rng, field))
    else:
        beta = smp.random_vector(rng, V)
    report = inner.bessel_check(beta, out)
    if not report.holds:
        return _fail(f"Bessel fails for beta={beta}: " + "; ".join(report.lines()))
    if k % 2 and not report.equality:
        return _fail(f"no equality for in-span beta={beta}")
    alpha = inner.best_approx(beta, out)
    if inner.best_approx(beta, list(reversed(out))) != alpha:
        return _fail(f"best approximation of {beta} depends on the order of the basis")
    if not all(inner.orthogonal(beta - alpha, w) for w in out):
        return _fail(f"residual of {beta} is not orthogonal")
    E = inner.projection_matrix(V, out)
    if not nspace.map_equal(nspace.map_compose(E, E), E):
        return _fail("projection is not idempotent: " + "; ".join(E.lines()))
    return PASSED


# --- taxonomy ---

def _real_vector(rng: random.Random, V: NFoldSpace):
    return V.vector(*[[NNum(amb.entries, amb.base.random(rng), 0) for _ in range(amb.size)] for amb in V.components])


def _neutro_vector(rng: random.Random, V: NFoldSpace):
    parts = []
    for amb in V.components:
        part = [smp.random_scalar(rng, amb.entries) for _ in range(amb.size)]
        part[0] = NNum(amb.entries, part[0].a, amb.base.random_nonzero(rng))
        parts.append(part)
    return V.vector(*parts)


def taxonomy_trial(rng: random.Random, field: FieldDescriptor, k: int, first: bool) -> TrialResult:
    """Subspace labels on planted real and neutrosophic generators, and subgroup closure of a group scan."""
    L = nspace.ClassificationLabel
    V = smp.random_space(rng, field)
    real, neutro = _real_vector(rng, V), _neutro_vector(rng, V)
    cases = [
        ([real], None, L.PSEUDO_STRONG),
        ([neutro], None, L.STRONG),
        ([real, neutro], [field.real()] * V.n, L.SPECIAL),
        ([real], [field.real()] * V.n, L.PSEUDO_STRONG),
    ]
    R = _space(rng, field.real(), field, V.n)
    cases_r1 = [([_real_vector(rng, R)], L.PSEUDO_REAL), ([_neutro_vector(rng, R)], L.NEUTROSOPHIC)]
    for gens, context, label in cases:
        c = nspace.subspace_classify(nspace.Subspace.spanned_by(V, gens), V, context)
        if set(c.labels) != {label}:
            return _fail(f"span of {', '.join(str(g) for g in gens)} labelled {c.overall}, expected {label.value}")
    for gens, label in cases_r1:
        c = nspace.subspace_classify(nspace.Subspace.spanned_by(R, gens), R)
        if set(c.labels) != {label}:
            return _fail(f"span of {gens[0]} labelled {c.overall}, expected {label.value}")
    n = rng.randint(2, 8)
    for elements, _ in group_scan(n, ScanOperation.ADDITIVE).subgroups:
        members = set(elements)
        for (a, b), (c, d) in itertools.product(elements, repeat=2):
            if ((a + c) % n, (b + d) % n) not in members:
                return _fail(f"listed subgroup of <Z{n} U I> is not closed")
    return PASSED


@dataclass(frozen=True)
class SuiteSpec:
    description: str
    trial: Callable[[random.Random, FieldDescriptor, int, bool], TrialResult]
    orderable_only: bool = False


SUITE_SPECS: dict[str, SuiteSpec] = {
    "ring-axioms": SuiteSpec(
        "N(K) is a commutative ring with I*I = I, and both evaluation maps are ring homomorphisms",
        ring_axioms_trial),
    "split-commutation": SuiteSpec(
        "slot evaluation commutes with scalar and polynomial operations, det, charpoly, inverse and minpoly",
        split_commutation_trial),
    "rank-nullity": SuiteSpec(
        "rank + nullity = dim per component and slot for linear maps of n-fold spaces",
        rank_nullity_trial),
    "cayley-hamilton": SuiteSpec(
        "every square matrix satisfies its characteristic polynomial; the minimal polynomial divides it slotwise",
        cayley_hamilton_trial),
    "dual-reconstruction": SuiteSpec(
        "dual bases satisfy f_i(a_j) = delta_ij and rebuild vectors and functionals; "
        "dim W + dim W° = dim V; rank of the transpose equals rank",
        dual_reconstruction_trial),
    "gram-schmidt": SuiteSpec(
        "Gram-Schmidt output is pairwise orthogonal and preserves every prefix span",
        gram_schmidt_trial, orderable_only=True),
    "bessel": SuiteSpec(
        "Bessel's inequality holds slotwise with equality on the span; best approximation is order-independent; "
        "projections are idempotent",
        bessel_trial, orderable_only=True),
    "taxonomy": SuiteSpec(
        "subspace labels follow the scalar context and neutrosophic content; listed subgroups are closed",
        taxonomy_trial),
}


def suite_from_job(job: Job) -> VerifySuite:
    if job.suite not in SUITE_SPECS:
        raise UnknownSuite(f"{job.suite!r}, known: {', '.join(SUITES)}")
    if job.seed is None:
        raise ParseError("verify needs --seed", expected="--seed <integer>")
    fields = job.fields or None
    return VerifySuite(name=job.suite, seed=job.seed, trials=job.trials,
                       **({"fields": fields} if fields else {}))


def _run_trial(spec: SuiteSpec, suite: VerifySuite, fields: list[FieldDescriptor], k: int) -> TrialResult:
    rng = random.Random(suite.seed * 1_000_003 + k)
    field = fields[k % len(fields)]
    try:
        return spec.trial(rng, field, k, k < len(fields))
    except VerificationFailed as e:
        return _fail(e.headline())


def run_suite(suite: VerifySuite, parallel: bool = False) -> list[str]:
    """Runs the trials and returns the report; raises VerificationFailed carrying it on any failure."""
    spec = SUITE_SPECS.get(suite.name)
    if spec is None:
        raise UnknownSuite(suite.name)
    fields = [FieldDescriptor.from_tag(t).full() for t in suite.fields]
    if spec.orderable_only:
        fields = [f for f in fields if f.base.is_rational] or [FieldDescriptor.rationals()]
    ks = range(suite.trials)
    if parallel:
        with ThreadPoolExecutor(max_workers=config.WORKERS) as pool:
            results = list(pool.map(lambda k: _run_trial(spec, suite, fields, k), ks))
    else:
        results = [_run_trial(spec, suite, fields, k) for k in ks]
    counts = {status: sum(r.status is status for r in results) for status in Status}
    lines = [
        f"suite {suite.name} seed={suite.seed} trials={suite.trials}",
        f"property: {spec.description}",
        "fields " + ", ".join(f.tag for f in fields),
        f"pass {counts[Status.PASS]} fail {counts[Status.FAIL]} expected-error {counts[Status.EXPECTED_ERROR]}",
    ]
    first_fail = next((r for r in results if r.status is Status.FAIL), None)
    if first_fail is None:
        return lines
    lines.append(f"first counterexample: {first_fail.detail}")
    err = VerificationFailed(f"suite={suite.name} failures={counts[Status.FAIL]}")
    err.report = lines
    raise err
