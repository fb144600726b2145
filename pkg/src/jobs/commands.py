"""
Per-command input loading and report builders.

Each builder takes the validated Job and its parsed inputs and returns the
report lines in the canonical grammar. Errors propagate as NeutroError.
"""
from __future__ import annotations

from pathlib import Path
from typing import Any, Callable

from src.jobs import parse
from src.jobs.router import Job
from src.neutro import inner, nspace, spectral
from src.neutro.errors import MisroutedJob, ParseError
from src.neutro.matrix import m_charpoly, m_det, m_inverse
from src.neutro.poly import p_divmod, p_gcd, p_roots
from src.neutro.scalars import ScanOperation, group_scan

# Document kinds each command reads, in positional order.
INPUTS: dict[str, tuple[str, ...]] = {
    **{c: ("matrix",) for c in (
        "charpoly", "minpoly", "det", "inverse", "spectrum", "eigvecs", "tannihilator",
        "conductor", "decompose", "diagonalizable", "triangularizable")},
    "roots": ("poly",),
    "gcd": ("poly", "poly"),
    "divmod": ("poly", "poly"),
    **{c: ("map",) for c in ("kernel", "ranknullity", "transpose")},
    **{c: ("vectors",) for c in (
        "basis", "dim", "dualbasis", "annihilator", "directsum", "classify",
        "gramschmidt", "project", "complement", "splitcheck", "bessel", "positivity")},
    "groupscan": (),
    "verify": (),
    "corpus": (),
}

_PARSERS: dict[str, Callable[[str], Any]] = {
    "matrix": parse.parse_matrix,
    "poly": parse.parse_poly,
    "map": parse.parse_map,
    "vectors": parse.parse_vectors,
}


def read_document(document: str) -> str:
    """A document argument is a file path when such a file exists, otherwise the literal itself."""
    try:
        path = Path(document)
        if path.is_file():
            return path.read_text(encoding="utf-8")
    except (OSError, ValueError):
        pass
    return document


def load_inputs(job: Job) -> dict[str, Any]:
    kinds = INPUTS[job.command]
    if len(job.documents) != len(kinds):
        raise ParseError(f"{job.command} takes {len(kinds)} document(s), got {len(job.documents)}",
                         expected=" ".join(kinds) or "no documents")
    docs = [_PARSERS[k](read_document(d)) for k, d in zip(kinds, job.documents)]
    inputs: dict[str, Any] = {"documents": docs}
    if kinds and kinds[0] == "matrix":
        A = docs[0]
        if job.command == "eigvecs":
            if job.value is None:
                raise ParseError("eigvecs needs --value", expected="scalar literal")
            inputs["value"] = parse.parse_scalar(job.value, A.field)
        if job.command in ("tannihilator", "conductor"):
            if job.vector is None:
                raise ParseError(f"{job.command} needs --vector", expected="tuple literal")
            inputs["vector"] = parse.parse_tuple(job.vector, A.field)
            inputs["into"] = [parse.parse_tuple(w, A.field) for w in job.into]
    return inputs


# --- matrices and polynomials ---

def _charpoly(job: Job, inputs: dict) -> list[str]:
    return [str(m_charpoly(inputs["documents"][0]))]


def _det(job: Job, inputs: dict) -> list[str]:
    return [str(m_det(inputs["documents"][0]))]


def _inverse(job: Job, inputs: dict) -> list[str]:
    return [str(m_inverse(inputs["documents"][0]))]


def _roots(job: Job, inputs: dict) -> list[str]:
    return ["roots {" + ", ".join(str(r) for r in p_roots(inputs["documents"][0])) + "}"]


def _gcd(job: Job, inputs: dict) -> list[str]:
    f, g = inputs["documents"]
    return [f"gcd {p_gcd(f, g)}"]


def _divmod(job: Job, inputs: dict) -> list[str]:
    f, d = inputs["documents"]
    q, r = p_divmod(f, d)
    return [f"quotient {q}", f"remainder {r}"]


# --- spectral ---

def _minpoly(job: Job, inputs: dict) -> list[str]:
    return spectral.minpoly(inputs["documents"][0]).lines()


def _spectrum(job: Job, inputs: dict) -> list[str]:
    return spectral.spectrum(inputs["documents"][0]).lines()


def _eigvecs(job: Job, inputs: dict) -> list[str]:
    A, c = inputs["documents"][0], inputs["value"]
    vectors = spectral.eigvecs(A, c)
    return [f"value {c}", f"vectors {len(vectors)}"] + [spectral.format_vector(v) for v in vectors]


def _tannihilator(job: Job, inputs: dict) -> list[str]:
    A, v = inputs["documents"][0], inputs["vector"]
    return spectral.t_annihilator(A, v).lines("annihilator") + spectral.cyclic_basis(A, v).lines()


def _conductor(job: Job, inputs: dict) -> list[str]:
    A = inputs["documents"][0]
    return spectral.t_conductor(A, inputs["vector"], inputs["into"]).lines("conductor")


_DECOMPOSITIONS = {
    "dn": spectral.dn_decompose,
    "primary": spectral.primary_decomposition,
    "rational": spectral.rational_form,
    "jordan": spectral.jordan_form,
    "cyclic": spectral.cyclic,
}


def _decompose(job: Job, inputs: dict) -> list[str]:
    return _DECOMPOSITIONS[job.mode](inputs["documents"][0]).lines()


def _diagonalizable(job: Job, inputs: dict) -> list[str]:
    return spectral.diagonalizable(inputs["documents"][0]).lines("diagonalizable")


def _triangularizable(job: Job, inputs: dict) -> list[str]:
    return spectral.triangularizable(inputs["documents"][0]).lines("triangularizable")


# --- n-fold spaces ---

def _kernel(job: Job, inputs: dict) -> list[str]:
    vectors = nspace.kernel_basis(inputs["documents"][0])
    return [f"kernel {len(vectors)}"] + [str(v) for v in vectors]


def _ranknullity(job: Job, inputs: dict) -> list[str]:
    return nspace.rank_nullity(inputs["documents"][0]).lines()


def _transpose(job: Job, inputs: dict) -> list[str]:
    return nspace.transpose_map(inputs["documents"][0]).lines()


def _basis(job: Job, inputs: dict) -> list[str]:
    return nspace.nbasis(inputs["documents"][0].vectors).lines()


def _dim(job: Job, inputs: dict) -> list[str]:
    return [f"dim {nspace.space_dim(inputs['documents'][0].space)}"]


def _dualbasis(job: Job, inputs: dict) -> list[str]:
    B = nspace.nbasis(inputs["documents"][0].vectors)
    out = []
    for i, functionals in enumerate(nspace.dual_basis(B)):
        out.append(f"component {i + 1}")
        out.extend(f"  {f}" for f in functionals)
    return out


def _annihilator(job: Job, inputs: dict) -> list[str]:
    doc = inputs["documents"][0]
    return nspace.annihilator(nspace.Subspace.spanned_by(doc.space, doc.vectors)).lines()


def _directsum(job: Job, inputs: dict) -> list[str]:
    doc = inputs["documents"][0]
    if not doc.subspaces:
        raise ParseError("directsum needs a \"subspaces\" list", expected="subspaces")
    return nspace.direct_sum_check(doc.subspaces).lines()


def _classify(job: Job, inputs: dict) -> list[str]:
    doc = inputs["documents"][0]
    W = nspace.Subspace.spanned_by(doc.space, doc.vectors)
    return nspace.subspace_classify(W, doc.space, doc.context).lines()


# --- inner products ---

def _require_beta(doc: parse.VectorList, command: str):
    if doc.beta is None:
        raise ParseError(f"{command} needs a \"beta\" vector", expected="beta")
    return doc.beta


def _gramschmidt(job: Job, inputs: dict) -> list[str]:
    return [str(v) for v in inner.gram_schmidt(inputs["documents"][0].vectors)]


def _project(job: Job, inputs: dict) -> list[str]:
    doc = inputs["documents"][0]
    return [f"projection {inner.best_approx(_require_beta(doc, 'project'), doc.vectors)}"]


def _complement(job: Job, inputs: dict) -> list[str]:
    doc = inputs["documents"][0]
    return inner.orth_complement(doc.vectors, doc.space).lines()


def _splitcheck(job: Job, inputs: dict) -> list[str]:
    return inner.split_check(inputs["documents"][0].vectors).lines()


def _bessel(job: Job, inputs: dict) -> list[str]:
    doc = inputs["documents"][0]
    return inner.bessel_check(_require_beta(doc, "bessel"), doc.vectors).lines()


def _positivity(job: Job, inputs: dict) -> list[str]:
    out = []
    for v in inputs["documents"][0].vectors:
        out.append(f"vector {v}")
        out.extend(f"  {line}" for line in inner.positivity(v).lines())
    return out


# --- harness ---

def _groupscan(job: Job, inputs: dict) -> list[str]:
    if job.modulus is None:
        raise ParseError("groupscan needs a modulus", expected="integer n")
    op = ScanOperation.ADDITIVE if job.operation == "add" else ScanOperation.MULTIPLICATIVE
    return group_scan(job.modulus, op).lines()


def _verify(job: Job, inputs: dict) -> list[str]:
    from src.jobs.verify import run_suite, suite_from_job

    return run_suite(suite_from_job(job), parallel=job.parallel)


def _corpus(job: Job, inputs: dict) -> list[str]:
    from src.jobs.corpus import run_corpus

    return run_corpus(job.fixtures, parallel=job.parallel)


Builder = Callable[[Job, dict], list[str]]

# Report builders grouped by the graph node that runs them.
FAMILY_BUILDERS: dict[str, dict[str, Builder]] = {
    "matrix": {"charpoly": _charpoly, "det": _det, "inverse": _inverse},
    "poly": {"roots": _roots, "gcd": _gcd, "divmod": _divmod},
    "spectral": {
        "minpoly": _minpoly, "spectrum": _spectrum, "eigvecs": _eigvecs, "tannihilator": _tannihilator,
        "conductor": _conductor, "decompose": _decompose,
        "diagonalizable": _diagonalizable, "triangularizable": _triangularizable,
    },
    "space": {
        "kernel": _kernel, "ranknullity": _ranknullity, "transpose": _transpose, "basis": _basis, "dim": _dim,
        "dualbasis": _dualbasis, "annihilator": _annihilator, "directsum": _directsum, "classify": _classify,
    },
    "inner": {
        "gramschmidt": _gramschmidt, "project": _project, "complement": _complement,
        "splitcheck": _splitcheck, "bessel": _bessel, "positivity": _positivity,
    },
    "scan": {"groupscan": _groupscan},
    "verify": {"verify": _verify},
    "corpus": {"corpus": _corpus},
}


def build_report(job: Job, inputs: dict, family: str | None = None) -> list[str]:
    """Runs the job's builder from ``family``'s table (the job's own family by default)."""
    family = family or job.family
    builders = FAMILY_BUILDERS[family]
    if job.command not in builders:
        raise MisroutedJob(f"{job.command} is not a {family} command")
    return builders[job.command](job, inputs)
