"""
Command-line front end: ``python -m src.main <command> [documents] [flags]``.

Documents are file paths or inline literals, e.g.
    python -m src.main charpoly "[[I,0],[2,2]]@N(Z3)"
    python -m src.main groupscan 4 add
    python -m src.main verify rank-nullity --seed 1 --trials 200
Exit codes: 0 success, 1 domain error, 2 parse or usage error.
"""
import argparse
import sys

from pydantic import ValidationError

from src.jobs.commands import INPUTS
from src.jobs.graph import run_job
from src.jobs.router import Job

# --- Command Groups ---
MATRIX_COMMANDS = ("charpoly", "minpoly", "det", "inverse", "spectrum", "diagonalizable", "triangularizable")
POLY_COMMANDS = ("roots", "gcd", "divmod")
MAP_COMMANDS = ("kernel", "ranknullity", "transpose")
VECTOR_COMMANDS = ("basis", "dim", "dualbasis", "annihilator", "directsum", "classify",
                   "gramschmidt", "project", "complement", "splitcheck", "bessel", "positivity")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="neutro", description="Exact linear algebra over neutrosophic rings N(K).")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in MATRIX_COMMANDS:
        sub.add_parser(name, help=f"{name} of a square matrix").add_argument("matrix")
    for name in POLY_COMMANDS:
        p = sub.add_parser(name, help=f"{name} of polynomial literals")
        for k in range(len(INPUTS[name])):
            p.add_argument(f"poly{k + 1}")
    for name in MAP_COMMANDS:
        sub.add_parser(name, help=f"{name} of an n-fold linear map document").add_argument("map")
    for name in VECTOR_COMMANDS:
        sub.add_parser(name, help=f"{name} on an n-fold vectors document").add_argument("vectors")

    p = sub.add_parser("eigvecs", help="characteristic vectors for a value")
    p.add_argument("matrix")
    p.add_argument("--value", required=True)

    p = sub.add_parser("tannihilator", help="T-annihilator and cyclic basis of a vector")
    p.add_argument("matrix")
    p.add_argument("--vector", required=True)

    p = sub.add_parser("conductor", help="T-conductor of a vector into an invariant subspace")
    p.add_argument("matrix")
    p.add_argument("--vector", required=True)
    p.add_argument("--into", action="append", default=[], help="tuple literal spanning W; repeat for more")

    p = sub.add_parser("decompose", help="canonical decompositions per slot")
    p.add_argument("matrix")
    p.add_argument("--mode", choices=["dn", "primary", "rational", "jordan", "cyclic"], default="rational")

    p = sub.add_parser("groupscan", help="group-axiom scan of <Zn U I>")
    p.add_argument("modulus", type=int)
    p.add_argument("operation", choices=["add", "mul"])

    p = sub.add_parser("verify", help="seeded randomized property suite")
    p.add_argument("suite")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--fields", help="comma-separated field tags, e.g. N(Z2),N(Q)")
    p.add_argument("--parallel", action="store_true")

    p = sub.add_parser("corpus", help="run the regression fixtures")
    p.add_argument("--fixtures", help="fixture file (default from NEUTRO_CORPUS_PATH)")
    p.add_argument("--parallel", action="store_true")
    return parser


def job_from_args(args: argparse.Namespace) -> Job:
    command = args.command
    documents = [getattr(args, name) for name in ("matrix", "map", "vectors") if hasattr(args, name)]
    documents += [getattr(args, f"poly{k + 1}") for k in range(2) if hasattr(args, f"poly{k + 1}")]
    fields = {"command": command, "documents": documents}
    for name in ("value", "vector", "into", "mode", "modulus", "operation", "suite", "seed", "fixtures", "parallel"):
        if getattr(args, name, None) is not None:
            fields[name] = getattr(args, name)
    if getattr(args, "trials", None) is not None:
        fields["trials"] = args.trials
    if getattr(args, "fields", None):
        fields["fields"] = [t.strip() for t in args.fields.split(",") if t.strip()]
    return Job(**fields)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        job = job_from_args(args)
    except ValidationError as e:
        print(f"ParseError {e.errors()[0]['msg']}")
        return 2
    exit_code, report = run_job(job)
    print(report)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
