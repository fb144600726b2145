from typing import Literal

from pydantic import BaseModel, Field, field_validator

from src.neutro import config

Command = Literal[
    # matrices and polynomials
    "charpoly", "minpoly", "det", "inverse", "roots", "gcd", "divmod",
    # spectral
    "spectrum", "eigvecs", "tannihilator", "conductor", "decompose", "diagonalizable", "triangularizable",
    # n-fold spaces
    "kernel", "ranknullity", "transpose", "basis", "dim", "dualbasis", "annihilator", "directsum", "classify",
    # inner products
    "gramschmidt", "project", "complement", "splitcheck", "bessel", "positivity",
    # harness
    "groupscan", "verify", "corpus",
]

# Which graph node runs each command.
COMMAND_FAMILIES: dict[str, str] = {
    "charpoly": "matrix", "minpoly": "spectral", "det": "matrix", "inverse": "matrix",
    "roots": "poly", "gcd": "poly", "divmod": "poly",
    "spectrum": "spectral", "eigvecs": "spectral", "tannihilator": "spectral", "conductor": "spectral",
    "decompose": "spectral", "diagonalizable": "spectral", "triangularizable": "spectral",
    "kernel": "space", "ranknullity": "space", "transpose": "space", "basis": "space", "dim": "space",
    "dualbasis": "space", "annihilator": "space", "directsum": "space", "classify": "space",
    "gramschmidt": "inner", "project": "inner", "complement": "inner", "splitcheck": "inner",
    "bessel": "inner", "positivity": "inner",
    "groupscan": "scan", "verify": "verify", "corpus": "corpus",
}

SuiteName = Literal[
    "ring-axioms", "split-commutation", "rank-nullity", "cayley-hamilton",
    "dual-reconstruction", "gram-schmidt", "bessel", "taxonomy",
]


class Job(BaseModel):
    """One CLI invocation: a command plus its documents and flags."""
    command: Command
    documents: list[str] = Field(default_factory=list, description="File paths or inline literals, in order.")
    mode: Literal["dn", "primary", "rational", "jordan", "cyclic"] = "rational"
    value: str | None = Field(None, description="Scalar literal for eigvecs.")
    vector: str | None = Field(None, description="Tuple literal for tannihilator and conductor.")
    into: list[str] = Field(default_factory=list, description="Tuple literals spanning the invariant subspace of conductor.")
    modulus: int | None = None
    operation: Literal["add", "mul"] = "add"
    suite: str | None = None
    seed: int | None = None
    trials: int = Field(default_factory=lambda: config.DEFAULT_TRIALS, ge=1)
    fields: list[str] = Field(default_factory=list)
    fixtures: str | None = None
    parallel: bool = False

    @property
    def family(self) -> str:
        return COMMAND_FAMILIES[self.command]


class VerifySuite(BaseModel):
    """A named property suite; identical (name, seed, trials, fields) give identical reports."""
    name: SuiteName
    seed: int = Field(..., ge=0, lt=2 ** 64)
    trials: int = Field(..., ge=1)
    fields: list[str] = Field(default_factory=lambda: ["N(Z2)", "N(Z3)", "N(Z5)", "N(Q)"])

    @field_validator("fields")
    @classmethod
    def _known_tags(cls, tags: list[str]) -> list[str]:
        from src.neutro.scalars import FieldDescriptor

        for t in tags:
            FieldDescriptor.from_tag(t)
        return tags
