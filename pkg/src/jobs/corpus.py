"""
Regression corpus: worked examples and exercise matrices with frozen expected output.

A fixture passes when its expected lines occur, in order, in the computed
report. ``published`` fixtures carry values stated in the source text;
``oracle`` fixtures were computed once from the two slot images and frozen.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field

from src.jobs import commands, parse
from src.jobs.router import Command, Job
from src.neutro import config
from src.neutro.errors import FixtureMismatch, NeutroError


class Fixture(BaseModel):
    name: str
    command: Command
    documents: list[str] = Field(default_factory=list)
    options: dict[str, Any] = Field(default_factory=dict)
    expected: list[str] = Field(min_length=1)
    provenance: Literal["published", "oracle"]
    published: str | None = None
    discrepancy: bool = False
    note: str | None = None


class Corpus(BaseModel):
    fixtures: list[Fixture]


class FixtureResult(BaseModel):
    fixture: Fixture
    computed: list[str]
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and _in_order(self.fixture.expected, self.computed)

    def lines(self) -> list[str]:
        fx = self.fixture
        tag = f"{fx.name} [{fx.provenance}]"
        if self.passed:
            out = [f"PASS {tag} {fx.expected[0]}"]
        elif self.error is not None:
            out = [f"FAIL {tag}: expected {fx.expected[0]}, raised {self.error}"]
        else:
            missing = next(e for e in fx.expected if e not in self.computed)
            got = self.computed[0] if self.computed else "<empty>"
            out = [f"FAIL {tag}: expected {missing.strip()}, computed {got.strip()}"]
        if fx.published is not None:
            label = "KNOWN-DISCREPANCY published" if fx.discrepancy else "published"
            out.append(f"  {label}: {fx.published}")
        return out


def _in_order(expected: list[str], computed: list[str]) -> bool:
    it = iter(computed)
    return all(any(line == e for line in it) for e in expected)


def load_corpus(path: str | Path | None = None) -> Corpus:
    path = Path(path) if path else config.CORPUS_PATH
    data = parse.load_json(path.read_text(encoding="utf-8"))
    return parse.validate_document(Corpus, data)


def check_fixture(fx: Fixture) -> FixtureResult:
    job = Job(command=fx.command, documents=fx.documents, **fx.options)
    try:
        computed = commands.build_report(job, commands.load_inputs(job))
    except NeutroError as e:
        return FixtureResult(fixture=fx, computed=[], error=e.headline())
    return FixtureResult(fixture=fx, computed=computed)


def run_corpus(path: str | Path | None = None, parallel: bool = False) -> list[str]:
    """Checks every fixture; raises FixtureMismatch carrying the full report when any fails."""
    corpus = load_corpus(path)
    if parallel:
        with ThreadPoolExecutor(max_workers=config.WORKERS) as pool:
            results = list(pool.map(check_fixture, corpus.fixtures))
    else:
        results = [check_fixture(fx) for fx in corpus.fixtures]
    lines = []
    for r in results:
        lines.extend(r.lines())
    failed = [r.fixture.name for r in results if not r.passed]
    lines.append(f"fixtures {len(results)} pass {len(results) - len(failed)} fail {len(failed)}")
    if failed:
        err = FixtureMismatch(", ".join(failed))
        err.report = lines
        raise err
    return lines
