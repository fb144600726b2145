import json

import pytest

from src.jobs.corpus import Fixture, check_fixture, load_corpus, run_corpus
from src.neutro.errors import FixtureMismatch, ParseError

CHARPOLY = {
    "name": "b-z3",
    "command": "charpoly",
    "documents": ["[[I,0],[2,2]]@N(Z3)"],
    "expected": ["x^2 + (2I+1)x + 2I"],
    "provenance": "published",
    "published": "x^2 + (2I+1)x + 2I",
}


def write_corpus(tmp_path, *fixtures):
    path = tmp_path / "fixtures.json"
    path.write_text(json.dumps({"fixtures": list(fixtures)}), encoding="utf-8")
    return path


def test_shipped_corpus_passes():
    lines = run_corpus()
    assert lines[-1] == "fixtures 19 pass 19 fail 0"
    assert not any(line.startswith("FAIL") for line in lines)
    assert any("KNOWN-DISCREPANCY published" in line for line in lines)


def test_expected_lines_match_in_order(tmp_path):
    scan = {
        "name": "scan", "command": "groupscan", "options": {"modulus": 4, "operation": "add"},
        "expected": ["order 16", "is_group true"], "provenance": "oracle",
    }
    assert run_corpus(write_corpus(tmp_path, scan))[0] == "PASS scan [oracle] order 16"
    reversed_scan = {**scan, "name": "reversed", "expected": ["is_group true", "order 16"]}
    assert not check_fixture(Fixture(**reversed_scan)).passed


def test_mismatch_raises_with_the_report(tmp_path):
    wrong = {**CHARPOLY, "name": "wrong", "expected": ["x^2 + x + 1"]}
    with pytest.raises(FixtureMismatch) as exc:
        run_corpus(write_corpus(tmp_path, CHARPOLY, wrong))
    assert exc.value.headline() == "FixtureMismatch wrong"
    report = exc.value.report
    assert report[0] == "PASS b-z3 [published] x^2 + (2I+1)x + 2I"
    assert "FAIL wrong [published]: expected x^2 + x + 1, computed x^2 + (2I+1)x + 2I" in report
    assert report[-1] == "fixtures 2 pass 1 fail 1"


def test_domain_errors_fail_the_fixture():
    result = check_fixture(Fixture(**{**CHARPOLY, "command": "inverse", "documents": ["[[I,0],[0,1]]@N(Z3)"]}))
    assert not result.passed
    assert result.lines()[0].endswith("raised Singular slot=0")


def test_corpus_documents_are_validated(tmp_path):
    with pytest.raises(ParseError):
        load_corpus(write_corpus(tmp_path, {**CHARPOLY, "provenance": "guess"}))
    with pytest.raises(ParseError):
        load_corpus(write_corpus(tmp_path, {**CHARPOLY, "expected": []}))
