import pytest

from src.jobs.commands import FAMILY_BUILDERS, build_report
from src.jobs.graph import FAMILIES
from src.jobs.graph import app as job_app
from src.jobs.graph import run_job
from src.jobs.router import COMMAND_FAMILIES, Job
from src.neutro.errors import MisroutedJob


def run_graph_and_get_final_state(command: str, *documents: str, **flags) -> dict:
    """
    Helper function to stream a job through the graph and get the final update.
    """
    inputs = {"job": Job(command=command, documents=list(documents), **flags),
              "inputs": {}, "lines": [], "error": None}
    final_state = None
    visited = []
    for event in job_app.stream(inputs):
        visited.extend(event.keys())
        final_state = event

    if not final_state:
        pytest.fail("The graph did not produce a final state.")

    # The last event is keyed by the format_report node.
    assert visited[-1] == "format_report"
    return {**list(final_state.values())[0], "visited": visited}


def test_matrix_route():
    result = run_graph_and_get_final_state("charpoly", "[[I,0],[2,2]]@N(Z3)")
    assert result["visited"] == ["parse_inputs", "route_job", "matrix", "format_report"]
    assert result["exit_code"] == 0
    assert result["report"] == "x^2 + (2I+1)x + 2I"


def test_spectral_route():
    result = run_graph_and_get_final_state("eigvecs", "[[I,0],[2,2]]@N(Z3)", value="2")
    assert "spectral" in result["visited"]
    assert result["report"].splitlines() == ["value 2", "vectors 1", "(0,1)"]


def test_domain_error_exits_with_one():
    result = run_graph_and_get_final_state("inverse", "[[I,0],[0,1]]@N(Z3)")
    assert result["exit_code"] == 1
    assert result["report"] == "Singular slot=0"


def test_parse_error_skips_the_family_nodes():
    result = run_graph_and_get_final_state("det", "[[I,0],[2,]]@N(Z3)")
    assert result["visited"] == ["parse_inputs", "format_report"]
    assert result["exit_code"] == 2
    assert result["report"].startswith("ParseError line=1 col=11")


def test_missing_flag_is_a_parse_error():
    code, report = run_job(Job(command="eigvecs", documents=["[[1]]@N(Q)"]))
    assert code == 2
    assert report.startswith("ParseError")


def test_wrong_document_count():
    code, report = run_job(Job(command="gcd", documents=["x@N(Q)"]))
    assert code == 2
    assert "gcd takes 2 document(s), got 1" in report


def test_documents_can_be_files(tmp_path):
    path = tmp_path / "a.json"
    path.write_text('{"field": "N(Z3)", "rows": [["I", "0"], ["2", "2"]]}', encoding="utf-8")
    assert run_job(Job(command="det", documents=[str(path)])) == (0, "2I")


def test_space_route():
    doc = '{"space": {"components": [{"shape": "tuple:2", "scalars": "N(Z3)"}]}, "vectors": [["(1,0)"], ["(I,1)"]]}'
    code, report = run_job(Job(command="basis", documents=[doc]))
    assert code == 0
    assert report.splitlines() == ["component 1 dim 2", "  (1,0)", "  (I,1)"]


def test_each_family_node_owns_exactly_its_routed_commands():
    assert set(FAMILIES) == set(COMMAND_FAMILIES.values())
    for family, builders in FAMILY_BUILDERS.items():
        assert set(builders) == {c for c, f in COMMAND_FAMILIES.items() if f == family}


def test_family_node_refuses_other_families_commands():
    job = Job(command="groupscan", modulus=4)
    assert build_report(job, {}, family="scan")[:2] == ["AdditiveModN n=4", "order 16"]
    with pytest.raises(MisroutedJob) as exc:
        build_report(job, {}, family="matrix")
    assert exc.value.headline() == "MisroutedJob groupscan is not a matrix command"
