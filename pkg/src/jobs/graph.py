from langgraph.graph import END, StateGraph

from src.jobs import commands
from src.jobs.router import Job
from src.jobs.state import JobState
from src.neutro.config import trace
from src.neutro.errors import NeutroError, ParseError

FAMILIES = tuple(commands.FAMILY_BUILDERS)


# --- Node Functions ---

def parse_inputs_node(state: JobState) -> dict:
    """Reads and parses the job's documents."""
    trace("---NODE: PARSE INPUTS---")
    try:
        return {"inputs": commands.load_inputs(state["job"]), "error": None}
    except NeutroError as e:
        return {"inputs": {}, "error": e}


def route_job_node(state: JobState) -> dict:
    """Picks the family node that runs the command."""
    trace("---NODE: ROUTE JOB---")
    family = state["job"].family
    trace(f"---ROUTE: {family}---")
    return {"family": family}


def _family_node(name: str):
    def run(state: JobState) -> dict:
        trace(f"---NODE: RUN {name.upper()}---")
        try:
            return {"lines": commands.build_report(state["job"], state["inputs"], family=name)}
        except NeutroError as e:
            return {"lines": [], "error": e}

    run.__name__ = f"run_{name}_node"
    return run


def format_report_node(state: JobState) -> dict:
    """Joins the report lines, or renders the error, and sets the exit code."""
    trace("---NODE: FORMAT REPORT---")
    error = state.get("error")
    if error is None:
        return {"report": "\n".join(state.get("lines", [])), "exit_code": 0}
    lines = [error.headline()] + list(error.report)
    return {"report": "\n".join(lines), "exit_code": 2 if isinstance(error, ParseError) else 1}


# --- Conditional Edges ---

def after_parse(state: JobState) -> str:
    return "format_report" if state.get("error") else "route_job"


def where_to_go(state: JobState) -> str:
    return state["family"]


# --- Graph Definition ---
workflow = StateGraph(JobState)

workflow.add_node("parse_inputs", parse_inputs_node)
workflow.add_node("route_job", route_job_node)
for family in FAMILIES:
    workflow.add_node(family, _family_node(family))
workflow.add_node("format_report", format_report_node)

workflow.set_entry_point("parse_inputs")

workflow.add_conditional_edges(
    "parse_inputs",
    after_parse,
    {"route_job": "route_job", "format_report": "format_report"},
)
workflow.add_conditional_edges("route_job", where_to_go, {family: family for family in FAMILIES})
for family in FAMILIES:
    workflow.add_edge(family, "format_report")
workflow.add_edge("format_report", END)

app = workflow.compile()


def run_job(job: Job) -> tuple[int, str]:
    """Runs one job through the graph and returns (exit code, report text)."""
    final = app.invoke({"job": job, "inputs": {}, "lines": [], "error": None})
    return final["exit_code"], final["report"]
