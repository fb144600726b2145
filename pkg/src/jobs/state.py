from typing import Any, TypedDict

from src.jobs.router import Job
from src.neutro.errors import NeutroError


class JobState(TypedDict, total=False):
    """
    Defines the state for the job graph.
    This state is passed between all nodes in the graph.
    """
    job: Job
    inputs: dict[str, Any]
    family: str
    lines: list[str]
    error: NeutroError | None
    # Filled by format_report
    report: str
    exit_code: int
