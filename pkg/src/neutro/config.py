import os
import sys
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# --- Configuration ---
SCAN_LIMIT = int(os.getenv("NEUTRO_SCAN_LIMIT", "64"))
TRACE = os.getenv("NEUTRO_TRACE", "0") == "1"
DEFAULT_TRIALS = int(os.getenv("NEUTRO_DEFAULT_TRIALS", "100"))
SIMILARITY_TRIES = int(os.getenv("NEUTRO_SIMILARITY_TRIES", "256"))
WORKERS = int(os.getenv("NEUTRO_WORKERS", "4"))
CORPUS_PATH = Path(
    os.getenv("NEUTRO_CORPUS_PATH", str(Path(__file__).resolve().parent.parent / "corpus_fixtures.json"))
)


def trace(message: str) -> None:
    """Print a pipeline trace marker to stderr when NEUTRO_TRACE=1."""
    if TRACE:
        print(message, file=sys.stderr)
