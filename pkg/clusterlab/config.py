"""
Runtime configuration for clusterlab.

Values come from the environment (CLUSTER_*), with a project-root .env loaded
first. CLI flags and API query parameters override them per run.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

ROOT = Path(__file__).resolve().parent.parent
load_dotenv(ROOT / ".env")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


MAX_SEEDS = _int_env("CLUSTER_MAX_SEEDS", 10000)
DEFAULT_DEPTH = _int_env("CLUSTER_DEFAULT_DEPTH", 1)
SAMPLE_RETRIES = _int_env("CLUSTER_SAMPLE_RETRIES", 50)
WEYL_CAP = _int_env("CLUSTER_WEYL_CAP", 10000)

LOG_LEVEL = os.getenv("CLUSTER_LOG_LEVEL", "INFO").upper()
LOG_DIR = Path(os.getenv("CLUSTER_LOG_DIR", str(ROOT / "logs")))
LOG_TO_FILE = os.getenv("CLUSTER_LOG_TO_FILE", "0").lower() in ("1", "true", "yes")
