"""
Structured logging for clusterlab.

- Configurable level (DEBUG, INFO, WARNING, ERROR)
- Optional file log under CLUSTER_LOG_DIR
- Console handler on stderr so JSON reports on stdout stay clean
- Helpers for mutation steps, seed enumeration, checks and suite results
"""

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from clusterlab.config import LOG_DIR, LOG_LEVEL, LOG_TO_FILE


def _ts() -> str:
    return datetime.now(timezone.utc).replace(tzinfo=None).isoformat() + "Z"


def configure_logging(
    level: str = LOG_LEVEL,
    log_dir: Optional[Path] = None,
    log_to_console: bool = True,
    log_to_file: bool = LOG_TO_FILE,
) -> None:
    """Configure root and clusterlab loggers. Call once per process."""
    level_value = getattr(logging, level.upper(), logging.INFO)

    root = logging.getLogger()
    root.setLevel(level_value)
    # Avoid duplicate handlers when reconfiguring
    for h in list(root.handlers):
        root.removeHandler(h)

    if log_to_file:
        log_dir = log_dir or LOG_DIR
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_dir / "clusterlab.log", encoding="utf-8")
        file_handler.setLevel(level_value)
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s | %(levelname)s | %(name)s | %(message)s")
        )
        root.addHandler(file_handler)
    if log_to_console:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(level_value)
        console.setFormatter(logging.Formatter("%(levelname)s | %(name)s | %(message)s"))
        root.addHandler(console)

    logging.getLogger("clusterlab").setLevel(level_value)


def get_logger(name: str) -> logging.Logger:
    """Return a logger for the given module (e.g. clusterlab.services.cluster_engine)."""
    return logging.getLogger(name)


def log_mutation_step(
    logger: logging.Logger,
    vertex: int,
    path: tuple[int, ...],
    terms: int,
    duration_sec: Optional[float] = None,
    success: bool = True,
    error: Optional[str] = None,
) -> None:
    """Log one state mutation (vertex, resulting path, size of the new variable)."""
    payload = {
        "event": "mutation",
        "vertex": vertex,
        "path": list(path),
        "terms": terms,
        "duration_sec": duration_sec,
        "success": success,
        "error": error,
        "ts": _ts(),
    }
    if success:
        logger.debug("Mutation: %s", json.dumps(payload, default=str))
    else:
        logger.warning("Mutation: %s", json.dumps(payload, default=str))


def log_enumeration(
    logger: logging.Logger,
    depth: int,
    states: int,
    duration_sec: Optional[float] = None,
    extra: Optional[dict[str, Any]] = None,
) -> None:
    """Log a finished seed enumeration."""
    payload = {
        "event": "enumeration",
        "depth": depth,
        "states": states,
        "duration_sec": duration_sec,
        "ts": _ts(),
    }
    if extra:
        payload.update(extra)
    logger.info("Enumeration: %s", json.dumps(payload, default=str))


def log_check_result(
    logger: logging.Logger,
    suite: str,
    check_id: str,
    passed: bool,
    duration_sec: Optional[float] = None,
    error: Optional[str] = None,
) -> None:
    """Log a single acceptance check."""
    payload = {
        "event": "check",
        "suite": suite,
        "check_id": check_id,
        "passed": passed,
        "duration_sec": duration_sec,
        "error": error,
        "ts": _ts(),
    }
    level = logging.INFO if passed else logging.WARNING
    logger.log(level, "Check: %s", json.dumps(payload, default=str))


def log_suite_result(
    logger: logging.Logger,
    suite: str,
    total: int,
    failed: int,
    duration_sec: Optional[float] = None,
) -> None:
    """Log an aggregated suite run."""
    payload = {
        "event": "suite",
        "suite": suite,
        "total": total,
        "failed": failed,
        "duration_sec": duration_sec,
        "ts": _ts(),
    }
    level = logging.WARNING if failed else logging.INFO
    logger.log(level, "Suite: %s", json.dumps(payload, default=str))
