"""
Structured logging for generation, rendering and analysis runs.

Every record is one JSON object (sorted keys) so batch runs can be grepped
and diffed. Records go to stderr and never touch generated artifacts.
"""

import json
import logging
import sys
import time
from contextlib import contextmanager
from typing import Any, Dict, Optional

from omviz.config.settings import LOG_LEVEL

ROOT_LOGGER = "omviz"

_configured = False


def configure_logging(level: Optional[str] = None) -> None:
    """Attach one stderr handler to the package root logger (idempotent)."""
    global _configured
    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO))
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        "%(asctime)s [%(levelname)s] %(name)s: %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
    ))
    root.addHandler(handler)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def log_structured(logger: logging.Logger, level: str, event: str, **fields: Any) -> None:
    if not logger.isEnabledFor(getattr(logging, level.upper())):
        return
    payload = {"event": event, **fields}
    getattr(logger, level)(json.dumps(payload, default=str, sort_keys=True))


class StructuredLogger:
    """Component logger that stamps every record with its context."""

    def __init__(self, component: str, run_id: Optional[str] = None, **context: Any):
        self.logger = get_logger(component)
        self.component = component
        self.run_id = run_id
        self._context: Dict[str, Any] = {"component": component, "run_id": run_id, **context}

    def bind(self, **context: Any) -> "StructuredLogger":
        """Child logger carrying extra fields, e.g. the master seed of a study build."""
        merged = {k: v for k, v in self._context.items() if k not in ("component", "run_id")}
        return StructuredLogger(self.component, self.run_id, **{**merged, **context})

    def _log(self, level: str, event: str, **fields: Any) -> None:
        data = {k: v for k, v in {**self._context, **fields}.items() if v is not None}
        log_structured(self.logger, level, event, **data)

    def info(self, event: str, **fields: Any) -> None:
        self._log("info", event, **fields)

    def error(self, event: str, **fields: Any) -> None:
        self._log("error", event, **fields)

    def warning(self, event: str, **fields: Any) -> None:
        self._log("warning", event, **fields)

    def debug(self, event: str, **fields: Any) -> None:
        self._log("debug", event, **fields)


@contextmanager
def log_operation(logger: StructuredLogger, operation: str, **context: Any):
    """operation_start, then operation_complete or operation_failed with duration_ms."""
    start = time.perf_counter()
    logger.info("operation_start", operation=operation, **context)
    try:
        yield
    except Exception as exc:
        logger.error("operation_failed", operation=operation,
                     duration_ms=int((time.perf_counter() - start) * 1000),
                     error=str(exc), error_type=type(exc).__name__, **context)
        raise
    logger.info("operation_complete", operation=operation,
                duration_ms=int((time.perf_counter() - start) * 1000), status="success", **context)
