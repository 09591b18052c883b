"""Logging setup, structured events and in-process timing metrics."""

from __future__ import annotations

import json
import logging
import sys
import threading
import time
from collections import defaultdict
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any

import mpmath

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(name)s: %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

_OBSERVABILITY_LOGGER = logging.getLogger("translated.observability")

_metrics_lock = threading.Lock()
_counters: dict[str, int] = defaultdict(int)
_latency_histograms: dict[str, list[float]] = defaultdict(list)
_handler: logging.Handler | None = None


class _StderrHandler(logging.StreamHandler):  # type: ignore[type-arg]
    """Stream handler bound to whatever ``sys.stderr`` is at emit time."""

    @property  # type: ignore[override]
    def stream(self) -> Any:
        return sys.stderr

    @stream.setter
    def stream(self, value: Any) -> None:
        pass


def configure_logging(level: int | str = logging.WARNING) -> logging.Logger:
    """Attach a single stderr handler to the ``translated`` logger tree."""

    global _handler
    logger = logging.getLogger("translated")
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            raise ValueError(f"Unknown log level: {level}")
    logger.setLevel(level)
    if _handler is None:
        _handler = _StderrHandler()
        _handler.setFormatter(logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT))
        logger.addHandler(_handler)
    return logger


def _jsonable(value: Any) -> Any:
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, 15)
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    return value


def format_event(event: str, **fields: Any) -> str:
    """Render ``event`` and ``fields`` as one compact JSON line."""

    payload = {"event": event, **{key: _jsonable(val) for key, val in fields.items()}}
    return json.dumps(payload, separators=(",", ":"), default=str)


def log_event(
    logger: logging.Logger,
    event: str,
    *,
    level: int = logging.INFO,
    **fields: Any,
) -> None:
    """Emit a structured JSON log line if ``level`` is enabled."""

    if logger.isEnabledFor(level):
        logger.log(level, format_event(event, **fields))


def increment(name: str, amount: int = 1) -> None:
    """Bump the counter ``name``."""

    with _metrics_lock:
        _counters[name] += amount


@contextmanager
def timed(name: str, logger: logging.Logger | None = None) -> Iterator[None]:
    """Record the wall time of the enclosed block under ``name``."""

    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed_ms = (time.perf_counter() - start) * 1000
        with _metrics_lock:
            _latency_histograms[name].append(elapsed_ms)
            _counters[f"{name}.calls"] += 1
        log_event(
            logger or _OBSERVABILITY_LOGGER,
            "timing",
            level=logging.DEBUG,
            name=name,
            elapsed_ms=round(elapsed_ms, 3),
        )


def get_metrics() -> dict[str, Any]:
    """Return a snapshot of counters and timing summaries."""

    with _metrics_lock:
        timings = {
            name: {
                "count": len(samples),
                "total_ms": sum(samples),
                "max_ms": max(samples),
            }
            for name, samples in _latency_histograms.items()
            if samples
        }
        return {"counters": dict(_counters), "timings": timings}


def reset_metrics() -> None:
    """Clear all counters and timings."""

    with _metrics_lock:
        _counters.clear()
        _latency_histograms.clear()


__all__ = [
    "LOG_DATE_FORMAT",
    "LOG_FORMAT",
    "configure_logging",
    "format_event",
    "get_metrics",
    "increment",
    "log_event",
    "reset_metrics",
    "timed",
]
