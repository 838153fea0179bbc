"""Structured logger helpers.

Every record carries ``event`` and ``scheme``; any other keyword passed to
:func:`log_event` is appended to the line as ``key=value`` in sorted order.
"""

from __future__ import annotations

import logging
from typing import Any

from ..core.settings import load_runtime_settings

_LOGGER_NAME = "CoLoc"
_DEFAULT_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s event=%(event)s scheme=%(scheme)s"
_RESERVED = frozenset(logging.LogRecord("", 0, "", 0, "", None, None).__dict__) | {"message", "asctime", "event", "scheme"}


class _StructuredFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        record.event = getattr(record, "event", "-")
        record.scheme = getattr(record, "scheme", "-")
        line = super().format(record)
        fields = sorted((key, value) for key, value in record.__dict__.items() if key not in _RESERVED)
        if not fields:
            return line
        head, sep, tail = line.partition("\n")
        extra = " ".join(f"{key}={value}" for key, value in fields)
        return f"{head} {extra}{sep}{tail}"


def get_logger(level: str | int | None = None) -> logging.Logger:
    """Project logger; ``level`` wins over ``COLOC_LOG_LEVEL``."""
    logger = logging.getLogger(_LOGGER_NAME)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(_StructuredFormatter(_DEFAULT_FORMAT))
        logger.addHandler(handler)
    logger.setLevel(level or load_runtime_settings().log_level.upper())
    logger.propagate = False
    return logger


def get_child_logger(name: str) -> logging.Logger:
    parent = logging.getLogger(_LOGGER_NAME)
    if not parent.handlers:
        get_logger()
    return parent.getChild(name)


def log_event(
    logger: logging.Logger,
    level: int,
    message: str,
    *,
    event: str,
    scheme: str = "-",
    **fields: Any,
) -> None:
    logger.log(level, message, extra={"event": event, "scheme": scheme, **fields})


def log_internal_debug(
    logger: logging.Logger,
    message: str,
    *,
    event: str,
    scheme: str = "-",
    exc: BaseException | None = None,
    **fields: Any,
) -> None:
    """DEBUG-only diagnostics, with the traceback of ``exc`` when given."""
    logger.debug(
        message,
        exc_info=exc if exc is not None else False,
        extra={"event": event, "scheme": scheme, **fields},
    )
