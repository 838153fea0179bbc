"""Shared helpers."""

from .logger import get_child_logger, get_logger, log_event, log_internal_debug

__all__ = ["get_logger", "get_child_logger", "log_event", "log_internal_debug"]
