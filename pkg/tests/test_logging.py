from __future__ import annotations

import logging
from io import StringIO

from CoLoc.field import PrimeField
from CoLoc.poly import MultiPoly
from CoLoc.schemes import plan_replication
from CoLoc.simulator import Adversary, run
from CoLoc.utils.logger import get_logger, log_event


def _capture(level: int = logging.DEBUG) -> tuple[logging.Logger, logging.Handler, StringIO]:
    logger = get_logger("DEBUG")
    stream = StringIO()
    handler = logging.StreamHandler(stream)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s event=%(event)s scheme=%(scheme)s"))
    logger.addHandler(handler)
    return logger, handler, stream


def test_log_event_carries_event_and_scheme() -> None:
    logger, handler, stream = _capture()
    try:
        log_event(logger, logging.INFO, "Plan built", event="plan_built", scheme="lcc", w=7)
    finally:
        logger.removeHandler(handler)
    assert "INFO Plan built event=plan_built scheme=lcc" in stream.getvalue()


def test_simulation_logs_completion_and_failures() -> None:
    F = PrimeField(97)
    f = MultiPoly.from_terms(F, 1, [[((1,), 1)]])
    X = [F.vector([3]), F.vector([4])]
    plan = plan_replication(X, 1)
    logger, handler, stream = _capture()
    try:
        report = run(plan, f, X, Adversary(s_budget=2))
    finally:
        logger.removeHandler(handler)
    output = stream.getvalue()
    assert not report.verified
    assert "event=run_completed scheme=replication" in output
    assert "WARNING Simulation run found decoding failures event=run_failures" in output
    assert "event=pattern_failed" in output


def test_project_logger_does_not_propagate() -> None:
    assert get_logger("INFO").propagate is False


def test_default_format_appends_extra_fields() -> None:
    logger = get_logger("DEBUG")
    stream = StringIO()
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logger.handlers[0].formatter)
    logger.addHandler(handler)
    try:
        log_event(logger, logging.INFO, "Sweep row computed", event="sweep_row", scheme="lcc", w=7, verified=True)
        log_event(logger, logging.INFO, "Bare event", event="bare")
    finally:
        logger.removeHandler(handler)
    first, second = stream.getvalue().splitlines()
    assert first.endswith("Sweep row computed event=sweep_row scheme=lcc verified=True w=7")
    assert second.endswith("Bare event event=bare scheme=-")
