"""In-process master/worker simulation with adversarial stragglers and byzantine workers."""

from __future__ import annotations

import itertools
import logging
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Iterable, Mapping, Sequence

from .core.exceptions import ColocError, FieldTooSmallError
from .core.settings import RuntimeSettings, load_runtime_settings
from .field import FieldElem, PrimeField
from .matmul import BlockMatrix, decode_matmul, plan_matmul, worker_compute
from .poly import MultiPoly, eval_multi
from .scenario import Scenario
from .schemes import QueryPlan, decode
from .utils.logger import get_child_logger, log_event, log_internal_debug

EXHAUSTIVE = "exhaustive"
RANDOM = "random"

SWEEP_COLUMNS = ("scheme", "k", "d", "s", "b", "w", "baseline", "verified")

logger = get_child_logger("simulator")


@dataclass(frozen=True)
class Pattern:
    """One adversary move: dropped workers, corrupted workers and their additive offsets."""

    dropped: tuple[int, ...] = ()
    corrupted: tuple[int, ...] = ()
    offsets: tuple[tuple[int, ...], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {"dropped": list(self.dropped), "corrupted": list(self.corrupted), "offsets": [list(o) for o in self.offsets]}


@dataclass(frozen=True)
class Failure:
    dropped: tuple[int, ...]
    corrupted: tuple[int, ...]
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {"dropped": list(self.dropped), "corrupted": list(self.corrupted), "reason": self.reason}


@dataclass(frozen=True)
class Adversary:
    """Drops at most ``s_budget`` and corrupts at most ``b_budget`` responses per pattern."""

    s_budget: int
    b_budget: int = 0
    mode: str = EXHAUSTIVE
    seed: int = 0
    corruption_values: int = 3

    def pattern_count(self, w: int) -> int:
        """Number of exhaustive patterns over ``w`` workers."""
        total = 0
        for dropped in range(min(self.s_budget, w) + 1):
            alive = w - dropped
            corrupted = sum(math.comb(alive, j) for j in range(1, min(self.b_budget, alive) + 1))
            total += math.comb(w, dropped) * (1 + corrupted * self.corruption_values)
        return total

    def _offsets(self, rng: random.Random, field: PrimeField, count: int, u: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in field.random_vector(rng, u, nonzero=True)) for _ in range(count))

    def exhaustive(self, w: int, field: PrimeField, u: int) -> Iterable[Pattern]:
        rng = random.Random(self.seed)
        for size in range(min(self.s_budget, w) + 1):
            for dropped in itertools.combinations(range(w), size):
                alive = [i for i in range(w) if i not in dropped]
                yield Pattern(dropped=dropped)
                for bad in range(1, min(self.b_budget, len(alive)) + 1):
                    for corrupted in itertools.combinations(alive, bad):
                        for _ in range(self.corruption_values):
                            yield Pattern(dropped, corrupted, self._offsets(rng, field, bad, u))

    def sampled(self, w: int, field: PrimeField, u: int, count: int) -> Iterable[Pattern]:
        rng = random.Random(self.seed)
        for _ in range(count):
            dropped = tuple(sorted(rng.sample(range(w), rng.randint(0, min(self.s_budget, w)))))
            alive = [i for i in range(w) if i not in dropped]
            corrupted = tuple(sorted(rng.sample(alive, rng.randint(0, min(self.b_budget, len(alive))))))
            yield Pattern(dropped, corrupted, self._offsets(rng, field, len(corrupted), u))


@dataclass(frozen=True)
class RunReport:
    scheme: str
    k: int
    degree: int
    s: int
    b: int
    w: int
    baseline_oblivious: int
    patterns: int
    sampled: bool
    failures: tuple[Failure, ...]
    seed: int
    wall_time: float
    plan: QueryPlan | None = dataclass_field(default=None, compare=False)

    @property
    def verified(self) -> bool:
        return not self.failures

    def to_dict(self, *, include_plan: bool = True, include_time: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "scheme": self.scheme,
            "k": self.k,
            "degree": self.degree,
            "s": self.s,
            "b": self.b,
            "w": self.w,
            "baseline_oblivious": self.baseline_oblivious,
            "patterns": self.patterns,
            "sampled": self.sampled,
            "verified": self.verified,
            "failures": [failure.to_dict() for failure in self.failures],
            "seed": self.seed,
        }
        if include_time:
            data["wall_time"] = round(self.wall_time, 4)
        if include_plan and self.plan is not None:
            data["plan"] = self.plan.to_dict()
        return data


def _apply(pattern: Pattern, honest: Sequence[tuple[FieldElem, ...]]) -> dict[int, tuple[FieldElem, ...]]:
    responses = {i: value for i, value in enumerate(honest) if i not in pattern.dropped}
    for worker, offset in zip(pattern.corrupted, pattern.offsets):
        responses[worker] = tuple(v + o for v, o in zip(responses[worker], offset))
    return responses


def _verify(plan: QueryPlan, pattern: Pattern, honest: Sequence[tuple[FieldElem, ...]], expected: Sequence[tuple[FieldElem, ...]]) -> Failure | None:
    try:
        result = decode(plan, _apply(pattern, honest))
    except ColocError as exc:
        log_internal_debug(
            logger,
            "Pattern failed to decode",
            event="pattern_failed",
            scheme=plan.scheme_tag,
            exc=exc,
            dropped=list(pattern.dropped),
            corrupted=list(pattern.corrupted),
        )
        return Failure(pattern.dropped, pattern.corrupted, f"{type(exc).__name__}: {exc}")
    if list(result.outputs) != list(expected):
        return Failure(pattern.dropped, pattern.corrupted, "decoded outputs differ from direct evaluation")
    return None


def _patterns(adversary: Adversary, w: int, field: PrimeField, u: int, config: RuntimeSettings) -> tuple[list[Pattern], bool]:
    total = adversary.pattern_count(w)
    if adversary.mode == EXHAUSTIVE and total <= config.exhaustive_pattern_limit:
        return list(adversary.exhaustive(w, field, u)), False
    if adversary.mode == EXHAUSTIVE:
        log_event(
            logger,
            logging.WARNING,
            "Exhaustive adversary too large, sampling patterns instead",
            event="pattern_sampling",
            patterns=total,
            limit=config.exhaustive_pattern_limit,
        )
    return list(adversary.sampled(w, field, u, config.sampled_patterns)), True


def run(
    plan: QueryPlan,
    f: MultiPoly,
    inputs: Sequence[Sequence[FieldElem]],
    adversary: Adversary | None = None,
    *,
    settings: RuntimeSettings | None = None,
) -> RunReport:
    """Evaluate every worker honestly, replay each adversary pattern and check the decoded outputs."""
    config = settings or load_runtime_settings()
    if len(inputs) != plan.k:
        raise ColocError(f"plan expects {plan.k} inputs, got {len(inputs)}")
    adversary = adversary or Adversary(plan.s, plan.b, corruption_values=config.corruption_values)
    started = time.perf_counter()
    expected = [eval_multi(f, x) for x in inputs]
    honest = [eval_multi(f, query) for query in plan.queries]
    patterns, sampled = _patterns(adversary, plan.w, plan.field, f.u, config)

    if config.simulator_threads > 1:
        with ThreadPoolExecutor(max_workers=config.simulator_threads) as executor:
            verdicts = list(executor.map(lambda pattern: _verify(plan, pattern, honest, expected), patterns))
    else:
        verdicts = [_verify(plan, pattern, honest, expected) for pattern in patterns]
    failures = tuple(sorted((v for v in verdicts if v is not None), key=lambda item: (item.dropped, item.corrupted, item.reason)))

    report = RunReport(
        scheme=plan.scheme_tag,
        k=plan.k,
        degree=plan.degree,
        s=plan.s,
        b=plan.b,
        w=plan.w,
        baseline_oblivious=plan.baseline_oblivious,
        patterns=len(patterns),
        sampled=sampled,
        failures=failures,
        seed=adversary.seed,
        wall_time=time.perf_counter() - started,
        plan=plan,
    )
    log_event(
        logger,
        logging.INFO,
        "Simulation run completed",
        event="run_completed",
        scheme=plan.scheme_tag,
        w=plan.w,
        patterns=report.patterns,
        failures=len(failures),
    )
    if failures:
        log_event(
            logger,
            logging.WARNING,
            "Simulation run found decoding failures",
            event="run_failures",
            scheme=plan.scheme_tag,
            failures=len(failures),
        )
    return report


def run_scenario(scenario: Scenario, *, settings: RuntimeSettings | None = None) -> RunReport:
    config = settings or load_runtime_settings()
    plan = scenario.plan(settings=config)
    adversary = Adversary(
        plan.s,
        plan.b,
        mode=scenario.adversary,
        seed=scenario.seed,
        corruption_values=config.corruption_values,
    )
    return run(plan, scenario.f, scenario.inputs, adversary, settings=config)


@dataclass(frozen=True)
class SweepRow:
    name: str
    scheme: str
    k: int
    d: int
    s: int
    b: int
    w: int | None
    baseline: int | None
    verified: bool
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "scheme": self.scheme,
            "k": self.k,
            "d": self.d,
            "s": self.s,
            "b": self.b,
            "w": self.w,
            "baseline": self.baseline,
            "verified": self.verified,
            "error": self.error,
        }

    def csv_row(self) -> list[Any]:
        return [self.scheme, self.k, self.d, self.s, self.b, self.w, self.baseline, str(self.verified).lower()]


def sweep(scenarios: Iterable[Scenario], *, settings: RuntimeSettings | None = None) -> list[SweepRow]:
    """One row per scenario; planning and decoding errors are recorded in the row."""
    config = settings or load_runtime_settings()
    rows: list[SweepRow] = []
    for scenario in scenarios:
        base = {
            "name": scenario.name,
            "k": scenario.k,
            "d": scenario.f.total_degree,
            "s": scenario.s,
            "b": scenario.b,
        }
        try:
            report = run_scenario(scenario, settings=config)
        except FieldTooSmallError:
            row = SweepRow(scheme=scenario.scheme, w=None, baseline=None, verified=False, error="field-too-small", **base)
        except ColocError as exc:
            row = SweepRow(scheme=scenario.scheme, w=None, baseline=None, verified=False, error=type(exc).__name__, **base)
        else:
            row = SweepRow(
                scheme=report.scheme, w=report.w, baseline=report.baseline_oblivious, verified=report.verified, **base
            )
        log_event(
            logger,
            logging.INFO,
            "Sweep row computed",
            event="sweep_row",
            scheme=row.scheme,
            w=row.w,
            verified=row.verified,
        )
        rows.append(row)
    return rows


def redecode(report: Mapping[str, Any], responses: Mapping[int, Sequence[int]]) -> list[list[int]]:
    """Decode responses offline against the plan embedded in a report."""
    plan = QueryPlan.from_dict(report["plan"])
    result = decode(plan, {int(worker): value for worker, value in responses.items()})
    return [[int(value) for value in output] for output in result.outputs]


@dataclass(frozen=True)
class MatmulReport:
    scheme: str
    size: int
    t: int
    s: int
    w: int
    worker_shapes: dict[str, tuple[int, int]]
    patterns: int
    failures: tuple[Failure, ...]
    seed: int

    @property
    def verified(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme,
            "size": self.size,
            "t": self.t,
            "s": self.s,
            "w": self.w,
            "worker_shapes": {key: list(value) for key, value in self.worker_shapes.items()},
            "patterns": self.patterns,
            "verified": self.verified,
            "failures": [failure.to_dict() for failure in self.failures],
            "seed": self.seed,
        }


def run_matmul(
    scheme: str,
    size: int,
    t: int,
    s: int,
    *,
    modulus: int | None = None,
    seed: int = 0,
    settings: RuntimeSettings | None = None,
) -> MatmulReport:
    """Multiply seeded random matrices with a coded scheme under every straggler subset of size ``<= s``."""
    config = settings or load_runtime_settings()
    field = PrimeField(modulus or config.default_modulus)
    rng = random.Random(seed)
    A = BlockMatrix.random(field, size, t, rng)
    B = BlockMatrix.random(field, size, t, rng)
    plan = plan_matmul(scheme, A, B, t, s)
    expected = A @ B
    products = [worker_compute(plan, worker) for worker in range(plan.w)]
    failures: list[Failure] = []
    patterns = 0
    for count in range(min(s, plan.w) + 1):
        for dropped in itertools.combinations(range(plan.w), count):
            patterns += 1
            responses = {i: product for i, product in enumerate(products) if i not in dropped}
            try:
                decoded = decode_matmul(plan, responses)
            except ColocError as exc:
                failures.append(Failure(dropped, (), f"{type(exc).__name__}: {exc}"))
                continue
            if decoded != expected:
                failures.append(Failure(dropped, (), "decoded product differs from direct multiplication"))
    log_event(
        logger,
        logging.INFO,
        "Matmul run completed",
        event="run_completed",
        scheme=scheme,
        w=plan.w,
        patterns=patterns,
        failures=len(failures),
    )
    return MatmulReport(
        scheme=scheme,
        size=size,
        t=t,
        s=s,
        w=plan.w,
        worker_shapes=plan.worker_shapes(),
        patterns=patterns,
        failures=tuple(failures),
        seed=seed,
    )
