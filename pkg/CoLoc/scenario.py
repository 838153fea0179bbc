"""Scenario model, input and function generators, and scheme selection."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

from .core.exceptions import ScenarioError, UsageError
from .core.schema import ScenarioValidator
from .core.settings import RuntimeSettings
from .field import FieldElem, PrimeField
from .linalg import rank
from .poly import MultiPoly
from .schemes import (
    QueryPlan,
    fit_curve,
    plan_composite,
    plan_curve_direct,
    plan_homogeneous,
    plan_intersecting,
    plan_lcc,
    plan_line_composite,
    plan_nonhomogeneous,
    plan_replication,
)
from .structure import AFFINE, HOMOGENEOUS, Crossing, find_intersecting_lines, find_minimal_dependency, fit_line

Point = tuple[FieldElem, ...]

_MAX_DRAWS = 1_000


def _draw_until(draw: Callable[[], Any], accept: Callable[[Any], bool], what: str) -> Any:
    for _ in range(_MAX_DRAWS):
        candidate = draw()
        if accept(candidate):
            return candidate
    raise UsageError(f"could not draw {what}; the field may be too small")


def generic_points(field: PrimeField, k: int, m: int, rng: random.Random) -> list[Point]:
    """``k`` distinct nonzero uniformly random points of ``F^m``."""
    if k > field.p**m - 1:
        raise UsageError(f"GF({field.p})^{m} has fewer than {k} nonzero points")
    points: list[Point] = []
    seen: set[Point] = set()
    while len(points) < k:
        point = field.random_vector(rng, m, nonzero=True)
        if point not in seen:
            seen.add(point)
            points.append(point)
    return points


def dependent_points(
    field: PrimeField, k: int, m: int, rng: random.Random, mode: str = HOMOGENEOUS
) -> list[Point]:
    """``k`` points forming one minimal dependency, the last a combination of the others.

    In affine mode the coefficients sum to one, so the dependency holds for
    the lifted points ``(1, X)``.
    """
    limit = m + 1 if mode == HOMOGENEOUS else m + 2
    if not 2 <= k <= limit:
        raise UsageError(f"a minimal {mode} dependency in dimension {m} has between 2 and {limit} points")

    def lifted(points: Sequence[Point]) -> list[Point]:
        return [(field.one,) + point if mode == AFFINE else point for point in points]

    def draw_base() -> list[Point]:
        return [field.random_vector(rng, m, nonzero=mode == HOMOGENEOUS) for _ in range(k - 1)]

    base = _draw_until(draw_base, lambda pts: rank(lifted(pts), field.p) == k - 1, "independent points")

    def draw_coeffs() -> list[FieldElem]:
        coeffs = [field.random_element(rng, nonzero=True) for _ in range(k - 1)]
        if mode == AFFINE:
            coeffs[-1] = field.one - sum(coeffs[:-1], field.zero)
        return coeffs

    def valid(coeffs: list[FieldElem]) -> bool:
        if not all(coeffs):
            return False
        last = tuple(sum((c * x[i] for c, x in zip(coeffs, base)), field.zero) for i in range(m))
        return last not in base and (mode == AFFINE or any(last))

    coeffs = _draw_until(draw_coeffs, valid, "dependency coefficients")
    last = tuple(sum((c * x[i] for c, x in zip(coeffs, base)), field.zero) for i in range(m))
    return list(base) + [last]


def collinear_points(field: PrimeField, k: int, m: int, rng: random.Random) -> list[Point]:
    if k > field.p:
        raise UsageError(f"a line over GF({field.p}) holds at most {field.p} points")
    base = field.random_vector(rng, m)
    direction = field.random_vector(rng, m, nonzero=True)
    zs = rng.sample(range(field.p), k)
    return [tuple(b + z * d for b, d in zip(base, direction)) for z in zs]


def crossing_points(field: PrimeField, m: int, rng: random.Random) -> list[Point]:
    """Two points on each of two lines that meet at a fifth, non-input point."""
    if m < 2:
        raise UsageError("crossing lines need dimension at least 2")
    if field.p < 3:
        raise UsageError("crossing lines need a field with at least 3 elements")
    center = field.random_vector(rng, m)
    u, v = _draw_until(
        lambda: (field.random_vector(rng, m, nonzero=True), field.random_vector(rng, m, nonzero=True)),
        lambda pair: rank(list(pair), field.p) == 2,
        "independent directions",
    )
    a1, a2 = rng.sample(range(1, field.p), 2)
    b1, b2 = rng.sample(range(1, field.p), 2)
    return [
        tuple(c + a1 * x for c, x in zip(center, u)),
        tuple(c + a2 * x for c, x in zip(center, u)),
        tuple(c + b1 * x for c, x in zip(center, v)),
        tuple(c + b2 * x for c, x in zip(center, v)),
    ]


def random_function(field: PrimeField, m: int, degree: int, rng: random.Random, *, u: int = 1, homogeneous: bool = False) -> MultiPoly:
    return MultiPoly.random(field, m, degree, rng, u=u, homogeneous=homogeneous)


@dataclass(frozen=True)
class Scenario:
    """A validated scenario: field, function, inputs, tolerances and scheme choice."""

    name: str
    field: PrimeField
    f: MultiPoly
    inputs: tuple[Point, ...]
    s: int
    b: int
    scheme: str
    adversary: str
    seed: int
    sparsity: int | None = None

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "Scenario":
        data = ScenarioValidator.validate_scenario(payload)
        field = PrimeField(data["modulus"])
        f = _build_function(field, data["function"])
        inputs = _build_inputs(field, data["inputs"])
        if any(len(point) != f.m for point in inputs):
            raise ScenarioError(f"input dimension does not match the function arity {f.m}")
        return cls(
            name=data["name"],
            field=field,
            f=f,
            inputs=tuple(inputs),
            s=data["s"],
            b=data["b"],
            scheme=data["scheme"],
            adversary=data["adversary"],
            seed=data["seed"],
            sparsity=data.get("sparsity"),
        )

    @property
    def k(self) -> int:
        return len(self.inputs)

    def plan(self, settings: RuntimeSettings | None = None) -> QueryPlan:
        return plan_for(self, settings=settings)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "modulus": self.field.p,
            "function": {"literal": self.f.to_literal()},
            "inputs": {"points": [[int(v) for v in point] for point in self.inputs]},
            "s": self.s,
            "b": self.b,
            "scheme": self.scheme,
            "adversary": self.adversary,
            "seed": self.seed,
            **({"sparsity": self.sparsity} if self.sparsity is not None else {}),
        }


def _build_function(field: PrimeField, spec: Mapping[str, Any]) -> MultiPoly:
    if "literal" in spec:
        return MultiPoly.from_literal(field, spec["literal"])
    rng = random.Random(spec.get("seed", 0))
    return random_function(
        field, spec["m"], spec["degree"], rng, u=spec.get("u", 1), homogeneous=spec.get("homogeneous", False)
    )


def _build_inputs(field: PrimeField, spec: Mapping[str, Any]) -> list[Point]:
    if "points" in spec:
        return [field.vector(point) for point in spec["points"]]
    rng = random.Random(spec.get("seed", 0))
    generator = spec["generator"]
    m = spec["m"]
    if generator == "generic":
        return generic_points(field, spec["k"], m, rng)
    if generator == "dependent":
        return dependent_points(field, spec["k"], m, rng, spec.get("mode", HOMOGENEOUS))
    if generator == "collinear":
        return collinear_points(field, spec["k"], m, rng)
    return crossing_points(field, m, rng)


def plan_for(scenario: Scenario, *, settings: RuntimeSettings | None = None) -> QueryPlan:
    """Build the plan a scenario asks for; ``auto`` means the composite planner."""
    f, X, s, b = scenario.f, list(scenario.inputs), scenario.s, scenario.b
    scheme = scenario.scheme
    if scheme in ("auto", "composite"):
        return plan_composite(f, X, s, b, sparsity=scenario.sparsity, settings=settings)
    if scheme == "line_composite":
        return plan_line_composite(f, X, s, b, settings=settings)
    if scheme == "replication":
        return plan_replication(X, s, b, degree=f.total_degree)
    if scheme == "lcc":
        return plan_lcc(f, X, s, b)
    if scheme == "curve_direct":
        line = fit_line(X)
        if line is not None:
            return plan_curve_direct(f, X, s, b, line.line, line.anchors)
        curve, anchors = fit_curve(X)
        return plan_curve_direct(f, X, s, b, curve, anchors)
    if scheme in ("homogeneous", "nonhomogeneous"):
        mode = HOMOGENEOUS if scheme == "homogeneous" else AFFINE
        dependency = find_minimal_dependency(X, mode)
        if dependency is None or len(dependency) != len(X):
            raise UsageError(f"inputs do not form a single minimal {mode} dependency")
        planner = plan_homogeneous if scheme == "homogeneous" else plan_nonhomogeneous
        return planner(f, X, dependency, s, b)
    crossing = find_intersecting_lines(X, settings=settings)
    if not isinstance(crossing, Crossing) or len(X) != 4:
        raise UsageError("inputs must be four points on two crossing lines")
    return plan_intersecting(f, X, crossing, s, b)


def load_scenario(path: str | Path) -> Scenario:
    return Scenario.from_dict(_read_json(Path(path)))


def load_scenario_set(path: str | Path) -> list[Scenario]:
    payload = _read_json(Path(path))
    return [Scenario.from_dict(item) for item in ScenarioValidator.validate_scenario_set(payload)]


def acceptance_scenarios() -> list[Scenario]:
    """Packaged acceptance scenario set."""
    text = files("CoLoc.scenarios").joinpath("acceptance.json").read_text(encoding="utf-8")
    payload = json.loads(text)
    return [Scenario.from_dict(item) for item in ScenarioValidator.validate_scenario_set(payload)]


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ScenarioError(f"scenario file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
