"""Locality discovery in input point sets.

Finds the structures the planners exploit: minimal linear dependencies (in the
points themselves or in their homogenizing lifts ``(1, X)``), sparse
dependencies, and triples on a line or quadruples on two crossing lines.
Tie-breaking is always lowest indices first.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence

from .core.exceptions import BudgetExceededError, UsageError
from .core.settings import RuntimeSettings, load_runtime_settings
from .field import FieldElem, PrimeField
from .linalg import EchelonBasis, solve
from .poly import Curve
from .utils.logger import get_child_logger, log_event

HOMOGENEOUS = "homogeneous"
AFFINE = "affine"
MODES = (HOMOGENEOUS, AFFINE)

Point = Sequence[FieldElem]

logger = get_child_logger("structure")


@dataclass(frozen=True)
class Dependency:
    """``sum(coeffs[i] * X[indices[i]]) == X[indices[-1]]`` with every coefficient nonzero.

    In affine mode the identity holds for the lifted points ``(1, X)``.
    """

    indices: tuple[int, ...]
    coeffs: tuple[FieldElem, ...]
    mode: str = HOMOGENEOUS

    def __len__(self) -> int:
        return len(self.indices)

    def vectors(self, points: Sequence[Point]) -> list[tuple[FieldElem, ...]]:
        return [_lift(points[i], self.mode) for i in self.indices]

    def verify(self, points: Sequence[Point]) -> bool:
        if len(self.coeffs) != len(self.indices) - 1 or not all(self.coeffs):
            return False
        vectors = self.vectors(points)
        field = vectors[0][0].field
        total = [field.zero] * len(vectors[0])
        for coeff, vector in zip(self.coeffs, vectors):
            total = [t + coeff * v for t, v in zip(total, vector)]
        return tuple(total) == vectors[-1]

    def remap(self, mapping: Sequence[int]) -> "Dependency":
        return Dependency(tuple(mapping[i] for i in self.indices), self.coeffs, self.mode)


@dataclass(frozen=True)
class Partition:
    dependent_sets: tuple[Dependency, ...]
    leftovers: tuple[int, ...]
    mode: str = HOMOGENEOUS

    def covered(self) -> list[int]:
        indices = [i for dep in self.dependent_sets for i in dep.indices]
        return sorted(indices + list(self.leftovers))


@dataclass(frozen=True)
class Collinear:
    """Points on one line; ``line(anchors[i]) == X[indices[i]]``."""

    indices: tuple[int, ...]
    line: Curve
    anchors: tuple[FieldElem, ...]

    def verify(self, points: Sequence[Point]) -> bool:
        return all(self.line(z) == tuple(points[i]) for i, z in zip(self.indices, self.anchors))


@dataclass(frozen=True)
class Crossing:
    """Two lines through disjoint input pairs that meet away from every input point.

    ``line1`` passes through ``indices[0]`` and ``indices[1]`` at ``anchors1``;
    ``line2`` through ``indices[2]`` and ``indices[3]`` at ``anchors2``; and
    ``line1(z1) == line2(z2)``.
    """

    indices: tuple[int, int, int, int]
    line1: Curve
    line2: Curve
    z1: FieldElem
    z2: FieldElem
    anchors1: tuple[FieldElem, FieldElem]
    anchors2: tuple[FieldElem, FieldElem]

    @property
    def point(self) -> tuple[FieldElem, ...]:
        return self.line1(self.z1)

    def verify(self, points: Sequence[Point]) -> bool:
        on_lines = all(
            line(z) == tuple(points[i])
            for line, anchors, pair in (
                (self.line1, self.anchors1, self.indices[:2]),
                (self.line2, self.anchors2, self.indices[2:]),
            )
            for i, z in zip(pair, anchors)
        )
        meet = self.point
        return on_lines and meet == self.line2(self.z2) and all(meet != tuple(points[i]) for i in self.indices)


LineStructure = Collinear | Crossing


@dataclass(frozen=True)
class LinePartition:
    collinear: tuple[Collinear, ...]
    crossings: tuple[Crossing, ...]
    leftovers: tuple[int, ...]


def _field_of(points: Sequence[Point]) -> PrimeField:
    for point in points:
        for value in point:
            return value.field
    raise UsageError("cannot infer the field from empty points")


def _lift(point: Point, mode: str) -> tuple[FieldElem, ...]:
    if mode == AFFINE:
        field = point[0].field if point else None
        if field is None:
            raise UsageError("affine mode needs points of positive dimension")
        return (field.one,) + tuple(point)
    return tuple(point)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise UsageError(f"unknown partition mode {mode!r}; expected one of {', '.join(MODES)}")


def _check_points(points: Sequence[Point], mode: str) -> None:
    _check_mode(mode)
    dims = {len(point) for point in points}
    if len(dims) > 1:
        raise UsageError("input points have inconsistent dimensions")
    if mode == HOMOGENEOUS:
        for index, point in enumerate(points):
            if not any(point):
                raise UsageError(f"point {index} is the zero vector; homogeneous mode needs nonzero points")


def find_minimal_dependency(points: Sequence[Point], mode: str = HOMOGENEOUS) -> Dependency | None:
    """Return the dependency closed by the first point spanned by its predecessors.

    The predecessors are independent, so the support of the expression is the
    only dependency involving that point and is minimal. ``None`` means the
    (lifted) points are linearly independent.
    """
    _check_points(points, mode)
    if not points:
        return None
    field = _field_of(points)
    basis = EchelonBasis(field.p)
    for index, point in enumerate(points):
        expression = basis.insert([int(v) for v in _lift(point, mode)], index)
        if expression is not None:
            support = sorted(expression)
            return Dependency(
                indices=tuple(support) + (index,),
                coeffs=tuple(FieldElem(expression[i], field) for i in support),
                mode=mode,
            )
    return None


def partition_minimal_dependent(points: Sequence[Point], mode: str = HOMOGENEOUS) -> Partition:
    """Greedily peel off minimal dependencies among the remaining points."""
    _check_points(points, mode)
    remaining = list(range(len(points)))
    found: list[Dependency] = []
    while remaining:
        dependency = find_minimal_dependency([points[i] for i in remaining], mode)
        if dependency is None:
            break
        dependency = dependency.remap(remaining)
        found.append(dependency)
        taken = set(dependency.indices)
        remaining = [i for i in remaining if i not in taken]
    return Partition(dependent_sets=tuple(found), leftovers=tuple(remaining), mode=mode)


def _sparse_search_space(k: int, q: int, e: int) -> int:
    return math.comb(k, e) * (q - 1) ** e


def find_sparse_dependency(
    points: Sequence[Point],
    e: int,
    *,
    settings: RuntimeSettings | None = None,
) -> Dependency | None:
    """Find a minimal dependency of at most ``2e`` nonzero points.

    Elimination is tried first. When its dependency is too large, every
    combination of at most ``e`` points with nonzero coefficients is hashed by
    its sum; a zero sum or two colliding sums yield a dependency on at most
    ``2e`` points, which is then shrunk to a minimal one.
    """
    if e < 2:
        raise UsageError("sparsity parameter e must be at least 2")
    _check_points(points, HOMOGENEOUS)
    dependency = find_minimal_dependency(points, HOMOGENEOUS)
    if dependency is None:
        return None
    if len(dependency) <= 2 * e:
        return dependency

    config = settings or load_runtime_settings()
    field = _field_of(points)
    k = len(points)
    space = _sparse_search_space(k, field.p, e)
    if e > config.sparse_search_max_e or space > config.sparse_search_budget:
        log_event(
            logger,
            logging.WARNING,
            "Sparse dependency search exceeds budget",
            event="sparse_search_budget",
            k=k,
            e=e,
            space=space,
            budget=config.sparse_search_budget,
        )
        raise BudgetExceededError(
            f"sparse dependency search over C({k},{e})*({field.p}-1)^{e} = {space} combinations "
            f"exceeds the budget of {config.sparse_search_budget} (max e={config.sparse_search_max_e})"
        )

    p = field.p
    vectors = [[int(v) for v in point] for point in points]
    width = len(vectors[0])
    seen: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for size in range(1, e + 1):
        for subset in itertools.combinations(range(k), size):
            for coeffs in itertools.product(range(1, p), repeat=size):
                total = [0] * width
                for index, coeff in zip(subset, coeffs):
                    row = vectors[index]
                    for c in range(width):
                        total[c] = (total[c] + coeff * row[c]) % p
                key = tuple(total)
                if not any(key):
                    return _shrink(points, subset)
                previous = seen.get(key)
                if previous is not None:
                    return _shrink(points, sorted(set(previous[0]) | set(subset)))
                seen[key] = (subset, coeffs)
    return None


def _shrink(points: Sequence[Point], support: Sequence[int]) -> Dependency | None:
    dependency = find_minimal_dependency([points[i] for i in support], HOMOGENEOUS)
    return dependency.remap(list(support)) if dependency is not None else None


def partition_sparse(
    points: Sequence[Point],
    e: int,
    *,
    settings: RuntimeSettings | None = None,
) -> Partition:
    """Greedy partition into minimal dependencies of size at most ``2e``.

    The search stops early, leaving the rest as leftovers, once it exceeds the
    configured budget.
    """
    _check_points(points, HOMOGENEOUS)
    remaining = list(range(len(points)))
    found: list[Dependency] = []
    while remaining:
        try:
            dependency = find_sparse_dependency([points[i] for i in remaining], e, settings=settings)
        except BudgetExceededError:
            break
        if dependency is None:
            break
        dependency = dependency.remap(remaining)
        found.append(dependency)
        taken = set(dependency.indices)
        remaining = [i for i in remaining if i not in taken]
    return Partition(dependent_sets=tuple(found), leftovers=tuple(remaining), mode=HOMOGENEOUS)


def _line_key(a: list[int], b: list[int], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    direction = [(y - x) % p for x, y in zip(a, b)]
    lead = next(i for i, value in enumerate(direction) if value)
    scale = pow(direction[lead], -1, p)
    direction = [value * scale % p for value in direction]
    shift = a[lead]
    anchor = [(x - shift * d) % p for x, d in zip(a, direction)]
    return tuple(anchor), tuple(direction)


def _line_parameter(base: list[int], direction: list[int], point: list[int], p: int) -> int:
    lead = next(i for i, value in enumerate(direction) if value)
    return (point[lead] - base[lead]) * pow(direction[lead], -1, p) % p


def _collinear(points: Sequence[Point], indices: Sequence[int]) -> Collinear:
    field = _field_of(points)
    first, second = indices[0], indices[1]
    base = [int(v) for v in points[first]]
    direction = [(int(y) - x) % field.p for x, y in zip(base, points[second])]
    anchors = tuple(
        FieldElem(_line_parameter(base, direction, [int(v) for v in points[i]], field.p), field) for i in indices
    )
    line = Curve.line(tuple(points[first]), field.vector(direction))
    return Collinear(indices=tuple(indices), line=line, anchors=anchors)


def _crossing(points: Sequence[Point], pair1: tuple[int, int], pair2: tuple[int, int], z1: int, z2: int) -> Crossing:
    field = _field_of(points)

    def line_through(pair: tuple[int, int]) -> Curve:
        a, b = points[pair[0]], points[pair[1]]
        return Curve.line(tuple(a), tuple(y - x for x, y in zip(a, b)))

    anchors = (field.zero, field.one)
    return Crossing(
        indices=pair1 + pair2,
        line1=line_through(pair1),
        line2=line_through(pair2),
        z1=FieldElem(z1, field),
        z2=FieldElem(z2, field),
        anchors1=anchors,
        anchors2=anchors,
    )


def _crossing_by_enumeration(vectors: list[list[int]], p: int) -> tuple[tuple[int, int], tuple[int, int], int, int] | None:
    seen: dict[tuple[int, ...], tuple[tuple[int, int], int]] = {}
    for i, j in itertools.combinations(range(len(vectors)), 2):
        base = vectors[i]
        direction = [(y - x) % p for x, y in zip(base, vectors[j])]
        for z in range(2, p):
            key = tuple((x + z * d) % p for x, d in zip(base, direction))
            hit = seen.get(key)
            if hit is not None and hit[0] != (i, j):
                return hit[0], (i, j), hit[1], z
            seen[key] = ((i, j), z)
    return None


def _crossing_by_solving(vectors: list[list[int]], p: int) -> tuple[tuple[int, int], tuple[int, int], int, int] | None:
    pairs = list(itertools.combinations(range(len(vectors)), 2))
    for first, (i, j) in enumerate(pairs):
        d1 = [(y - x) % p for x, y in zip(vectors[i], vectors[j])]
        for k, l in pairs[first + 1 :]:
            if {i, j} & {k, l}:
                continue
            d2 = [(y - x) % p for x, y in zip(vectors[k], vectors[l])]
            matrix = [[a, (-b) % p] for a, b in zip(d1, d2)]
            rhs = [(y - x) % p for x, y in zip(vectors[i], vectors[k])]
            solution = solve(matrix, rhs, p)
            if solution is None:
                continue
            z1, z2 = solution
            if z1 in (0, 1) or z2 in (0, 1):
                continue
            return (i, j), (k, l), z1, z2
    return None


def find_intersecting_lines(
    points: Sequence[Point],
    *,
    settings: RuntimeSettings | None = None,
) -> LineStructure | None:
    """Return three collinear points, else four points on two crossing lines, else ``None``."""
    k = len(points)
    if k < 3:
        return None
    if len({tuple(point) for point in points}) != k:
        raise UsageError("input points must be distinct")
    _check_points(points, AFFINE)
    field = _field_of(points)
    p = field.p
    vectors = [[int(v) for v in point] for point in points]

    lines: dict[tuple[tuple[int, ...], tuple[int, ...]], list[int]] = {}
    for i, j in itertools.combinations(range(k), 2):
        members = lines.setdefault(_line_key(vectors[i], vectors[j], p), [])
        for index in (i, j):
            if index not in members:
                members.append(index)
    triples = [tuple(sorted(members)[:3]) for members in lines.values() if len(members) >= 3]
    if triples:
        return _collinear(points, min(triples))
    if k < 4:
        return None

    config = settings or load_runtime_settings()
    if math.comb(k, 2) * max(p - 2, 0) <= config.line_enumeration_budget:
        found = _crossing_by_enumeration(vectors, p)
    elif k <= config.line_search_limit:
        found = _crossing_by_solving(vectors, p)
    else:
        raise BudgetExceededError(
            f"crossing search over {k} points exceeds the line search limit of {config.line_search_limit}"
        )
    if found is None:
        return None
    pair1, pair2, z1, z2 = found
    return _crossing(points, pair1, pair2, z1, z2)


def partition_lines(points: Sequence[Point], *, settings: RuntimeSettings | None = None) -> LinePartition:
    """Greedy partition into collinear groups and crossing quadruples.

    A collinear group absorbs every remaining point on its line.
    """
    remaining = list(range(len(points)))
    collinear: list[Collinear] = []
    crossings: list[Crossing] = []
    while len(remaining) >= 3:
        subset = [points[i] for i in remaining]
        try:
            structure = find_intersecting_lines(subset, settings=settings)
        except BudgetExceededError:
            break
        if structure is None:
            break
        if isinstance(structure, Collinear):
            line = structure.line
            on_line = [
                local
                for local, point in enumerate(subset)
                if local in structure.indices or _on_line(line, point)
            ]
            group = _collinear(subset, sorted(on_line, key=lambda local: (local not in structure.indices[:2], local)))
            group = Collinear(
                indices=tuple(remaining[i] for i in group.indices), line=group.line, anchors=group.anchors
            )
            collinear.append(group)
            taken = set(group.indices)
        else:
            mapped = tuple(remaining[i] for i in structure.indices)
            crossings.append(
                Crossing(
                    indices=mapped,  # type: ignore[arg-type]
                    line1=structure.line1,
                    line2=structure.line2,
                    z1=structure.z1,
                    z2=structure.z2,
                    anchors1=structure.anchors1,
                    anchors2=structure.anchors2,
                )
            )
            taken = set(mapped)
        remaining = [i for i in remaining if i not in taken]
    return LinePartition(collinear=tuple(collinear), crossings=tuple(crossings), leftovers=tuple(remaining))


def _on_line(line: Curve, point: Point) -> bool:
    p = line.field.p
    base = [int(v) for v in line.coeffs[0]]
    direction = [int(v) for v in line.coeffs[1]] if line.degree >= 1 else [0] * line.m
    if not any(direction):
        return False
    z = _line_parameter(base, direction, [int(v) for v in point], p)
    return line(z) == tuple(point)


def fit_line(points: Sequence[Point]) -> Collinear | None:
    """Return the line through every point, anchored at ``0`` and ``1`` on the first two, if one exists."""
    if len(points) < 2:
        return None
    if len({tuple(point) for point in points}) != len(points):
        raise UsageError("input points must be distinct")
    group = _collinear(points, list(range(len(points))))
    return group if group.verify(points) else None
