"""Composite plans: partition the inputs and plan every part on its own."""

from __future__ import annotations

from typing import Sequence

from ..core.settings import RuntimeSettings
from ..field import FieldElem
from ..poly import MultiPoly, is_homogeneous
from ..structure import (
    AFFINE,
    HOMOGENEOUS,
    Crossing,
    Dependency,
    Partition,
    partition_lines,
    partition_minimal_dependent,
    partition_sparse,
)
from .bounds import replication_workers
from .curves import check_inputs, plan_curve_direct, plan_intersecting
from .homogeneous import plan_homogeneous, plan_nonhomogeneous
from .plan import CompositeMeta, CompositePart, QueryPlan, build_plan, check_tolerances
from .replication import plan_replication

Point = Sequence[FieldElem]


def _partition(
    f: MultiPoly,
    X: Sequence[Point],
    sparsity: int | None,
    settings: RuntimeSettings | None,
) -> tuple[list[Dependency], list[int]]:
    mode = HOMOGENEOUS if is_homogeneous(f) else AFFINE
    if mode == HOMOGENEOUS:
        candidates = [i for i, point in enumerate(X) if any(point)]
        points = [tuple(X[i]) for i in candidates]
    else:
        candidates = list(range(len(X)))
        points = [tuple(point) for point in X]

    partition: Partition
    if sparsity is None:
        partition = partition_minimal_dependent(points, mode)
    elif mode == HOMOGENEOUS:
        partition = partition_sparse(points, sparsity, settings=settings)
    else:
        field = f.field
        lifted = [(field.one,) + point for point in points]
        partition = partition_sparse(lifted, sparsity, settings=settings)

    dependencies = [
        Dependency(tuple(candidates[i] for i in dep.indices), dep.coeffs, mode) for dep in partition.dependent_sets
    ]
    covered = {i for dep in dependencies for i in dep.indices}
    leftovers = [i for i in range(len(X)) if i not in covered]
    return dependencies, leftovers


def _cheaper(sub: QueryPlan, points: Sequence[Point], s: int, b: int, degree: int) -> QueryPlan:
    if sub.w < replication_workers(len(points), s, b):
        return sub
    return plan_replication(points, s, b, degree=degree)


def _assemble(f: MultiPoly, X: Sequence[Point], s: int, b: int, parts: list[tuple[QueryPlan, tuple[int, ...]]]) -> QueryPlan:
    queries = []
    composite_parts = []
    for sub, inputs in parts:
        composite_parts.append(CompositePart(plan=sub, inputs=inputs, offset=len(queries)))
        queries.extend(sub.queries)
    meta = CompositeMeta(parts=tuple(composite_parts))
    return build_plan(
        f.field, queries, s=s, b=b, scheme_tag="composite", meta=meta, k=len(X), degree=f.total_degree
    )


def plan_composite(
    f: MultiPoly,
    X: Sequence[Point],
    s: int,
    b: int = 0,
    *,
    sparsity: int | None = None,
    settings: RuntimeSettings | None = None,
) -> QueryPlan:
    """Dependency schemes on a greedy partition of the inputs, replication for the rest.

    Every part tolerates the full ``s`` and ``b`` on its own. With ``sparsity``
    the partition is restricted to dependencies of at most ``2 * sparsity`` points.
    """
    check_tolerances(s, b)
    check_inputs(f, X)
    degree = f.total_degree
    dependencies, leftovers = _partition(f, X, sparsity, settings)
    parts: list[tuple[QueryPlan, tuple[int, ...]]] = []
    for dep in dependencies:
        points = [tuple(X[i]) for i in dep.indices]
        local = Dependency(tuple(range(len(points))), dep.coeffs, dep.mode)
        planner = plan_homogeneous if dep.mode == HOMOGENEOUS else plan_nonhomogeneous
        parts.append((_cheaper(planner(f, points, local, s, b), points, s, b, degree), dep.indices))
    if leftovers:
        points = [tuple(X[i]) for i in leftovers]
        parts.append((plan_replication(points, s, b, degree=degree), tuple(leftovers)))
    return _assemble(f, X, s, b, parts)


def plan_line_composite(
    f: MultiPoly,
    X: Sequence[Point],
    s: int,
    b: int = 0,
    *,
    settings: RuntimeSettings | None = None,
) -> QueryPlan:
    """Direct-curve plans on collinear groups, intersecting plans on crossings, replication for the rest."""
    check_tolerances(s, b)
    check_inputs(f, X)
    degree = f.total_degree
    lines = partition_lines(X, settings=settings)
    parts: list[tuple[QueryPlan, tuple[int, ...]]] = []
    for group in lines.collinear:
        points = [tuple(X[i]) for i in group.indices]
        sub = plan_curve_direct(f, points, s, b, group.line, group.anchors)
        parts.append((_cheaper(sub, points, s, b, degree), group.indices))
    for crossing in lines.crossings:
        points = [tuple(X[i]) for i in crossing.indices]
        local = Crossing(
            indices=(0, 1, 2, 3),
            line1=crossing.line1,
            line2=crossing.line2,
            z1=crossing.z1,
            z2=crossing.z2,
            anchors1=crossing.anchors1,
            anchors2=crossing.anchors2,
        )
        sub = plan_intersecting(f, points, local, s, b)
        parts.append((_cheaper(sub, points, s, b, degree), crossing.indices))
    if lines.leftovers:
        points = [tuple(X[i]) for i in lines.leftovers]
        parts.append((plan_replication(points, s, b, degree=degree), tuple(lines.leftovers)))
    return _assemble(f, X, s, b, parts)
