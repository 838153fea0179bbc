"""Planners that query ``f`` along curves through the inputs."""

from __future__ import annotations

import itertools
from typing import Sequence

from ..core.exceptions import FieldTooSmallError, UsageError
from ..field import FieldElem, PrimeField
from ..poly import Curve, MultiPoly
from ..structure import Crossing
from .bounds import curve_direct_workers, intersecting_split, lcc_curve_workers, replication_workers
from .plan import CurveMeta, IntersectingMeta, QueryPlan, build_plan, check_tolerances
from .replication import plan_replication

Point = Sequence[FieldElem]


def check_inputs(f: MultiPoly, X: Sequence[Point]) -> PrimeField:
    if not X:
        raise UsageError("at least one input point is required")
    for index, point in enumerate(X):
        if len(point) != f.m:
            raise UsageError(f"input {index} has dimension {len(point)}, f expects {f.m}")
        for value in point:
            f.field.check(value)
    return f.field


def fit_curve(X: Sequence[Point], anchors: Sequence[FieldElem] | None = None) -> tuple[Curve, tuple[FieldElem, ...]]:
    """Lowest-degree curve through the inputs, at ``enumerate(k)`` unless anchors are given."""
    field = X[0][0].field
    chosen = tuple(anchors) if anchors is not None else tuple(field.enumerate(len(X)))
    return Curve.through(chosen, [tuple(point) for point in X]), chosen


def curve_queries(
    field: PrimeField,
    curve: Curve,
    X: Sequence[Point],
    input_anchors: Sequence[FieldElem],
    w: int,
    exclude: Sequence[FieldElem] = (),
) -> tuple[list[tuple[FieldElem, ...]], list[FieldElem]]:
    """Systematic queries at the input anchors first, then fresh anchors in canonical order."""
    systematic = min(w, len(X))
    queries = [tuple(point) for point in X[:systematic]]
    anchors = list(input_anchors[:systematic])
    fresh = field.anchors(exclude=list(input_anchors) + list(exclude))
    for z in itertools.islice(fresh, w - systematic):
        queries.append(curve(z))
        anchors.append(z)
    if len(anchors) < w:
        raise FieldTooSmallError(w + len(exclude), field.p, "curve anchors")
    return queries, anchors


def plan_lcc(f: MultiPoly, X: Sequence[Point], s: int, b: int = 0) -> QueryPlan:
    """Lagrange coded computing, or replication when that needs fewer workers.

    Ties go to the curve branch.
    """
    check_tolerances(s, b)
    field = check_inputs(f, X)
    k = len(X)
    degree = f.total_degree
    w = lcc_curve_workers(k, degree, s, b)
    if w > replication_workers(k, s, b):
        return plan_replication(X, s, b, degree=degree)
    field.require(max(w, k), "the LCC curve: (k-1)*deg(f)+s+2b+1")
    curve, betas = fit_curve(X)
    queries, anchors = curve_queries(field, curve, X, betas, w)
    ones = tuple(field.one for _ in anchors)
    meta = CurveMeta(
        anchors=tuple(anchors),
        degree_bound=(k - 1) * degree,
        output_anchors=betas,
        weights=ones,
        output_weights=tuple(field.one for _ in betas),
    )
    return build_plan(field, queries, s=s, b=b, scheme_tag="lcc", meta=meta, k=k, degree=degree)


def plan_curve_direct(
    f: MultiPoly,
    X: Sequence[Point],
    s: int,
    b: int,
    curve: Curve,
    anchors: Sequence[FieldElem],
) -> QueryPlan:
    """Query along a known low-degree curve with ``curve(anchors[i]) == X[i]``."""
    check_tolerances(s, b)
    field = check_inputs(f, X)
    k = len(X)
    if len(anchors) != k:
        raise UsageError(f"expected {k} curve anchors, got {len(anchors)}")
    if len({int(z) for z in anchors}) != k:
        raise UsageError("curve anchors must be distinct")
    for index, (z, point) in enumerate(zip(anchors, X)):
        if curve(z) != tuple(point):
            raise UsageError(f"curve does not pass through input {index} at z={int(z)}")
    degree = f.total_degree
    w = curve_direct_workers(degree, curve.degree, s, b)
    field.require(max(w, k), "the direct curve: deg(f)*deg(curve)+s+2b+1")
    queries, query_anchors = curve_queries(field, curve, X, anchors, w)
    meta = CurveMeta(
        anchors=tuple(query_anchors),
        degree_bound=degree * curve.degree,
        output_anchors=tuple(anchors),
        weights=tuple(field.one for _ in query_anchors),
        output_weights=tuple(field.one for _ in anchors),
    )
    return build_plan(field, queries, s=s, b=b, scheme_tag="curve_direct", meta=meta, k=k, degree=degree)


def plan_intersecting(f: MultiPoly, X: Sequence[Point], crossing: Crossing, s: int, b: int = 0) -> QueryPlan:
    """Query two crossing curves; the decoded value at the crossing seeds the second curve."""
    check_tolerances(s, b)
    field = check_inputs(f, X)
    if sorted(crossing.indices) != list(range(len(X))):
        raise UsageError("crossing must index exactly the planned input points")
    if not crossing.verify(X):
        raise UsageError("crossing incidences do not hold for the input points")
    degree = f.total_degree
    deg1, deg2 = crossing.line1.degree, crossing.line2.degree
    n1, n2 = intersecting_split(degree, deg1, deg2, s, b)
    field.require(max(n1, n2, 2) + 1, "the intersecting curves with the crossing anchor excluded")

    groups = (
        (crossing.line1, crossing.indices[:2], crossing.anchors1, crossing.z1, n1),
        (crossing.line2, crossing.indices[2:], crossing.anchors2, crossing.z2, n2),
    )
    queries: list[tuple[FieldElem, ...]] = []
    per_curve: list[list[FieldElem]] = []
    outputs: dict[int, tuple[int, FieldElem]] = {}
    for number, (line, members, anchors, crossing_z, count) in enumerate(groups, start=1):
        points = [X[i] for i in members]
        curve_points, curve_anchors = curve_queries(field, line, points, anchors, count, exclude=(crossing_z,))
        queries.extend(curve_points)
        per_curve.append(curve_anchors)
        for index, anchor in zip(members, anchors):
            outputs[index] = (number, anchor)

    meta = IntersectingMeta(
        anchors1=tuple(per_curve[0]),
        anchors2=tuple(per_curve[1]),
        degree_bound1=degree * deg1,
        degree_bound2=degree * deg2,
        z1=crossing.z1,
        z2=crossing.z2,
        outputs=tuple(outputs[i] for i in range(len(X))),
    )
    return build_plan(field, queries, s=s, b=b, scheme_tag="intersecting", meta=meta, k=len(X), degree=degree)
