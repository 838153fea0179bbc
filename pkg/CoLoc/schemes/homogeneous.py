"""Dependency-driven planners for homogeneous and general polynomials.

For a minimal dependency ``sum(alpha_i * X_i) == X_k`` the curve

    p*(z) = sum_{i<k} alpha_i * X_i * prod_{j<k, j != i} (z - beta_j) / (beta_k - beta_j)

has degree ``k - 2``, passes through ``X_k`` at ``beta_k`` and through the
rescaled inputs ``lambda_i * X_i`` at ``beta_i``. A homogeneous ``f`` turns the
rescaling into the factor ``lambda_i ** deg(f)``, so the raw inputs double as
curve samples. General ``f`` is handled through its homogenization on the
lifted points ``(1, X_i)``.
"""

from __future__ import annotations

from typing import Sequence

from ..core.exceptions import FieldTooSmallError, UsageError
from ..field import FieldElem, PrimeField
from ..poly import Curve, MultiPoly, is_homogeneous, poly_eval, poly_from_roots
from ..structure import AFFINE, HOMOGENEOUS, Dependency
from .bounds import homogeneous_workers, nonhomogeneous_field_bound
from .curves import check_inputs
from .plan import CurveMeta, QueryPlan, build_plan, check_tolerances

Point = Sequence[FieldElem]


def dependency_curve(
    field: PrimeField,
    vectors: Sequence[Point],
    coeffs: Sequence[FieldElem],
    betas: Sequence[FieldElem],
) -> tuple[Curve, tuple[FieldElem, ...]]:
    """Return ``p*`` and the scaling factors ``lambda_i`` for the first ``k - 1`` vectors."""
    p = field.p
    k = len(vectors)
    last = int(betas[k - 1])
    terms = []
    lambdas = []
    for i in range(k - 1):
        others = [int(betas[j]) for j in range(k - 1) if j != i]
        scale = 1
        for beta in others:
            scale = scale * pow((last - beta) % p, -1, p) % p
        basis = [c * scale % p for c in poly_from_roots(others, p)]
        alpha = coeffs[i]
        terms.append((tuple(alpha * v for v in vectors[i]), basis))
        lambdas.append(alpha * poly_eval(basis, int(betas[i]), p))
    return Curve.combination(field, len(vectors[0]), terms), tuple(lambdas)


def _check_dependency(X: Sequence[Point], dep: Dependency, mode: str) -> None:
    if dep.mode != mode:
        raise UsageError(f"expected a {mode} dependency, got {dep.mode}")
    if sorted(dep.indices) != list(range(len(X))):
        raise UsageError("dependency must cover exactly the planned input points")
    if len(dep) < 2:
        raise UsageError("a dependency needs at least two points")
    if not dep.verify(X):
        raise UsageError("dependency identity does not hold for the input points")


def _systematic_part(
    field: PrimeField,
    X: Sequence[Point],
    dep: Dependency,
    betas: Sequence[FieldElem],
    lambdas: Sequence[FieldElem],
    degree: int,
    w: int,
) -> tuple[list[tuple[FieldElem, ...]], list[FieldElem], list[FieldElem], list[FieldElem], list[FieldElem]]:
    k = len(dep)
    scaled = [lam**degree for lam in lambdas] + [field.one]
    queries = [tuple(X[dep.indices[pos]]) for pos in range(min(w, k))]
    anchors = list(betas[: len(queries)])
    weights = scaled[: len(queries)]
    output_anchors = [field.zero] * k
    output_weights = [field.zero] * k
    for pos, index in enumerate(dep.indices):
        output_anchors[index] = betas[pos]
        output_weights[index] = scaled[pos].inverse()
    return queries, anchors, weights, output_anchors, output_weights


def plan_homogeneous(f: MultiPoly, X: Sequence[Point], dep: Dependency, s: int, b: int = 0) -> QueryPlan:
    """Systematic plan with ``(k-2)*deg(f)+s+2b+1`` workers for a homogeneous ``f``."""
    check_tolerances(s, b)
    if not is_homogeneous(f):
        raise UsageError("plan_homogeneous requires a homogeneous polynomial")
    field = check_inputs(f, X)
    for index, point in enumerate(X):
        if not any(point):
            raise UsageError(f"input {index} is the zero vector")
    _check_dependency(X, dep, HOMOGENEOUS)
    k = len(dep)
    degree = f.total_degree
    w = homogeneous_workers(k, degree, s, b)
    field.require(max(w, k), "the homogeneous scheme: (k-2)*deg(f)+s+2b+1")
    betas = field.enumerate(max(w, k))
    vectors = [X[i] for i in dep.indices]
    curve, lambdas = dependency_curve(field, vectors, dep.coeffs, betas)

    queries, anchors, weights, output_anchors, output_weights = _systematic_part(
        field, X, dep, betas, lambdas, degree, w
    )
    for beta in betas[k:w]:
        queries.append(curve(beta))
        anchors.append(beta)
        weights.append(field.one)
    meta = CurveMeta(
        anchors=tuple(anchors),
        degree_bound=(k - 2) * degree,
        output_anchors=tuple(output_anchors),
        weights=tuple(weights),
        output_weights=tuple(output_weights),
        lambdas=lambdas,
        dependency=dep,
    )
    return build_plan(field, queries, s=s, b=b, scheme_tag="homogeneous", meta=meta, k=k, degree=degree)


def plan_nonhomogeneous(f: MultiPoly, X: Sequence[Point], dep: Dependency, s: int, b: int = 0) -> QueryPlan:
    """Homogeneous construction on ``(1, X_i)`` for the homogenization of ``f``.

    Extra queries ``(r, x)`` on the lifted curve are sent as ``x / r`` and their
    responses scaled by ``r ** deg(f)``; anchors where ``r`` vanishes are skipped.
    """
    check_tolerances(s, b)
    field = check_inputs(f, X)
    _check_dependency(X, dep, AFFINE)
    k = len(dep)
    degree = f.total_degree
    w = homogeneous_workers(k, degree, s, b)
    field.require(
        max(nonhomogeneous_field_bound(k, degree, s, b), k),
        "the non-homogeneous scheme: (k-2)*(deg(f)+1)+s+2b+1",
    )
    betas = field.enumerate(k)
    lifted = [(field.one,) + tuple(X[i]) for i in dep.indices]
    curve, lambdas = dependency_curve(field, lifted, dep.coeffs, betas)

    queries, anchors, weights, output_anchors, output_weights = _systematic_part(
        field, X, dep, betas, lambdas, degree, w
    )
    rs = [field.one] * len(queries)
    for z in field.anchors(exclude=betas):
        if len(queries) >= w:
            break
        point = curve(z)
        r = point[0]
        if not r:
            continue
        scale = r.inverse()
        queries.append(tuple(x * scale for x in point[1:]))
        anchors.append(z)
        weights.append(r**degree)
        rs.append(r)
    if len(queries) < w:
        raise FieldTooSmallError(nonhomogeneous_field_bound(k, degree, s, b), field.p, "the non-homogeneous scheme")
    meta = CurveMeta(
        anchors=tuple(anchors),
        degree_bound=(k - 2) * degree,
        output_anchors=tuple(output_anchors),
        weights=tuple(weights),
        output_weights=tuple(output_weights),
        lambdas=lambdas,
        dependency=dep,
        rs=tuple(rs),
    )
    return build_plan(field, queries, s=s, b=b, scheme_tag="nonhomogeneous", meta=meta, k=k, degree=degree)
