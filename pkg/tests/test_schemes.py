from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from CoLoc.core.exceptions import FieldTooSmallError, InsufficientResponsesError, UsageError
from CoLoc.field import PrimeField
from CoLoc.poly import MultiPoly, eval_multi
from CoLoc.scenario import crossing_points, dependent_points, generic_points
from CoLoc.schemes import (
    CompositeMeta,
    QueryPlan,
    decode,
    plan_composite,
    plan_curve_direct,
    plan_homogeneous,
    plan_intersecting,
    plan_lcc,
    plan_line_composite,
    plan_nonhomogeneous,
    plan_replication,
)
from CoLoc.schemes.bounds import (
    homogeneous_partition_bound,
    intersecting_split,
    line_structure_threshold,
    sparse_dependency_threshold,
    nonhomogeneous_partition_bound,
    oblivious_threshold,
)
from CoLoc.structure import AFFINE, HOMOGENEOUS, Crossing, find_intersecting_lines, find_minimal_dependency, fit_line

F = PrimeField(97)


def _x1x2() -> MultiPoly:
    return MultiPoly.from_terms(F, 2, [[((1, 1), 1)]])


def _dependent_triple() -> list[tuple]:
    return [F.vector([0, 1]), F.vector([2, 0]), F.vector([2, 1])]


def _honest(plan: QueryPlan, f: MultiPoly) -> dict[int, tuple]:
    return {i: eval_multi(f, query) for i, query in enumerate(plan.queries)}


def _assert_decodes_under_drops(plan: QueryPlan, f: MultiPoly, X) -> int:
    expected = tuple(eval_multi(f, x) for x in X)
    honest = _honest(plan, f)
    patterns = 0
    for count in range(plan.s + 1):
        for dropped in itertools.combinations(range(plan.w), count):
            responses = {i: v for i, v in honest.items() if i not in dropped}
            assert decode(plan, responses).outputs == expected
            patterns += 1
    return patterns


def test_replication_plan_and_majority_decode() -> None:
    X = _dependent_triple()
    f = _x1x2()
    plan = plan_replication(X, s=1, b=1, degree=2)
    assert plan.w == 3 * 4
    assert plan.scheme_tag == "replication"
    responses = _honest(plan, f)
    responses[0] = (responses[0][0] + 1,)
    del responses[1]
    assert decode(plan, responses).outputs == tuple(eval_multi(f, x) for x in X)


def test_replication_single_input_without_stragglers() -> None:
    plan = plan_replication([F.vector([3])], s=0)
    assert plan.w == 1


def test_lcc_threshold_matches_curve_bound() -> None:
    rng = random.Random(1)
    f = MultiPoly.random(F, 2, 2, rng)
    X = generic_points(F, 4, 2, rng)
    plan = plan_lcc(f, X, s=1)
    assert plan.scheme_tag == "lcc"
    assert plan.w == 8
    assert plan.baseline_oblivious == 8
    assert _assert_decodes_under_drops(plan, f, X) == 9


def test_lcc_falls_back_to_replication_when_cheaper() -> None:
    rng = random.Random(2)
    f = MultiPoly.random(F, 2, 3, rng)
    X = generic_points(F, 2, 2, rng)
    plan = plan_lcc(f, X, s=1)
    assert plan.scheme_tag == "replication"
    assert plan.w == 4
    _assert_decodes_under_drops(plan, f, X)


def test_lcc_tie_keeps_curve_branch() -> None:
    rng = random.Random(3)
    f = MultiPoly.random(F, 2, 2, rng)
    X = generic_points(F, 2, 2, rng)
    plan = plan_lcc(f, X, s=1)
    assert plan.scheme_tag == "lcc"
    assert plan.w == 4


def test_lcc_with_byzantine_workers() -> None:
    rng = random.Random(6)
    f = MultiPoly.random(F, 2, 2, rng)
    X = generic_points(F, 4, 2, rng)
    plan = plan_lcc(f, X, s=1, b=1)
    assert plan.w == 10
    expected = tuple(eval_multi(f, x) for x in X)
    honest = _honest(plan, f)
    for dropped in range(plan.w):
        for bad in range(plan.w):
            if bad == dropped:
                continue
            responses = {i: v for i, v in honest.items() if i != dropped}
            responses[bad] = (responses[bad][0] + 5,)
            assert decode(plan, responses).outputs == expected


def test_lcc_undersized_field_names_the_bound() -> None:
    G = PrimeField(5)
    f = MultiPoly.random(G, 2, 2, random.Random(0))
    X = [G.vector(v) for v in ([1, 0], [0, 1], [1, 1], [2, 1])]
    with pytest.raises(FieldTooSmallError, match=r"\(k-1\)\*deg\(f\)\+s\+2b\+1"):
        plan_lcc(f, X, s=1)


def test_homogeneous_plan_beats_oblivious_bound() -> None:
    X = _dependent_triple()
    f = _x1x2()
    dep = find_minimal_dependency(X, HOMOGENEOUS)
    plan = plan_homogeneous(f, X, dep, s=1)
    assert plan.w == 4
    assert plan.baseline_oblivious == 6
    assert plan.queries[:3] == tuple(tuple(x) for x in X)
    assert _assert_decodes_under_drops(plan, f, X) == 5


def test_homogeneous_plan_insufficient_after_extra_drop() -> None:
    X = _dependent_triple()
    f = _x1x2()
    plan = plan_homogeneous(f, X, find_minimal_dependency(X, HOMOGENEOUS), s=1)
    honest = _honest(plan, f)
    with pytest.raises(InsufficientResponsesError):
        decode(plan, {i: v for i, v in honest.items() if i not in (0, 1)})


def test_homogeneous_plan_rejects_general_polynomial() -> None:
    X = _dependent_triple()
    f = MultiPoly.from_terms(F, 2, [[((1, 1), 1), ((1, 0), 1)]])
    with pytest.raises(UsageError, match="homogeneous"):
        plan_homogeneous(f, X, find_minimal_dependency(X, HOMOGENEOUS), s=1)


def test_homogeneous_plan_rejects_wrong_dependency() -> None:
    X = _dependent_triple()
    dep = find_minimal_dependency(X, HOMOGENEOUS)
    bad = type(dep)(dep.indices, tuple(c + 1 for c in dep.coeffs), dep.mode)
    with pytest.raises(UsageError):
        plan_homogeneous(_x1x2(), X, bad, s=1)


def test_homogeneous_plan_with_byzantine_worker() -> None:
    X = _dependent_triple()
    f = _x1x2()
    plan = plan_homogeneous(f, X, find_minimal_dependency(X, HOMOGENEOUS), s=0, b=1)
    assert plan.w == 2 + 2 + 1
    responses = _honest(plan, f)
    responses[2] = (responses[2][0] + 9,)
    assert decode(plan, responses).outputs == tuple(eval_multi(f, x) for x in X)


def test_nonhomogeneous_plan_on_affine_dependency() -> None:
    rng = random.Random(5)
    f = MultiPoly.random(F, 2, 2, rng)
    X = dependent_points(F, 4, 2, rng, AFFINE)
    dep = find_minimal_dependency(X, AFFINE)
    assert dep is not None and len(dep) == 4
    plan = plan_nonhomogeneous(f, X, dep, s=1)
    assert plan.scheme_tag == "nonhomogeneous"
    assert plan.w == 6
    assert plan.w <= nonhomogeneous_partition_bound(4, 2, 1)
    _assert_decodes_under_drops(plan, f, X)


def test_nonhomogeneous_plan_needs_larger_field() -> None:
    G = PrimeField(7)
    rng = random.Random(5)
    f = MultiPoly.random(G, 2, 2, rng)
    X = dependent_points(G, 4, 2, rng, AFFINE)
    dep = find_minimal_dependency(X, AFFINE)
    with pytest.raises(FieldTooSmallError) as excinfo:
        plan_nonhomogeneous(f, X, dep, s=1)
    assert excinfo.value.required == 8


def test_curve_direct_on_collinear_points() -> None:
    rng = random.Random(8)
    f = MultiPoly.random(F, 3, 2, rng)
    base, direction = F.vector([1, 2, 3]), F.vector([4, 0, 1])
    X = [tuple(b + z * d for b, d in zip(base, direction)) for z in (0, 1, 5, 7, 9)]
    line = fit_line(X)
    assert line is not None
    plan = plan_curve_direct(f, X, 1, 0, line.line, line.anchors)
    assert plan.w == 2 + 2
    assert plan.baseline_oblivious == 10
    _assert_decodes_under_drops(plan, f, X)


def test_curve_direct_rejects_curve_missing_an_input() -> None:
    X = _dependent_triple()
    line = fit_line(X[:2])
    with pytest.raises(UsageError):
        plan_curve_direct(_x1x2(), X, 1, 0, line.line, line.anchors + (F(5),))


def test_intersecting_plan_saves_two_workers() -> None:
    rng = random.Random(7)
    f = MultiPoly.random(F, 2, 2, rng)
    X = [F.vector(v) for v in ([0, 0], [0, 1], [2, 0], [2, 1])]
    crossing = find_intersecting_lines(X)
    assert isinstance(crossing, Crossing)
    plan = plan_intersecting(f, X, crossing, s=1)
    assert plan.w == 6
    assert plan.baseline_oblivious == 8
    assert _assert_decodes_under_drops(plan, f, X) == 7

    separate = 0
    for pair in (crossing.indices[:2], crossing.indices[2:]):
        points = [X[i] for i in pair]
        line = fit_line(points)
        separate += plan_curve_direct(f, points, 1, 0, line.line, line.anchors).w
    assert separate - plan.w == 2


def test_intersecting_plan_without_stragglers() -> None:
    rng = random.Random(10)
    f = MultiPoly.random(F, 3, 2, rng)
    X = crossing_points(F, 3, rng)
    crossing = find_intersecting_lines(X)
    plan = plan_intersecting(f, X, crossing, s=0)
    assert plan.w == sum(intersecting_split(2, 1, 1, 0)) == 5
    _assert_decodes_under_drops(plan, f, X)


def test_composite_meets_homogeneous_partition_bound() -> None:
    rng = random.Random(4)
    f = MultiPoly.random(F, 2, 2, rng, homogeneous=True)
    X = generic_points(F, 6, 2, rng)
    plan = plan_composite(f, X, s=1)
    assert plan.scheme_tag == "composite"
    assert plan.w <= homogeneous_partition_bound(6, 2, 1) == 8
    _assert_decodes_under_drops(plan, f, X)


def test_composite_sends_zero_vectors_to_replication() -> None:
    f = _x1x2()
    X = _dependent_triple() + [F.vector([0, 0])]
    plan = plan_composite(f, X, s=1)
    assert isinstance(plan.meta, CompositeMeta)
    parts = {part.plan.scheme_tag: part.inputs for part in plan.meta.parts}
    assert parts["replication"] == (3,)
    _assert_decodes_under_drops(plan, f, X)


def test_composite_uses_affine_mode_for_general_polynomials() -> None:
    rng = random.Random(11)
    f = MultiPoly.random(F, 2, 2, rng)
    X = generic_points(F, 8, 2, rng)
    plan = plan_composite(f, X, s=1)
    assert plan.w <= 8 * 2
    _assert_decodes_under_drops(plan, f, X)


def test_composite_with_sparsity() -> None:
    rng = random.Random(12)
    f = MultiPoly.random(F, 3, 2, rng, homogeneous=True)
    X = generic_points(F, 9, 3, rng)
    plan = plan_composite(f, X, s=1, sparsity=2)
    _assert_decodes_under_drops(plan, f, X)


def test_line_composite_on_crossing_and_leftover() -> None:
    rng = random.Random(13)
    f = MultiPoly.random(F, 2, 2, rng)
    X = [F.vector(v) for v in ([0, 0], [0, 1], [2, 0], [2, 1], [50, 60])]
    plan = plan_line_composite(f, X, s=1)
    assert plan.w == 6 + 2
    _assert_decodes_under_drops(plan, f, X)


def test_decode_rejects_malformed_responses() -> None:
    X = _dependent_triple()
    f = _x1x2()
    plan = plan_homogeneous(f, X, find_minimal_dependency(X, HOMOGENEOUS), s=1)
    honest = list(_honest(plan, f).items())
    with pytest.raises(UsageError, match="outside plan"):
        decode(plan, honest + [(9, (F(1),))])
    with pytest.raises(UsageError, match="duplicate"):
        decode(plan, honest + [honest[0]])


def test_plan_serialization_is_decodable() -> None:
    rng = random.Random(14)
    f = MultiPoly.random(F, 2, 2, rng, homogeneous=True)
    X = generic_points(F, 6, 2, rng)
    plan = plan_composite(f, X, s=1)
    restored = QueryPlan.from_dict(plan.to_dict())
    assert restored.to_dict() == plan.to_dict()
    honest = _honest(plan, f)
    del honest[0]
    assert decode(restored, honest).outputs == decode(plan, honest).outputs


def test_closed_form_bounds() -> None:
    assert oblivious_threshold(4, 2, 1) == 8
    assert oblivious_threshold(4, 1, 1) == 5
    assert homogeneous_partition_bound(6, 2, 1) == Fraction(8)
    assert nonhomogeneous_partition_bound(4, 2, 1) == Fraction(6)
    assert sparse_dependency_threshold(3, 4, 2) == pytest.approx(12.0)
    assert line_structure_threshold(5, 3) == pytest.approx(40.0)
