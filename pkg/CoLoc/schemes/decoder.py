"""Master-side decoding of worker responses for every plan kind."""

from __future__ import annotations

import logging
from collections import Counter
from typing import Iterable, Mapping, Sequence

from ..core.exceptions import DecodingError, InsufficientResponsesError, UsageError
from ..field import FieldElem
from ..poly import berlekamp_welch
from ..utils.logger import get_child_logger, log_event
from .plan import CompositeMeta, CurveMeta, DecodeResult, IntersectingMeta, Point, QueryPlan, ReplicationMeta

Responses = Mapping[int, Sequence[FieldElem | int]] | Iterable[tuple[int, Sequence[FieldElem | int]]]

logger = get_child_logger("decoder")


def normalize_responses(plan: QueryPlan, responses: Responses) -> dict[int, Point]:
    """Map worker index to response, rejecting unknown or repeated workers."""
    items = responses.items() if isinstance(responses, Mapping) else responses
    normalized: dict[int, Point] = {}
    for worker, value in items:
        index = int(worker)
        if not 0 <= index < plan.w:
            raise UsageError(f"worker index {index} outside plan of {plan.w} workers")
        if index in normalized:
            raise UsageError(f"duplicate response for worker {index}")
        normalized[index] = plan.field.vector(list(value))
    widths = {len(value) for value in normalized.values()}
    if len(widths) > 1:
        raise UsageError("responses have inconsistent output dimensions")
    return normalized


def _decode_replication(plan: QueryPlan, meta: ReplicationMeta, responses: dict[int, Point]) -> DecodeResult:
    outputs: list[Point] = []
    for index, group in enumerate(meta.groups):
        received = [responses[worker] for worker in group if worker in responses]
        if not received:
            raise InsufficientResponsesError(f"every replica of input {index} is missing")
        value, votes = Counter(received).most_common(1)[0]
        if 2 * votes <= len(received):
            raise DecodingError(f"no strict majority among {len(received)} replicas of input {index}")
        outputs.append(value)
    return DecodeResult(outputs=tuple(outputs), used_responses=tuple(sorted(responses)))


def _decode_curve(plan: QueryPlan, meta: CurveMeta, responses: dict[int, Point]) -> DecodeResult:
    samples = [
        (meta.anchors[worker], tuple(meta.weights[worker] * value for value in responses[worker]))
        for worker in sorted(responses)
    ]
    restricted = berlekamp_welch(samples, meta.degree_bound, plan.b)
    outputs = tuple(
        tuple(weight * value for value in restricted(anchor))
        for anchor, weight in zip(meta.output_anchors, meta.output_weights)
    )
    return DecodeResult(outputs=outputs, used_responses=tuple(sorted(responses)))


def _decode_intersecting(plan: QueryPlan, meta: IntersectingMeta, responses: dict[int, Point]) -> DecodeResult:
    split = meta.split
    groups = (
        [(meta.anchors1[i], responses[i]) for i in sorted(responses) if i < split],
        [(meta.anchors2[i - split], responses[i]) for i in sorted(responses) if i >= split],
    )
    bounds = (meta.degree_bound1, meta.degree_bound2)
    crossing = (meta.z1, meta.z2)
    needed = [bound + 2 * plan.b + 1 for bound in bounds]
    first = next((j for j in (0, 1) if len(groups[j]) >= needed[j]), None)
    if first is None:
        raise InsufficientResponsesError(
            f"neither curve has enough responses ({len(groups[0])}/{needed[0]}, {len(groups[1])}/{needed[1]})"
        )
    second = 1 - first
    curves = [None, None]
    curves[first] = berlekamp_welch(groups[first], bounds[first], plan.b)
    shared = (crossing[second], curves[first](crossing[first]))
    curves[second] = berlekamp_welch(groups[second] + [shared], bounds[second], plan.b)
    outputs = tuple(curves[number - 1](anchor) for number, anchor in meta.outputs)
    return DecodeResult(outputs=outputs, used_responses=tuple(sorted(responses)))


def _decode_composite(plan: QueryPlan, meta: CompositeMeta, responses: dict[int, Point]) -> DecodeResult:
    outputs: list[Point | None] = [None] * plan.k
    for part in meta.parts:
        window = range(part.offset, part.offset + part.plan.w)
        local = {worker - part.offset: responses[worker] for worker in window if worker in responses}
        result = decode(part.plan, local)
        for index, value in zip(part.inputs, result.outputs):
            outputs[index] = value
    return DecodeResult(outputs=tuple(outputs), used_responses=tuple(sorted(responses)))  # type: ignore[arg-type]


_DECODERS = {
    ReplicationMeta: _decode_replication,
    CurveMeta: _decode_curve,
    IntersectingMeta: _decode_intersecting,
    CompositeMeta: _decode_composite,
}


def decode(plan: QueryPlan, responses: Responses) -> DecodeResult:
    """Recover ``f(X_1), ..., f(X_k)`` from at least ``w - s`` responses, at most ``b`` of them corrupted."""
    received = normalize_responses(plan, responses)
    needed = plan.w - plan.s
    if len(received) < needed:
        raise InsufficientResponsesError(f"{plan.scheme_tag} plan needs {needed} of {plan.w} responses, got {len(received)}")
    decoder = _DECODERS.get(type(plan.meta))
    if decoder is None:
        raise UsageError(f"no decoder for metadata {type(plan.meta).__name__}")
    try:
        return decoder(plan, plan.meta, received)
    except DecodingError as exc:
        log_event(
            logger,
            logging.DEBUG,
            "Decoding failed",
            event="decode_failed",
            scheme=plan.scheme_tag,
            received=len(received),
            reason=str(exc),
        )
        raise
