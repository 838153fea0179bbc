"""Query plans, decode metadata and their JSON-ready serialization."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Mapping, Sequence

from ..core.exceptions import UsageError
from ..field import FieldElem, PrimeField
from ..structure import Dependency
from ..utils.logger import get_child_logger, log_event
from .bounds import oblivious_threshold

SCHEME_TAGS = (
    "replication",
    "lcc",
    "curve_direct",
    "homogeneous",
    "nonhomogeneous",
    "intersecting",
    "composite",
)

Point = tuple[FieldElem, ...]

logger = get_child_logger("schemes")


def _ints(values: Sequence[FieldElem]) -> list[int]:
    return [int(value) for value in values]


def _elems(field: PrimeField, values: Sequence[int]) -> tuple[FieldElem, ...]:
    return tuple(FieldElem(int(value), field) for value in values)


@dataclass(frozen=True)
class ReplicationMeta:
    """``groups[i]`` lists the workers holding a copy of input ``i``."""

    groups: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "replication", "groups": [list(group) for group in self.groups]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], field: PrimeField) -> "ReplicationMeta":
        return cls(groups=tuple(tuple(int(i) for i in group) for group in data["groups"]))


@dataclass(frozen=True)
class CurveMeta:
    """Decode data shared by every single-curve scheme.

    Worker ``i`` answered at curve parameter ``anchors[i]``; its response times
    ``weights[i]`` is a sample of the restricted curve. Output ``j`` is
    ``output_weights[j]`` times the decoded curve at ``output_anchors[j]``.
    """

    anchors: tuple[FieldElem, ...]
    degree_bound: int
    output_anchors: tuple[FieldElem, ...]
    weights: tuple[FieldElem, ...]
    output_weights: tuple[FieldElem, ...]
    lambdas: tuple[FieldElem, ...] = ()
    dependency: Dependency | None = None
    rs: tuple[FieldElem, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "kind": "curve",
            "anchors": _ints(self.anchors),
            "degree_bound": self.degree_bound,
            "output_anchors": _ints(self.output_anchors),
            "weights": _ints(self.weights),
            "output_weights": _ints(self.output_weights),
        }
        if self.lambdas:
            data["lambdas"] = _ints(self.lambdas)
        if self.dependency is not None:
            data["dependency"] = {
                "indices": list(self.dependency.indices),
                "coeffs": _ints(self.dependency.coeffs),
                "mode": self.dependency.mode,
            }
        if self.rs:
            data["rs"] = _ints(self.rs)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], field: PrimeField) -> "CurveMeta":
        dependency = None
        if data.get("dependency"):
            raw = data["dependency"]
            dependency = Dependency(
                indices=tuple(int(i) for i in raw["indices"]),
                coeffs=_elems(field, raw["coeffs"]),
                mode=str(raw["mode"]),
            )
        return cls(
            anchors=_elems(field, data["anchors"]),
            degree_bound=int(data["degree_bound"]),
            output_anchors=_elems(field, data["output_anchors"]),
            weights=_elems(field, data["weights"]),
            output_weights=_elems(field, data["output_weights"]),
            lambdas=_elems(field, data.get("lambdas", [])),
            dependency=dependency,
            rs=_elems(field, data.get("rs", [])),
        )


@dataclass(frozen=True)
class IntersectingMeta:
    """Two query groups on crossing curves.

    Workers ``[0, split)`` sample the first curve at ``anchors1``, the rest the
    second curve at ``anchors2``. The curves meet at ``first(z1) == second(z2)``.
    ``outputs[i]`` is ``(curve number, anchor)`` of input ``i``.
    """

    anchors1: tuple[FieldElem, ...]
    anchors2: tuple[FieldElem, ...]
    degree_bound1: int
    degree_bound2: int
    z1: FieldElem
    z2: FieldElem
    outputs: tuple[tuple[int, FieldElem], ...]

    @property
    def split(self) -> int:
        return len(self.anchors1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "intersecting",
            "anchors1": _ints(self.anchors1),
            "anchors2": _ints(self.anchors2),
            "degree_bound1": self.degree_bound1,
            "degree_bound2": self.degree_bound2,
            "z1": int(self.z1),
            "z2": int(self.z2),
            "outputs": [[curve, int(anchor)] for curve, anchor in self.outputs],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], field: PrimeField) -> "IntersectingMeta":
        return cls(
            anchors1=_elems(field, data["anchors1"]),
            anchors2=_elems(field, data["anchors2"]),
            degree_bound1=int(data["degree_bound1"]),
            degree_bound2=int(data["degree_bound2"]),
            z1=FieldElem(int(data["z1"]), field),
            z2=FieldElem(int(data["z2"]), field),
            outputs=tuple((int(curve), FieldElem(int(anchor), field)) for curve, anchor in data["outputs"]),
        )


@dataclass(frozen=True)
class CompositePart:
    plan: "QueryPlan"
    inputs: tuple[int, ...]
    offset: int


@dataclass(frozen=True)
class CompositeMeta:
    parts: tuple[CompositePart, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "composite",
            "parts": [
                {"inputs": list(part.inputs), "offset": part.offset, "plan": part.plan.to_dict()} for part in self.parts
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], field: PrimeField) -> "CompositeMeta":
        return cls(
            parts=tuple(
                CompositePart(
                    plan=QueryPlan.from_dict(part["plan"]),
                    inputs=tuple(int(i) for i in part["inputs"]),
                    offset=int(part["offset"]),
                )
                for part in data["parts"]
            )
        )


DecodeMeta = ReplicationMeta | CurveMeta | IntersectingMeta | CompositeMeta

_META_KINDS: dict[str, Any] = {
    "replication": ReplicationMeta,
    "curve": CurveMeta,
    "intersecting": IntersectingMeta,
    "composite": CompositeMeta,
}


@dataclass(frozen=True)
class QueryPlan:
    """Evaluation points handed to the workers plus what the master needs to decode."""

    field: PrimeField
    queries: tuple[Point, ...]
    s: int
    b: int
    scheme_tag: str
    meta: DecodeMeta
    k: int
    degree: int
    baseline_oblivious: int = dataclass_field(default=0)

    @property
    def w(self) -> int:
        return len(self.queries)

    def to_dict(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme_tag,
            "modulus": self.field.p,
            "k": self.k,
            "degree": self.degree,
            "s": self.s,
            "b": self.b,
            "w": self.w,
            "baseline_oblivious": self.baseline_oblivious,
            "queries": [_ints(query) for query in self.queries],
            "decode_meta": self.meta.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "QueryPlan":
        field = PrimeField(int(data["modulus"]))
        meta_data = data["decode_meta"]
        meta_cls = _META_KINDS.get(meta_data.get("kind"))
        if meta_cls is None:
            raise UsageError(f"unknown decode metadata kind {meta_data.get('kind')!r}")
        return cls(
            field=field,
            queries=tuple(_elems(field, query) for query in data["queries"]),
            s=int(data["s"]),
            b=int(data["b"]),
            scheme_tag=str(data["scheme"]),
            meta=meta_cls.from_dict(meta_data, field),
            k=int(data["k"]),
            degree=int(data["degree"]),
            baseline_oblivious=int(data["baseline_oblivious"]),
        )

    def summary(self) -> dict[str, Any]:
        return {"scheme": self.scheme_tag, "w": self.w, "baseline_oblivious": self.baseline_oblivious}


@dataclass(frozen=True)
class DecodeResult:
    outputs: tuple[Point, ...]
    used_responses: tuple[int, ...]


def baseline_oblivious(k: int, degree: int, s: int, b: int = 0) -> int:
    return oblivious_threshold(k, degree, s, b)


def check_tolerances(s: int, b: int) -> None:
    if s < 0 or b < 0:
        raise UsageError("straggler and byzantine tolerances must be non-negative")


def build_plan(
    field: PrimeField,
    queries: Sequence[Sequence[FieldElem]],
    *,
    s: int,
    b: int,
    scheme_tag: str,
    meta: DecodeMeta,
    k: int,
    degree: int,
) -> QueryPlan:
    if scheme_tag not in SCHEME_TAGS:
        raise UsageError(f"unknown scheme tag {scheme_tag!r}")
    if not queries:
        raise UsageError("a plan needs at least one worker")
    plan = QueryPlan(
        field=field,
        queries=tuple(tuple(query) for query in queries),
        s=s,
        b=b,
        scheme_tag=scheme_tag,
        meta=meta,
        k=k,
        degree=degree,
        baseline_oblivious=baseline_oblivious(k, degree, s, b),
    )
    log_event(
        logger,
        logging.DEBUG,
        "Query plan built",
        event="plan_built",
        scheme=scheme_tag,
        w=plan.w,
        k=k,
        baseline=plan.baseline_oblivious,
    )
    return plan
