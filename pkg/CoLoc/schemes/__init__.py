"""Query planners and decoders."""

from .composite import plan_composite, plan_line_composite
from .curves import fit_curve, plan_curve_direct, plan_intersecting, plan_lcc
from .decoder import decode
from .homogeneous import plan_homogeneous, plan_nonhomogeneous
from .plan import (
    SCHEME_TAGS,
    CompositeMeta,
    CompositePart,
    CurveMeta,
    DecodeResult,
    IntersectingMeta,
    QueryPlan,
    ReplicationMeta,
    baseline_oblivious,
)
from .replication import plan_replication

__all__ = [
    "SCHEME_TAGS",
    "CompositeMeta",
    "CompositePart",
    "CurveMeta",
    "DecodeResult",
    "IntersectingMeta",
    "QueryPlan",
    "ReplicationMeta",
    "baseline_oblivious",
    "decode",
    "fit_curve",
    "plan_composite",
    "plan_curve_direct",
    "plan_homogeneous",
    "plan_intersecting",
    "plan_lcc",
    "plan_line_composite",
    "plan_nonhomogeneous",
    "plan_replication",
]
