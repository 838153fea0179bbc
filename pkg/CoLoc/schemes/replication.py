"""Input replication: each input sent to ``s + 2b + 1`` workers."""

from __future__ import annotations

from typing import Sequence

from ..core.exceptions import UsageError
from ..field import FieldElem
from .bounds import redundancy
from .plan import QueryPlan, ReplicationMeta, build_plan, check_tolerances


def plan_replication(
    X: Sequence[Sequence[FieldElem]],
    s: int,
    b: int = 0,
    *,
    degree: int = 0,
) -> QueryPlan:
    """Replicate every input; ``degree`` only feeds the oblivious baseline of the plan."""
    check_tolerances(s, b)
    if not X or not X[0]:
        raise UsageError("replication needs at least one input point of positive dimension")
    field = X[0][0].field
    copies = redundancy(s, b)
    queries = [tuple(point) for point in X for _ in range(copies)]
    groups = tuple(tuple(range(i * copies, (i + 1) * copies)) for i in range(len(X)))
    return build_plan(
        field,
        queries,
        s=s,
        b=b,
        scheme_tag="replication",
        meta=ReplicationMeta(groups=groups),
        k=len(X),
        degree=degree,
    )
