from importlib.metadata import PackageNotFoundError, version

from .field import FieldElem, PrimeField
from .poly import Curve, MultiPoly, berlekamp_welch, eval_curve, eval_multi, homogenize, interpolate, is_homogeneous
from .schemes import (
    DecodeResult,
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
from .structure import find_intersecting_lines, find_minimal_dependency, find_sparse_dependency

try:
    __version__ = version("coloc")
except PackageNotFoundError:
    __version__ = "0.1.0"

__all__ = [
    "PrimeField",
    "FieldElem",
    "MultiPoly",
    "Curve",
    "eval_multi",
    "eval_curve",
    "interpolate",
    "berlekamp_welch",
    "homogenize",
    "is_homogeneous",
    "find_minimal_dependency",
    "find_sparse_dependency",
    "find_intersecting_lines",
    "QueryPlan",
    "DecodeResult",
    "decode",
    "plan_replication",
    "plan_lcc",
    "plan_curve_direct",
    "plan_homogeneous",
    "plan_nonhomogeneous",
    "plan_intersecting",
    "plan_composite",
    "plan_line_composite",
    "__version__",
]
