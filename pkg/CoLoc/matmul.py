"""Coded matrix multiplication: the polynomial code and MatDot.

Matrices are square ``(t*e) x (t*e)`` numpy arrays of Python ints reduced mod
``p`` (``dtype=object`` keeps the arithmetic exact). Worker ``i`` multiplies
the two encoded blocks evaluated at anchor ``z_i``; the master interpolates
the product polynomial entry-wise and reads the blocks of ``AB`` off its
coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .core.exceptions import UsageError
from .field import FieldElem, PrimeField
from .poly import Curve, interpolate

POLYNOMIAL_CODE = "polynomial"
MATDOT = "matdot"
MATMUL_SCHEMES = (POLYNOMIAL_CODE, MATDOT)


def _reduce(array: np.ndarray, p: int) -> np.ndarray:
    return np.vectorize(lambda value: int(value) % p, otypes=[object])(array)


@dataclass(frozen=True)
class BlockMatrix:
    field: PrimeField
    data: np.ndarray
    t: int

    def __post_init__(self) -> None:
        if self.data.ndim != 2 or self.data.shape[0] != self.data.shape[1]:
            raise UsageError(f"expected a square matrix, got shape {self.data.shape}")
        if self.t < 1 or self.data.shape[0] % self.t:
            raise UsageError(f"split t={self.t} does not divide dimension {self.data.shape[0]}")

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]], t: int) -> "BlockMatrix":
        return cls(field=field, data=_reduce(np.array(rows, dtype=object), field.p), t=t)

    @classmethod
    def identity(cls, field: PrimeField, size: int, t: int) -> "BlockMatrix":
        return cls.from_rows(field, [[int(i == j) for j in range(size)] for i in range(size)], t)

    @classmethod
    def random(cls, field: PrimeField, size: int, t: int, rng: random.Random) -> "BlockMatrix":
        return cls.from_rows(field, [[rng.randrange(field.p) for _ in range(size)] for _ in range(size)], t)

    @property
    def size(self) -> int:
        return self.data.shape[0]

    @property
    def e(self) -> int:
        return self.size // self.t

    def row_block(self, i: int) -> np.ndarray:
        """Rows ``[i*e, (i+1)*e)``, an ``e x te`` block (0-based ``i``)."""
        return self.data[i * self.e : (i + 1) * self.e, :]

    def col_block(self, j: int) -> np.ndarray:
        """Columns ``[j*e, (j+1)*e)``, a ``te x e`` block (0-based ``j``)."""
        return self.data[:, j * self.e : (j + 1) * self.e]

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.field != other.field or self.size != other.size:
            raise UsageError("matrices differ in field or size")
        return BlockMatrix(self.field, _reduce(self.data.dot(other.data), self.field.p), self.t)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.field == other.field and self.data.shape == other.data.shape and bool(np.all(self.data == other.data))

    def to_lists(self) -> list[list[int]]:
        return [[int(value) for value in row] for row in self.data]


@dataclass(frozen=True)
class MatmulPlan:
    scheme: str
    field: PrimeField
    t: int
    s: int
    size: int
    anchors: tuple[FieldElem, ...]
    encoded_a: tuple[np.ndarray, ...]
    encoded_b: tuple[np.ndarray, ...]

    @property
    def w(self) -> int:
        return len(self.anchors)

    @property
    def e(self) -> int:
        return self.size // self.t

    @property
    def degree(self) -> int:
        return self.t * self.t - 1 if self.scheme == POLYNOMIAL_CODE else 2 * self.t - 2

    def worker_shapes(self) -> dict[str, tuple[int, int]]:
        return {
            "a": tuple(self.encoded_a[0].shape),  # type: ignore[dict-item]
            "b": tuple(self.encoded_b[0].shape),  # type: ignore[dict-item]
            "product": (self.e, self.e) if self.scheme == POLYNOMIAL_CODE else (self.size, self.size),
        }


def _encode(blocks: Sequence[np.ndarray], powers: Sequence[int], z: int, p: int) -> np.ndarray:
    total = np.zeros(blocks[0].shape, dtype=object)
    for block, power in zip(blocks, powers):
        total = total + block * pow(z, power, p)
    return _reduce(total, p)


def _check_pair(A: BlockMatrix, B: BlockMatrix, t: int, s: int) -> PrimeField:
    if A.field != B.field:
        raise UsageError("A and B live in different fields")
    if A.size != B.size:
        raise UsageError(f"A is {A.size}x{A.size} but B is {B.size}x{B.size}")
    if t < 1 or A.size % t:
        raise UsageError(f"split t={t} does not divide dimension {A.size}")
    if s < 0:
        raise UsageError("s must be non-negative")
    return A.field


def _build(scheme: str, A: BlockMatrix, B: BlockMatrix, t: int, s: int) -> MatmulPlan:
    field = _check_pair(A, B, t, s)
    A = BlockMatrix(field, A.data, t)
    B = BlockMatrix(field, B.data, t)
    if scheme == POLYNOMIAL_CODE:
        w = t * t + s
        a_blocks = [A.row_block(i) for i in range(t)]
        b_blocks = [B.col_block(j) for j in range(t)]
        a_powers = list(range(t))
        b_powers = [j * t for j in range(t)]
    else:
        w = 2 * t - 1 + s
        a_blocks = [A.col_block(i) for i in range(t)]
        b_blocks = [B.row_block(j) for j in range(t)]
        a_powers = list(range(t))
        b_powers = [t - 1 - j for j in range(t)]
    anchors = tuple(field.enumerate(w))
    p = field.p
    return MatmulPlan(
        scheme=scheme,
        field=field,
        t=t,
        s=s,
        size=A.size,
        anchors=anchors,
        encoded_a=tuple(_encode(a_blocks, a_powers, int(z), p) for z in anchors),
        encoded_b=tuple(_encode(b_blocks, b_powers, int(z), p) for z in anchors),
    )


def polynomial_code_plan(A: BlockMatrix, B: BlockMatrix, t: int, s: int) -> MatmulPlan:
    """Outer split: ``t**2 + s`` workers each multiply an ``e x te`` by a ``te x e`` block."""
    _check_pair(A, B, t, s).require(t * t + s, "the polynomial code: t^2+s")
    return _build(POLYNOMIAL_CODE, A, B, t, s)


def matdot_plan(A: BlockMatrix, B: BlockMatrix, t: int, s: int) -> MatmulPlan:
    """Inner split: ``2t - 1 + s`` workers each multiply a ``te x e`` by an ``e x te`` block."""
    _check_pair(A, B, t, s).require(2 * t - 1 + s, "MatDot: 2t-1+s")
    return _build(MATDOT, A, B, t, s)


def worker_compute(plan: MatmulPlan, worker: int) -> np.ndarray:
    return _reduce(plan.encoded_a[worker].dot(plan.encoded_b[worker]), plan.field.p)


def interpolate_products(plan: MatmulPlan, responses: Mapping[int, np.ndarray], degree_bound: int | None = None) -> Curve:
    """Entry-wise interpolation of the worker products as one vector-valued curve."""
    bound = plan.degree if degree_bound is None else degree_bound
    samples = []
    for worker in sorted(responses):
        if not 0 <= worker < plan.w:
            raise UsageError(f"worker index {worker} outside plan of {plan.w} workers")
        flat = plan.field.vector([int(value) for value in np.asarray(responses[worker]).flat])
        samples.append((plan.anchors[worker], flat))
    return interpolate(samples, bound)


def _coefficient(curve: Curve, power: int, shape: tuple[int, int]) -> np.ndarray:
    if power > curve.degree:
        return np.zeros(shape, dtype=object)
    return np.array([int(value) for value in curve.coeffs[power]], dtype=object).reshape(shape)


def polynomial_code_decode(plan: MatmulPlan, responses: Mapping[int, np.ndarray]) -> BlockMatrix:
    """Block ``(i, j)`` of ``AB`` is the coefficient of ``z**(i + j*t)``."""
    if plan.scheme != POLYNOMIAL_CODE:
        raise UsageError(f"expected a polynomial code plan, got {plan.scheme}")
    curve = interpolate_products(plan, responses)
    e, t = plan.e, plan.t
    product = np.zeros((plan.size, plan.size), dtype=object)
    for i in range(t):
        for j in range(t):
            product[i * e : (i + 1) * e, j * e : (j + 1) * e] = _coefficient(curve, i + j * t, (e, e))
    return BlockMatrix(plan.field, product, t)


def matdot_decode(plan: MatmulPlan, responses: Mapping[int, np.ndarray]) -> BlockMatrix:
    """``AB`` is the coefficient of ``z**(t-1)``."""
    if plan.scheme != MATDOT:
        raise UsageError(f"expected a MatDot plan, got {plan.scheme}")
    curve = interpolate_products(plan, responses)
    return BlockMatrix(plan.field, _coefficient(curve, plan.t - 1, (plan.size, plan.size)), plan.t)


def plan_matmul(scheme: str, A: BlockMatrix, B: BlockMatrix, t: int, s: int) -> MatmulPlan:
    if scheme == POLYNOMIAL_CODE:
        return polynomial_code_plan(A, B, t, s)
    if scheme == MATDOT:
        return matdot_plan(A, B, t, s)
    raise UsageError(f"unknown matmul scheme {scheme!r}; expected one of {', '.join(MATMUL_SCHEMES)}")


def decode_matmul(plan: MatmulPlan, responses: Mapping[int, np.ndarray]) -> BlockMatrix:
    if plan.scheme == POLYNOMIAL_CODE:
        return polynomial_code_decode(plan, responses)
    return matdot_decode(plan, responses)
