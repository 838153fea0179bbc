"""Multivariate polynomials, query curves, interpolation and robust decoding.

A :class:`MultiPoly` is the computed function ``f: F^m -> F^u`` stored as ``u``
sparse scalar components. A :class:`Curve` is a vector-valued univariate
polynomial ``p: F -> F^m``; the restriction ``h(z) = f(p(z))`` is never built
symbolically, only sampled and re-interpolated as a Curve with ``m = u``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .core.exceptions import DecodingError, InconsistencyError, InsufficientResponsesError, UsageError
from .field import FieldElem, PrimeField
from .linalg import solve

Point = tuple[FieldElem, ...]
Exponents = tuple[int, ...]
Term = tuple[Exponents, FieldElem]
Sample = tuple[FieldElem, Sequence[FieldElem]]


# -- scalar polynomial helpers on int coefficient lists (lowest power first) --


def _trim(coeffs: list[int]) -> list[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def poly_eval(coeffs: Sequence[int], z: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * z + c) % p
    return acc


def poly_divmod(num: Sequence[int], den: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    den = _trim(list(den))
    if not any(den):
        raise UsageError("polynomial division by zero")
    rem = [value % p for value in num]
    lead_inv = pow(den[-1], -1, p)
    shift = len(rem) - len(den)
    if shift < 0:
        return [0], _trim(rem)
    quot = [0] * (shift + 1)
    for i in range(shift, -1, -1):
        factor = rem[i + len(den) - 1] * lead_inv % p
        quot[i] = factor
        if factor:
            for j, d in enumerate(den):
                rem[i + j] = (rem[i + j] - factor * d) % p
    return _trim(quot), _trim(rem[: len(den) - 1] or [0])


def poly_from_roots(roots: Iterable[int], p: int) -> list[int]:
    out = [1]
    for root in roots:
        out = poly_mul(out, [(-root) % p, 1], p)
    return out


def lagrange_basis(zs: Sequence[int], p: int) -> list[list[int]]:
    """Coefficient lists of the Lagrange basis polynomials for distinct ``zs``.

    Builds the master polynomial once and divides each root back out, then
    rescales by the numerator evaluated at its own node.
    """
    master = poly_from_roots(zs, p)
    basis: list[list[int]] = []
    for z in zs:
        numerator, _ = poly_divmod(master, [(-z) % p, 1], p)
        numerator = numerator + [0] * (len(zs) - len(numerator))
        scale = pow(poly_eval(numerator, z, p), -1, p)
        basis.append([c * scale % p for c in numerator])
    return basis


# -- multivariate polynomials --


def monomials(m: int, degree: int, *, exact: bool = False) -> Iterator[Exponents]:
    """Exponent vectors of all monomials in ``m`` variables with total degree ``<= degree``.

    Ordered by total degree, then lexicographically.
    """
    low = degree if exact else 0
    for total in range(low, degree + 1):
        for combo in itertools.combinations_with_replacement(range(m), total):
            exps = [0] * m
            for var in combo:
                exps[var] += 1
            yield tuple(exps)


def _normalize_component(field: PrimeField, m: int, terms: Iterable[tuple[Sequence[int], Any]]) -> tuple[Term, ...]:
    merged: dict[Exponents, int] = {}
    for exps, coeff in terms:
        key = tuple(int(e) for e in exps)
        if len(key) != m or any(e < 0 for e in key):
            raise UsageError(f"exponent vector {list(key)} does not match arity {m}")
        merged[key] = (merged.get(key, 0) + int(coeff)) % field.p
    return tuple(
        (key, FieldElem(value, field))
        for key, value in sorted(merged.items(), key=lambda item: (sum(item[0]), item[0]))
        if value
    )


@dataclass(frozen=True)
class MultiPoly:
    """Sparse ``f: F^m -> F^u``; ``components[c]`` is a tuple of ``(exponents, coeff)``."""

    field: PrimeField
    m: int
    components: tuple[tuple[Term, ...], ...]

    @classmethod
    def from_terms(
        cls,
        field: PrimeField,
        m: int,
        components: Sequence[Iterable[tuple[Sequence[int], Any]] | Mapping[Sequence[int], Any]],
    ) -> "MultiPoly":
        if m < 0:
            raise UsageError("input arity must be non-negative")
        if not components:
            raise UsageError("a polynomial map needs at least one output component")
        normalized = []
        for component in components:
            items = component.items() if isinstance(component, Mapping) else component
            normalized.append(_normalize_component(field, m, items))
        return cls(field=field, m=m, components=tuple(normalized))

    @classmethod
    def from_literal(cls, field: PrimeField, literal: Sequence[Sequence[Mapping[str, Any]]], m: int | None = None) -> "MultiPoly":
        """Build from the scenario literal ``[[{"coeff": c, "exps": [...]}, ...], ...]``."""
        if m is None:
            arities = {len(term["exps"]) for component in literal for term in component}
            if len(arities) != 1:
                raise UsageError("cannot infer input arity from polynomial literal")
            m = arities.pop()
        return cls.from_terms(field, m, [[(term["exps"], term["coeff"]) for term in component] for component in literal])

    @classmethod
    def constant(cls, field: PrimeField, m: int, values: Sequence[int]) -> "MultiPoly":
        return cls.from_terms(field, m, [[((0,) * m, value)] for value in values])

    @classmethod
    def random(
        cls,
        field: PrimeField,
        m: int,
        degree: int,
        rng: random.Random,
        *,
        u: int = 1,
        homogeneous: bool = False,
    ) -> "MultiPoly":
        """Random polynomial map of total degree exactly ``degree``."""
        support = list(monomials(m, degree, exact=homogeneous))
        components = []
        for index in range(u):
            terms = [(exps, rng.randrange(field.p)) for exps in support]
            if index == 0:
                top = [i for i, (exps, _) in enumerate(terms) if sum(exps) == degree]
                pick = top[rng.randrange(len(top))]
                terms[pick] = (terms[pick][0], rng.randrange(1, field.p))
            components.append(terms)
        return cls.from_terms(field, m, components)

    def to_literal(self) -> list[list[dict[str, Any]]]:
        return [
            [{"coeff": int(coeff), "exps": list(exps)} for exps, coeff in component] for component in self.components
        ]

    @property
    def u(self) -> int:
        return len(self.components)

    @property
    def total_degree(self) -> int:
        """Maximum term degree over all components; the zero map has degree 0."""
        return max((sum(exps) for component in self.components for exps, _ in component), default=0)

    def is_zero(self) -> bool:
        return all(not component for component in self.components)

    def __call__(self, x: Sequence[FieldElem]) -> Point:
        return eval_multi(self, x)


def eval_multi(f: MultiPoly, x: Sequence[FieldElem | int]) -> Point:
    if len(x) != f.m:
        raise UsageError(f"point has dimension {len(x)}, polynomial expects {f.m}")
    p = f.field.p
    xs = [int(value) % p for value in x]
    out = []
    for component in f.components:
        acc = 0
        for exps, coeff in component:
            term = coeff.value
            for xi, e in zip(xs, exps):
                if e:
                    term = term * pow(xi, e, p) % p
            acc += term
        out.append(FieldElem(acc, f.field))
    return tuple(out)


def is_homogeneous(f: MultiPoly) -> bool:
    degree = f.total_degree
    return all(sum(exps) == degree for component in f.components for exps, _ in component)


def homogenize(f: MultiPoly) -> MultiPoly:
    """Return ``f'(r, x) = r^deg(f) * f(x / r)`` with ``r`` as the new first variable."""
    degree = f.total_degree
    lifted = [[((degree - sum(exps),) + exps, coeff.value) for exps, coeff in component] for component in f.components]
    return MultiPoly.from_terms(f.field, f.m + 1, lifted)


# -- curves --


@dataclass(frozen=True)
class Curve:
    """Vector-valued univariate polynomial; ``coeffs[j]`` is the vector multiplying ``z**j``."""

    field: PrimeField
    m: int
    coeffs: tuple[Point, ...]

    def __post_init__(self) -> None:
        trimmed = list(self.coeffs) or [tuple(self.field.zero for _ in range(self.m))]
        for vector in trimmed:
            if len(vector) != self.m:
                raise UsageError(f"curve coefficient has dimension {len(vector)}, expected {self.m}")
        while len(trimmed) > 1 and not any(trimmed[-1]):
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(tuple(vector) for vector in trimmed))

    @classmethod
    def from_ints(cls, field: PrimeField, m: int, columns: Sequence[Sequence[int]]) -> "Curve":
        """Build from ``columns[c]`` = int coefficient list (lowest power first) of coordinate ``c``."""
        length = max((len(col) for col in columns), default=1)
        coeffs = []
        for j in range(length):
            coeffs.append(tuple(FieldElem(col[j] if j < len(col) else 0, field) for col in columns))
        return cls(field=field, m=m, coeffs=tuple(coeffs))

    @classmethod
    def constant(cls, point: Sequence[FieldElem]) -> "Curve":
        field = point[0].field
        return cls(field=field, m=len(point), coeffs=(tuple(point),))

    @classmethod
    def line(cls, base: Sequence[FieldElem], direction: Sequence[FieldElem]) -> "Curve":
        """The affine line ``base + z * direction``."""
        if len(base) != len(direction):
            raise UsageError("line base and direction differ in dimension")
        field = base[0].field
        return cls(field=field, m=len(base), coeffs=(tuple(base), tuple(direction)))

    @classmethod
    def through(cls, anchors: Sequence[FieldElem], points: Sequence[Sequence[FieldElem]]) -> "Curve":
        """Lowest-degree curve with ``curve(anchors[i]) == points[i]``."""
        return interpolate(list(zip(anchors, points)), len(points) - 1)

    @classmethod
    def combination(cls, field: PrimeField, m: int, terms: Sequence[tuple[Sequence[FieldElem], Sequence[int]]]) -> "Curve":
        """``sum(vector_i * L_i(z))`` for vectors paired with scalar int polynomials ``L_i``."""
        p = field.p
        length = max((len(poly) for _, poly in terms), default=1)
        columns = [[0] * length for _ in range(m)]
        for vector, scalar in terms:
            for c, value in enumerate(vector):
                v = int(value)
                if not v:
                    continue
                for j, coeff in enumerate(scalar):
                    columns[c][j] = (columns[c][j] + v * coeff) % p
        return cls.from_ints(field, m, columns)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def column(self, c: int) -> list[int]:
        return [int(vector[c]) for vector in self.coeffs]

    def __call__(self, z: FieldElem | int) -> Point:
        return eval_curve(self, z)

    def passes_through(self, z: FieldElem | int, point: Sequence[FieldElem]) -> bool:
        return eval_curve(self, z) == tuple(point)


def eval_curve(p: Curve, z: FieldElem | int) -> Point:
    modulus = p.field.p
    zv = int(z) % modulus
    acc = [0] * p.m
    for vector in reversed(p.coeffs):
        acc = [(a * zv + int(v)) % modulus for a, v in zip(acc, vector)]
    return tuple(FieldElem(value, p.field) for value in acc)


def _split_samples(samples: Sequence[Sample]) -> tuple[PrimeField, list[int], list[list[int]]]:
    if not samples:
        raise InsufficientResponsesError("no samples to interpolate")
    first_z = samples[0][0]
    if not isinstance(first_z, FieldElem):
        raise UsageError("sample anchors must be field elements")
    field = first_z.field
    zs = [int(field.element(z)) for z, _ in samples]
    if len(set(zs)) != len(zs):
        raise UsageError("sample anchors must be distinct")
    widths = {len(y) for _, y in samples}
    if len(widths) != 1:
        raise UsageError("samples have inconsistent output dimensions")
    ys = [[int(value) % field.p for value in y] for _, y in samples]
    return field, zs, ys


def interpolate(samples: Sequence[Sample], degree_bound: int) -> Curve:
    """Unique curve of degree ``<= degree_bound`` through the first ``degree_bound + 1`` samples.

    Extra samples are checked against the result; any disagreement raises
    :class:`InconsistencyError`.
    """
    if degree_bound < 0:
        raise UsageError("degree bound must be non-negative")
    field, zs, ys = _split_samples(samples)
    needed = degree_bound + 1
    if len(zs) < needed:
        raise InsufficientResponsesError(f"interpolation needs {needed} samples, got {len(zs)}")
    p = field.p
    u = len(ys[0])
    basis = lagrange_basis(zs[:needed], p)
    columns = []
    for c in range(u):
        column = [0] * needed
        for weight_poly, y in zip(basis, ys[:needed]):
            yc = y[c]
            if yc:
                for j, coeff in enumerate(weight_poly):
                    column[j] = (column[j] + yc * coeff) % p
        columns.append(column)
    for z, y in zip(zs[needed:], ys[needed:]):
        for c in range(u):
            if poly_eval(columns[c], z, p) != y[c]:
                raise InconsistencyError(
                    f"sample at z={z} disagrees with the degree-{degree_bound} interpolant"
                )
    return Curve.from_ints(field, u, columns)


def _welch_component(zs: Sequence[int], ys: Sequence[int], degree_bound: int, b: int, p: int) -> list[int]:
    q_len = degree_bound + b + 1
    matrix = []
    rhs = []
    for z, y in zip(zs, ys):
        powers = [pow(z, j, p) for j in range(q_len)]
        row = powers[:] + [(-y * powers[j]) % p for j in range(b)]
        matrix.append(row)
        rhs.append(y * pow(z, b, p) % p)
    solution = solve(matrix, rhs, p)
    if solution is None:
        raise DecodingError(f"no error-locator of degree {b} explains the samples")
    q_poly = solution[:q_len]
    e_poly = solution[q_len:] + [1]
    quotient, remainder = poly_divmod(q_poly, e_poly, p)
    if any(remainder):
        raise DecodingError("error-locator does not divide the numerator polynomial")
    if len(quotient) - 1 > degree_bound:
        raise DecodingError("decoded polynomial exceeds the degree bound")
    return quotient


def berlekamp_welch(samples: Sequence[Sample], degree_bound: int, b: int) -> Curve:
    """Recover the curve of degree ``<= degree_bound`` agreeing with all but ``<= b`` samples."""
    if b < 0:
        raise UsageError("corruption bound must be non-negative")
    if b == 0:
        return interpolate(samples, degree_bound)
    field, zs, ys = _split_samples(samples)
    needed = degree_bound + 2 * b + 1
    if len(zs) < needed:
        raise InsufficientResponsesError(f"robust decoding needs {needed} samples, got {len(zs)}")
    p = field.p
    u = len(ys[0])
    columns = [_welch_component(zs, [y[c] for y in ys], degree_bound, b, p) for c in range(u)]
    disagreements = sum(
        1 for z, y in zip(zs, ys) if any(poly_eval(columns[c], z, p) != y[c] for c in range(u))
    )
    if disagreements > b:
        raise DecodingError(f"decoded curve disagrees with {disagreements} samples, more than b={b}")
    return Curve.from_ints(field, u, columns)
