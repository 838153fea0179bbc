"""Exact arithmetic in prime fields GF(p).

Every other module computes over a :class:`PrimeField`. Elements are immutable
:class:`FieldElem` values holding a canonical representative in ``[0, p)``.
Hot loops elsewhere in the package work on the raw ``int`` values and wrap
results back into elements at their public edges.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence, Union

from .core.exceptions import DivisionByZeroError, FieldError, FieldTooSmallError, UsageError

_MAX_BITS = 61
# Deterministic Miller-Rabin witness set, valid for every n < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for integers below 2**64."""
    if n < 2:
        return False
    for small in _MR_WITNESSES:
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field of integers modulo a prime ``p``."""

    __slots__ = ("p",)

    def __init__(self, p: int) -> None:
        if isinstance(p, bool) or not isinstance(p, int):
            raise FieldError(f"modulus must be an integer, got {type(p).__name__}")
        if p < 2:
            raise FieldError(f"modulus must be at least 2, got {p}")
        if p.bit_length() > _MAX_BITS:
            raise FieldError(f"modulus must fit in {_MAX_BITS} bits, got {p.bit_length()} bits")
        if not is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PrimeField is immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __call__(self, value: int | "FieldElem") -> "FieldElem":
        return self.element(value)

    def __len__(self) -> int:
        return self.p

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(1, self)

    def element(self, value: int | "FieldElem") -> "FieldElem":
        if isinstance(value, FieldElem):
            self.check(value)
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"cannot coerce {type(value).__name__} into {self!r}")
        return FieldElem(value % self.p, self)

    def vector(self, values: Sequence[int | "FieldElem"]) -> tuple["FieldElem", ...]:
        return tuple(self.element(value) for value in values)

    def check(self, elem: "FieldElem") -> None:
        if elem.field.p != self.p:
            raise UsageError(f"element of GF({elem.field.p}) used in {self!r}")

    def require(self, count: int, what: str = "construction") -> None:
        """Raise :class:`FieldTooSmallError` unless ``count`` distinct elements exist."""
        if count > self.p:
            raise FieldTooSmallError(count, self.p, what)

    def enumerate(self, n: int) -> list["FieldElem"]:
        """Return the canonical anchors ``0, 1, ..., n-1``."""
        if n < 0:
            raise UsageError("anchor count must be non-negative")
        self.require(n, "anchor selection")
        return [FieldElem(i, self) for i in range(n)]

    def anchors(self, exclude: Sequence["FieldElem"] = ()) -> Iterator["FieldElem"]:
        """Yield field elements in canonical order, skipping ``exclude``."""
        skipped = {int(e) for e in exclude}
        for value in range(self.p):
            if value not in skipped:
                yield FieldElem(value, self)

    def elements(self) -> Iterator["FieldElem"]:
        for value in range(self.p):
            yield FieldElem(value, self)

    def random_element(self, rng: random.Random, *, nonzero: bool = False) -> "FieldElem":
        low = 1 if nonzero else 0
        return FieldElem(rng.randrange(low, self.p), self)

    def random_vector(self, rng: random.Random, size: int, *, nonzero: bool = False) -> tuple["FieldElem", ...]:
        """Random vector in F^size; with ``nonzero`` the vector (not each entry) is nonzero."""
        while True:
            values = tuple(FieldElem(rng.randrange(self.p), self) for _ in range(size))
            if not nonzero or any(values):
                return values


_Operand = Union["FieldElem", int]


class FieldElem:
    """An element of a :class:`PrimeField`."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField) -> None:
        object.__setattr__(self, "value", value % field.p)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FieldElem is immutable")

    def _coerce(self, other: _Operand) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field.p != self.field.p:
                raise UsageError(f"mismatched fields: GF({self.field.p}) and GF({other.field.p})")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return FieldElem(other, self.field)
        raise UsageError(f"unsupported operand {type(other).__name__} for field arithmetic")

    def __add__(self, other: _Operand) -> "FieldElem":
        rhs = self._coerce(other)
        return FieldElem(self.value + rhs.value, self.field)

    __radd__ = __add__

    def __sub__(self, other: _Operand) -> "FieldElem":
        rhs = self._coerce(other)
        return FieldElem(self.value - rhs.value, self.field)

    def __rsub__(self, other: _Operand) -> "FieldElem":
        return self._coerce(other) - self

    def __mul__(self, other: _Operand) -> "FieldElem":
        rhs = self._coerce(other)
        return FieldElem(self.value * rhs.value, self.field)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElem":
        return FieldElem(-self.value, self.field)

    def __truediv__(self, other: _Operand) -> "FieldElem":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: _Operand) -> "FieldElem":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElem(pow(self.value, exponent, self.field.p), self.field)

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise DivisionByZeroError(f"zero has no inverse in GF({self.field.p})")
        return FieldElem(pow(self.value, -1, self.field.p), self.field)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElem):
            return other.field.p == self.field.p and other.value == self.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}"


def _same_field(a: FieldElem, b: FieldElem) -> None:
    if a.field.p != b.field.p:
        raise UsageError(f"mismatched fields: GF({a.field.p}) and GF({b.field.p})")


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    _same_field(a, b)
    return a + b


def sub(a: FieldElem, b: FieldElem) -> FieldElem:
    _same_field(a, b)
    return a - b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _same_field(a, b)
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def power(a: FieldElem, e: int) -> FieldElem:
    """Square-and-multiply exponentiation; ``0**0`` is one."""
    if e < 0:
        raise UsageError("exponent must be non-negative")
    acc = 1
    base = a.value
    p = a.field.p
    while e:
        if e & 1:
            acc = acc * base % p
        base = base * base % p
        e >>= 1
    return FieldElem(acc, a.field)


def enumerate_elements(field: PrimeField, n: int) -> list[FieldElem]:
    return field.enumerate(n)
