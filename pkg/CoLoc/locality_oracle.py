"""Brute-force computational locality of tiny Reed-Muller style function classes.

The associated code of a class lists, for every function, its evaluations on
the whole domain ``F_q^m`` in lexicographic order. The repeated code copies
each symbol ``s + 1`` times; symbol ``j`` is base position ``j % n`` with label
``j // n + 1``. Locality of an index set ``I`` is the size of the smallest
symbol set ``J`` such that any two codewords within distance ``s`` on ``J``
agree on ``I``.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Sequence

from .core.exceptions import BudgetExceededError, UsageError
from .core.settings import RuntimeSettings, load_runtime_settings
from .field import FieldElem, PrimeField
from .poly import MultiPoly, eval_multi, monomials
from .utils.logger import get_child_logger, log_event

logger = get_child_logger("locality_oracle")


@dataclass(frozen=True)
class AssociatedCode:
    field: PrimeField
    m: int
    degree: int
    homogeneous: bool
    domain: tuple[tuple[FieldElem, ...], ...]
    codewords: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.domain)

    def codeword_of(self, f: MultiPoly) -> tuple[int, ...]:
        """Evaluation table of a single-output ``f`` on the domain."""
        if f.u != 1:
            raise UsageError("associated codes are defined for single-output functions")
        return tuple(int(eval_multi(f, point)[0]) for point in self.domain)


@dataclass(frozen=True)
class RepeatedCode:
    base: AssociatedCode
    s: int

    @property
    def length(self) -> int:
        return (self.s + 1) * self.base.n

    def position(self, j: int) -> tuple[int, int]:
        """Return ``(base position, label)`` of repeated symbol ``j``."""
        if not 0 <= j < self.length:
            raise UsageError(f"symbol {j} outside repeated code of length {self.length}")
        return j % self.base.n, j // self.base.n + 1

    def symbol(self, codeword: Sequence[int], j: int) -> tuple[int, int]:
        base, label = self.position(j)
        return codeword[base], label

    def expand(self, codeword: Sequence[int]) -> tuple[tuple[int, int], ...]:
        return tuple(self.symbol(codeword, j) for j in range(self.length))


@dataclass(frozen=True)
class LocalityResult:
    size: int
    witness: tuple[int, ...]
    index_set: tuple[int, ...]


def hamming_distance(c1: Sequence[Any], c2: Sequence[Any]) -> int:
    if len(c1) != len(c2):
        raise UsageError(f"codewords differ in length: {len(c1)} and {len(c2)}")
    return sum(1 for a, b in zip(c1, c2) if a != b)


def hamming_ball_membership(c: Sequence[Any], center: Sequence[Any], r: int) -> bool:
    return hamming_distance(c, center) <= r


def build_associated_code(
    q: int,
    m: int,
    d: int,
    *,
    homogeneous: bool = False,
    settings: RuntimeSettings | None = None,
) -> AssociatedCode:
    """Enumerate every polynomial of total degree ``<= d`` (or homogeneous of degree ``d``) by its coefficients."""
    config = settings or load_runtime_settings()
    field = PrimeField(q)
    if m < 1 or d < 0:
        raise UsageError("need m >= 1 and d >= 0")
    n = q**m
    if n > config.oracle_max_domain:
        raise BudgetExceededError(f"domain size {q}^{m} = {n} exceeds the oracle limit of {config.oracle_max_domain}")
    support = list(monomials(m, d, exact=homogeneous))
    class_size = q ** len(support)
    if class_size > config.oracle_max_class:
        raise BudgetExceededError(
            f"class of {class_size} polynomials exceeds the oracle limit of {config.oracle_max_class}"
        )
    raw_domain = list(itertools.product(range(q), repeat=m))
    table = [
        [math.prod(pow(x, e, q) for x, e in zip(point, exps)) % q for point in raw_domain] for exps in support
    ]
    codewords = []
    for coeffs in itertools.product(range(q), repeat=len(support)):
        codewords.append(
            tuple(sum(c * row[v] for c, row in zip(coeffs, table)) % q for v in range(n))
        )
    domain = tuple(tuple(FieldElem(x, field) for x in point) for point in raw_domain)
    return AssociatedCode(
        field=field, m=m, degree=d, homogeneous=homogeneous, domain=domain, codewords=tuple(codewords)
    )


def repeat(code: AssociatedCode, s: int) -> RepeatedCode:
    if s < 0:
        raise UsageError("s must be non-negative")
    return RepeatedCode(base=code, s=s)


def _difference_masks(code: RepeatedCode, index_set: Sequence[int]) -> list[int]:
    """Symbol masks where two codewords differ, over all pairs that differ on ``index_set``.

    Both classes are vector spaces, so pair differences are exactly the
    codewords and it is enough to scan codewords nonzero on ``index_set``.
    """
    n = code.base.n
    masks: set[int] = set()
    for word in code.base.codewords:
        if not any(word[i] for i in index_set):
            continue
        base_mask = 0
        for position, value in enumerate(word):
            if value:
                base_mask |= 1 << position
        masks.add(sum(base_mask << (label * n) for label in range(code.s + 1)))
    return sorted(masks, key=lambda mask: (mask.bit_count(), mask))


def _check_budget(code: RepeatedCode, config: RuntimeSettings) -> None:
    if code.length > config.oracle_max_symbols:
        raise BudgetExceededError(
            f"repeated code has {code.length} symbols; subset search is limited to {config.oracle_max_symbols}"
        )


def computational_locality_symbols(
    code: RepeatedCode,
    I: Sequence[int],
    s: int | None = None,
    *,
    settings: RuntimeSettings | None = None,
) -> LocalityResult:
    """Smallest symbol set ``J`` that decodes the symbols ``I`` despite ``s`` erasures.

    Sizes are tried in ascending order and within a size ``J`` is enumerated
    lexicographically, so the witness is the lexicographically first minimum.
    """
    config = settings or load_runtime_settings()
    if s is not None and s != code.s:
        raise UsageError(f"repeated code was built for s={code.s}, not s={s}")
    index_set = tuple(sorted(set(I)))
    if not index_set or any(not 0 <= i < code.base.n for i in index_set):
        raise UsageError(f"index set must be a non-empty subset of [0, {code.base.n})")
    _check_budget(code, config)
    masks = _difference_masks(code, index_set)
    needed = code.s + 1
    for size in range(code.length + 1):
        for subset in itertools.combinations(range(code.length), size):
            chosen = sum(1 << j for j in subset)
            if all((chosen & mask).bit_count() >= needed for mask in masks):
                return LocalityResult(size=size, witness=subset, index_set=index_set)
    raise BudgetExceededError("no symbol set decodes the index set")


def computational_locality(
    code: RepeatedCode,
    k: int,
    s: int | None = None,
    *,
    settings: RuntimeSettings | None = None,
) -> LocalityResult:
    """Worst case of :func:`computational_locality_symbols` over all size-``k`` index sets."""
    config = settings or load_runtime_settings()
    if not 1 <= k <= code.base.n:
        raise UsageError(f"k must lie in [1, {code.base.n}]")
    _check_budget(code, config)
    worst: LocalityResult | None = None
    for index_set in itertools.combinations(range(code.base.n), k):
        result = computational_locality_symbols(code, index_set, s, settings=config)
        if worst is None or result.size > worst.size:
            worst = result
    assert worst is not None
    return worst


def locality_upper_bound(k: int, d: int, s: int) -> int:
    return min(k * (s + 1), (k - 1) * d + s + 1)


def locality_report(
    q: int,
    m: int,
    d: int,
    k: int,
    s: int,
    *,
    homogeneous: bool = False,
    settings: RuntimeSettings | None = None,
) -> dict[str, Any]:
    config = settings or load_runtime_settings()
    started = time.perf_counter()
    code = build_associated_code(q, m, d, homogeneous=homogeneous, settings=config)
    repeated = repeat(code, s)
    result = computational_locality(repeated, k, settings=config)
    elapsed = time.perf_counter() - started
    report = {
        "q": q,
        "m": m,
        "d": d,
        "k": k,
        "s": s,
        "homogeneous": homogeneous,
        "codewords": len(code.codewords),
        "locality": result.size,
        "index_set": list(result.index_set),
        "witness": [list(repeated.position(j)) for j in result.witness],
        "witness_symbols": list(result.witness),
        "upper_bound": locality_upper_bound(k, d, s),
        "seconds": round(elapsed, 3),
    }
    log_event(
        logger,
        logging.INFO,
        "Locality oracle completed",
        event="oracle_completed",
        q=q,
        m=m,
        d=d,
        k=k,
        s=s,
        locality=result.size,
    )
    return report
