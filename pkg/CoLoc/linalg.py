"""Gaussian elimination over GF(p) on plain ``int`` rows."""

from __future__ import annotations

from typing import Hashable, Sequence

from .field import FieldElem

IntRow = list[int]


def as_ints(vector: Sequence[FieldElem | int]) -> IntRow:
    return [int(value) for value in vector]


def row_reduce(rows: Sequence[Sequence[int]], p: int, n_cols: int | None = None) -> tuple[list[IntRow], list[int]]:
    """Return the reduced row echelon form of ``rows`` and its pivot columns."""
    work = [[value % p for value in row] for row in rows]
    if not work:
        return [], []
    width = len(work[0]) if n_cols is None else n_cols
    pivots: list[int] = []
    row_idx = 0
    for col in range(width):
        pivot = None
        for r in range(row_idx, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        scale = pow(work[row_idx][col], -1, p)
        lead = [value * scale % p for value in work[row_idx]]
        work[row_idx] = lead
        for r in range(len(work)):
            if r != row_idx and work[r][col]:
                factor = work[r][col]
                work[r] = [(a - factor * b) % p for a, b in zip(work[r], lead)]
        pivots.append(col)
        row_idx += 1
        if row_idx == len(work):
            break
    return work, pivots


def rank(vectors: Sequence[Sequence[FieldElem | int]], p: int) -> int:
    if not vectors:
        return 0
    _, pivots = row_reduce([as_ints(v) for v in vectors], p)
    return len(pivots)


def solve(matrix: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> IntRow | None:
    """Solve ``matrix @ x = rhs``; free variables are set to zero, ``None`` when inconsistent."""
    if not matrix:
        return []
    n_cols = len(matrix[0])
    augmented = [list(row) + [value] for row, value in zip(matrix, rhs)]
    reduced, pivots = row_reduce(augmented, p, n_cols=n_cols)
    for row in reduced[len(pivots):]:
        if row[n_cols] % p:
            return None
    solution = [0] * n_cols
    for r, col in enumerate(pivots):
        solution[col] = reduced[r][n_cols]
    return solution


class EchelonBasis:
    """Incrementally built echelon basis that remembers how each row was formed.

    Rows are kept with a unit pivot and zeros at the pivots of earlier rows, so
    a new vector is reduced by a single pass in insertion order. Each row carries
    its expression as a combination of the labelled vectors inserted so far.
    """

    def __init__(self, p: int) -> None:
        self.p = p
        self._rows: list[tuple[int, IntRow, dict[Hashable, int]]] = []

    def __len__(self) -> int:
        return len(self._rows)

    def insert(self, vector: Sequence[FieldElem | int], label: Hashable) -> dict[Hashable, int] | None:
        """Insert ``vector``; if it is already spanned return its expression instead.

        The returned mapping ``{label: coeff}`` has only nonzero coefficients and
        satisfies ``sum(coeff * vector_of(label)) == vector``. Dependent vectors are
        not added to the basis.
        """
        p = self.p
        current = [int(value) % p for value in vector]
        combo: dict[Hashable, int] = {label: 1}
        for pivot, row, row_combo in self._rows:
            factor = current[pivot]
            if not factor:
                continue
            current = [(a - factor * b) % p for a, b in zip(current, row)]
            for key, coeff in row_combo.items():
                combo[key] = (combo.get(key, 0) - factor * coeff) % p
        lead = next((i for i, value in enumerate(current) if value), None)
        if lead is None:
            return {key: (-coeff) % p for key, coeff in combo.items() if key != label and coeff % p}
        scale = pow(current[lead], -1, p)
        current = [value * scale % p for value in current]
        combo = {key: coeff * scale % p for key, coeff in combo.items() if coeff % p}
        self._rows.append((lead, current, combo))
        return None
