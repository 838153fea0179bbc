"""Closed-form worker counts and thresholds."""

from __future__ import annotations

from fractions import Fraction


def redundancy(s: int, b: int = 0) -> int:
    return s + 2 * b + 1


def replication_workers(k: int, s: int, b: int = 0) -> int:
    return k * redundancy(s, b)


def lcc_curve_workers(k: int, degree: int, s: int, b: int = 0) -> int:
    return (k - 1) * degree + redundancy(s, b)


def oblivious_threshold(k: int, degree: int, s: int, b: int = 0) -> int:
    """Best worker count available when encoding ignores the input points."""
    return min(replication_workers(k, s, b), lcc_curve_workers(k, degree, s, b))


def curve_direct_workers(degree: int, curve_degree: int, s: int, b: int = 0) -> int:
    return degree * curve_degree + redundancy(s, b)


def homogeneous_workers(k: int, degree: int, s: int, b: int = 0) -> int:
    return (k - 2) * degree + redundancy(s, b)


def nonhomogeneous_field_bound(k: int, degree: int, s: int, b: int = 0) -> int:
    """Field size that leaves room for skipping anchors where the lifted coordinate vanishes."""
    return (k - 2) * (degree + 1) + redundancy(s, b)


def intersecting_split(degree: int, deg1: int, deg2: int, s: int, b: int = 0) -> tuple[int, int]:
    """Queries placed on each of two crossing curves.

    Without stragglers neither curve alone reaches its interpolation count, so
    the first curve gets one extra query.
    """
    first = degree * deg1 + s + 2 * b
    second = degree * deg2 + s + 2 * b
    if s == 0:
        first += 1
    return first, second


def intersecting_workers(degree: int, deg1: int, deg2: int, s: int, b: int = 0) -> int:
    return sum(intersecting_split(degree, deg1, deg2, s, b))


def homogeneous_partition_bound(k: int, m: int, s: int, b: int = 0) -> Fraction:
    return Fraction(k * m, m + 1) * redundancy(s, b)


def nonhomogeneous_partition_bound(k: int, m: int, s: int, b: int = 0) -> Fraction:
    return Fraction(k * (m + 1), m + 2) * redundancy(s, b)


def sparse_dependency_threshold(q: int, m: int, e: int) -> float:
    """Point count beyond which ``k`` nonzero vectors in ``F_q^m`` hold a dependency of size ``<= 2e``."""
    return 2 * e * q ** (m / e - 1)


def line_structure_threshold(q: int, m: int) -> float:
    """Point count beyond which ``k`` points in ``F_q^m`` hold a collinear triple or a crossing."""
    return 8 * q ** ((m - 1) / 2)


def sparse_partition_bound(k: int, m: int, q: int, e: int, s: int) -> float:
    """Worker bound for degree ``s + 1`` functions when inputs split into sparse dependencies."""
    leftover = (s + 1) * 2 * e * q ** ((m + 1) / e - 1)
    return k * float(Fraction(2 * e - 1, 2 * e) * (s + 1)) + leftover


def line_partition_bound(k: int, m: int, q: int, s: int) -> float:
    """Worker bound for degree ``s + 1`` functions when inputs split into line structures."""
    return k * (s + 0.5) + (s + 1) * line_structure_threshold(q, m)
