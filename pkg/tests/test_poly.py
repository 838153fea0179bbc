from __future__ import annotations

import itertools
import random

import pytest

from CoLoc.core.exceptions import DecodingError, InconsistencyError, InsufficientResponsesError, UsageError
from CoLoc.field import PrimeField, power
from CoLoc.poly import (
    Curve,
    MultiPoly,
    berlekamp_welch,
    eval_curve,
    eval_multi,
    homogenize,
    interpolate,
    is_homogeneous,
    lagrange_basis,
    monomials,
    poly_divmod,
    poly_eval,
    poly_from_roots,
    poly_mul,
)

F = PrimeField(97)


def _x1x2() -> MultiPoly:
    return MultiPoly.from_terms(F, 2, [[((1, 1), 1)]])


def test_scalar_helpers_agree() -> None:
    p = 97
    a = [1, 2, 3]
    b = [5, 0, 1]
    product = poly_mul(a, b, p)
    for z in range(10):
        assert poly_eval(product, z, p) == poly_eval(a, z, p) * poly_eval(b, z, p) % p
    quotient, remainder = poly_divmod(product, b, p)
    assert quotient == a
    assert remainder == [0]
    assert [poly_eval(poly_from_roots([2, 3], p), z, p) for z in (2, 3)] == [0, 0]


def test_lagrange_basis_is_kronecker_on_nodes() -> None:
    zs = [0, 1, 5, 9]
    basis = lagrange_basis(zs, 97)
    for i, poly in enumerate(basis):
        assert [poly_eval(poly, z, 97) for z in zs] == [int(i == j) for j in range(len(zs))]


def test_monomials_are_ordered_by_degree() -> None:
    assert list(monomials(2, 2)) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert list(monomials(2, 2, exact=True)) == [(2, 0), (1, 1), (0, 2)]


def test_eval_multi_product_of_coordinates() -> None:
    f = _x1x2()
    assert eval_multi(f, F.vector([3, 4])) == (F(12),)
    assert f(F.vector([0, 7])) == (F(0),)


def test_eval_multi_rejects_wrong_dimension() -> None:
    with pytest.raises(UsageError, match="dimension"):
        eval_multi(_x1x2(), F.vector([1, 2, 3]))


def test_literal_round_trip_and_arity_inference() -> None:
    literal = [[{"coeff": 3, "exps": [2, 0]}, {"coeff": 1, "exps": [0, 1]}], [{"coeff": 5, "exps": [0, 0]}]]
    f = MultiPoly.from_literal(F, literal)
    assert f.m == 2
    assert f.u == 2
    assert f.total_degree == 2
    assert MultiPoly.from_literal(F, f.to_literal()) == f


def test_like_terms_merge_and_zero_terms_drop() -> None:
    f = MultiPoly.from_terms(F, 1, [[((1,), 50), ((1,), 47), ((0,), 2)]])
    assert f.components == (((((0,), F(2))),),)
    assert f.total_degree == 0


def test_random_polynomial_has_exact_degree() -> None:
    rng = random.Random(4)
    for degree in range(4):
        f = MultiPoly.random(F, 3, degree, rng)
        assert f.total_degree == degree
        g = MultiPoly.random(F, 3, degree, rng, homogeneous=True)
        assert is_homogeneous(g)
        assert g.total_degree == degree


def test_homogenize_matches_original_at_r_equal_one() -> None:
    f = MultiPoly.from_terms(F, 2, [[((2, 0), 3), ((0, 1), 5), ((0, 0), 7)]])
    lifted = homogenize(f)
    assert lifted.m == 3
    assert is_homogeneous(lifted)
    assert not is_homogeneous(f)
    rng = random.Random(1)
    for _ in range(20):
        x = F.random_vector(rng, 2)
        assert lifted((F.one,) + x) == f(x)
        r = F.random_element(rng, nonzero=True)
        scaled = tuple(r * value for value in x)
        assert lifted((r,) + scaled)[0] == r**2 * f(x)[0]


def test_curve_line_and_trimming() -> None:
    line = Curve.line(F.vector([1, 2]), F.vector([3, 0]))
    assert line.degree == 1
    assert eval_curve(line, 2) == F.vector([7, 2])
    flat = Curve(F, 2, (F.vector([1, 1]), F.vector([0, 0])))
    assert flat.degree == 0


def test_curve_through_points() -> None:
    anchors = F.enumerate(3)
    points = [F.vector([1, 0]), F.vector([4, 4]), F.vector([9, 2])]
    curve = Curve.through(anchors, points)
    assert curve.degree <= 2
    for z, point in zip(anchors, points):
        assert curve.passes_through(z, point)


def test_interpolate_recovers_polynomial() -> None:
    curve = Curve.from_ints(F, 1, [[3, 0, 2]])
    samples = [(z, curve(z)) for z in F.enumerate(3)]
    assert interpolate(samples, 2) == curve


def test_interpolate_checks_extra_samples() -> None:
    curve = Curve.from_ints(F, 1, [[1, 1]])
    samples = [(z, curve(z)) for z in F.enumerate(3)]
    assert interpolate(samples, 1) == curve
    samples[2] = (samples[2][0], (samples[2][1][0] + 1,))
    with pytest.raises(InconsistencyError):
        interpolate(samples, 1)


def test_interpolate_preconditions() -> None:
    z0, z1 = F.enumerate(2)
    with pytest.raises(InsufficientResponsesError):
        interpolate([(z0, (F(1),))], 1)
    with pytest.raises(UsageError, match="distinct"):
        interpolate([(z0, (F(1),)), (z0, (F(2),))], 1)
    with pytest.raises(UsageError):
        interpolate([(0, (F(1),)), (z1, (F(2),))], 1)


def test_berlekamp_welch_corrects_up_to_b_errors() -> None:
    rng = random.Random(9)
    degree, b = 3, 2
    for _ in range(10):
        curve = Curve.from_ints(F, 2, [[rng.randrange(97) for _ in range(degree + 1)] for _ in range(2)])
        zs = F.enumerate(degree + 2 * b + 1)
        samples = [(z, curve(z)) for z in zs]
        for position in rng.sample(range(len(samples)), b):
            z, y = samples[position]
            samples[position] = (z, (y[0] + rng.randrange(1, 97), y[1]))
        assert berlekamp_welch(samples, degree, b) == curve


def test_berlekamp_welch_with_zero_b_interpolates() -> None:
    curve = Curve.from_ints(F, 1, [[5, 6]])
    samples = [(z, curve(z)) for z in F.enumerate(2)]
    assert berlekamp_welch(samples, 1, 0) == curve


def test_berlekamp_welch_needs_enough_samples() -> None:
    samples = [(z, (F(1),)) for z in F.enumerate(3)]
    with pytest.raises(InsufficientResponsesError):
        berlekamp_welch(samples, 1, 2)


def test_berlekamp_welch_fails_with_too_many_errors() -> None:
    degree, b = 1, 1
    zs = F.enumerate(degree + 2 * b + 1)
    # values of z**3 do not lie within distance one of any line
    samples = [(z, (z**3,)) for z in zs]
    with pytest.raises(DecodingError):
        berlekamp_welch(samples, degree, b)


def test_interpolation_recovers_seeded_curves() -> None:
    rng = random.Random(2024)
    for _ in range(1000):
        degree = rng.randrange(9)
        u = rng.randrange(1, 4)
        curve = Curve.from_ints(F, u, [[rng.randrange(97) for _ in range(degree + 1)] for _ in range(u)])
        anchors = [F(z) for z in rng.sample(range(97), degree + 1 + rng.randrange(3))]
        samples = [(z, curve(z)) for z in anchors]
        assert interpolate(samples, degree) == curve


@pytest.mark.parametrize("degree,b", [(1, 1), (2, 2), (3, 1), (3, 2)])
def test_berlekamp_welch_corrects_every_error_pattern(degree: int, b: int) -> None:
    rng = random.Random(degree * 10 + b)
    curve = Curve.from_ints(F, 2, [[rng.randrange(97) for _ in range(degree + 1)] for _ in range(2)])
    zs = F.enumerate(degree + 2 * b + 1)
    clean = [(z, curve(z)) for z in zs]
    for count in range(b + 1):
        for positions in itertools.combinations(range(len(clean)), count):
            samples = list(clean)
            for position in positions:
                z, y = samples[position]
                column = rng.randrange(2)
                shifted = list(y)
                shifted[column] = shifted[column] + rng.randrange(1, 97)
                samples[position] = (z, tuple(shifted))
            assert berlekamp_welch(samples, degree, b) == curve


def test_homogeneous_polynomials_scale_by_degree_power() -> None:
    G = PrimeField(7)
    rng = random.Random(5)
    points = list(itertools.product(range(7), repeat=2))
    for degree in range(4):
        f = MultiPoly.random(G, 2, degree, rng, u=2, homogeneous=True)
        for alpha in G.elements():
            for values in points:
                x = G.vector(list(values))
                scaled = tuple(alpha * value for value in x)
                assert f(scaled) == tuple(power(alpha, degree) * value for value in f(x))
