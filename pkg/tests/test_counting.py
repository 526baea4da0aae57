from fractions import Fraction

import pytest

from oracles import naive_all_subspaces
from polardesign.counting import (
    CountExpression,
    gaussian_binomial,
    lambda_ratio,
    fixed_intersection_count,
    polar_count,
    polar_count_expr,
    polar_count_through,
    polar_count_through_expr,
    power_half,
)
from polardesign.fields import make_field
from polardesign.geometry import standard_polar_space

ALL_SMALL_SPACES = [
    standard_polar_space(fam, n, q)
    for fam in ("2A-odd", "2A-even", "B", "C", "D", "2D")
    for n, q in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)]
]


def test_gaussian_binomial_basics():
    assert gaussian_binomial(5, 0, 3) == 1
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 4, 2) == 0
    with pytest.raises(ValueError):
        gaussian_binomial(-1, 0, 2)
    with pytest.raises(ValueError):
        gaussian_binomial(2, 1, 1)


def test_gaussian_binomial_against_enumeration():
    # frozen from the brute-force subspace count of F_2^4
    assert len(naive_all_subspaces(make_field(2), 4, 2)) == 35
    assert gaussian_binomial(4, 2, 2) == 35
    assert len(naive_all_subspaces(make_field(3), 4, 2)) == gaussian_binomial(4, 2, 3)


def test_gaussian_binomial_symmetry_and_recurrence():
    for p in (2, 3, 4, 5):
        for n in range(9):
            for k in range(n + 1):
                assert gaussian_binomial(n, k, p) == gaussian_binomial(n, n - k, p)
                if n and k:
                    assert gaussian_binomial(n, k, p) == gaussian_binomial(
                        n - 1, k - 1, p
                    ) + p**k * gaussian_binomial(n - 1, k, p)


def test_gaussian_binomial_sandwich_bound():
    for p in (2, 3, 4, 5):
        for n in range(41):
            for k in range(n + 1):
                value = gaussian_binomial(n, k, p)
                assert p ** (k * (n - k)) <= value <= 4 * p ** (k * (n - k))


def test_power_half():
    assert power_half(4, 3) == 8
    assert power_half(3, 4) == 9
    with pytest.raises(ValueError):
        power_half(3, 5)


def test_polar_count_examples():
    assert polar_count(standard_polar_space("C", 2, 2), 1) == 15
    assert polar_count(standard_polar_space("B", 3, 3), 3) == 1120
    expr = polar_count_expr(standard_polar_space("B", 3, 3), 3)
    assert expr.factors == (1, 28, 10, 4)
    for space in ALL_SMALL_SPACES:
        assert polar_count(space, 0) == 1


def test_polar_count_through_examples():
    assert polar_count_through(standard_polar_space("C", 2, 2), 1, 2) == 3
    assert polar_count_through(standard_polar_space("C", 3, 2), 1, 3) == 15
    for space in ALL_SMALL_SPACES:
        for t in range(space.n + 1):
            assert polar_count_through(space, t, t) == 1


def test_count_expression_invariant():
    for space in ALL_SMALL_SPACES:
        for k in range(space.n + 1):
            expr = polar_count_expr(space, k)
            assert isinstance(expr, CountExpression)
            prod = 1
            for f in expr.factors:
                prod *= f
            assert prod == expr.value
            for t in range(k + 1):
                through = polar_count_through_expr(space, t, k)
                prod = 1
                for f in through.factors:
                    prod *= f
                assert prod == through.value


def test_fixed_intersection_examples():
    assert fixed_intersection_count(2, 2, 1, 0, 0) == 2
    assert fixed_intersection_count(2, 2, 1, 0, 1) == 1
    for p in (2, 3, 4):
        for k in range(1, 6):
            for t in range(1, k + 1):
                assert fixed_intersection_count(p, k, t, t, t) == gaussian_binomial(k, t, p)


def test_fixed_intersection_out_of_range_is_zero():
    assert fixed_intersection_count(2, 3, 2, 0, 3) == 0  # j > k + ell - t
    with pytest.raises(ValueError):
        fixed_intersection_count(2, 2, 3, 0, 1)  # t > k


def test_product_bound_five_halves():
    # prod(1 + p^-(n-i+e)) < 5/2 whenever t + k <= n (so t <= n/2)
    for space in ALL_SMALL_SPACES:
        for t in range(1, space.n // 2 + 1):
            prod = Fraction(1)
            for i in range(t):
                prod *= 1 + Fraction(1, power_half(space.p, 2 * (space.n - i) + space.twice_e))
            assert prod < Fraction(5, 2)


def test_lambda_ratio_examples():
    sp = standard_polar_space("C", 2, 2)
    ratio = lambda_ratio(sp, 1, 2, 5)
    assert ratio.value == 1 and ratio.consistent
    sp = standard_polar_space("C", 3, 2)
    ratio = lambda_ratio(sp, 1, 3, 9)
    assert ratio.value == Fraction(9 * 15, 135) == 1
    assert lambda_ratio(sp, 1, 2, 0).value == 0


def test_lambda_ratio_simplification_everywhere():
    for space in ALL_SMALL_SPACES:
        for t in range(space.n + 1):
            for k in range(t, space.n + 1):
                ratio = lambda_ratio(space, t, k, 7)
                assert ratio.consistent
                assert ratio.value == ratio.simplified
