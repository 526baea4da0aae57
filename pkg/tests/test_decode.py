import random

import pytest

from oracles import bruteforce_fixed_intersection_counts
from polardesign.counting import gaussian_binomial, fixed_intersection_count
from polardesign.decode import (
    build_decoding_system,
    determinant_bound_check,
    gamma_l1_exact,
    gamma_value,
    verify_local_decodability,
)
from polardesign.fields import make_field
from polardesign.geometry import (
    Subspace,
    enumerate_extensions,
    intersection_dimension,
    isotropic_kspaces,
    standard_polar_space,
    subspace_contains,
    subspaces_within,
)


def test_worked_system_p2_t1_k2():
    s = build_decoding_system(2, 1, 2)
    assert s.matrix == ((2, 1), (0, 3))
    assert s.det == 6 and s.m == 6
    assert s.f == (-1, 2)
    assert s.det_cols == (-1, 2)
    assert 2 * (-1) + 1 * 2 == 0 and 2 * gaussian_binomial(2, 1, 2) == 6


def test_worked_system_p2_t1_k3():
    s = build_decoding_system(2, 1, 3)
    assert s.matrix == ((4, 3), (0, 7))
    assert s.det == 28 and s.m == 28 and s.f == (-3, 4)


def test_t_equals_k_collapses():
    for p in (2, 3, 5):
        for k in (1, 2, 4):
            s = build_decoding_system(p, k, k)
            assert s.matrix[k][k] == 1
            assert s.m == s.f[k]


def test_invalid_parameters():
    with pytest.raises(ValueError):
        build_decoding_system(2, 3, 2)
    with pytest.raises(ValueError):
        build_decoding_system(2, 0, 2)
    with pytest.raises(ValueError):
        build_decoding_system(1, 1, 2)


@pytest.mark.parametrize("p", [2, 3, 4, 5, 9, 25])
def test_system_invariants_sweep(p):
    for t in range(1, 7):
        for k in range(t, 7):
            s = build_decoding_system(p, t, k)
            size = t + 1
            for ell in range(size):
                assert s.matrix[ell][ell] != 0
                for j in range(ell):
                    assert s.matrix[ell][j] == 0
            rhs = [
                sum(s.matrix[ell][j] * s.f[j] for j in range(size))
                for ell in range(size)
            ]
            assert rhs == [0] * t + [s.m]
            assert s.f == s.det_cols
            assert s.m == s.f[t] * gaussian_binomial(k, t, p)
            assert s.m > 0
            bound = p ** (k * (t + 1) ** 2)
            assert abs(s.det) <= bound
            assert all(abs(x) <= bound for x in s.det_cols)


def test_determinant_bound_report_examples():
    report = determinant_bound_check(build_decoding_system(2, 1, 2))
    assert report.ok and report.bound == 256 and report.det_margin == 250
    report = determinant_bound_check(build_decoding_system(2, 1, 3))
    assert report.ok and report.bound == 2**12
    report = determinant_bound_check(build_decoding_system(3, 2, 3))
    assert report.ok and report.bound == 3**27


@pytest.mark.parametrize("p,k,t", [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 2, 2)])
def test_fixed_intersection_bruteforce_in_plain_space(p, k, t):
    field = make_field(p)
    for ell in range(t):
        histogram = bruteforce_fixed_intersection_counts(field, k, t, ell)
        for j in range(ell, t + 1):
            assert histogram.get(j, 0) == fixed_intersection_count(p, k, t, ell, j)
        assert sum(histogram.values()) == sum(
            fixed_intersection_count(p, k, t, ell, j) for j in range(ell, t + 1)
        )


def test_fixed_intersection_bruteforce_inside_polar_space():
    # the same counts hold verbatim for subspaces of an isotropic W
    space = standard_polar_space("C", 3, 2)
    t, k = 1, 2
    points = isotropic_kspaces(space, t)
    vspace = points[0]
    wspace = next(iter(enumerate_extensions(space, vspace, k + t)))
    inside = subspaces_within(space.field, wspace, t)
    kspaces = subspaces_within(space.field, wspace, k)
    for vprime in inside:
        if vprime == vspace:
            continue
        ell = intersection_dimension(space.field, vspace, vprime)
        histogram = {}
        for u in kspaces:
            if subspace_contains(space.field, u, vprime):
                j = intersection_dimension(space.field, u, vspace)
                histogram[j] = histogram.get(j, 0) + 1
        for j in range(ell, t + 1):
            assert histogram.get(j, 0) == fixed_intersection_count(space.p, k, t, ell, j)


def test_gamma_value_examples():
    space = standard_polar_space("C", 3, 2)
    system = build_decoding_system(2, 1, 2)
    points = isotropic_kspaces(space, 1)
    vspace = points[0]
    wspace = next(iter(enumerate_extensions(space, vspace, 3)))
    lines = isotropic_kspaces(space, 2)
    outside = next(u for u in lines if not subspace_contains(space.field, wspace, u))
    assert gamma_value(space, system, vspace, wspace, outside) == 0
    inside = subspaces_within(space.field, wspace, 2)
    through = next(u for u in inside if subspace_contains(space.field, u, vspace))
    avoiding = next(
        u
        for u in inside
        if intersection_dimension(space.field, u, vspace) == 0
    )
    assert gamma_value(space, system, vspace, wspace, through) == 2
    assert gamma_value(space, system, vspace, wspace, avoiding) == -1


def test_gamma_value_validates_inputs():
    space = standard_polar_space("C", 3, 2)
    system = build_decoding_system(2, 1, 2)
    points = isotropic_kspaces(space, 1)
    vspace = points[0]
    wspace = next(iter(enumerate_extensions(space, vspace, 3)))
    lines = isotropic_kspaces(space, 2)
    with pytest.raises(ValueError):
        gamma_value(space, system, lines[0], wspace, lines[0])
    other = next(p for p in points if not subspace_contains(space.field, wspace, p))
    with pytest.raises(ValueError):
        gamma_value(space, system, other, wspace, lines[0])


@pytest.mark.parametrize("family", ["C", "B"])
def test_local_decodability_on_live_spaces(family):
    space = standard_polar_space(family, 3, 2)
    report = verify_local_decodability(space, 1, 2)
    assert report.ok
    assert report.m == 6
    assert report.gamma_l1 == 10 and report.c4 == 10
    assert report.checked == 63
    assert report.c3_bound == 2 * 10 * 63
    assert report.l1_formula_consistent and report.l1_coarse_bound_ok


def test_local_decodability_random_pairs():
    rng = random.Random(17)
    space = standard_polar_space("C", 3, 2)
    points = isotropic_kspaces(space, 1)
    for _ in range(3):
        vspace = rng.choice(points)
        wspace = rng.choice(list(enumerate_extensions(space, vspace, 3)))
        report = verify_local_decodability(space, 1, 2, vspace, wspace)
        assert report.ok and report.m == 6 and report.gamma_l1 == 10


def test_local_decodability_requires_room():
    space = standard_polar_space("C", 2, 2)
    with pytest.raises(ValueError):
        verify_local_decodability(space, 1, 2)  # t + k > n


def test_gamma_l1_closed_form_matches_enumeration():
    # already covered on live spaces; spot-check the formula growth
    s = build_decoding_system(2, 1, 3)
    # 15 planes of a 4-space: 7 through V (f=4), 8 avoiding (f=-3)
    assert gamma_l1_exact(s) == 7 * 4 + 8 * 3


def test_solution_against_rational_elimination():
    # third, fully independent path: plain Gaussian elimination over Q
    from fractions import Fraction

    for p, t, k in [(2, 1, 2), (2, 2, 4), (3, 2, 3), (5, 3, 4), (4, 2, 5)]:
        s = build_decoding_system(p, t, k)
        size = t + 1
        a = [[Fraction(x) for x in row] + [Fraction(0)] for row in s.matrix]
        a[t][size] = Fraction(s.m)
        for i in range(size):
            piv = a[i][i]
            for r in range(size):
                if r != i and a[r][i]:
                    factor = a[r][i] / piv
                    for c in range(i, size + 1):
                        a[r][c] -= factor * a[i][c]
        solution = [a[i][size] / a[i][i] for i in range(size)]
        assert all(x.denominator == 1 for x in solution)
        assert tuple(int(x) for x in solution) == s.f
