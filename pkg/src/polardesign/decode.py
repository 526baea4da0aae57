"""The (t+1)x(t+1) decoding system: matrix D, integer solution vector f,
the support-restricted functionals gamma_V, and local-decodability checks on
live polar spaces.

Row ell < t of D counts, inside a totally isotropic (k+t)-space W, the
k-subspaces through a second t-space V' meeting the fixed t-space V in a
j-dimensional subspace; row t pins f(t)*[k t]_p = m.  The system is solved
twice - integer back-substitution and independent column determinants - and
both answers must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .counting import gaussian_binomial, fixed_intersection_count, polar_count
from .geometry import (
    DEFAULT_ENUMERATION_BUDGET,
    PolarSpace,
    Subspace,
    enumerate_extensions,
    intersection_dimension,
    is_totally_isotropic,
    isotropic_kspaces,
    subspace_contains,
    subspaces_within,
)


def _det_exact(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian (Bareiss) determinant over the integers."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class DecodingSystem:
    """Upper-triangular system D f = (0, .., 0, m)^T with integer solution."""

    p: int
    t: int
    k: int
    matrix: tuple[tuple[int, ...], ...]
    det: int
    det_cols: tuple[int, ...]
    f: tuple[int, ...]
    m: int


def build_decoding_system(p: int, t: int, k: int) -> DecodingSystem:
    """Assemble D from the fixed-intersection counts and solve exactly."""
    if not 1 <= t <= k:
        raise ValueError("need 1 <= t <= k (the diagonal of D must be nonzero)")
    if p < 2:
        raise ValueError("p must be at least 2")
    size = t + 1
    matrix = tuple(
        tuple(fixed_intersection_count(p, k, t, ell, j) for j in range(size)) for ell in range(size)
    )

    det = 1
    for i in range(size):
        det *= matrix[i][i]

    # integer back-substitution on D f = (0, .., 0, det)^T
    f = [0] * size
    quotient, remainder = divmod(det, matrix[t][t])
    if remainder:
        raise AssertionError("m is not divisible by the last diagonal entry")
    f[t] = quotient
    for ell in range(t - 1, -1, -1):
        acc = sum(matrix[ell][j] * f[j] for j in range(ell + 1, size))
        quotient, remainder = divmod(-acc, matrix[ell][ell])
        if remainder:
            raise AssertionError(f"non-integer solution at row {ell}")
        f[ell] = quotient

    # independent path: Cramer column determinants
    det_cols = []
    for j in range(size):
        modified = [
            [1 if c == j and r == t else (0 if c == j else matrix[r][c]) for c in range(size)]
            for r in range(size)
        ]
        det_cols.append(_det_exact(modified))
    if list(det_cols) != f:
        raise AssertionError("back-substitution and column determinants disagree")

    m = det
    if det < 0:  # defensive: these entries always give det > 0
        m = -det
        f = [-x for x in f]
    return DecodingSystem(
        p=p,
        t=t,
        k=k,
        matrix=matrix,
        det=det,
        det_cols=tuple(det_cols),
        f=tuple(f),
        m=m,
    )


def determinant_bound(system: DecodingSystem) -> int:
    """p^(k(t+1)^2), the shared bound on |det D| and every |det D_j|."""
    return system.p ** (system.k * (system.t + 1) ** 2)


@dataclass(frozen=True)
class DeterminantBoundReport:
    ok: bool
    bound: int
    det_margin: int
    col_margins: tuple[int, ...]


def determinant_bound_check(system: DecodingSystem) -> DeterminantBoundReport:
    """Exact-integer comparison of |det D|, |det D_j| against the bound."""
    bound = determinant_bound(system)
    det_margin = bound - abs(system.det)
    col_margins = tuple(bound - abs(x) for x in system.det_cols)
    ok = det_margin >= 0 and all(mg >= 0 for mg in col_margins)
    return DeterminantBoundReport(
        ok=ok, bound=bound, det_margin=det_margin, col_margins=col_margins
    )


def gamma_l1_exact(system: DecodingSystem) -> int:
    """||gamma_V||_1 in closed form: k-subspaces of the (k+t)-space W grouped
    by their intersection dimension with V."""
    p, t, k = system.p, system.t, system.k
    total = 0
    for j in range(t + 1):
        count = (
            p ** ((t - j) * (k - j))
            * gaussian_binomial(t, j, p)
            * gaussian_binomial(k, k - j, p)
        )
        total += abs(system.f[j]) * count
    return total


def gamma_value(
    space: PolarSpace,
    system: DecodingSystem,
    tspace: Subspace,
    wspace: Subspace,
    kspace: Subspace,
) -> int:
    """gamma_V(U): f(dim(U cap V)) on k-subspaces of W, zero elsewhere."""
    t, k = system.t, system.k
    if tspace.k != t or kspace.k != k or wspace.k != k + t:
        raise ValueError("dimension mismatch against the decoding system")
    if space.p != system.p:
        raise ValueError("field order mismatch")
    if k + t > space.n:
        raise ValueError("needs t + k <= rank for an isotropic (k+t)-space")
    if not subspace_contains(space.field, wspace, tspace):
        raise ValueError("V must be contained in W")
    if not is_totally_isotropic(space.form, wspace):
        raise ValueError("W must be totally isotropic")
    if not subspace_contains(space.field, wspace, kspace):
        return 0
    return system.f[intersection_dimension(space.field, kspace, tspace)]


@dataclass(frozen=True)
class LocalDecodabilityReport:
    ok: bool
    m: int
    gamma_l1: int
    c4: int
    c3_bound: int
    tspace: Subspace
    wspace: Subspace
    checked: int
    violations: tuple[tuple[Subspace, int], ...]
    l1_formula_consistent: bool
    l1_coarse_bound_ok: bool


def verify_local_decodability(
    space: PolarSpace,
    t: int,
    k: int,
    tspace: Subspace | None = None,
    wspace: Subspace | None = None,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> LocalDecodabilityReport:
    """Check sum_U gamma_V(U) phi_V'(U) = m * delta_{V,V'} against every
    isotropic t-space V' of the live space, and report the exact constants."""
    if not 1 <= t <= k:
        raise ValueError("need 1 <= t <= k")
    if k + t > space.n:
        raise ValueError("needs t + k <= rank")
    system = build_decoding_system(space.p, t, k)
    ground = isotropic_kspaces(space, t, budget)
    if tspace is None:
        tspace = ground[0]
    if wspace is None:
        wspace = next(iter(enumerate_extensions(space, tspace, k + t, budget)))
    if not subspace_contains(space.field, wspace, tspace):
        raise ValueError("V must be contained in W")
    if wspace.k != k + t or not is_totally_isotropic(space.form, wspace):
        raise ValueError("W must be a totally isotropic (k+t)-space")

    support = subspaces_within(space.field, wspace, k)
    gammas = [
        system.f[intersection_dimension(space.field, u, tspace)] for u in support
    ]
    gamma_l1 = sum(abs(g) for g in gammas)

    violations = []
    for vprime in ground:
        total = 0
        for u, g in zip(support, gammas):
            if g and subspace_contains(space.field, u, vprime):
                total += g
        expected = system.m if vprime == tspace else 0
        if total != expected:
            violations.append((vprime, total))

    c4 = max(system.m, gamma_l1)
    c3_bound = 2 * 1 * c4 * polar_count(space, t)
    coarse_l1_bound = gaussian_binomial(k + t, k, space.p) * determinant_bound(system)
    return LocalDecodabilityReport(
        ok=not violations,
        m=system.m,
        gamma_l1=gamma_l1,
        c4=c4,
        c3_bound=c3_bound,
        tspace=tspace,
        wspace=wspace,
        checked=len(ground),
        violations=tuple(violations),
        l1_formula_consistent=gamma_l1 == gamma_l1_exact(system),
        l1_coarse_bound_ok=gamma_l1 <= coarse_l1_bound,
    )
