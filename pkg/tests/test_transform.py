from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import ffext.transform as transform
from ffext.characters import legendre
from ffext.errors import CostGuard
from ffext.field import make_field
from ffext.geometry import SurfaceSpec, all_points
from ffext.transform import (
    GridFunction,
    SurfaceFunction,
    combinatorial_lhs,
    convolve_counting,
    convolve_fourier,
    extend,
    forward_transform,
    inverse_transform,
    l2_surface_norm,
    lp_norm,
    measure_weight,
)

TOL = 1e-9


def surf(kind, p, n=1):
    return SurfaceSpec(kind, make_field(p, n))


def test_extend_examples():
    s = surf("P1", 7)
    g = extend(SurfaceFunction.constant(s))
    assert abs(g((0, 0)) - 1) < 1e-15
    d = extend(SurfaceFunction.delta(s, (3, 2)))
    assert np.allclose(np.abs(d.values), 1 / len(s))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_full_cone_dual_measure_three_values(p):
    s = surf("Upsilon3Full", p)
    F = s.field
    g = extend(SurfaceFunction.constant(s)).values
    m = p * p + p - 1
    for x in all_points(F, 4):
        zeta = F.sub(F.add(F.square(x[0]), F.square(x[1])), F.add(F.square(x[2]), F.square(x[3])))
        if not x.any():
            want = 1
        elif zeta == 0:
            want = (p - 1) / m
        else:
            want = -1 / m
        assert abs(g[tuple(x)] - want) < TOL
    if p == 5:
        assert abs(g[(1, 0, 0, 0)] + 1 / 29) < TOL


def test_lp_norm_examples():
    F = make_field(5)
    ones = GridFunction(F, 3, np.ones((5, 5, 5)))
    assert abs(lp_norm(ones, 4) - 125**0.25) < 1e-12
    origin = np.zeros((5, 5, 5))
    origin[0, 0, 0] = 1
    assert lp_norm(GridFunction(F, 3, origin), 2) == 1
    s = surf("P2", 3)
    assert abs(lp_norm(extend(SurfaceFunction.constant(s)), 4) - (11 / 9) ** 0.25) < 1e-12
    assert lp_norm(GridFunction(F, 3, np.zeros((5, 5, 5))), 6) == 0


def test_lp_norm_survives_huge_values():
    F = make_field(3)
    big = GridFunction(F, 2, np.full((3, 3), 1e200))
    assert abs(lp_norm(big, 6) / (1e200 * 9 ** (1 / 6)) - 1) < 1e-12


def test_l2_surface_norm_examples():
    s = surf("P2", 3)
    assert l2_surface_norm(SurfaceFunction.constant(s)) == 1
    assert abs(l2_surface_norm(SurfaceFunction.delta(s, (0, 0, 0))) - 1 / 3) < 1e-15
    cone = surf("Upsilon3Full", 5)
    m = len(cone)
    for eps in (0.0, 0.1, 1.0):
        f = SurfaceFunction.constant(cone)
        f.values[cone.index_of((0, 0, 0, 0))] += eps
        want = (1 - 1 / m + (1 + eps) ** 2 / m) ** 0.5
        assert abs(l2_surface_norm(f) - want) < 1e-14


def test_counting_examples():
    F5, F7 = make_field(5), make_field(7)
    t5 = convolve_counting(SurfaceSpec("P2", F5), 2)
    assert t5.value((1, 0, F5.inv(2))) == Fraction(9, 5)
    t7 = convolve_counting(SurfaceSpec("P2", F7), 2)
    assert t7.value((0, 0, 1)) == Fraction(8, 7)
    tg = convolve_counting(surf("Gamma3Full", 3), 2)
    assert tg.value((0, 0, 1, 0)) == Fraction(27, 49)


def test_fourier_examples():
    p = 5
    s = surf("P1", p)
    F = s.field
    conv = convolve_fourier(s, 2).values
    sign = (-1) ** ((p - 1) // 2 + (p * p - 1) // 8)
    for xi, tau in all_points(F, 2):
        want = 1 + sign * legendre(xi * xi * pow(2, -1, p) - tau, p)
        assert abs(conv[xi, tau] - want) < TOL
    assert len({round(v, 9) for v in conv.real.ravel()}) == 3
    ups = convolve_fourier(surf("Upsilon3Full", 5), 2).values
    assert abs(ups[0, 0, 0, 0] - 125 / 29) < TOL


@pytest.mark.parametrize("kind,p", [("P1", 5), ("P2", 3), ("H2", 5), ("Gamma3", 3), ("Upsilon3Full", 3)])
def test_single_fold_is_the_measure(kind, p):
    s = surf(kind, p)
    assert np.allclose(convolve_fourier(s, 1).values, measure_weight(s), atol=TOL)
    assert np.array_equal(convolve_counting(s, 1).counts, s.indicator.astype(int))


ROUTE_CONFIGS = (
    [("P1", k, p) for k in (2, 3) for p in (5, 7, 11)]
    + [(kind, 2, q) for kind in ("P2", "H2") for q in (3, 5, 7, 9)]
    + [(kind, 2, p) for kind in ("Gamma3Full", "Upsilon3Full") for p in (3, 5, 7)]
)


@pytest.mark.parametrize("kind,k,q", ROUTE_CONFIGS)
def test_routes_agree(kind, k, q):
    F = make_field(3, 2) if q == 9 else make_field(q)
    s = SurfaceSpec(kind, F)
    exact = convolve_counting(s, k)
    approx = convolve_fourier(s, k).values
    assert np.max(np.abs(exact.as_float() - approx)) < TOL
    assert exact.total_mass() == 1


@pytest.mark.parametrize("kind,p,n,k", [
    ("P2", 3, 2, 2), ("P2", 5, 2, 2), ("P2", 3, 3, 2), ("H2", 5, 2, 2),
    ("H2", 3, 3, 2), ("P1", 5, 2, 3), ("P1", 3, 3, 3), ("Gamma3Full", 3, 2, 2),
])
def test_total_mass_is_one(kind, p, n, k):
    t = convolve_counting(SurfaceSpec(kind, make_field(p, n)), k)
    assert t.total_mass() == Fraction(1)
    assert all(v >= 0 for v in t.distinct_values)


def test_combinatorial_lhs_examples():
    q = 7
    s = surf("P2", q)
    lhs = combinatorial_lhs(np.ones(len(s), dtype=np.int64), 2, surface=s)
    assert lhs == q * q * 1 + (q**3 - q * q) * (q + 1) ** 2
    for kind, p in [("P2", 5), ("P1", 7), ("Gamma3", 3)]:
        t = surf(kind, p)
        pt = tuple(int(c) for c in t.points[len(t) // 2])
        assert abs(combinatorial_lhs(SurfaceFunction.delta(t, pt), 2) - 1) < 1e-12


NORM_CONFIGS = [("P2", 5, 1, 2), ("P1", 7, 1, 3), ("H2", 3, 1, 2), ("Gamma3", 3, 1, 2), ("P2", 3, 2, 2)]


@pytest.mark.parametrize("kind,p,n,k", NORM_CONFIGS)
def test_plancherel_identity(kind, p, n, k):
    s = SurfaceSpec(kind, make_field(p, n))
    rng = np.random.default_rng(7)
    D = s.dim
    for _ in range(100):
        f = SurfaceFunction(s, rng.standard_normal(len(s)) + 1j * rng.standard_normal(len(s)))
        left = lp_norm(extend(f), 2 * k) ** (2 * k) * len(s) ** (2 * k) / s.q**D
        right = combinatorial_lhs(f, k)
        assert abs(left - right) <= 1e-9 * right


def test_counting_cost_guard(monkeypatch):
    monkeypatch.setattr(transform, "MAX_FOLD_WORK", 100)
    with pytest.raises(CostGuard):
        convolve_counting(surf("P2", 5), 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1), (5, 1), (7, 1), (3, 2)]), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_fourier_round_trip(pn, d, seed):
    F = make_field(*pn)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((F.q,) * d) + 1j * rng.standard_normal((F.q,) * d)
    assert np.allclose(inverse_transform(forward_transform(g, F, d), F, d), g, atol=TOL)
    assert np.allclose(forward_transform(inverse_transform(g, F, d), F, d), g, atol=TOL)
