import itertools

import numpy as np
import pytest

import ffext.geometry as geometry
from ffext.errors import CostGuard, UnsupportedSurface, WrongResidueClass
from ffext.field import make_field
from ffext.geometry import (
    SurfaceSpec,
    all_points,
    cone_slicing,
    count_conic,
    critical_set,
    enumerate_surface,
    saddle,
    saddle_line_decomposition,
    sigma_set,
    sphere,
    sphere_line_decomposition,
)

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)]


def defining_equation(kind, F, pt):
    """Scalar re-statement of each surface's equation."""
    sq = F.square
    if kind.startswith("P"):
        *xi, tau = pt
        total = 0
        for c in xi:
            total = F.add(total, sq(c))
        return tau == total
    if kind == "H2":
        x1, x2, tau = pt
        return tau == F.sub(sq(x1), sq(x2))
    x1, x2, tau, sig = pt
    xi2 = F.add(sq(x1), sq(x2))
    lhs = F.mul(tau, sig) if kind.startswith("Gamma") else F.add(sq(tau), sq(sig))
    on = lhs == xi2
    if not kind.endswith("Full"):
        on = on and any(pt)
    return on


@pytest.mark.parametrize("p,n", FIELDS)
@pytest.mark.parametrize("kind", ["P1", "P2", "H2", "Gamma3", "Gamma3Full", "Upsilon3", "Upsilon3Full"])
def test_membership_matches_equation(kind, p, n):
    F = make_field(p, n)
    s = SurfaceSpec(kind, F)
    members = {tuple(int(c) for c in row) for row in s.points}
    assert len(members) == len(s)
    for pt in itertools.product(range(F.q), repeat=s.dim):
        assert (pt in members) == defining_equation(kind, F, pt)
        assert s.indicator[pt] == (pt in members)


def test_enumeration_is_sorted():
    s = SurfaceSpec("Gamma3Full", make_field(3))
    pts = enumerate_surface(s)
    assert pts == sorted(pts)
    assert pts[0] == (0, 0, 0, 0)


@pytest.mark.parametrize("p,n", FIELDS + [(5, 2), (3, 3)])
def test_cardinalities(p, n):
    F = make_field(p, n)
    q = F.q
    assert len(SurfaceSpec("P1", F)) == q
    assert len(SurfaceSpec("P2", F)) == q * q
    assert len(SurfaceSpec("H2", F)) == q * q
    if q % 4 == 3:
        assert len(SurfaceSpec("Gamma3Full", F)) == q * (q * q - q + 1)
        assert len(SurfaceSpec("Gamma3", F)) == (q - 1) * (q * q + 1)
    if n == 1:
        assert len(SurfaceSpec("Upsilon3Full", F)) == p * (p * p + p - 1)


def test_cardinality_examples():
    assert len(SurfaceSpec("P2", make_field(3))) == 9
    assert len(SurfaceSpec("Gamma3Full", make_field(3))) == 21
    assert len(SurfaceSpec("Upsilon3Full", make_field(5))) == 145


def test_unknown_surface():
    with pytest.raises(UnsupportedSurface):
        SurfaceSpec("Q7", make_field(3))


def test_conic_examples():
    F7 = make_field(7)
    assert count_conic(1, 1, F7) == 6
    nonsquare = next(c for c in range(1, 7) if F7.quadratic_character(c) == -1)
    assert count_conic(nonsquare, 1, F7) == 8
    assert count_conic(0, 0, make_field(5)) == 5


@pytest.mark.parametrize("p,n", FIELDS)
def test_conic_counts_all_parameters(p, n):
    F = make_field(p, n)
    q = F.q
    for c in range(1, q):
        square = F.quadratic_character(c) == 1
        for r in range(q):
            got = count_conic(c, r, F)
            if r:
                assert got == (q - 1 if square else q + 1)
            else:
                assert got == (2 * q - 1 if square else 1)
    assert count_conic(0, 0, F) == q


def test_sphere_and_saddle_examples():
    assert len(sphere((0, 0), 0, make_field(5))) == 9
    assert len(sphere((0, 0), 0, make_field(7))) == 1
    assert len(sphere((0, 0), 1, make_field(7))) == 8
    assert len(saddle((0, 0), 1, make_field(5))) == 4
    assert (1, 1) in saddle((1, 1), 0, make_field(5))
    for p, n in FIELDS:
        F = make_field(p, n)
        assert len(saddle((0, 0), 0, F)) == 2 * F.q - 1


@pytest.mark.parametrize("p,n", FIELDS)
def test_sphere_sizes(p, n):
    F = make_field(p, n)
    q = F.q
    minus_one_square = q % 4 == 1
    center = (1 % q, 2 % q)
    for s in range(q):
        if s:
            want = q - 1 if minus_one_square else q + 1
        else:
            want = 2 * q - 1 if minus_one_square else 1
        assert len(sphere(center, s, F)) == want
        assert len(saddle(center, s, F)) == (q - 1 if s else 2 * q - 1)


def test_sigma_set_examples():
    F7 = make_field(7)
    assert len(sigma_set(SurfaceSpec("P1", F7), 3, (1, F7.inv(3)))) == 13
    assert len(sigma_set(SurfaceSpec("P1", make_field(5)), 3, (0, 0))) == 1
    assert len(sigma_set(SurfaceSpec("Gamma3Full", make_field(3)), 2, (0, 0, 0, 0))) == 21


def test_sigma_set_tuples_sum_to_target():
    F = make_field(5)
    s = SurfaceSpec("P2", F)
    target = (1, 3, 2)
    ts = sigma_set(s, 2, target)
    for tup in ts:
        total = np.zeros(3, dtype=np.int64)
        for pt in tup:
            assert s.contains(pt)
            total = F.add(total, np.array(pt))
        assert tuple(total) == target


def test_sigma_set_cost_guard(monkeypatch):
    monkeypatch.setattr(geometry, "MAX_TUPLE_WORK", 10)
    with pytest.raises(CostGuard):
        sigma_set(SurfaceSpec("P2", make_field(5)), 3, (0, 0, 0))


@pytest.mark.parametrize("q_pn", [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1)])
def test_sigma_set_sizes_paraboloid(q_pn):
    F = make_field(*q_pn)
    q = F.q
    s = SurfaceSpec("P2", F)
    crit = critical_set(s, 2)
    on, off = (2 * q - 1, q - 1) if q % 4 == 1 else (1, q + 1)
    for target in all_points(F, 3):
        n = len(sigma_set(s, 2, target))
        assert n == (on if tuple(target) in crit else off)
    if F.p > 3:
        s1 = SurfaceSpec("P1", F)
        crit1 = critical_set(s1, 3)
        on, off = (2 * q - 1, q - 1) if q % 3 == 1 else (1, q + 1)
        for target in all_points(F, 2):
            n = len(sigma_set(s1, 3, target))
            assert n == (on if tuple(target) in crit1 else off)


def test_critical_set_sizes():
    assert len(critical_set(SurfaceSpec("P2", make_field(5)), 2)) == 25
    assert len(critical_set(SurfaceSpec("P1", make_field(7)), 3)) == 7
    assert len(critical_set(SurfaceSpec("H2", make_field(3)), 2)) == 9
    with pytest.raises(UnsupportedSurface):
        critical_set(SurfaceSpec("Gamma3", make_field(3)), 2)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_each_pair_has_one_common_tuple_set(q):
    F = make_field(q)
    pts = all_points(F, 2)
    height = F.add(F.square(pts[:, 0]), F.square(pts[:, 1]))
    for i, j in itertools.product(range(len(pts)), repeat=2):
        hits = [t for t in range(q) if F.add(height[i], height[j]) == t]
        assert len(hits) == 1


@pytest.mark.parametrize("p,n", [(5, 1), (13, 1), (3, 2)])
def test_sphere_line_decomposition(p, n):
    F = make_field(p, n)
    for xi in itertools.product(range(F.q), repeat=2):
        lp, lm = sphere_line_decomposition(xi, F)
        mid = tuple(int(c) for c in F.mul(F.half, np.array(xi)))
        assert len(lp) == len(lm) == F.q
        assert list(lp & lm) == [mid]
        assert set(lp | lm) == set(sphere(mid, 0, F))


def test_sphere_lines_need_minus_one_square():
    with pytest.raises(WrongResidueClass):
        sphere_line_decomposition((0, 0), make_field(7))


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_saddle_line_decomposition(p, n):
    F = make_field(p, n)
    for xi in itertools.product(range(F.q), repeat=2):
        lp, lm = saddle_line_decomposition(xi, F)
        mid = tuple(int(c) for c in F.mul(F.half, np.array(xi)))
        assert list(lp & lm) == [mid]
        assert set(lp | lm) == set(saddle(mid, 0, F))


def test_every_pair_sits_on_one_line_pair():
    F = make_field(5)
    grid = [tuple(x) for x in all_points(F, 2)]
    lines = {xi: sphere_line_decomposition(xi, F) for xi in grid}
    for a in grid:
        for b in grid:
            hits = [xi for xi, (lp, lm) in lines.items() if a in lm and b in lp]
            assert len(hits) == 1


@pytest.mark.parametrize("q", [3, 7, 11])
def test_cone_slicing(q):
    F = make_field(q)
    cone = SurfaceSpec("Gamma3", F)
    slices = cone_slicing(F)
    assert len(slices) == q * q + 1
    seen = {}
    for s, line in slices:
        assert len(line) == q - 1
        for pt in line:
            assert pt not in seen
            seen[pt] = s
    assert set(seen) == set(enumerate_surface(cone))
    # each cone point splits as a sum of two cone points only inside its own slice
    for eta, s in seen.items():
        decomp = sigma_set(cone, 2, eta)
        assert len(decomp) == q - 2
        line = dict(slices)[s]
        for a, b in decomp:
            assert a in line and b in line


def test_cone_slicing_examples_and_errors():
    slices = cone_slicing(make_field(3))
    assert len(slices) == 10 and all(len(line) == 2 for _, line in slices)
    assert sum(len(line) for _, line in slices) == 20
    assert len(cone_slicing(make_field(7))) == 50
    with pytest.raises(WrongResidueClass):
        cone_slicing(make_field(5))


def test_slicing_does_not_depend_on_representatives():
    F = make_field(7)
    lines = {frozenset(line) for _, line in cone_slicing(F)}
    flipped = set()
    for s, _ in cone_slicing(F):
        neg = np.asarray(F.neg(np.array(s)))
        flipped.add(frozenset(tuple(int(c) for c in F.mul(a, neg)) for a in range(1, F.q)))
    assert lines == flipped
