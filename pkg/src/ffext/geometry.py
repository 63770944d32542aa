"""Surfaces in F_q^D, spheres and saddles, tuple sets and line decompositions.

Ambient points are integer arrays of field elements.  For the paraboloids
P^d the coordinates are ``(xi_1, ..., xi_d, tau)`` with ``tau = xi . xi``.
The hyperbolic paraboloid H2 uses ``tau = xi_1^2 - xi_2^2``.  The cones
live in F_q^4 with coordinates ``(xi_1, xi_2, tau, sigma)``::

    Gamma3:   tau * sigma   = xi_1^2 + xi_2^2,  origin removed
    Upsilon3: tau^2+sigma^2 = xi_1^2 + xi_2^2,  origin removed

and the ``...Full`` variants put the origin back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CostGuard, PrimeTooSmall, UnsupportedSurface, WrongResidueClass
from .field import FieldSpec, sqrt_minus_one

MAX_TUPLE_WORK = 10**8

CONE_KINDS = ("Gamma3", "Gamma3Full", "Upsilon3", "Upsilon3Full")
_PARABOLOID = re.compile(r"^P([1-9])$")


def all_points(field: FieldSpec, dim: int) -> np.ndarray:
    """Every point of F_q^dim as rows, in lexicographic enumeration order."""
    q = field.q
    return np.indices((q,) * dim).reshape(dim, -1).T.astype(np.int64)


def dot(field: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Coordinatewise dot product over F_q along the last axis."""
    x, y = np.asarray(x), np.asarray(y)
    total = np.zeros(np.broadcast_shapes(x.shape, y.shape)[:-1], dtype=np.int64)
    for i in range(x.shape[-1]):
        total = field.add(total, field.mul(x[..., i], y[..., i]))
    return total


def add_points(field: FieldSpec, x, y) -> np.ndarray:
    return np.asarray(field.add(np.asarray(x), np.asarray(y)))


def sub_points(field: FieldSpec, x, y) -> np.ndarray:
    return np.asarray(field.sub(np.asarray(x), np.asarray(y)))


def scale_point(field: FieldSpec, a: int, x) -> np.ndarray:
    return np.asarray(field.mul(a, np.asarray(x)))


def _sumsq(field: FieldSpec, cols: Sequence[np.ndarray]) -> np.ndarray:
    total = np.zeros(np.shape(cols[0]), dtype=np.int64)
    for c in cols:
        total = field.add(total, field.square(c))
    return total


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str
    field: FieldSpec

    def __post_init__(self):
        if not (_PARABOLOID.match(self.kind) or self.kind == "H2" or self.kind in CONE_KINDS):
            raise UnsupportedSurface(f"unknown surface kind {self.kind!r}")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def is_paraboloid(self) -> bool:
        return bool(_PARABOLOID.match(self.kind))

    @property
    def is_cone(self) -> bool:
        return self.kind in CONE_KINDS

    @property
    def dim(self) -> int:
        """Ambient dimension D of F_q^D."""
        if self.is_paraboloid:
            return int(self.kind[1:]) + 1
        return 3 if self.kind == "H2" else 4

    def contains(self, pts) -> np.ndarray | bool:
        """Membership test along the last axis."""
        pts = np.asarray(pts, dtype=np.int64)
        f = self.field
        cols = [pts[..., i] for i in range(self.dim)]
        if self.is_paraboloid:
            out = cols[-1] == _sumsq(f, cols[:-1])
        elif self.kind == "H2":
            out = cols[2] == f.sub(f.square(cols[0]), f.square(cols[1]))
        else:
            xi2 = _sumsq(f, cols[:2])
            if self.kind.startswith("Gamma"):
                out = f.mul(cols[2], cols[3]) == xi2
            else:
                out = _sumsq(f, cols[2:]) == xi2
            if not self.kind.endswith("Full"):
                out = out & np.any(pts != 0, axis=-1)
        return bool(out) if np.ndim(out) == 0 else out

    @cached_property
    def points(self) -> np.ndarray:
        """All surface points as an (N, D) array in enumeration order (read-only)."""
        f = self.field
        if self.is_paraboloid or self.kind == "H2":
            base = all_points(f, self.dim - 1)
            cols = [base[:, i] for i in range(base.shape[1])]
            if self.kind == "H2":
                last = f.sub(f.square(cols[0]), f.square(cols[1]))
            else:
                last = _sumsq(f, cols)
            pts = np.column_stack([base, last]).astype(np.int64)
        else:
            amb = all_points(f, 4)
            pts = amb[self.contains(amb)]
        pts.setflags(write=False)
        return pts

    @cached_property
    def indicator(self) -> np.ndarray:
        """Boolean grid of shape (q,)*D marking the surface."""
        grid = np.zeros((self.q,) * self.dim, dtype=bool)
        grid[tuple(self.points.T)] = True
        grid.setflags(write=False)
        return grid

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, pt: Sequence[int]) -> int:
        hits = np.flatnonzero(np.all(self.points == np.asarray(pt), axis=1))
        if len(hits) == 0:
            raise KeyError(f"{tuple(pt)} is not on {self.kind}")
        return int(hits[0])


def enumerate_surface(s: SurfaceSpec) -> list[tuple[int, ...]]:
    return [tuple(int(c) for c in row) for row in s.points]


@dataclass(frozen=True)
class PointSet:
    """An immutable, sorted set of ambient points."""

    points: tuple[tuple[int, ...], ...]
    provenance: str = ""

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], provenance: str = "") -> "PointSet":
        return cls(tuple(sorted({tuple(int(c) for c in r) for r in rows})), provenance)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.points)

    def __contains__(self, pt) -> bool:
        return tuple(int(c) for c in pt) in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.points)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet.from_rows(self.points + other.points, self.provenance)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(tuple(p for p in self.points if p in other), self.provenance)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), -1)


@dataclass(frozen=True)
class TupleSet:
    """Ordered k-tuples of surface points with a common coordinatewise sum."""

    target: tuple[int, ...]
    k: int
    tuples: tuple[tuple[tuple[int, ...], ...], ...] = dc_field(repr=False)

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)


def count_conic(c: int, r: int, field: FieldSpec) -> int:
    """|{(x, y) in F_q^2 : x^2 - c y^2 = r}| by enumeration."""
    x = np.arange(field.q)
    x2 = field.square(x)
    cy2 = field.mul(c, x2)
    lhs = field.sub(x2[:, None], cy2[None, :])
    return int(np.count_nonzero(lhs == r))


def _quadric_ball(center, s: int, field: FieldSpec, hyperbolic: bool, provenance: str) -> PointSet:
    center = np.asarray(center, dtype=np.int64)
    eta = all_points(field, 2)
    diff = sub_points(field, center[None, :], eta)
    a, b = field.square(diff[:, 0]), field.square(diff[:, 1])
    val = field.sub(a, b) if hyperbolic else field.add(a, b)
    return PointSet.from_rows(eta[val == s], provenance)


def sphere(center: Sequence[int], s: int, field: FieldSpec) -> PointSet:
    """{eta in F_q^2 : (center - eta) . (center - eta) = s}."""
    return _quadric_ball(center, s, field, False, "sphere")


def saddle(center: Sequence[int], s: int, field: FieldSpec) -> PointSet:
    """{eta in F_q^2 : (c - eta)_1^2 - (c - eta)_2^2 = s}."""
    return _quadric_ball(center, s, field, True, "saddle")


def sigma_set(s: SurfaceSpec, k: int, target: Sequence[int]) -> TupleSet:
    """All ordered k-tuples of points of s summing to target (k in {2, 3})."""
    if k not in (2, 3):
        raise ValueError("sigma_set enumerates k = 2 or k = 3 only")
    n = len(s)
    if n ** (k - 1) > MAX_TUPLE_WORK:
        raise CostGuard(f"|S|^(k-1) = {n ** (k - 1)} exceeds {MAX_TUPLE_WORK}")
    f = s.field
    target = np.asarray(target, dtype=np.int64)
    pts = s.points
    ind = s.indicator
    out = []
    if k == 2:
        rest = sub_points(f, target[None, :], pts)
        ok = ind[tuple(rest.T)]
        for i in np.flatnonzero(ok):
            out.append((tuple(pts[i]), tuple(rest[i])))
    else:
        for i in range(n):
            rest = sub_points(f, sub_points(f, target, pts[i])[None, :], pts)
            ok = ind[tuple(rest.T)]
            for j in np.flatnonzero(ok):
                out.append((tuple(pts[i]), tuple(pts[j]), tuple(rest[j])))
    as_int = tuple(tuple(tuple(int(c) for c in p) for p in t) for t in out)
    return TupleSet(tuple(int(c) for c in target), k, as_int)


def critical_set(s: SurfaceSpec, k: int) -> PointSet:
    """Locus where the k-fold convolution takes its exceptional value.

    P2 (k = 2): 2 tau = xi . xi.   P1 (k = 3): 3 tau = xi^2.
    H2 (k = 2): 2 tau = xi_1^2 - xi_2^2.
    """
    f = s.field
    if (s.kind, k) not in {("P2", 2), ("P1", 3), ("H2", 2)}:
        raise UnsupportedSurface(f"no critical set for ({s.kind}, k={k})")
    if k == 3 and f.p == 3:
        raise PrimeTooSmall("the three-fold critical curve needs p > 3")
    base = all_points(f, s.dim - 1)
    # the surface's own "height" over each base point, divided by k
    height = s.points[:, -1]
    tau = f.mul(height, f.inv(k))
    return PointSet.from_rows(np.column_stack([base, tau]), "critical")


def _two_lines(xi, direction_sign_pairs, field: FieldSpec, provenance: str) -> tuple[PointSet, PointSet]:
    xi = np.asarray(xi, dtype=np.int64)
    mid = scale_point(field, field.half, xi)
    t = np.arange(field.q)
    lines = []
    for d in direction_sign_pairs:
        d = np.asarray(d, dtype=np.int64)
        pts = add_points(field, mid[None, :], field.mul(t[:, None], d[None, :]))
        lines.append(PointSet.from_rows(pts, provenance))
    return lines[0], lines[1]


def sphere_line_decomposition(xi: Sequence[int], field: FieldSpec) -> tuple[PointSet, PointSet]:
    """The lines xi/2 + t(1, w) and xi/2 + t(1, -w), where w^2 = -1."""
    if field.q % 4 != 1:
        raise WrongResidueClass("zero-radius spheres are lines only when q = 1 mod 4")
    w = sqrt_minus_one(field)
    return _two_lines(xi, [(1, w), (1, field.neg(w))], field, "line")


def saddle_line_decomposition(xi: Sequence[int], field: FieldSpec) -> tuple[PointSet, PointSet]:
    """The lines xi/2 + t(1, 1) and xi/2 + t(1, -1)."""
    return _two_lines(xi, [(1, 1), (1, field.neg(1))], field, "line")


def cone_slicing(field: FieldSpec) -> list[tuple[tuple[int, ...], PointSet]]:
    """Foliate the punctured cone Gamma3 into punctured lines {alpha s : alpha != 0}.

    Representatives: one point from each antipodal pair of
    {xi.xi = tau sigma = 1} and of {xi.xi = tau sigma = -1}, taking the
    enumeration-least, plus (0, 0, 1, 0) and (0, 0, 0, 1).
    """
    if field.q % 4 != 3:
        raise WrongResidueClass("the cone slicing needs q = 3 mod 4")
    amb = all_points(field, 4)
    xi2 = _sumsq(field, [amb[:, 0], amb[:, 1]])
    ts = field.mul(amb[:, 2], amb[:, 3])
    reps: list[tuple[int, ...]] = []
    for value in (1, field.neg(1)):
        chosen: set[tuple[int, ...]] = set()
        for row in amb[(xi2 == value) & (ts == value)]:
            pt = tuple(int(c) for c in row)
            anti = tuple(int(c) for c in field.neg(row))
            if anti not in chosen:
                chosen.add(pt)
        reps.extend(sorted(chosen))
    reps += [(0, 0, 1, 0), (0, 0, 0, 1)]
    alpha = np.arange(1, field.q)
    slices = []
    for s in reps:
        line = field.mul(alpha[:, None], np.asarray(s)[None, :])
        slices.append((s, PointSet.from_rows(line, "slice")))
    return slices
