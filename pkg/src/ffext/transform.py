"""Extension operator, Fourier transforms on F_q^D and surface-measure convolutions.

Normalisations: the physical space F_q^D carries counting measure, a
surface S carries normalised counting measure, and the dual side is
normalised so that

    inverse_transform(g)(x) = q^-D  sum_xi g(xi) e(x . xi)
    forward_transform(g)(xi) =      sum_x  g(x)  e(-x . xi)

The surface measure is the dual-side weight ``sigma = q^D / |S| * 1_S``,
so ``extend(f) = inverse_transform(f sigma)``.

Grid arrays have shape ``(q,)*D`` followed by any number of batch axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .characters import character_matrix
from .errors import CostGuard, ZeroFunction
from .field import FieldSpec
from .geometry import MAX_TUPLE_WORK, SurfaceSpec

# Budget for the shift-accumulate folds, in gathered grid cells.
MAX_FOLD_WORK = 4 * 10**9


@dataclass(frozen=True, eq=False)
class SurfaceFunction:
    """Values of a function on a surface, aligned with ``surface.points``."""

    surface: SurfaceSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape[:1] != (len(self.surface),):
            raise ValueError(f"expected {len(self.surface)} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("surface function values must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, surface: SurfaceSpec, c: complex = 1.0) -> "SurfaceFunction":
        return cls(surface, np.full(len(surface), c, dtype=complex))

    @classmethod
    def delta(cls, surface: SurfaceSpec, point: Sequence[int]) -> "SurfaceFunction":
        v = np.zeros(len(surface), dtype=complex)
        v[surface.index_of(point)] = 1.0
        return cls(surface, v)

    @classmethod
    def from_callable(cls, surface: SurfaceSpec, fn: Callable[[tuple[int, ...]], complex]) -> "SurfaceFunction":
        return cls(surface, np.array([fn(tuple(int(c) for c in p)) for p in surface.points], dtype=complex))

    def __call__(self, point: Sequence[int]) -> complex:
        return complex(self.values[self.surface.index_of(point)])

    def __mul__(self, c: complex) -> "SurfaceFunction":
        return SurfaceFunction(self.surface, self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class GridFunction:
    field: FieldSpec
    dim: int
    values: np.ndarray

    def __call__(self, point: Sequence[int]):
        return self.values[tuple(int(c) for c in point)]


@dataclass(frozen=True, eq=False)
class ConvolutionTable:
    """Exact k-fold convolution ``q^D / |S|^k * |Sigma^k(target)|``."""

    field: FieldSpec
    dim: int
    counts: np.ndarray
    n_points: int
    k: int

    @property
    def scale(self) -> Fraction:
        return Fraction(self.field.q**self.dim, self.n_points**self.k)

    def value(self, point: Sequence[int]) -> Fraction:
        return self.scale * int(self.counts[tuple(int(c) for c in point)])

    def as_float(self) -> np.ndarray:
        return self.counts * float(self.scale)

    @cached_property
    def distinct_values(self) -> list[Fraction]:
        return [self.scale * int(c) for c in np.unique(self.counts)]

    def total_mass(self) -> Fraction:
        """Integral against the normalised dual measure; 1 for a probability convolution."""
        return self.scale * int(self.counts.sum()) / self.field.q**self.dim


# -- transforms ----------------------------------------------------------------

def _apply_per_axis(E: np.ndarray, g: np.ndarray, dim: int) -> np.ndarray:
    for axis in range(dim):
        g = np.moveaxis(np.tensordot(E, g, axes=([1], [axis])), 0, axis)
    return g


def inverse_transform(values: np.ndarray, field: FieldSpec, dim: int) -> np.ndarray:
    E = character_matrix(field)
    return _apply_per_axis(E, np.asarray(values, dtype=complex), dim) / field.q**dim


def forward_transform(values: np.ndarray, field: FieldSpec, dim: int) -> np.ndarray:
    E = character_matrix(field)
    return _apply_per_axis(E.conj(), np.asarray(values, dtype=complex), dim)


def scatter(surface: SurfaceSpec, values: np.ndarray) -> np.ndarray:
    """Place surface values on the ambient grid, zero elsewhere."""
    values = np.asarray(values)
    grid = np.zeros((surface.q,) * surface.dim + values.shape[1:], dtype=values.dtype)
    grid[tuple(surface.points.T)] = values
    return grid


def gather(surface: SurfaceSpec, grid: np.ndarray) -> np.ndarray:
    return grid[tuple(surface.points.T)]


def extend_values(surface: SurfaceSpec, values: np.ndarray) -> np.ndarray:
    """``(f sigma)^vee`` on the whole grid; trailing batch axes are carried along."""
    E = character_matrix(surface.field)
    h = scatter(surface, np.asarray(values, dtype=complex))
    return _apply_per_axis(E, h, surface.dim) / len(surface)


def extend(f: SurfaceFunction) -> GridFunction:
    s = f.surface
    return GridFunction(s.field, s.dim, extend_values(s, f.values))


def measure_weight(surface: SurfaceSpec) -> np.ndarray:
    """The dual-side density ``q^D / |S| * 1_S``."""
    return surface.indicator * (surface.q**surface.dim / len(surface))


# -- norms -----------------------------------------------------------------------

def lp_norm_values(values: np.ndarray, exponent: int, axes: tuple[int, ...] | None = None) -> np.ndarray | float:
    """``(sum |g|^p)^(1/p)`` with max-scaling, reduced over ``axes`` (all by default)."""
    a = np.abs(np.asarray(values))
    m = a.max(axis=axes, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    total = ((a / safe) ** exponent).sum(axis=axes, keepdims=True)
    out = (safe * total ** (1.0 / exponent)) * (m > 0)
    out = np.squeeze(out, axis=axes) if axes is not None else out.reshape(())
    return float(out) if np.ndim(out) == 0 else out


def lp_norm(g: GridFunction, exponent: int) -> float:
    if exponent not in (2, 4, 6):
        raise ValueError("exponent must be 2, 4 or 6")
    return lp_norm_values(g.values, exponent)


def l2_surface_norm(f: SurfaceFunction) -> float:
    return float(np.sqrt(np.mean(np.abs(f.values) ** 2)))


# -- convolutions ------------------------------------------------------------------

def _fold(surface: SurfaceSpec, weights: np.ndarray, k: int) -> np.ndarray:
    """``h_k(t) = sum over (s_1..s_k) in S^k with sum t of prod weights(s_i)``."""
    n, D, q = len(surface), surface.dim, surface.q
    if n ** (k - 1) > MAX_TUPLE_WORK or (k - 1) * n * q**D > MAX_FOLD_WORK:
        raise CostGuard(f"{k}-fold enumeration over |S| = {n} in F_{q}^{D} exceeds budget")
    sub = surface.field.sub_table
    pts = surface.points
    h = scatter(surface, weights)
    for _ in range(k - 1):
        nxt = np.zeros_like(h)
        for w, s in zip(weights, pts):
            if w:
                nxt += w * h[np.ix_(*(sub[:, c] for c in s))]
        h = nxt
    return h


def convolve_counting(s: SurfaceSpec, k: int) -> ConvolutionTable:
    if k < 1:
        raise ValueError("k must be positive")
    counts = _fold(s, np.ones(len(s), dtype=np.int64), k)
    return ConvolutionTable(s.field, s.dim, counts, len(s), k)


def convolve_fourier(s: SurfaceSpec, k: int) -> GridFunction:
    """``sigma^{*k} = forward_transform((sigma^vee)^k)``."""
    ext = extend_values(s, np.ones(len(s)))
    return GridFunction(s.field, s.dim, forward_transform(ext**k, s.field, s.dim))


def combinatorial_lhs(f: SurfaceFunction | np.ndarray, k: int, surface: SurfaceSpec | None = None):
    """``sum_xi |sum_{xi_1+..+xi_k = xi} prod f(xi_i)|^2``.

    Integer-valued input (a numpy integer array with ``surface`` given)
    returns an exact Python int.
    """
    if isinstance(f, SurfaceFunction):
        surface, vals = f.surface, f.values
    else:
        vals = np.asarray(f)
    h = _fold(surface, vals, k)
    if np.issubdtype(h.dtype, np.integer):
        return int(sum(int(c) ** 2 for c in h.ravel() if c))
    return float(np.sum(np.abs(h) ** 2))


def surface_mass(f: SurfaceFunction) -> float:
    """``sum_S |f|^2`` (unnormalised)."""
    return float(np.sum(np.abs(f.values) ** 2))


def require_nonzero(values: np.ndarray) -> None:
    if not np.any(np.asarray(values) != 0):
        raise ZeroFunction("function vanishes identically")
