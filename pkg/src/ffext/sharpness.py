"""The extension ratio ``||(f sigma)^vee||_{2k} / ||f||_{L^2(sigma)}`` and tools
for probing it: random suites, perturbations, gradient ascent and the
first variation at constants on the full cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BoundViolation, ZeroFunction
from .field import make_field
from .formulas import known_constant, phi_psi_derivative_at_zero
from .geometry import SurfaceSpec
from .transform import SurfaceFunction, extend_values, forward_transform, lp_norm_values

EQUALITY_TOL = 1e-9
STRICT_MARGIN = 1e-12
UNKNOWN = "unknown"


@dataclass(frozen=True)
class RatioReport:
    value: float
    claimed: float | None
    exponent: int
    surface: SurfaceSpec

    @property
    def gap(self) -> float | None:
        """claimed - value, or None when no constant is known."""
        return None if self.claimed is None else self.claimed - self.value

    def to_dict(self) -> dict:
        return {
            "surface": self.surface.kind,
            "exponent": self.exponent,
            "value": self.value,
            "claimed": UNKNOWN if self.claimed is None else self.claimed,
            "gap": UNKNOWN if self.gap is None else self.gap,
        }


@dataclass(frozen=True)
class SearchConfig:
    mode: str = "phase_only"
    steps: int = 200
    step_size: float = 0.5
    restarts: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("phase_only", "full_complex"):
            raise ValueError("mode must be 'phase_only' or 'full_complex'")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if not self.step_size > 0:
            raise ValueError("step_size must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


def _k_of(exponent: int) -> int:
    if exponent % 2 or exponent < 2:
        raise ValueError("target exponent must be an even integer >= 2")
    return exponent // 2


def ratio_values(s: SurfaceSpec, values: np.ndarray, exponent: int) -> np.ndarray | float:
    """Ratios for one function (shape (N,)) or a batch (shape (N, B))."""
    values = np.asarray(values, dtype=complex)
    if np.any(~np.any(values != 0, axis=0)):
        raise ZeroFunction("function vanishes identically")
    g = extend_values(s, values)
    axes = tuple(range(s.dim))
    num = lp_norm_values(g, exponent, axes)
    den = np.sqrt(np.mean(np.abs(values) ** 2, axis=0))
    return num / den


def ratio(f: SurfaceFunction, exponent: int) -> RatioReport:
    _k_of(exponent)
    value = float(ratio_values(f.surface, f.values, exponent))
    return RatioReport(value, known_constant(f.surface, exponent), exponent, f.surface)


def random_ratio_suite(s: SurfaceSpec, exponent: int, trials: int, seed: int, batch: int = 100) -> float:
    """Largest ratio over ``trials`` standard complex Gaussian functions.

    Raises BoundViolation if any ratio exceeds the known sharp constant by
    more than the equality tolerance.
    """
    rng = np.random.default_rng(seed)
    claimed = known_constant(s, exponent)
    best = 0.0
    done = 0
    while done < trials:
        b = min(batch, trials - done)
        vals = rng.standard_normal((len(s), b)) + 1j * rng.standard_normal((len(s), b))
        r = np.atleast_1d(ratio_values(s, vals, exponent))
        best = max(best, float(r.max()))
        done += b
    if claimed is not None and best > claimed + EQUALITY_TOL:
        raise BoundViolation(f"ratio {best!r} exceeds claimed constant {claimed!r}")
    return best


def perturb_phase(f0: SurfaceFunction, site: Sequence[int], delta: float) -> SurfaceFunction:
    vals = f0.values.copy()
    vals[f0.surface.index_of(site)] *= np.exp(1j * delta)
    return SurfaceFunction(f0.surface, vals)


def perturbation_strictness(f0: SurfaceFunction, site: Sequence[int], delta: float, exponent: int = 4) -> bool:
    """True iff rotating the phase of f0 at one point strictly lowers the ratio."""
    before = ratio(f0, exponent).value
    after = ratio(perturb_phase(f0, site, delta), exponent).value
    return after < before - STRICT_MARGIN


# -- gradient ascent ------------------------------------------------------------

def log_ratio_power(s: SurfaceSpec, values: np.ndarray, exponent: int) -> float:
    """J = log sum |g|^{2k} - k log mean |f|^2, i.e. 2k log(ratio)."""
    k = _k_of(exponent)
    g = extend_values(s, values)
    return float(np.log(np.sum(np.abs(g) ** exponent)) - k * np.log(np.mean(np.abs(values) ** 2)))


def ratio_gradient(s: SurfaceSpec, values: np.ndarray, exponent: int) -> np.ndarray:
    """Steepest-ascent direction of J in C^N: ``2 dJ/d(conj f)``."""
    k = _k_of(exponent)
    values = np.asarray(values, dtype=complex)
    g = extend_values(s, values)
    absg = np.abs(g)
    N = np.sum(absg**exponent)
    back = forward_transform(absg ** (exponent - 2) * g, s.field, s.dim)
    dN = (k / len(s)) * back[tuple(s.points.T)]
    return 2 * (dN / N - k * values / np.sum(np.abs(values) ** 2))


def _phase_gradient(s, values, exponent):
    G = ratio_gradient(s, values, exponent)
    return np.real(np.conj(G) * 1j * values)


def _ascend(s: SurfaceSpec, values: np.ndarray, exponent: int, cfg: SearchConfig) -> tuple[np.ndarray, float]:
    phase = cfg.mode == "phase_only"
    if phase:
        theta = np.angle(values)
        values = np.exp(1j * theta)
    else:
        values = values / np.sqrt(np.mean(np.abs(values) ** 2))
    J = log_ratio_power(s, values, exponent)
    t = cfg.step_size
    for _ in range(cfg.steps):
        if phase:
            d = _phase_gradient(s, values, exponent)
        else:
            d = ratio_gradient(s, values, exponent)
        if not np.any(np.abs(d) > 1e-14):
            break
        improved = False
        for _ in range(40):
            if phase:
                cand = np.exp(1j * (theta + t * d))
            else:
                cand = values + t * d
                cand = cand / np.sqrt(np.mean(np.abs(cand) ** 2))
            Jc = log_ratio_power(s, cand, exponent)
            if Jc > J:
                improved = True
                break
            t *= 0.5
        if not improved:
            break
        values, J = cand, Jc
        if phase:
            theta = theta + t * d
        t *= 1.5
    return values, J


def local_search(s: SurfaceSpec, exponent: int, config: SearchConfig,
                 initial: SurfaceFunction | None = None) -> tuple[SurfaceFunction, RatioReport]:
    """Projected gradient ascent with backtracking; deterministic given the seed.

    The first restart starts from ``initial`` when given; the others start
    from random points (random phases, or complex Gaussians).
    """
    best_vals, best_J = None, -np.inf
    for r in range(config.restarts):
        if r == 0 and initial is not None:
            start = initial.values.astype(complex)
        else:
            rng = np.random.default_rng([config.seed, r])
            if config.mode == "phase_only":
                start = np.exp(2j * np.pi * rng.random(len(s)))
            else:
                start = rng.standard_normal(len(s)) + 1j * rng.standard_normal(len(s))
        vals, J = _ascend(s, start, exponent, config)
        if J > best_J:
            best_vals, best_J = vals, J
    f = SurfaceFunction(s, best_vals)
    return f, ratio(f, exponent)


# -- first variation at constants on the full cones -------------------------------

def full_cone(p: int, cone: str) -> SurfaceSpec:
    kinds = {"gamma_full": "Gamma3Full", "upsilon_full": "Upsilon3Full"}
    if cone not in kinds:
        raise ValueError("cone must be 'gamma_full' or 'upsilon_full'")
    return SurfaceSpec(kinds[cone], make_field(p))


def perturbed_constant_functional(s: SurfaceSpec, eps: float) -> float:
    """Fourth power of the L^4 ratio at f = 1 + eps * delta_0, computed directly."""
    vals = np.ones(len(s), dtype=complex)
    vals[s.index_of((0,) * s.dim)] += eps
    return float(ratio_values(s, vals, 4)) ** 4


def _central_difference(fn, h: float) -> float:
    return (fn(h) - fn(-h)) / (2 * h)


def first_variation_check(p: int, cone: str) -> tuple[Fraction, float]:
    """Closed-form and numerical derivative at eps = 0 of the perturbed-constant functional.

    The Gamma cone uses its own closed form when p = 3 mod 4; otherwise it
    is linearly equivalent to the Upsilon cone and shares that formula.
    """
    s = full_cone(p, cone)
    which = "psi" if cone == "gamma_full" and p % 4 == 3 else "phi"
    closed = phi_psi_derivative_at_zero(p, which)

    def F(e):
        return perturbed_constant_functional(s, e)

    d1 = _central_difference(F, 1e-2)
    d2 = _central_difference(F, 1e-3)
    numeric = (100 * d2 - d1) / 99
    return closed, numeric
