"""Batch checks behind ``ffext verify``.

Each check is a dict with keys ``name, claimed, computed, gap, pass``.
Closed forms are looked up through the ``formulas`` module at call time.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

from . import characters as ch
from . import formulas
from .field import is_prime, make_field
from .geometry import SurfaceSpec, all_points, count_conic
from .sharpness import first_variation_check, random_ratio_suite, ratio
from .transform import SurfaceFunction, combinatorial_lhs, convolve_counting, convolve_fourier

Check = dict[str, Any]

FLOAT_TOL = 1e-9


def check(name: str, claimed, computed, ok: bool | None = None, tol: float = FLOAT_TOL) -> Check:
    if claimed is None:
        return {"name": name, "claimed": None, "computed": computed, "gap": None, "pass": True}
    if isinstance(claimed, (Fraction, int)) and isinstance(computed, (Fraction, int)):
        gap = Fraction(claimed) - Fraction(computed)
        if isinstance(claimed, int) and isinstance(computed, int):
            gap = int(gap)
        passed = gap == 0 if ok is None else ok
    else:
        gap = complex(claimed) - complex(computed)
        gap = gap.real if gap.imag == 0 else abs(gap)
        passed = abs(gap) <= tol * max(1.0, abs(complex(claimed))) if ok is None else ok
    return {"name": name, "claimed": claimed, "computed": computed, "gap": gap, "pass": bool(passed)}


def odd_prime_powers(max_q: int) -> list[tuple[int, int]]:
    out = []
    for q in range(3, max_q + 1, 2):
        for p in range(3, q + 1, 2):
            if is_prime(p):
                n = round(math.log(q, p))
                if p**n == q:
                    out.append((p, n))
                    break
    return out


# -- identities --------------------------------------------------------------------

def expected_conic_count(c: int, r: int, field) -> int:
    q = field.q
    if c == 0 and r != 0:
        # x^2 = r, with y free
        return q * (1 + field.quadratic_character(r))
    if r != 0:
        return q - 1 if field.quadratic_character(c) == 1 else q + 1
    if c == 0:
        return q
    return 2 * q - 1 if field.quadratic_character(c) == 1 else 1


def suite_identities(max_q: int) -> list[Check]:
    out: list[Check] = []
    for p, n in odd_prime_powers(max_q):
        F = make_field(p, n)
        bad = sum(count_conic(c, r, F) != expected_conic_count(c, r, F) for c in F.elements() for r in F.elements())
        out.append(check(f"conic counts q={F.q}", 0, bad))
        if F.q % 4 == 3:
            m = len(SurfaceSpec("Gamma3Full", F))
            out.append(check(f"|Gamma3Full| q={F.q}", F.q * (F.q**2 - F.q + 1), m))
        if n == 1:
            m = len(SurfaceSpec("Upsilon3Full", F))
            out.append(check(f"|Upsilon3Full| p={p}", p * (p * p + p - 1), m))
    primes = [p for p in range(3, 54, 2) if is_prime(p)]
    worst = 0.0
    for p in primes:
        for a in range(p):
            worst = max(worst, abs(ch.gauss_sum(a, p) - ch.gauss_sum_closed(a, p)))
            worst = max(worst, abs(ch.weighted_gauss_sum(a, p) - ch.weighted_gauss_sum_closed(a, p)))
            if a:
                for b in range(p):
                    worst = max(worst, abs(ch.general_gauss_sum(a, b, p) - ch.general_gauss_sum_closed(a, b, p)))
    out.append(check("Gauss sums p<=53 max deviation", 0.0, worst))
    bad = 0
    for p in primes:
        bad += ch.legendre(-1, p) != (-1) ** ((p - 1) // 2)
        bad += ch.legendre(2, p) != (-1) ** ((p * p - 1) // 8)
        for r in primes:
            if r != p:
                bad += ch.legendre(p, r) * ch.legendre(r, p) != (-1) ** ((p - 1) * (r - 1) // 4)
    out.append(check("reciprocity and supplements p<=53", 0, bad))
    return out


# -- convolutions ----------------------------------------------------------------

def supported_convolutions(max_q: int) -> Iterable[tuple[SurfaceSpec, int]]:
    for p, n in odd_prime_powers(max_q):
        F = make_field(p, n)
        yield SurfaceSpec("P2", F), 2
        yield SurfaceSpec("H2", F), 2
        if p > 3:
            yield SurfaceSpec("P1", F), 3
        if n == 1:
            yield SurfaceSpec("Upsilon3Full", F), 2
        if n == 1 or F.q % 4 == 3:
            yield SurfaceSpec("Gamma3Full", F), 2


def convolution_checks(s: SurfaceSpec, k: int) -> list[Check]:
    table = convolve_counting(s, k)
    fourier = convolve_fourier(s, k).values
    route_gap = float(np.max(np.abs(table.as_float() - fourier)))
    predicted = formulas.predicted_conv(s, k)
    bad = sum(predicted(pt) != table.value(pt) for pt in all_points(s.field, s.dim))
    name = f"{s.kind} k={k} q={s.q}"
    return [check(f"{name} routes agree", 0.0, route_gap), check(f"{name} closed form mismatches", 0, bad)]


def suite_convolutions(max_q: int) -> list[Check]:
    out: list[Check] = []
    for s, k in supported_convolutions(max_q):
        out += convolution_checks(s, k)
    return out


# -- sharp constants -----------------------------------------------------------------

def supported_constants(max_q: int) -> Iterable[tuple[SurfaceSpec, int]]:
    for p, n in odd_prime_powers(max_q):
        F = make_field(p, n)
        yield SurfaceSpec("P2", F), 4
        yield SurfaceSpec("H2", F), 4
        if p > 3:
            yield SurfaceSpec("P1", F), 6
        if F.q % 4 == 3:
            yield SurfaceSpec("Gamma3", F), 4


def constant_checks(s: SurfaceSpec, exponent: int) -> list[Check]:
    k = exponent // 2
    name = f"{s.kind} L^{exponent} q={s.q}"
    claimed = formulas.sharp_constant(s, exponent)
    value = ratio(SurfaceFunction.constant(s), exponent).value
    lhs = combinatorial_lhs(np.ones(len(s), dtype=np.int64), k, surface=s)
    power = Fraction(s.q**s.dim * lhs, len(s) ** (2 * k))
    return [
        check(f"{name} constant-function ratio", claimed, value),
        check(f"{name} exact power vs combinatorial bound", formulas.sharp_constant_power(s, exponent), power),
    ]


def suite_bounds(max_q: int, trials: int = 100, draws: int = 5, seed: int = 0) -> list[Check]:
    out: list[Check] = []
    for s, e in supported_constants(max_q):
        out += constant_checks(s, e)
        claimed = formulas.sharp_constant(s, e)
        best = random_ratio_suite(s, e, trials, seed) if trials else 0.0
        out.append(check(f"{s.kind} L^{e} q={s.q} random max <= constant", claimed, best, ok=best <= claimed + FLOAT_TOL))
    rng = np.random.default_rng(seed)
    for p, n in odd_prime_powers(max_q):
        F = make_field(p, n)
        kinds = ["H2"] + (["P2"] if F.q % 4 == 1 else [])
        for kind in kinds:
            s = SurfaceSpec(kind, F)
            claimed = formulas.sharp_constant(s, 4)
            for _ in range(draws):
                lam = complex(*rng.standard_normal(2))
                a, b, c = (int(v) for v in rng.integers(0, F.q, 3))
                r = ratio(formulas.maximizer_family(s, formulas.MaximizerParams(lam, a, b, c)), 4)
                out.append(check(f"{kind} q={F.q} family ({a},{b},{c})", claimed, r.value))
    return out


# -- first variation on the full cones ----------------------------------------------------

def suite_first_variation(max_q: int) -> list[Check]:
    out: list[Check] = []
    for p in (p for p in range(3, max_q + 1, 2) if is_prime(p)):
        for cone in ("upsilon_full", "gamma_full"):
            closed, numeric = first_variation_check(p, cone)
            want_positive = cone == "upsilon_full" or p % 4 == 1
            out.append(check(f"{cone} p={p} derivative", float(closed), numeric, tol=1e-6))
            out.append(check(f"{cone} p={p} sign", 1 if want_positive else -1, 1 if numeric > 0 else -1))
    return out


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "lemmas": suite_identities,
    "convolutions": suite_convolutions,
    "theorems": suite_bounds,
    "theorem6": suite_first_variation,
}


def run_suite(name: str, max_q: int) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](max_q)]
    return SUITES[name](max_q)
