"""Closed forms: predicted convolutions, sharp constants, maximizers and the
perturbed-constant functionals on the full cones.

Everything that can be exact is returned as a ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .characters import epsilon_exponent, jacobi, legendre, roots_of_unity
from .errors import (
    NotOddPrime,
    PrimeTooSmall,
    UnsupportedCombination,
    WrongResidueClass,
)
from .field import is_prime, sqrt_minus_one
from .geometry import SurfaceSpec


def _nu2(k: int) -> tuple[int, int]:
    """Split k = 2^nu * ell with ell odd."""
    nu = 0
    while k % 2 == 0:
        k //= 2
        nu += 1
    return nu, k


def predicted_parabola_conv(d: int, k: int, p: int, target: Sequence[int]) -> Fraction:
    """k-fold convolution of the normalised measure on P^d over F_p at ``target = (xi, tau)``.

    The result is ``1 + eps_p^e p^m phi`` where the power of i in ``eps_p^e``
    is always even and ``m`` is an integer, so the value is rational.
    """
    if p < 3 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    if d < 1 or k < 2:
        raise ValueError("need d >= 1 and k >= 2")
    if p <= k:
        raise PrimeTooSmall(f"the closed form needs p > k (p = {p}, k = {k})")
    if len(target) != d + 1:
        raise ValueError(f"target must have {d + 1} coordinates")
    xi, tau = [int(c) % p for c in target[:-1]], int(target[-1]) % p
    xi2 = sum(c * c for c in xi) % p
    on_critical = (k * tau - xi2) % p == 0
    e = epsilon_exponent(p)

    if d % 2 == 0 or k % 2 == 1:
        i_pow = e * d * (k + 1)
        p_pow2 = d * (1 - k)
        phi = p * on_critical - 1
        if d % 2 == 1:
            phi *= (-1) ** ((p - 1) * (k + 1) // 4) * jacobi(p, k)
    else:
        nu, ell = _nu2(k)
        i_pow = e * (d * (k + 1) + 1)
        p_pow2 = d * (1 - k) + 1
        sign = (-1) ** ((p - 1) * (ell + 1) // 4 + nu * (p * p - 1) // 8)
        gap = (xi2 * pow(k, -1, p) - tau) % p
        phi = sign * jacobi(p, ell) * legendre(gap, p)

    assert i_pow % 2 == 0 and p_pow2 % 2 == 0
    unit = -1 if i_pow % 4 == 2 else 1
    return 1 + unit * Fraction(p) ** (p_pow2 // 2) * phi


def predicted_conv(s: SurfaceSpec, k: int) -> Callable[[Sequence[int]], Fraction]:
    """Piecewise-constant closed form of the k-fold convolution on s."""
    f = s.field
    q = f.q

    def scalar(pt):
        return [int(c) for c in pt]

    if s.kind == "P2" and k == 2:
        on, off = (Fraction(2 * q - 1, q), Fraction(q - 1, q)) if q % 4 == 1 else (Fraction(1, q), Fraction(q + 1, q))

        def value(pt):
            x1, x2, tau = scalar(pt)
            crit = f.mul(2, tau) == f.add(f.square(x1), f.square(x2))
            return on if crit else off

        return value

    if s.kind == "P1" and k == 3:
        if f.p == 3:
            raise UnsupportedCombination("the three-fold closed form needs p > 3")
        on, off = (Fraction(2 * q - 1, q), Fraction(q - 1, q)) if q % 3 == 1 else (Fraction(1, q), Fraction(q + 1, q))

        def value(pt):
            x, tau = scalar(pt)
            return on if f.mul(3, tau) == f.square(x) else off

        return value

    if s.kind == "H2" and k == 2:
        on, off = Fraction(2 * q - 1, q), Fraction(q - 1, q)

        def value(pt):
            x1, x2, tau = scalar(pt)
            return on if f.mul(2, tau) == f.sub(f.square(x1), f.square(x2)) else off

        return value

    if s.kind in ("Gamma3Full", "Upsilon3Full") and k == 2:
        prime_field = f.n == 1
        upsilon_like = prime_field and (s.kind == "Upsilon3Full" or q % 4 == 1)
        if upsilon_like:
            m = q * q + q - 1
            at0, on, off = m, 2 * q - 1, q + 1
        elif s.kind == "Gamma3Full" and q % 4 == 3:
            m = q * q - q + 1
            at0, on, off = m, 1, q - 1
        else:
            raise UnsupportedCombination(f"no closed form for {s.kind} over F_{q}")
        scale = Fraction(q**3, m * m)

        def value(pt):
            pt = scalar(pt)
            if not any(pt):
                return scale * at0
            return scale * (on if s.contains(pt) else off)

        return value

    raise UnsupportedCombination(f"no closed-form {k}-fold convolution for {s.kind}")


# -- sharp constants -------------------------------------------------------------

def sharp_constant_power(s: SurfaceSpec, exponent: int) -> Fraction:
    """``R*^exponent`` as an exact rational."""
    q = s.field.q
    base = 1 + Fraction(1, q) - Fraction(1, q * q)
    if s.kind in ("P2", "H2") and exponent == 4:
        return base
    if s.kind == "P1" and exponent == 6:
        if s.field.p <= 3:
            raise UnsupportedCombination("the parabola L^6 constant needs p > 3")
        return base
    if s.kind == "Gamma3" and exponent == 4:
        if q % 4 != 3:
            raise UnsupportedCombination("the punctured-cone constant is only known for q = 3 mod 4")
        return Fraction(q**4 * (q**5 - 2 * q**4 + 2 * q**3 - 3 * q + 3), (q - 1) ** 3 * (q * q + 1) ** 3)
    raise UnsupportedCombination(f"no sharp constant for ({s.kind}, L^{exponent})")


def sharp_constant(s: SurfaceSpec, exponent: int) -> float:
    return float(sharp_constant_power(s, exponent)) ** (1.0 / exponent)


def known_constant(s: SurfaceSpec, exponent: int) -> float | None:
    try:
        return sharp_constant(s, exponent)
    except UnsupportedCombination:
        return None


# -- maximizers --------------------------------------------------------------------

@dataclass(frozen=True)
class MaximizerParams:
    lam: complex = 1.0
    a: int = 0
    b: int = 0
    c: int = 0

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")


def null_coordinates(s: SurfaceSpec) -> tuple[np.ndarray, np.ndarray]:
    """(eta, zeta) with xi = eta (1, w) + zeta (1, -w) for each surface point.

    On P2, w^2 = -1; on H2, w = 1.
    """
    f = s.field
    if s.kind == "P2":
        if f.q % 4 != 1:
            raise WrongResidueClass("the P2 family needs q = 1 mod 4")
        w = sqrt_minus_one(f)
    elif s.kind == "H2":
        w = 1
    else:
        raise UnsupportedCombination(f"no maximizer family on {s.kind}")
    x1, x2 = s.points[:, 0], s.points[:, 1]
    y = f.mul(x2, f.inv(w))
    eta = f.mul(f.add(x1, y), f.half)
    zeta = f.mul(f.sub(x1, y), f.half)
    return eta, zeta


def maximizer_values(s: SurfaceSpec, params: MaximizerParams) -> np.ndarray:
    f = s.field
    eta, zeta = null_coordinates(s)
    phase = f.add(f.add(f.mul(params.a, eta), f.mul(params.b, zeta)), f.mul(params.c, f.mul(eta, zeta)))
    return complex(params.lam) * roots_of_unity(f.p)[f.trace_table[phase]]


def maximizer_family(s: SurfaceSpec, params: MaximizerParams):
    from .transform import SurfaceFunction

    return SurfaceFunction(s, maximizer_values(s, params))


# -- perturbed constants on the full cones ------------------------------------------

def _check_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")


@dataclass(frozen=True)
class PhiPolynomials:
    """Numerators and denominators of the two rational functionals in eps."""

    p: int

    def __post_init__(self):
        _check_prime(self.p)

    def A(self, e):
        p = self.p
        return (2 * p**5 + p**6 - 7 * p**7 - p**8 + 5 * p**9 + p**10
                + (-8 * p**5 + 4 * p**6 + 8 * p**7) * e
                + (-6 * p**3 + 6 * p**4 + 6 * p**5) * e**2
                + 4 * p**2 * e**3 + p**2 * e**4)

    def B(self, e):
        p = self.p
        return (p * p + p - 1) ** 2 * (p**3 + p * p - p + e * (2 + e)) ** 2

    def C(self, e):
        p = self.p
        return (-2 * p**5 + 5 * p**6 - 5 * p**7 + 5 * p**8 - 3 * p**9 + p**10
                + 4 * p**6 * e
                + (6 * p**3 - 6 * p**4 + 6 * p**5) * e**2
                + 4 * p**2 * e**3 + p**2 * e**4)

    def D(self, e):
        p = self.p
        return (p * p - p + 1) ** 2 * (p**3 - p * p + p + e * (2 + e)) ** 2

    def phi(self, e):
        return self.A(e) / self.B(e) if isinstance(e, float) else Fraction(self.A(e), self.B(e))

    def psi(self, e):
        if self.p % 4 != 3:
            raise WrongResidueClass("the Gamma-cone closed form is for p = 3 mod 4")
        return self.C(e) / self.D(e) if isinstance(e, float) else Fraction(self.C(e), self.D(e))


def phi_psi(p: int, eps, which: str):
    """Evaluate the closed-form functional; exact for int/Fraction eps, float otherwise."""
    poly = PhiPolynomials(p)
    if which == "phi":
        return poly.phi(eps)
    if which == "psi":
        return poly.psi(eps)
    raise ValueError("which must be 'phi' or 'psi'")


def phi_psi_derivative_at_zero(p: int, which: str) -> Fraction:
    _check_prime(p)
    if which == "phi":
        return Fraction(4 * p * p * (p - 2) * (p * p - 1) ** 2, (p * p + p - 1) ** 5)
    if which == "psi":
        if p % 4 != 3:
            raise WrongResidueClass("the Gamma-cone closed form is for p = 3 mod 4")
        return Fraction(-4 * p * p * (p - 2) * (p - 1) ** 2 * (p * p + 1), (p * p - p + 1) ** 5)
    raise ValueError("which must be 'phi' or 'psi'")
