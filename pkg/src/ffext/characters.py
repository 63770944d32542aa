"""Additive characters, quadratic symbols and quadratic Gauss sums.

Each Gauss sum comes in two versions: a direct summation over F_p and a
closed form.  The closed forms carry the constant ``eps_p`` (1 when
p = 1 mod 4, i when p = 3 mod 4) as an exact power of i.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EvenModulus, NotOddPrime, ZeroLeadingCoefficient
from .field import MAX_TABLE_Q, FieldSpec, is_prime


@dataclass(frozen=True)
class CharacterSpec:
    """The additive character ``e_a(x) = exp(2 pi i Tr(a x) / p)``."""

    field: FieldSpec
    a: int = 1


def roots_of_unity(p: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(p) / p)


def e_p(t: int, p: int) -> complex:
    """exp(2 pi i t / p) for an integer t."""
    return complex(roots_of_unity(p)[t % p])


def eval_char(chi: CharacterSpec, x) -> complex | np.ndarray:
    f = chi.field
    t = f.trace_table[f.mul(chi.a, x)]
    out = roots_of_unity(f.p)[t]
    return complex(out) if np.ndim(out) == 0 else out


@lru_cache(maxsize=32)
def character_matrix(field: FieldSpec) -> np.ndarray:
    """``E[x, xi] = e(x xi)``, a symmetric q x q matrix (read-only)."""
    roots = roots_of_unity(field.p)
    if field.q <= MAX_TABLE_Q:
        E = roots[field.trace_table[field.mul_table]]
    else:
        a = np.arange(field.q)
        E = np.empty((field.q, field.q), dtype=complex)
        for x in range(field.q):
            E[x] = roots[field.trace_table[field.mul(x, a)]]
    E.setflags(write=False)
    return E


def _check_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    _check_prime(p)
    a = int(a) % p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) via reciprocity; (a/1) = 1."""
    if m < 1 or m % 2 == 0:
        raise EvenModulus(f"modulus m = {m} must be odd and positive")
    a, m = int(a) % m, int(m)
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def epsilon_exponent(p: int) -> int:
    """eps_p as a power of i: 0 if p = 1 mod 4, 1 if p = 3 mod 4."""
    _check_prime(p)
    return 0 if p % 4 == 1 else 1


def i_power(k: int) -> complex:
    return (1, 1j, -1, -1j)[k % 4]


def epsilon(p: int) -> complex:
    return i_power(epsilon_exponent(p))


# -- direct summation ---------------------------------------------------------

def gauss_sum(a: int, p: int) -> complex:
    """sum_x e(a x^2) over F_p."""
    _check_prime(p)
    x = np.arange(p)
    return complex(np.sum(roots_of_unity(p)[(a * x * x) % p]))


def weighted_gauss_sum(a: int, p: int) -> complex:
    """sum_{x != 0} (x/p) e(a x) over F_p."""
    _check_prime(p)
    x = np.arange(1, p)
    leg = np.array([legendre(int(v), p) for v in x])
    return complex(np.sum(leg * roots_of_unity(p)[(a * x) % p]))


def general_gauss_sum(a: int, b: int, p: int) -> complex:
    """sum_x e(a x^2 + b x) over F_p, a nonzero."""
    _check_prime(p)
    if a % p == 0:
        raise ZeroLeadingCoefficient("leading coefficient must be nonzero")
    x = np.arange(p)
    return complex(np.sum(roots_of_unity(p)[(a * x * x + b * x) % p]))


# -- closed forms ---------------------------------------------------------------

def gauss_sum_closed(a: int, p: int) -> complex:
    if a % p == 0:
        return complex(p)
    return legendre(a, p) * epsilon(p) * math.sqrt(p)


def weighted_gauss_sum_closed(a: int, p: int) -> complex:
    return legendre(a, p) * epsilon(p) * math.sqrt(p)


def general_gauss_sum_closed(a: int, b: int, p: int) -> complex:
    _check_prime(p)
    if a % p == 0:
        raise ZeroLeadingCoefficient("leading coefficient must be nonzero")
    # -b^2 / (4a) with the division done in F_p
    shift = (-b * b * pow(4 * a, -1, p)) % p
    return cmath.exp(2j * math.pi * shift / p) * legendre(a, p) * epsilon(p) * math.sqrt(p)
