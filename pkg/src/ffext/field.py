"""Finite fields F_q = F_p[x]/(m(x)) for odd primes p.

Elements are plain integers ``0 <= a < q``.  The element
``c_0 + c_1 x + ... + c_{n-1} x^{n-1}`` is encoded as ``sum(c_i * p**i)``,
so the prime subfield F_p is ``{0, ..., p-1}`` and integer order is the
enumeration order.  That order compares the highest-degree coefficient
first, which is the same convention used to choose the modulus.

All arithmetic accepts Python ints or integer numpy arrays and broadcasts
like a ufunc.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DegreeZero, NoRoot, NoSquareRoot, NotABasis, NotOddPrime

MAX_Q = 10_000
# Full q x q lookup tables are only built below this size.
MAX_TABLE_Q = 2_048


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _prime_factors(m: int) -> list[int]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


# -- polynomials over F_p, coefficient lists from low to high degree ---------

def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_mod(a, m, p):
    a = _trim([c % p for c in a])
    m = _trim(m)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, p)


def _poly_powmod(a, e, m, p):
    result, base = [1], _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a polynomial over F_p (coefficients low to high).

    Degrees up to 3 are decided by the absence of roots; higher degrees by
    Rabin's test (``x^(p^n) = x`` mod m, and ``gcd(x^(p^(n/r)) - x, m) = 1``
    for every prime ``r | n``).
    """
    poly = _trim([c % p for c in poly])
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n <= 3:
        return all(sum(c * pow(x, i, p) for i, c in enumerate(poly)) % p for x in range(p))
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**n, poly, p), x, p):
        return False
    for r in _prime_factors(n):
        h = _poly_sub(_poly_powmod(x, p ** (n // r), poly, p), x, p)
        if len(_poly_gcd(h, poly, p)) != 1:
            return False
    return True


def _digits(t: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        t, r = divmod(t, p)
        out.append(r)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """A concrete model of F_q. ``modulus`` lists coefficients low to high."""

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not (self.p >= 3 and is_prime(self.p)):
            raise NotOddPrime(f"p = {self.p} is not an odd prime")
        if self.n < 1:
            raise DegreeZero(f"degree n = {self.n} must be positive")
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if self.n > 1 and not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")
        if self.q > MAX_Q:
            raise ValueError(f"q = {self.q} exceeds the supported size {MAX_Q}")

    @property
    def q(self) -> int:
        return self.p**self.n

    def __repr__(self):
        return f"FieldSpec(q={self.q}, modulus={self.modulus_str()})"

    def modulus_str(self) -> str:
        if self.n == 1:
            return "x"
        terms = []
        for i in range(self.n, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}*{mono}"))
        return " + ".join(terms)

    # -- encodings -----------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def _place(self) -> np.ndarray:
        return self.p ** np.arange(self.n, dtype=np.int64)

    @cached_property
    def digit_table(self) -> np.ndarray:
        """``digit_table[a, i]`` is the coefficient of x^i in element a."""
        a = np.arange(self.q, dtype=np.int64)[:, None]
        return (a // self._place) % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digit_table[int(a)])

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs) + [0] * (self.n - len(coeffs))
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs[: self.n])))

    def embed(self, k: int) -> int:
        """Image of an integer under Z -> F_p ⊂ F_q."""
        return int(k) % self.p

    # -- multiplicative structure via discrete exp/log tables ------------------

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        p, n, q, m = self.p, self.n, self.q, list(self.modulus)
        for g in range(2, q):
            powers = [1]
            g_poly = _digits(g, p, n)
            cur = [1]
            while True:
                cur = _poly_mulmod(cur, g_poly, m, p) if n > 1 else [cur[0] * g % p]
                val = int(sum(c * p**i for i, c in enumerate(cur)))
                if val == 1:
                    break
                powers.append(val)
            if len(powers) == q - 1:
                exp = np.array(powers, dtype=np.int64)
                log = np.full(q, -1, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                return exp, log
        raise AssertionError("no primitive element found")  # unreachable for a field

    @property
    def primitive_element(self) -> int:
        return int(self._exp_log[0][1]) if self.q > 2 else 1

    # -- arithmetic ------------------------------------------------------------

    @staticmethod
    def _ret(x, *args):
        if all(np.ndim(a) == 0 for a in args):
            return int(x)
        return x

    def add(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.n == 1:
            out = (a_ + b_) % self.p
        else:
            d = (self.digit_table[a_] + self.digit_table[b_]) % self.p
            out = d @ self._place
        return self._ret(out, a, b)

    def neg(self, a):
        a_ = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            out = (-a_) % self.p
        else:
            out = ((-self.digit_table[a_]) % self.p) @ self._place
        return self._ret(out, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.n == 1:
            out = (a_ * b_) % self.p
        else:
            exp, log = self._exp_log
            la, lb = log[a_], log[b_]
            out = np.where((a_ == 0) | (b_ == 0), 0, exp[(la + lb) % (self.q - 1)])
        return self._ret(out, a, b)

    def square(self, a):
        return self.mul(a, a)

    def pow(self, a, e: int):
        a_ = np.asarray(a, dtype=np.int64)
        if np.any((a_ == 0) & (e < 0)):
            raise ZeroDivisionError("0 has no inverse")
        exp, log = self._exp_log
        la = log[a_]
        out = np.where(a_ == 0, 1 if e == 0 else 0, exp[(la * (e % (self.q - 1))) % (self.q - 1)])
        return self._ret(out, a)

    def inv(self, a):
        return self.pow(a, -1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def scale(self, k: int, a):
        """k * a for an integer k (repeated addition)."""
        return self.mul(self.embed(k), a)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """``trace_table[a] = Tr_n(a) = a + a^p + ... + a^(p^(n-1))``, in ``{0..p-1}``."""
        a = np.arange(self.q, dtype=np.int64)
        total = np.zeros(self.q, dtype=np.int64)
        frob = a
        for _ in range(self.n):
            total = self.add(total, frob)
            frob = self.pow(frob, self.p)
        assert np.all(total < self.p), "trace left the prime subfield"
        return total

    def quadratic_character(self, a):
        """1 on nonzero squares, -1 on non-squares, 0 at 0."""
        a_ = np.asarray(a, dtype=np.int64)
        log = self._exp_log[1]
        out = np.where(a_ == 0, 0, np.where(log[a_] % 2 == 0, 1, -1))
        return self._ret(out, a)

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``sub_table[a, b] = a - b``."""
        if self.q > MAX_TABLE_Q:
            raise ValueError(f"q = {self.q} too large for a full subtraction table")
        a = np.arange(self.q, dtype=np.int64)
        return self.sub(a[:, None], a[None, :])

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.q > MAX_TABLE_Q:
            raise ValueError(f"q = {self.q} too large for a full multiplication table")
        a = np.arange(self.q, dtype=np.int64)
        return self.mul(a[:, None], a[None, :])

    @cached_property
    def half(self) -> int:
        return self.inv(2)


def make_field(p: int, n: int = 1) -> FieldSpec:
    """Build F_{p^n} using the lexicographically smallest monic irreducible modulus.

    Polynomials are compared by their coefficients from the highest degree
    down, so for (5, 2) the modulus is x^2 + 2.
    """
    if p < 3 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    if n < 1:
        raise DegreeZero(f"degree n = {n} must be positive")
    if n == 1:
        return FieldSpec(p, 1, (0, 1))
    if p**n > MAX_Q:
        raise ValueError(f"q = {p**n} exceeds the supported size {MAX_Q}")
    for t in range(p**n):
        poly = _digits(t, p, n) + [1]
        if is_irreducible(poly, p):
            return FieldSpec(p, n, tuple(poly))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def trace(a: int, field: FieldSpec) -> int:
    return int(field.trace_table[int(a)])


def is_square(a: int, field: FieldSpec) -> bool:
    """Euler's criterion; 0 counts as a square."""
    if a == 0:
        return True
    return field.pow(a, (field.q - 1) // 2) == 1


def sqrt_minus_one(field: FieldSpec) -> int:
    """The enumeration-least w with w^2 = -1."""
    if field.q % 4 != 1:
        raise NoSquareRoot(f"-1 is not a square in F_{field.q}")
    minus_one = field.neg(1)
    for w in field.elements():
        if field.square(w) == minus_one:
            return w
    raise AssertionError("unreachable")


def roots_j(field: FieldSpec) -> tuple[int, int]:
    """The two roots of j^2 + j + 1, enumeration-least first."""
    if field.p == 3 or field.q % 3 != 1:
        raise NoRoot(f"j^2 + j + 1 has no two distinct roots in F_{field.q}")
    x = np.arange(field.q)
    vals = field.add(field.add(field.square(x), x), 1)
    roots = [int(r) for r in np.flatnonzero(vals == 0)]
    assert len(roots) == 2 and field.mul(*roots) == 1
    return roots[0], roots[1]


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [list(r) for r in rows]
    rank, cols = 0, len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def dual_element(basis: Sequence[int], targets: Sequence[int], field: FieldSpec) -> int:
    """The unique a with ``Tr(a * basis[i]) = targets[i]`` for all i (exhaustive search)."""
    if len(basis) != field.n or len(targets) != field.n:
        raise NotABasis(f"need exactly n = {field.n} basis elements and targets")
    if _rank_mod_p([list(field.coeffs(e)) for e in basis], field.p) < field.n:
        raise NotABasis("basis elements are linearly dependent over F_p")
    a = np.arange(field.q)
    ok = np.ones(field.q, dtype=bool)
    for e, t in zip(basis, targets):
        ok &= field.trace_table[field.mul(a, e)] == (t % field.p)
    hits = np.flatnonzero(ok)
    assert len(hits) == 1
    return int(hits[0])
