"""Table-driven arithmetic in GF(n^2) for an odd prime power n.

Elements are plain ints: the coefficient vector ``(c_0, ..., c_{2m-1})`` of
the polynomial-basis representation packed as ``sum(c_i * p**i)``. Zero is
``0`` and one is ``1``.  All tables are built once in :func:`make_field_context`
and the resulting :class:`FieldContext` is read-only.
"""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, DomainError, InvalidParameterError

DEFAULT_MAX_ORDER = 1 << 16


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    f = 3
    while f * f <= k:
        if k % f == 0:
            return False
        f += 2
    return True


def prime_factors(k: int) -> list[int]:
    out = []
    f = 2
    while f * f <= k:
        if k % f == 0:
            out.append(f)
            while k % f == 0:
                k //= f
        f += 1
    if k > 1:
        out.append(k)
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``n == p**m`` and ``p`` prime, or None."""
    if n < 2:
        return None
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    p = ps[0]
    m = round(math.log(n, p))
    for cand in (m - 1, m, m + 1):
        if cand >= 1 and p**cand == n:
            return p, cand
    return None


# -- polynomial helpers over F_p, coefficient lists low-degree first ---------

def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    a = list(a)
    d = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= d:
        coef = a[-1] * inv_lead % p
        if coef:
            shift = len(a) - 1 - d
            for i, c in enumerate(mod):
                a[shift + i] = (a[shift + i] - coef * c) % p
        a.pop()
    return a


def _poly_is_zero(a):
    return not any(a)


def _divides(div: list[int], f: list[int], p: int) -> bool:
    return _poly_is_zero(_poly_mod(f, div, p))


def _is_irreducible(f: list[int], p: int) -> bool:
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if _divides(list(low) + [1], f, p):
                return False
    return True


def smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of ``degree`` (low degree first)."""
    for low in itertools.product(range(p), repeat=degree):
        if low[0] == 0:
            continue
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _polymulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    r = _poly_mod(out, mod, p)
    return r + [0] * (len(mod) - 1 - len(r))


def _polypow(a, e, mod, p):
    result = [1] + [0] * (len(mod) - 2)
    base = list(a)
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


class EvenOddSplit(NamedTuple):
    ev: int
    odd: int


class FieldContext:
    """GF(q), q = n^2, with its index-(n+1)/2 subgroup R and the {1, w^r} basis.

    Attributes of interest: ``p, m, n, q, r``, ``modulus`` (monic, low degree
    first), ``omega`` (the chosen primitive element), the numpy tables
    ``exp``/``log``/``digits`` and the boolean tables ``r_member`` and
    ``fn_member``.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...], omega: int,
                 exp: np.ndarray):
        self.p, self.m = p, m
        self.n = p**m
        self.q = self.n * self.n
        self.r = (self.n + 1) // 2
        self.degree = 2 * m
        self.modulus = modulus
        self.omega = omega
        q = self.q
        self.exp = exp
        self.exp.flags.writeable = False
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        log.flags.writeable = False
        self.log = log
        self.powers = p ** np.arange(self.degree, dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self.powers) % p
        self.digits.flags.writeable = False
        self._pw = self.powers.tolist()
        nz = log >= 0
        self.r_member = nz & (log % self.r == 0)
        self.fn_member = ~nz | (log % (self.n + 1) == 0)
        # scalar fast paths
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._digits = [tuple(row) for row in self.digits.tolist()]
        self._inv2 = self.inv(2 % p)
        self._r_member = self.r_member.tolist()
        frob = self.vpow(np.arange(q), self.n)
        self.ev_table = self.vmul(self.vadd(np.arange(q), frob), self._inv2)
        self.odd_table = self.vmul(self.vsub(np.arange(q), frob), self._inv2)
        self._ev = self.ev_table.tolist()
        self._odd = self.odd_table.tolist()

    def __repr__(self):
        return f"FieldContext(p={self.p}, m={self.m}, n={self.n}, q={self.q})"

    # -- conversion ---------------------------------------------------------
    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.degree - len(coeffs))
        if len(coeffs) != self.degree or any(not 0 <= c < self.p for c in coeffs):
            raise DomainError(f"bad coefficient vector {coeffs!r}")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return self._digits[a]

    def elements(self) -> range:
        return range(self.q)

    def omega_pow(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    # -- scalar arithmetic ------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        da, db, p = self._digits[a], self._digits[b], self.p
        return sum(((x + y) % p) * w for x, y, w in zip(da, db, self._pw))

    def sub(self, a: int, b: int) -> int:
        da, db, p = self._digits[a], self._digits[b], self.p
        return sum(((x - y) % p) * w for x, y, w in zip(da, db, self._pw))

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DomainError("zero has no multiplicative inverse")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def dlog(self, a: int) -> int:
        if a == 0:
            raise DomainError("discrete log of zero")
        return self._log[a]

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        return (self.q - 1) // math.gcd(self._log[a], self.q - 1)

    def in_R(self, a: int) -> bool:
        return self._r_member[a]

    def in_Fn(self, a: int) -> bool:
        return bool(self.fn_member[a])

    def coset_label(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero lies in no coset of R")
        return self._log[a] % self.r

    def even_odd_split(self, a: int) -> EvenOddSplit:
        return EvenOddSplit(self._ev[a], self._odd[a])

    def R_elements(self) -> list[int]:
        return [self._exp[k] for k in range(0, self.q - 1, self.r)]

    # -- vectorised arithmetic (numpy int arrays in, int64 arrays out) ---------
    def vadd(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.powers

    def vsub(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        return ((self.digits[a] - self.digits[b]) % self.p) @ self.powers

    def vmul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, e: int):
        a = np.asarray(a)
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0 if e else 1, out)


def make_field_context(p: int, m: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldContext:
    """Build GF(p^(2m)) with deterministic modulus and primitive element."""
    if not isinstance(p, int) or p % 2 == 0 or not is_prime(p):
        raise InvalidParameterError(f"p must be an odd prime, got {p!r}")
    if not isinstance(m, int) or m < 1:
        raise InvalidParameterError(f"m must be a positive integer, got {m!r}")
    q = p ** (2 * m)
    if q > max_order:
        raise CapacityError(f"GF({q}) exceeds the table cap of {max_order}")
    degree = 2 * m
    modulus = smallest_irreducible(p, degree)
    mod = list(modulus)
    primes = prime_factors(q - 1)
    one = [1] + [0] * (degree - 1)
    omega = None
    for cand in itertools.product(range(p), repeat=degree):
        c = list(cand)
        if not any(c):
            continue
        if all(_polypow(c, (q - 1) // ell, mod, p) != one for ell in primes):
            omega = c
            break
    assert omega is not None
    exp = np.empty(q - 1, dtype=np.int64)
    cur = one
    weights = [p**i for i in range(degree)]
    for k in range(q - 1):
        exp[k] = sum(a * w for a, w in zip(cur, weights))
        cur = _polymulmod(cur, omega, mod, p)
    omega_int = sum(a * w for a, w in zip(omega, weights))
    return FieldContext(p, m, modulus, omega_int, exp)


def context_for_n(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldContext:
    """Field context for GF(n^2) given the odd prime power ``n``."""
    pm = prime_power(n)
    if pm is None or pm[0] == 2:
        raise InvalidParameterError(f"n must be an odd prime power, got {n}")
    return make_field_context(pm[0], pm[1], max_order=max_order)
