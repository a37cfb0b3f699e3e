"""Arithmetic in the coefficient field GF(p^r).

The prime case (r == 1) represents scalars as plain ints in [0, p).  Proper
extensions represent scalars as length-r tuples of ints, the coordinates with
respect to the power basis of GF(p)[y]/(g) for a canonical irreducible monic
g of degree r (the first irreducible polynomial in the little-endian integer
enumeration y^r + sum(a_i * y^i) with sum(a_i * p^i) ascending).

Polynomials over a BaseField are handled as little-endian scalar lists with no
trailing zeros; the helpers below are generic over the field so the same code
validates degree-r moduli over GF(p) and tower moduli over GF(p^r).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

__all__ = [
    "Scalar",
    "BaseField",
    "base_field",
    "is_prime",
    "prime_factors",
    "poly_is_irreducible",
]

# int for prime fields, tuple[int, ...] of length r for GF(p^r) with r > 1
Scalar = int | tuple


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Sorted distinct prime factors of n >= 1."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class BaseField:
    """GF(p^r); ``modulus`` is the monic defining polynomial for r > 1.

    The modulus is stored little-endian including the leading 1, or None when
    r == 1.  Elements are canonical: ints in [0, p) for r == 1, tuples of such
    ints (fixed length r) otherwise.
    """

    p: int
    r: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return self.p**self.r

    @property
    def zero(self) -> Scalar:
        return 0 if self.r == 1 else (0,) * self.r

    @property
    def one(self) -> Scalar:
        return 1 if self.r == 1 else (1,) + (0,) * (self.r - 1)

    def from_int(self, n: int) -> Scalar:
        n %= self.p
        return n if self.r == 1 else (n,) + (0,) * (self.r - 1)

    def is_zero(self, a: Scalar) -> bool:
        return a == 0 if self.r == 1 else not any(a)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if self.r == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        if self.r == 1:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Scalar) -> Scalar:
        if self.r == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if self.r == 1:
            return a * b % self.p
        p, r = self.p, self.r
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        # reduce modulo the monic modulus
        mod = self.modulus
        for k in range(2 * r - 2, r - 1, -1):
            coef = prod[k] % p
            if coef:
                for j in range(r):
                    prod[k - r + j] -= coef * mod[j]
            prod[k] = 0
        return tuple(c % p for c in prod[:r])

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in GF(%d^%d)" % (self.p, self.r))
        if self.r == 1:
            return pow(a, -1, self.p)
        prime = base_field(self.p, 1)
        inv = poly_invmod(prime, list(a), list(self.modulus))
        inv += [0] * (self.r - len(inv))
        return tuple(inv[: self.r])

    def frob(self, a: Scalar) -> Scalar:
        """The p-power Frobenius (identity on the prime field)."""
        if self.r == 1:
            return a
        return self.pow(a, self.p)

    def pow(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def random(self, rng) -> Scalar:
        """Uniform scalar drawn as r base-p digits from ``rng.randrange``."""
        if self.r == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.r))

    def to_json(self, a: Scalar):
        return a if self.r == 1 else list(a)

    def from_json(self, obj) -> Scalar:
        if self.r == 1:
            if not isinstance(obj, int):
                raise ValueError("scalar for a prime field must be an int")
            return obj % self.p
        if not isinstance(obj, (list, tuple)) or len(obj) != self.r:
            raise ValueError("scalar for GF(p^%d) must be a list of %d ints" % (self.r, self.r))
        return tuple(int(x) % self.p for x in obj)


@lru_cache(maxsize=None)
def base_field(p: int, r: int = 1) -> BaseField:
    """Construct GF(p^r) with the canonical degree-r modulus."""
    if not is_prime(p):
        raise ValueError("p = %d is not prime" % p)
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if r == 1:
        return BaseField(p, 1, None)
    prime = base_field(p, 1)
    for enc in range(p**r):
        coeffs = []
        m = enc
        for _ in range(r):
            coeffs.append(m % p)
            m //= p
        candidate = coeffs + [1]
        if poly_is_irreducible(prime, candidate):
            return BaseField(p, r, tuple(candidate))
    raise ValueError("no irreducible degree-%d polynomial found over GF(%d)" % (r, p))


# ---------------------------------------------------------------------------
# generic dense polynomials over a BaseField (little-endian, trimmed)


def _trim(f: list) -> list:
    while f and (f[-1] == 0 or (isinstance(f[-1], tuple) and not any(f[-1]))):
        f.pop()
    return f


def _poly_sub(F: BaseField, f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.sub(a, b))
    return _trim(out)


def _poly_mul(F: BaseField, f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _trim(out)


def _poly_divmod(F: BaseField, f: list, g: list) -> tuple[list, list]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    if len(f) < len(g):
        return [], _trim(f)
    q = [F.zero] * (len(f) - dg)
    ginv = F.inv(g[-1])
    for k in range(len(f) - len(g), -1, -1):
        c = F.mul(f[k + dg], ginv)
        if not F.is_zero(c):
            q[k] = c
            for i, b in enumerate(g):
                f[k + i] = F.sub(f[k + i], F.mul(c, b))
    return _trim(q), _trim(f[:dg])


def _poly_mod(F: BaseField, f: list, g: list) -> list:
    return _poly_divmod(F, f, g)[1]


def _poly_gcd(F: BaseField, f: list, g: list) -> list:
    f, g = list(f), list(g)
    while g:
        f, g = g, _poly_mod(F, f, g)
    if f:
        c = F.inv(f[-1])
        f = [F.mul(a, c) for a in f]
    return f


def _poly_powmod(F: BaseField, f: list, e: int, mod: list) -> list:
    out = [F.one]
    base = _poly_mod(F, f, mod)
    while e:
        if e & 1:
            out = _poly_mod(F, _poly_mul(F, out, base), mod)
        base = _poly_mod(F, _poly_mul(F, base, base), mod)
        e >>= 1
    return out


def poly_invmod(F: BaseField, f: list, mod: list) -> list:
    """Inverse of f modulo an irreducible monic polynomial, by extended Euclid."""
    f = _trim(list(f))
    if not f:
        raise ZeroDivisionError("inverse of zero polynomial")
    g = list(mod)
    s0, s1 = [F.one], []
    while g:
        q, rem = _poly_divmod(F, f, g)
        f, g = g, rem
        s0, s1 = s1, _poly_sub(F, s0, _poly_mul(F, q, s1))
    # f is the gcd; coprimality with an irreducible modulus makes it a constant
    if len(f) != 1:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    c = F.inv(f[0])
    return [F.mul(a, c) for a in s0]


def poly_is_irreducible(F: BaseField, f: list) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p^r)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.order
    x = [F.zero, F.one]
    # x^(q^n) == x (mod f)
    power = _poly_powmod(F, x, q**n, f)
    if _trim(_poly_sub(F, power, x)) != []:
        return False
    for e in prime_factors(n):
        power = _poly_powmod(F, x, q ** (n // e), f)
        if len(_poly_gcd(F, _poly_sub(F, power, x), f)) > 1:
            return False
    return True


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0
