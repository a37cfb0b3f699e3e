"""Kummer-presented towers of finite fields with a shared eigenbasis.

A tower for a prime p and per-vertex weights (d_1, ..., d_n) is the chain
GF(p) = F <= F_i <= E = GF(p^d) with d = lcm(d_i) and [F_i : F] = d_i.  The
top field is presented as F[x]/(x^d - c) for the canonical constant c, so the
powers 1, v, v^2, ..., v^(d-1) of the generator v form a basis on which the
Frobenius acts diagonally: sigma(v^m) = eigenvalue^m * v^m.  Each subfield
F_i is spanned by the powers v^m with m divisible by d/d_i.

This construction requires p == 1 (mod d); towers for other primes would need
non-eigen bases and are rejected outright.  ``extend_scalars`` replaces the
coefficient field GF(p) by GF(p^r) for r coprime to d, keeping c, d and the
eigenbasis unchanged (the extension stays linearly disjoint from E).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd, lcm

from .basefield import (
    BaseField,
    Scalar,
    base_field,
    is_prime,
    poly_invmod,
    poly_is_irreducible,
    prime_factors,
)

__all__ = ["FieldTower", "TowerElement", "build_tower", "extend_scalars"]


@dataclass(frozen=True)
class FieldTower:
    p: int
    weights: tuple[int, ...]
    degree: int        # d = lcm(weights)
    constant: int      # c in the presentation E = base[x]/(x^d - c)
    eigenvalue: int    # order-d element of GF(p) with sigma(v) = eigenvalue * v
    base: BaseField    # coefficient field GF(p^r)

    @property
    def vertex_count(self) -> int:
        return len(self.weights)

    @property
    def base_degree(self) -> int:
        return self.base.r

    def weight(self, vertex: int) -> int:
        if not 1 <= vertex <= len(self.weights):
            raise IndexError("vertex %r out of range" % (vertex,))
        return self.weights[vertex - 1]

    def subfield_exponents(self, vertex: int) -> tuple[int, ...]:
        """Exponents m with v^m in F_vertex, i.e. multiples of d/d_vertex."""
        step = self.degree // self.weight(vertex)
        return tuple(range(0, self.degree, step))

    def basis_inverse(self, m: int) -> tuple[Scalar, int]:
        """(scalar, exponent) with v^m * scalar * v^exponent == 1."""
        if not 0 <= m < self.degree:
            raise ValueError("exponent %r outside [0, %d)" % (m, self.degree))
        if m == 0:
            return self.base.one, 0
        return self.base.from_int(pow(self.constant, -1, self.p)), self.degree - m

    # -- element constructors ------------------------------------------------

    def _coerce(self, value) -> Scalar:
        if isinstance(value, int):
            return self.base.from_int(value)
        return self.base.from_json(list(value))

    def element(self, coords) -> "TowerElement":
        coords = tuple(self._coerce(a) for a in coords)
        if len(coords) != self.degree:
            raise ValueError("expected %d coordinates, got %d" % (self.degree, len(coords)))
        return TowerElement(self, coords)

    def zero(self) -> "TowerElement":
        return TowerElement(self, (self.base.zero,) * self.degree)

    def one(self) -> "TowerElement":
        return self.basis_element(0)

    def basis_element(self, m: int, coeff=1) -> "TowerElement":
        """coeff * v^m."""
        if not 0 <= m < self.degree:
            raise ValueError("exponent %r outside [0, %d)" % (m, self.degree))
        coords = [self.base.zero] * self.degree
        coords[m] = self._coerce(coeff)
        return TowerElement(self, tuple(coords))

    def scalar(self, n: int) -> "TowerElement":
        return self.basis_element(0, n)

    def random_element(self, rng, vertex: int | None = None) -> "TowerElement":
        """Uniform element of E, or of F_vertex when a vertex is given."""
        support = range(self.degree) if vertex is None else self.subfield_exponents(vertex)
        coords = [self.base.zero] * self.degree
        for m in support:
            coords[m] = self.base.random(rng)
        return TowerElement(self, tuple(coords))


@dataclass(frozen=True)
class TowerElement:
    """Element of the top field E, as coordinates on the eigenbasis."""

    tower: FieldTower
    coords: tuple[Scalar, ...]

    def is_zero(self) -> bool:
        F = self.tower.base
        return all(F.is_zero(a) for a in self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def support(self) -> tuple[int, ...]:
        F = self.tower.base
        return tuple(m for m, a in enumerate(self.coords) if not F.is_zero(a))

    def in_subfield(self, vertex: int) -> bool:
        allowed = set(self.tower.subfield_exponents(vertex))
        return all(m in allowed for m in self.support())

    def __add__(self, other: "TowerElement") -> "TowerElement":
        self._check(other)
        F = self.tower.base
        return TowerElement(
            self.tower, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "TowerElement") -> "TowerElement":
        self._check(other)
        F = self.tower.base
        return TowerElement(
            self.tower, tuple(F.sub(a, b) for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "TowerElement":
        F = self.tower.base
        return TowerElement(self.tower, tuple(F.neg(a) for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.tower.base.from_int(other))
        self._check(other)
        t = self.tower
        F = t.base
        d = t.degree
        c = F.from_int(t.constant)
        out = [F.zero] * d
        for m, a in enumerate(self.coords):
            if F.is_zero(a):
                continue
            for n, b in enumerate(other.coords):
                if F.is_zero(b):
                    continue
                s = F.mul(a, b)
                k = m + n
                if k >= d:
                    k -= d
                    s = F.mul(s, c)
                out[k] = F.add(out[k], s)
        return TowerElement(t, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(self.tower.base.from_int(other))
        return NotImplemented

    def scale(self, scalar: Scalar) -> "TowerElement":
        F = self.tower.base
        return TowerElement(self.tower, tuple(F.mul(scalar, a) for a in self.coords))

    def inverse(self) -> "TowerElement":
        t = self.tower
        F = t.base
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero tower element")
        if t.degree == 1:
            return TowerElement(t, (F.inv(self.coords[0]),))
        mod = [F.neg(F.from_int(t.constant))] + [F.zero] * (t.degree - 1) + [F.one]
        inv = poly_invmod(F, list(self.coords), mod)
        inv += [F.zero] * (t.degree - len(inv))
        return TowerElement(t, tuple(inv[: t.degree]))

    def frobenius(self, power: int = 1) -> "TowerElement":
        """Apply sigma^power, sigma(v^m) = eigenvalue^m v^m acting p-power-wise
        on the GF(p^r) coordinates."""
        t = self.tower
        F = t.base
        power %= t.degree * F.r
        out = []
        for m, a in enumerate(self.coords):
            for _ in range(power % F.r if F.r > 1 else 0):
                a = F.frob(a)
            out.append(F.mul(a, F.from_int(pow(t.eigenvalue, m * power, t.p))))
        return TowerElement(t, tuple(out))

    def _check(self, other: "TowerElement") -> None:
        if not isinstance(other, TowerElement) or other.tower != self.tower:
            raise ValueError("tower elements belong to different towers")


def _tower_modulus(F: BaseField, degree: int, constant: int) -> list:
    return [F.neg(F.from_int(constant))] + [F.zero] * (degree - 1) + [F.one]


def build_tower(p: int, weights) -> FieldTower:
    """Build the tower for prime p and the given vertex weights.

    The constant c is the smallest integer in {2, ..., p-1} that generates a
    subgroup of index coprime to d (c^((p-1)/e) != 1 for every prime e | d)
    and for which x^d - c passes a direct irreducibility test; the latter
    covers the 4 | d corner case without case analysis.
    """
    weights = tuple(int(w) for w in weights)
    if not weights or any(w < 1 for w in weights):
        raise ValueError("weights must be a nonempty tuple of positive integers")
    if not is_prime(p):
        raise ValueError("p = %r is not prime" % (p,))
    d = lcm(*weights)
    if (p - 1) % d != 0:
        raise ValueError(
            "p = %d is not congruent to 1 mod d = %d; no eigenbasis presentation" % (p, d)
        )
    F = base_field(p, 1)
    primes_d = prime_factors(d)
    for c in range(2, p):
        if any(pow(c, (p - 1) // e, p) == 1 for e in primes_d):
            continue
        if poly_is_irreducible(F, _tower_modulus(F, d, c)):
            zeta = pow(c, (p - 1) // d, p)
            return FieldTower(p, weights, d, c, zeta, F)
    raise ValueError("no admissible constant c found for p = %d, d = %d" % (p, d))


def extend_scalars(tower: FieldTower, r: int) -> FieldTower:
    """Replace the coefficient field GF(p) by GF(p^r), gcd(r, d) == 1.

    Coprimality keeps GF(p^r) linearly disjoint from E over GF(p), so the
    presentation x^d - c and the eigenbasis carry over verbatim.
    """
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if r == 1:
        return tower
    if gcd(r, tower.degree) != 1:
        raise ValueError(
            "extension degree %d shares a factor with d = %d; scalars would not stay"
            " linearly disjoint" % (r, tower.degree)
        )
    base = base_field(tower.p, r)
    if not poly_is_irreducible(base, _tower_modulus(base, tower.degree, tower.constant)):
        raise RuntimeError(
            "x^%d - %d unexpectedly reducible over GF(%d^%d); constant selection is broken"
            % (tower.degree, tower.constant, tower.p, r)
        )
    return replace(tower, base=base)
