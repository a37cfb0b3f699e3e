"""Tower construction and arithmetic, checked against naive oracles.

The multiplication oracle below works in the plain polynomial quotient ring
(convolve, then fold x^k -> c * x^(k-d)) with no knowledge of the eigenbasis
machinery, so agreement is meaningful.
"""

import random
from math import gcd, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spwp import build_tower, extend_scalars
from spwp.basefield import base_field, poly_is_irreducible, prime_factors


# ---------------------------------------------------------------------------
# oracles (independent of the implementation under test)


def oracle_mul_prime(p, d, c, a, b):
    """Multiply coordinate vectors in GF(p)[x]/(x^d - c) naively."""
    prod = [0] * (2 * d - 1) if d > 1 else [0]
    for i in range(d):
        for j in range(d):
            prod[i + j] += a[i] * b[j]
    for k in range(2 * d - 2, d - 1, -1):
        prod[k - d] += c * prod[k]
        prod[k] = 0
    return [x % p for x in prod[:d]]


def oracle_mul_ext(p, r, gmod, d, c, a, b):
    """Same fold, with coefficients multiplied naively in GF(p)[y]/(gmod)."""

    def ymul(u, v):
        out = [0] * (2 * r - 1)
        for i in range(r):
            for j in range(r):
                out[i + j] += u[i] * v[j]
        for k in range(2 * r - 2, r - 1, -1):
            coef = out[k] % p
            for t in range(r):
                out[k - r + t] -= coef * gmod[t]
            out[k] = 0
        return [x % p for x in out[:r]]

    def yaddto(acc, v):
        for t in range(r):
            acc[t] = (acc[t] + v[t]) % p

    prod = [[0] * r for _ in range(2 * d - 1 if d > 1 else 1)]
    for i in range(d):
        for j in range(d):
            yaddto(prod[i + j], ymul(list(a[i]), list(b[j])))
    cvec = [c % p] + [0] * (r - 1)
    for k in range(2 * d - 2, d - 1, -1):
        yaddto(prod[k - d], ymul(cvec, prod[k]))
        prod[k] = [0] * r
    return [tuple(v) for v in prod[:d]]


def oracle_is_irreducible_bruteforce(p, coeffs):
    """Trial division by every monic polynomial of degree <= deg/2 over GF(p)."""

    def divides(g, f):
        f = list(f)
        dg = len(g) - 1
        for k in range(len(f) - len(g), -1, -1):
            cc = f[k + dg] % p
            if cc:
                for i, b in enumerate(g):
                    f[k + i] = (f[k + i] - cc * b) % p
        return not any(x % p for x in f[:dg])

    n = len(coeffs) - 1
    for deg in range(1, n // 2 + 1):
        for enc in range(p**deg):
            g, m = [], enc
            for _ in range(deg):
                g.append(m % p)
                m //= p
            g.append(1)
            if divides(g, coeffs):
                return False
    return n >= 1


# ---------------------------------------------------------------------------
# frozen construction fixtures


def test_build_small_tower():
    t = build_tower(3, (1, 2))
    assert (t.degree, t.constant, t.eigenvalue) == (2, 2, 2)
    v = t.basis_element(1)
    assert (v * v).coords == (2, 0)


def test_build_degree_six_tower():
    t = build_tower(7, (2, 3))
    assert (t.degree, t.constant, t.eigenvalue) == (6, 3, 3)
    # the rejected candidate c=2 has cube 1, i.e. lies in the index-2 subgroup
    assert pow(2, (7 - 1) // 2, 7) == 1
    v2, v4 = t.basis_element(2), t.basis_element(4)
    assert (v2 * v4).coords == (3, 0, 0, 0, 0, 0)
    assert t.basis_element(1).frobenius().coords == (0, 3, 0, 0, 0, 0)


def test_degenerate_degree_one_tower():
    t = build_tower(5, (1, 1))
    assert t.degree == 1
    x = t.element([3])
    assert (x * x).coords == (4,)
    assert x.frobenius() == x


def test_incompatible_prime_rejected():
    with pytest.raises(ValueError):
        build_tower(5, (2, 3))


def test_constant_selection_matches_bruteforce_irreducibility():
    for p, weights in [(3, (1, 2)), (7, (2, 3)), (13, (3, 4)), (11, (2, 5))]:
        t = build_tower(p, weights)
        coeffs = [-t.constant % p] + [0] * (t.degree - 1) + [1]
        assert oracle_is_irreducible_bruteforce(p, coeffs)
        # nothing smaller than c works
        for smaller in range(2, t.constant):
            bad_subgroup = any(
                pow(smaller, (p - 1) // e, p) == 1 for e in prime_factors(t.degree)
            )
            reducible = not oracle_is_irreducible_bruteforce(
                p, [-smaller % p] + [0] * (t.degree - 1) + [1]
            )
            assert bad_subgroup or reducible


def test_subfield_exponents():
    t = build_tower(7, (2, 3))
    assert t.subfield_exponents(1) == (0, 3)
    assert t.subfield_exponents(2) == (0, 2, 4)


def test_basis_inverse_fixtures():
    t3 = build_tower(3, (1, 2))
    assert t3.basis_inverse(0) == (1, 0)
    assert t3.basis_inverse(1) == (2, 1)
    t7 = build_tower(7, (2, 3))
    assert t7.basis_inverse(2) == (5, 4)
    for t in (t3, t7):
        for m in range(t.degree):
            s, e = t.basis_inverse(m)
            assert t.basis_element(m) * t.basis_element(e, s) == t.one()


def test_extend_scalars_fixtures():
    t = build_tower(3, (1, 2))
    assert extend_scalars(t, 1) is t
    big = extend_scalars(t, 3)
    assert big.base.order == 27 and big.constant == t.constant
    with pytest.raises(ValueError):
        extend_scalars(t, 2)


def test_extension_is_ring_embedding():
    t = build_tower(3, (1, 2))
    big = extend_scalars(t, 3)
    rng = random.Random(7)
    for _ in range(50):
        a = t.random_element(rng)
        b = t.random_element(rng)
        lift = lambda x: big.element([c for c in x.coords])
        assert lift(a) * lift(b) == lift(a * b)
        assert lift(a) + lift(b) == lift(a + b)


# ---------------------------------------------------------------------------
# arithmetic vs oracle: 10^4 random pairs on each fixture tower


@pytest.mark.parametrize("p,weights", [(3, (1, 2)), (7, (2, 3))])
def test_multiplication_matches_polynomial_oracle(p, weights):
    t = build_tower(p, weights)
    rng = random.Random(12345)
    d = t.degree
    for _ in range(10_000):
        a = [rng.randrange(p) for _ in range(d)]
        b = [rng.randrange(p) for _ in range(d)]
        got = (t.element(a) * t.element(b)).coords
        assert list(got) == oracle_mul_prime(p, d, t.constant, a, b)


def test_extended_multiplication_matches_oracle():
    t = extend_scalars(build_tower(3, (1, 2)), 3)
    gmod = t.base.modulus
    rng = random.Random(99)
    for _ in range(500):
        a = [tuple(rng.randrange(3) for _ in range(3)) for _ in range(2)]
        b = [tuple(rng.randrange(3) for _ in range(3)) for _ in range(2)]
        got = (t.element(a) * t.element(b)).coords
        assert list(got) == oracle_mul_ext(3, 3, gmod, 2, t.constant, a, b)


# ---------------------------------------------------------------------------
# structural invariants


@pytest.mark.parametrize(
    "p,weights", [(3, (1, 2)), (7, (2, 3)), (13, (3, 4)), (11, (2, 5)), (5, (1, 1))]
)
def test_frobenius_properties(p, weights):
    t = build_tower(p, weights)
    d = t.degree
    assert pow(t.eigenvalue, d, p) == 1
    for e in prime_factors(d):
        assert pow(t.eigenvalue, d // e, p) != 1
    for m in range(d):
        v = t.basis_element(m)
        assert v.frobenius() == v.scale(t.base.from_int(pow(t.eigenvalue, m, p)))
    rng = random.Random(4)
    for _ in range(20):
        x, y = t.random_element(rng), t.random_element(rng)
        assert (x * y).frobenius() == x.frobenius() * y.frobenius()
        assert (x + y).frobenius() == x.frobenius() + y.frobenius()
        assert x.frobenius(d) == x


@pytest.mark.parametrize("p,weights,r", [(3, (1, 2), 1), (7, (2, 3), 1), (3, (1, 2), 3)])
def test_subfield_membership_equals_frobenius_fixed_points(p, weights, r):
    t = extend_scalars(build_tower(p, weights), r)
    rng = random.Random(11)
    for vertex in range(1, len(weights) + 1):
        di = t.weight(vertex)
        for _ in range(30):
            x = t.random_element(rng, vertex=vertex)
            assert x.in_subfield(vertex)
            assert x.frobenius(di * r) == x
        for _ in range(30):
            y = t.random_element(rng)
            assert y.in_subfield(vertex) == (y.frobenius(di * r) == y)
    for m in range(t.degree):
        for vertex in range(1, len(weights) + 1):
            di = t.weight(vertex)
            fixed = t.basis_element(m).frobenius(di * r) == t.basis_element(m)
            assert fixed == (m in t.subfield_exponents(vertex))


@pytest.mark.parametrize("p,weights", [(3, (1, 2)), (7, (2, 3)), (13, (3, 4))])
def test_inverse_roundtrip(p, weights):
    t = build_tower(p, weights)
    rng = random.Random(2)
    seen = 0
    while seen < 40:
        x = t.random_element(rng)
        if x.is_zero():
            continue
        seen += 1
        assert x * x.inverse() == t.one()
    with pytest.raises(ZeroDivisionError):
        t.zero().inverse()


# ---------------------------------------------------------------------------
# base-field axioms via hypothesis


@st.composite
def field_and_pair(draw):
    p = draw(st.sampled_from([2, 3, 5, 7, 11]))
    r = draw(st.sampled_from([1, 2, 3]))
    F = base_field(p, r)
    pick = lambda: F.from_json(
        draw(st.integers(0, p - 1))
        if r == 1
        else [draw(st.integers(0, p - 1)) for _ in range(r)]
    )
    return F, pick(), pick(), pick()


@settings(max_examples=200, deadline=None)
@given(field_and_pair())
def test_base_field_axioms(data):
    F, a, b, c = data
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == F.one
    assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))


def test_modulus_search_is_canonical_and_irreducible():
    F = base_field(3, 3)
    assert poly_is_irreducible(base_field(3, 1), list(F.modulus))
    # nothing earlier in the enumeration is irreducible
    enc_found = sum(c * 3**i for i, c in enumerate(F.modulus[:-1]))
    for enc in range(enc_found):
        coeffs, m = [], enc
        for _ in range(3):
            coeffs.append(m % 3)
            m //= 3
        assert not poly_is_irreducible(base_field(3, 1), coeffs + [1])
