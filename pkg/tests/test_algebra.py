"""Path-algebra layer: decorated paths, truncated products, cyclic calculus,
substitutions, Jacobian quotient dimensions.

Fixture values below were computed by hand from the multiplication rule
v^a v^b = c^((a+b) div d) v^((a+b) mod d) before the module existed.
"""

import random

import pytest

from spwp.algebra import (
    DEFAULT_TRUNCATION,
    AlgebraElement,
    Path,
    Species,
    Substitution,
    apply_substitution,
    canonical_cyclic_form,
    cyclic_derivative,
    enumerate_paths,
    jacobian_quotient_dim,
    module_act,
    pairing_value,
    scaled_arrow,
)
from spwp.quiver import Arrow, WeightedQuiver
from spwp.tower import build_tower


def triangle_species():
    # u: 2->1, w: 3->2, t: 1->3 over GF(3)[v]/(v^2-2); weights (1,1,2).
    quiver = WeightedQuiver((1, 1, 2), (Arrow("u", 2, 1), Arrow("w", 3, 2), Arrow("t", 1, 3)))
    return Species(quiver, build_tower(3, (1, 1, 2)))


def two_cycle_species():
    # a: 1->2, b: 2->1; weights (1,2); GF(3) base, d = 2, c = 2.
    quiver = WeightedQuiver((1, 2), (Arrow("a", 1, 2), Arrow("b", 2, 1)))
    return Species(quiver, build_tower(3, (1, 2)))


# ---------------------------------------------------------------------------
# paths and validation


def test_validate_path_accepts_decorated_chain():
    sp = triangle_species()
    sp.validate_path(Path(1, ("u", "w", "t"), (0, 0, 1, 0)))
    sp.validate_path(Path(3, (), (1,)))


def test_validate_path_rejects_bad_slots_and_chains():
    sp = triangle_species()
    with pytest.raises(ValueError):
        sp.validate_path(Path(1, (), (1,)))  # weight-1 vertex has no v
    with pytest.raises(ValueError):
        sp.validate_path(Path(1, ("u",), (0, 1)))  # slot at vertex 2 is 0 only
    with pytest.raises(ValueError):
        sp.validate_path(Path(1, ("w",), (0, 0)))  # w ends at 2, not 1
    with pytest.raises(ValueError):
        sp.validate_path(Path(1, ("u", "t"), (0, 0, 0)))  # t ends at 3, u starts at 2
    with pytest.raises(ValueError):
        sp.validate_path(Path(1, ("u",), (0,)))  # missing slot


def test_species_requires_matching_and_coprime_weights():
    quiver = WeightedQuiver((1, 2), (Arrow("a", 1, 2),))
    with pytest.raises(ValueError):
        Species(quiver, build_tower(3, (2, 1)))
    bad = WeightedQuiver((2, 2), ())
    with pytest.raises(ValueError):
        Species(bad, build_tower(5, (2, 2)))


def test_head_tail():
    sp = triangle_species()
    p = Path(1, ("u", "w", "t"), (0, 0, 0, 0))
    assert sp.head(p) == 1 and sp.tail(p) == 1
    q = Path(1, ("u", "w"), (0, 0, 1))
    assert sp.tail(q) == 3


# ---------------------------------------------------------------------------
# truncated ring structure


def test_product_composes_and_respects_idempotents():
    sp = triangle_species()
    u = sp.arrow_element("u")
    w = sp.arrow_element("w")
    t = sp.arrow_element("t")
    uw = u * w
    assert uw.terms == {Path(1, ("u", "w"), (0, 0, 0)): 1}
    assert (u * t).is_zero()  # t ends at 3, u starts at 2
    assert (w * u).is_zero()  # u ends at 1, w starts at 3
    assert not (t * u).is_zero()  # u then t: 2 -> 1 -> 3 composes
    full = u * w * t
    assert full.terms == {Path(1, ("u", "w", "t"), (0, 0, 0, 0)): 1}
    e1 = sp.lazy(1)
    e2 = sp.lazy(2)
    assert e1 * u == u and u * e2 == u
    assert (e2 * u).is_zero() and (u * e1).is_zero()
    assert sp.identity() * full == full


def test_decoration_merge_carries_into_coefficient():
    # v * v = 2 at the weight-2 vertex of the triangle (c = 2 in GF(3)).
    sp = triangle_species()
    t = sp.arrow_element("t")  # t: 1 -> 3, so its head slot sits at vertex 3
    v3 = sp.lazy(3, 1)
    vt = v3 * t
    assert vt.terms == {Path(3, ("t",), (1, 0)): 1}
    assert (v3 * vt).terms == {Path(3, ("t",), (0, 0)): 2}


def test_additive_group_and_scaling():
    sp = two_cycle_species()
    a = sp.arrow_element("a")
    b = sp.arrow_element("b")
    s = a + b
    assert (s - a) == b
    assert (a + a + a).is_zero()  # char 3
    assert a.scale(2) + a == 0 * a + a.scale(0) + a.scale(3)
    assert (-a) + a == sp.zero_element()


def test_mixed_truncation_is_rejected():
    sp = two_cycle_species()
    with pytest.raises(ValueError):
        sp.arrow_element("a", truncation=4) + sp.arrow_element("b", truncation=5)
    with pytest.raises(ValueError):
        sp.arrow_element("a", truncation=4) * sp.arrow_element("b", truncation=5)


def test_truncation_drops_terms_and_sets_sticky_flag():
    sp = two_cycle_species()
    a = sp.arrow_element("a", truncation=2)
    b = sp.arrow_element("b", truncation=2)
    ab = a * b
    assert not ab.truncated
    cubic = ab * a  # length 3 > 2: everything dropped
    assert cubic.is_zero() and cubic.truncated
    # the flag survives later arithmetic even when terms reappear
    revived = cubic + a
    assert revived.truncated and revived.terms == a.terms
    # explicit re-truncation
    wide = sp.arrow_element("a", truncation=6) * sp.arrow_element("b", truncation=6)
    narrow = wide.truncate(1)
    assert narrow.is_zero() and narrow.truncated
    same = wide.truncate(6)
    assert same == wide and not same.truncated


def test_ring_axioms_on_random_elements():
    sp = two_cycle_species()
    pool = enumerate_paths(sp, 3)
    rng = random.Random(2024)
    N = 4

    def rand_elem():
        terms = {}
        for path in rng.sample(pool, rng.randint(1, 3)):
            terms[path] = rng.randrange(3)
        return sp.element(terms, truncation=N)

    for _ in range(120):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


def test_module_action_left_and_right():
    sp = two_cycle_species()
    t = sp.tower
    a = sp.arrow_element("a")
    v = t.basis_element(1)
    assert module_act(a, v, 2, "left").terms == {Path(2, ("a",), (1, 0)): 1}
    # v does not live in the weight-1 subfield
    with pytest.raises(ValueError):
        module_act(a, v, 1, "right")
    two = t.scalar(2)
    assert module_act(a, two, 1, "right") == a.scale(2)
    # acting at a non-adjacent vertex annihilates
    assert module_act(a, two, 1, "left").is_zero()


# ---------------------------------------------------------------------------
# cyclic normal form and derivatives


def test_canonical_form_picks_least_rotation():
    sp = triangle_species()
    s = sp.element({Path(1, ("u", "w", "t"), (0, 0, 1, 0)): 1})
    canon = canonical_cyclic_form(s)
    assert canon.terms == {Path(3, ("t", "u", "w"), (1, 0, 0, 0)): 1}
    # idempotent, and invariant under rotating the input by hand
    assert canonical_cyclic_form(canon) == canon
    rotated = sp.element({Path(2, ("w", "t", "u"), (0, 1, 0, 0)): 1})
    assert canonical_cyclic_form(rotated) == canon


def test_canonical_form_folds_carries():
    sp = two_cycle_species()
    decorated = sp.element({Path(2, ("a", "b"), (1, 0, 1)): 1})
    canon = canonical_cyclic_form(decorated)
    assert canon.terms == {Path(2, ("a", "b"), (0, 0, 0)): 2}  # v^2 = 2
    plain = sp.element({Path(2, ("a", "b"), (0, 0, 0)): 2})
    assert canonical_cyclic_form(plain) == canon


def test_canonical_form_cancels_opposite_rotations():
    sp = triangle_species()
    s = sp.element({Path(1, ("u", "w", "t"), (0, 0, 1, 0)): 1,
                    Path(3, ("t", "u", "w"), (1, 0, 0, 0)): 2})
    assert canonical_cyclic_form(s).is_zero()  # 1 + 2 = 0 in GF(3)


def test_canonical_form_rejects_open_paths():
    sp = triangle_species()
    with pytest.raises(ValueError):
        canonical_cyclic_form(sp.arrow_element("u"))
    with pytest.raises(ValueError):
        canonical_cyclic_form(sp.lazy(1))


def test_cyclic_derivative_triangle():
    sp = triangle_species()
    s = sp.element({Path(1, ("u", "w", "t"), (0, 0, 0, 0)): 1})
    assert cyclic_derivative(s, "u").terms == {Path(2, ("w", "t"), (0, 0, 0)): 1}
    assert cyclic_derivative(s, "w").terms == {Path(3, ("t", "u"), (0, 0, 0)): 1}
    assert cyclic_derivative(s, "t").terms == {Path(1, ("u", "w"), (0, 0, 0)): 1}
    assert cyclic_derivative(s, "zzz").is_zero()
    dec = sp.element({Path(1, ("u", "w", "t"), (0, 0, 1, 0)): 1})
    assert cyclic_derivative(dec, "t").terms == {Path(1, ("u", "w"), (0, 0, 1)): 1}
    assert cyclic_derivative(dec, "w").terms == {Path(3, ("t", "u"), (1, 0, 0)): 1}


def test_cyclic_derivative_is_rotation_invariant_and_carries():
    sp = two_cycle_species()
    decorated = sp.element({Path(2, ("a", "b"), (1, 0, 1)): 1})
    da = cyclic_derivative(decorated, "a")
    assert da.terms == {Path(1, ("b",), (0, 0)): 2}
    assert da == cyclic_derivative(canonical_cyclic_form(decorated), "a")
    db = cyclic_derivative(decorated, "b")
    assert db == cyclic_derivative(canonical_cyclic_form(decorated), "b")
    # an arrow appearing twice contributes once per occurrence
    sq = sp.element({Path(2, ("a", "b", "a", "b"), (0, 0, 0, 0, 0)): 1})
    da2 = cyclic_derivative(sq, "a")
    assert da2.terms == {Path(1, ("b", "a", "b"), (0, 0, 0, 0)): 2}


# ---------------------------------------------------------------------------
# pairings and scaled arrows


def test_pairing_value_and_scaled_arrow_roundtrip():
    sp = two_cycle_species()
    t = sp.tower
    # a: 1->2, head subfield is the full tower (weight 2): both exponents occur
    lam = t.element((1, 2))  # 1 + 2v
    elem = scaled_arrow(sp, "a", lam)
    back = t.zero()
    for path, s in elem.terms.items():
        back = back + pairing_value(sp, path, s)
    assert back == lam
    # u in the triangle only admits compositum exponent 0
    tri = triangle_species()
    with pytest.raises(ValueError):
        scaled_arrow(tri, "u", tri.tower.basis_element(1))
    ok = scaled_arrow(tri, "u", tri.tower.scalar(2))
    assert ok.terms == {Path(1, ("u",), (0, 0)): 2}


def test_pair_decomposition_tables():
    sp = two_cycle_species()
    assert sp.pair_decomposition(2, 1) == {0: (0, 0, 0), 1: (1, 0, 0)}
    assert sp.pair_decomposition(1, 2) == {0: (0, 0, 0), 1: (0, 1, 0)}
    with pytest.raises(ValueError):
        sp.pair_decomposition(2, 2)
    # weights (2, 3): gamma = mh + mt mod 6, carry exactly when it wraps
    big = Species(WeightedQuiver((2, 3), ()), build_tower(7, (2, 3)))
    table = big.pair_decomposition(1, 2)
    assert set(table) == set(range(6))
    for gamma, (mh, mt, carry) in table.items():
        assert mh in (0, 3) and mt in (0, 2, 4)
        assert (mh + mt) % 6 == gamma
        assert carry == (1 if mh + mt >= 6 else 0)


# ---------------------------------------------------------------------------
# substitutions


def test_substitution_identity_and_scalar():
    sp = triangle_species()
    s = sp.element({Path(1, ("u", "w", "t"), (0, 0, 1, 0)): 1})
    ident = Substitution(sp, {})
    assert apply_substitution(s, ident) == s
    double_u = Substitution(sp, {"u": sp.arrow_element("u").scale(2)})
    assert apply_substitution(s, double_u) == s.scale(2)


def test_substitution_unitriangular_and_homomorphism():
    sp = two_cycle_species()
    N = 5
    a = sp.arrow_element("a", truncation=N)
    b = sp.arrow_element("b", truncation=N)
    phi = Substitution(sp, {"a": a + a * b * a})
    # morphism property phi(xy) = phi(x)phi(y) on random elements
    pool = enumerate_paths(sp, 2)
    rng = random.Random(7)
    for _ in range(60):
        terms_x = {p: rng.randrange(3) for p in rng.sample(pool, 2)}
        terms_y = {p: rng.randrange(3) for p in rng.sample(pool, 2)}
        x = sp.element(terms_x, truncation=N)
        y = sp.element(terms_y, truncation=N)
        lhs = apply_substitution(x * y, phi)
        rhs = apply_substitution(x, phi) * apply_substitution(y, phi)
        assert lhs == rhs
    # explicit fixed-point inverse up to the truncation order:
    # x + x b x = a is solved by x = a - aba + 2(ababa) + O(7)
    aba = a * b * a
    inv_image = a - aba + (aba * b * a).scale(2)
    psi = Substitution(sp, {"a": inv_image})
    for probe in (a, b, a * b, b * a * b):
        once = apply_substitution(apply_substitution(probe, phi), psi)
        twice = apply_substitution(apply_substitution(probe, psi), phi)
        assert once.terms == probe.terms
        assert twice.terms == probe.terms


def test_substitution_respects_decorations():
    sp = two_cycle_species()
    v = sp.tower.basis_element(1)
    phi = Substitution(sp, {"a": scaled_arrow(sp, "a", v)})
    cyc = sp.element({Path(2, ("a", "b"), (0, 0, 0)): 1})
    image = apply_substitution(cyc, phi)
    assert image.terms == {Path(2, ("a", "b"), (1, 0, 0)): 1}
    # substituting into a decorated cycle keeps the old slots too
    dec = sp.element({Path(2, ("a", "b"), (1, 0, 1)): 1})
    img = apply_substitution(dec, phi)
    assert img == sp.element({Path(2, ("a", "b"), (0, 0, 1)): 2})  # v*v = 2 at the head


def test_substitution_validation_rejects_bad_images():
    sp = two_cycle_species()
    a = sp.arrow_element("a")
    b = sp.arrow_element("b")
    with pytest.raises(ValueError):
        Substitution(sp, {"a": sp.zero_element()})  # singular degree-1 block
    with pytest.raises(ValueError):
        Substitution(sp, {"a": b})  # wrong endpoints
    with pytest.raises(ValueError):
        Substitution(sp, {"a": a + sp.lazy(2)})  # length-0 component
    with pytest.raises(ValueError):
        Substitution(sp, {"a": a * b * a})  # no degree-1 part


def test_substitution_bundle_rank_over_compositum():
    # two parallel arrows 1 -> 2 with images mixing them by tower scalars:
    # the block is invertible over the compositum even though each image
    # alone touches both arrows.
    quiver = WeightedQuiver((1, 2), (Arrow("a1", 1, 2), Arrow("a2", 1, 2), Arrow("b", 2, 1)))
    sp = Species(quiver, build_tower(3, (1, 2)))
    v = sp.tower.basis_element(1)
    one = sp.tower.one()
    img1 = scaled_arrow(sp, "a1", one) + scaled_arrow(sp, "a2", v)
    img2 = scaled_arrow(sp, "a1", v) + scaled_arrow(sp, "a2", one)
    # det = 1 - v^2 = 1 - 2 = -1 != 0: fine
    Substitution(sp, {"a1": img1, "a2": img2})
    # det = 1*1 - v*v... make it singular: rows equal
    with pytest.raises(ValueError):
        Substitution(sp, {"a1": img1, "a2": img1})


# ---------------------------------------------------------------------------
# basis enumeration and Jacobian quotients


def test_enumerate_paths_counts_and_order():
    sp = two_cycle_species()
    paths = enumerate_paths(sp, 4)
    by_len = {}
    for p in paths:
        by_len[p.length] = by_len.get(p.length, 0) + 1
    assert by_len == {0: 3, 1: 4, 2: 6, 3: 8, 4: 12}
    assert len(set(paths)) == len(paths)
    assert paths == enumerate_paths(sp, 4)  # deterministic
    lazy = enumerate_paths(sp, 0)
    assert [(p.vertex, p.exponents) for p in lazy] == [(1, (0,)), (2, (0,)), (2, (1,))]


def test_jacobian_dim_two_cycle_fixture():
    sp = two_cycle_species()
    s = sp.element({Path(1, ("b", "a"), (0, 0, 0)): 1}, truncation=4)
    dim, stable = jacobian_quotient_dim(sp, s)
    assert (dim, stable) == (3, True)


def test_jacobian_dim_zero_potential_single_arrow():
    quiver = WeightedQuiver((1, 2), (Arrow("a", 2, 1),))
    sp = Species(quiver, build_tower(3, (1, 2)))
    dim, stable = jacobian_quotient_dim(sp, sp.zero_element(6), truncation=6)
    assert (dim, stable) == (5, True)


def test_jacobian_dim_arrowless_is_total_weight():
    sp = Species(WeightedQuiver((2, 3), ()), build_tower(7, (2, 3)))
    dim, stable = jacobian_quotient_dim(sp, sp.zero_element(3), truncation=3)
    assert (dim, stable) == (5, True)


def test_jacobian_dim_unstable_when_ideal_vanishes():
    # zero potential on the two-cycle: the quotient is the whole truncated
    # algebra, which keeps growing with the truncation order.
    sp = two_cycle_species()
    dim, stable = jacobian_quotient_dim(sp, sp.zero_element(4), truncation=4)
    assert dim == 3 + 4 + 6 + 8 + 12
    assert not stable
