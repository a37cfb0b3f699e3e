"""Truncated complete path algebra of a strongly primitive species.

A species binds a loop-free, strongly primitive weighted quiver to a field
tower with matching weights.  The algebra has a coefficient-field basis of
decorated paths: eigenbasis exponents interleaved with arrows as

    v^m0 a1 v^m1 a2 ... al v^ml

where composition reads right to left (``al`` acts first), m0 lives at the
head vertex of a1 and each later slot m_q at the source vertex of a_q.
Length-0 paths are vertex idempotents scaled by an eigenbasis power.  All
elements are truncated at a fixed path length; any operation that would
produce a longer term with a nonzero coefficient drops it and raises the
``truncated`` flag on the result instead of failing.

Cyclic equivalence of potentials is rotation only; the canonical form of a
cycle is its lexicographically least decorated rotation (arrow ids first,
then exponents), with carries v^a v^b = c^((a+b)//d) v^((a+b) mod d) folded
into the coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .basefield import Scalar
from .quiver import Arrow, WeightedQuiver
from .tower import FieldTower, TowerElement

__all__ = [
    "DEFAULT_TRUNCATION",
    "Path",
    "Species",
    "AlgebraElement",
    "Substitution",
    "module_act",
    "canonical_cyclic_form",
    "cyclic_derivative",
    "apply_substitution",
    "jacobian_generators",
    "jacobian_quotient_dim",
    "enumerate_paths",
    "scaled_arrow",
    "pairing_value",
]

DEFAULT_TRUNCATION = 12


@dataclass(frozen=True)
class Path:
    """A decorated path; ``vertex`` is the head (target) of the whole path."""

    vertex: int
    arrows: tuple[str, ...]
    exponents: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.exponents, self.vertex)

    def __repr__(self):
        if not self.arrows:
            return "e%d[v%d]" % (self.vertex, self.exponents[0])
        bits = []
        for m, a in zip(self.exponents, self.arrows):
            bits.append("v%d.%s" % (m, a))
        bits.append("v%d" % self.exponents[-1])
        return ".".join(bits)


@dataclass(frozen=True)
class Species:
    """A weighted quiver realized over a field tower (weights must agree and
    be pairwise coprime; the quiver need not be 2-acyclic)."""

    quiver: WeightedQuiver
    tower: FieldTower

    def __post_init__(self):
        if self.quiver.weights != self.tower.weights:
            raise ValueError("quiver weights %r do not match tower weights %r"
                             % (self.quiver.weights, self.tower.weights))
        if not self.quiver.is_strongly_primitive():
            raise ValueError("species requires pairwise coprime weights")

    @cached_property
    def _arrows(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.quiver.arrows}

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._arrows[arrow_id]
        except KeyError:
            raise KeyError("unknown arrow id %r" % (arrow_id,)) from None

    def exponents_at(self, vertex: int) -> tuple[int, ...]:
        return self.tower.subfield_exponents(vertex)

    def tail(self, path: Path) -> int:
        return self.arrow(path.arrows[-1]).source if path.arrows else path.vertex

    def head(self, path: Path) -> int:
        return path.vertex

    def validate_path(self, path: Path) -> Path:
        if len(path.exponents) != len(path.arrows) + 1:
            raise ValueError("path needs one more exponent slot than arrows")
        if not 1 <= path.vertex <= self.quiver.n:
            raise ValueError("path head vertex %r out of range" % (path.vertex,))
        if path.exponents[0] not in self.exponents_at(path.vertex):
            raise ValueError("leading exponent %d invalid at vertex %d"
                             % (path.exponents[0], path.vertex))
        prev_source = path.vertex
        for q, aid in enumerate(path.arrows):
            a = self.arrow(aid)
            if a.target != prev_source:
                raise ValueError("arrows of %r do not compose" % (path,))
            if path.exponents[q + 1] not in self.exponents_at(a.source):
                raise ValueError("exponent slot %d invalid at vertex %d" % (q + 1, a.source))
            prev_source = a.source
        return path

    # -- element constructors -------------------------------------------------

    def zero_element(self, truncation: int = DEFAULT_TRUNCATION) -> "AlgebraElement":
        return AlgebraElement(self, {}, truncation)

    def lazy(self, vertex: int, exponent: int = 0,
             truncation: int = DEFAULT_TRUNCATION) -> "AlgebraElement":
        path = self.validate_path(Path(vertex, (), (exponent,)))
        return AlgebraElement(self, {path: self.tower.base.one}, truncation)

    def identity(self, truncation: int = DEFAULT_TRUNCATION) -> "AlgebraElement":
        terms = {Path(v, (), (0,)): self.tower.base.one for v in range(1, self.quiver.n + 1)}
        return AlgebraElement(self, terms, truncation)

    def arrow_element(self, arrow_id: str, truncation: int = DEFAULT_TRUNCATION,
                      head_exp: int = 0, tail_exp: int = 0) -> "AlgebraElement":
        a = self.arrow(arrow_id)
        path = self.validate_path(Path(a.target, (arrow_id,), (head_exp, tail_exp)))
        return AlgebraElement(self, {path: self.tower.base.one}, truncation)

    def element(self, terms: dict[Path, Scalar], truncation: int = DEFAULT_TRUNCATION,
                truncated: bool = False) -> "AlgebraElement":
        F = self.tower.base
        clean: dict[Path, Scalar] = {}
        for path, scal in terms.items():
            self.validate_path(path)
            if path.length > truncation:
                raise ValueError("term %r exceeds truncation %d" % (path, truncation))
            if isinstance(scal, int):
                scal = F.from_int(scal)
            if not F.is_zero(scal):
                clean[path] = scal
        return AlgebraElement(self, clean, truncation, truncated)

    def embed(self, value: TowerElement, vertex: int,
              truncation: int = DEFAULT_TRUNCATION) -> "AlgebraElement":
        """The element of F_vertex given by ``value``, as length-0 paths."""
        if value.tower != self.tower:
            raise ValueError("tower element belongs to a different tower")
        if not value.in_subfield(vertex):
            raise ValueError("element does not lie in the subfield at vertex %d" % vertex)
        F = self.tower.base
        terms = {}
        for m in value.support():
            terms[Path(vertex, (), (m,))] = value.coords[m]
        return AlgebraElement(self, terms, truncation)

    @cached_property
    def _pair_tables(self):
        return {}

    def pair_decomposition(self, head_vertex: int, tail_vertex: int) -> dict:
        """For the compositum at an (ordered) vertex pair: maps a top-field
        exponent g to the unique (m_head, m_tail, carry) with m_head + m_tail
        == g + carry * d on the two subfield bases."""
        if head_vertex == tail_vertex:
            raise ValueError("pair decomposition needs two distinct vertices")
        key = (head_vertex, tail_vertex)
        table = self._pair_tables.get(key)
        if table is None:
            d = self.tower.degree
            table = {}
            for mh in self.exponents_at(head_vertex):
                for mt in self.exponents_at(tail_vertex):
                    s = mh + mt
                    gamma = s % d
                    if gamma in table:
                        raise RuntimeError("eigenbasis pairing is not free; species invalid")
                    table[gamma] = (mh, mt, 1 if s >= d else 0)
            self._pair_tables[key] = table
        return table


class AlgebraElement:
    """Finite coefficient-field combination of decorated paths, truncated.

    Instances are immutable by convention; operations return new objects.
    The ``truncated`` flag is sticky and marks that some nonzero term beyond
    the truncation horizon was dropped somewhere in this value's history.
    """

    __slots__ = ("species", "terms", "truncation", "truncated")

    def __init__(self, species: Species, terms: dict, truncation: int,
                 truncated: bool = False):
        self.species = species
        self.terms = terms
        self.truncation = truncation
        self.truncated = truncated

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def min_length(self):
        return min((p.length for p in self.terms), default=None)

    def degree_part(self, length: int) -> "AlgebraElement":
        terms = {p: s for p, s in self.terms.items() if p.length == length}
        return AlgebraElement(self.species, terms, self.truncation, self.truncated)

    def degree_at_least(self, length: int) -> "AlgebraElement":
        terms = {p: s for p, s in self.terms.items() if p.length >= length}
        return AlgebraElement(self.species, terms, self.truncation, self.truncated)

    def mentions(self, arrow_ids) -> bool:
        wanted = set(arrow_ids)
        return any(wanted.intersection(p.arrows) for p in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    # -- ring structure ---------------------------------------------------------

    def _compat(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or other.species != self.species:
            raise ValueError("operands live in different algebras")
        if other.truncation != self.truncation:
            raise ValueError("operands have different truncation orders")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._compat(other)
        F = self.species.tower.base
        terms = dict(self.terms)
        for p, s in other.terms.items():
            acc = F.add(terms.get(p, F.zero), s)
            if F.is_zero(acc):
                terms.pop(p, None)
            else:
                terms[p] = acc
        return AlgebraElement(self.species, terms, self.truncation,
                              self.truncated or other.truncated)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        F = self.species.tower.base
        return AlgebraElement(self.species, {p: F.neg(s) for p, s in self.terms.items()},
                              self.truncation, self.truncated)

    def scale(self, scalar) -> "AlgebraElement":
        F = self.species.tower.base
        if isinstance(scalar, int):
            scalar = F.from_int(scalar)
        if F.is_zero(scalar):
            return AlgebraElement(self.species, {}, self.truncation, self.truncated)
        return AlgebraElement(self.species, {p: F.mul(scalar, s) for p, s in self.terms.items()},
                              self.truncation, self.truncated)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._compat(other)
        sp = self.species
        F = sp.tower.base
        d = sp.tower.degree
        carry_scalar = F.from_int(sp.tower.constant)
        N = self.truncation
        out: dict[Path, Scalar] = {}
        dropped = self.truncated or other.truncated
        for p1, s1 in self.terms.items():
            tail1 = sp.tail(p1)
            room = N - p1.length
            for p2, s2 in other.terms.items():
                if p2.vertex != tail1:
                    continue
                if p2.length > room:
                    dropped = True
                    continue
                s = F.mul(s1, s2)
                m = p1.exponents[-1] + p2.exponents[0]
                if m >= d:
                    m -= d
                    s = F.mul(s, carry_scalar)
                path = Path(p1.vertex, p1.arrows + p2.arrows,
                            p1.exponents[:-1] + (m,) + p2.exponents[1:])
                acc = F.add(out.get(path, F.zero), s)
                if F.is_zero(acc):
                    out.pop(path, None)
                else:
                    out[path] = acc
        return AlgebraElement(sp, out, N, dropped)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def truncate(self, truncation: int) -> "AlgebraElement":
        """Re-truncate; dropping any nonzero term sets the flag."""
        terms = {p: s for p, s in self.terms.items() if p.length <= truncation}
        dropped = self.truncated or len(terms) != len(self.terms)
        return AlgebraElement(self.species, terms, truncation, dropped)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement)
                and self.species == other.species
                and self.truncation == other.truncation
                and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "<0>"
        bits = ["%r*%r" % (s, p) for p, s in self.sorted_terms()[:6]]
        extra = "" if len(self.terms) <= 6 else " ... (%d terms)" % len(self.terms)
        return "<" + " + ".join(bits) + extra + ">"


def module_act(x: AlgebraElement, value: TowerElement, vertex: int,
               side: str = "left") -> AlgebraElement:
    """Act on x by an element of the vertex subfield F_vertex."""
    u = x.species.embed(value, vertex, x.truncation)
    if side == "left":
        return u * x
    if side == "right":
        return x * u
    raise ValueError("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# cyclic machinery


def _require_cycle(species: Species, path: Path) -> None:
    if path.length < 1 or species.tail(path) != path.vertex:
        raise ValueError("term %r is not a cycle" % (path,))


def _rotate_once(species: Species, path: Path, scalar: Scalar):
    """Move the leading decorated arrow to the end: the cyclic word is
    preserved, the trailing slot of the result is 0 and merging the old
    trailing and leading slots may contribute a carry."""
    F = species.tower.base
    d = species.tower.degree
    m = path.exponents[-1] + path.exponents[0]
    if m >= d:
        m -= d
        scalar = F.mul(scalar, F.from_int(species.tower.constant))
    new_vertex = species.arrow(path.arrows[0]).source
    return (
        Path(new_vertex, path.arrows[1:] + (path.arrows[0],),
             path.exponents[1:-1] + (m, 0)),
        scalar,
    )


def _delete_leading(species: Species, path: Path, scalar: Scalar):
    """Remove the leading arrow of a cycle, reading the remaining cyclic word
    from just after it (the wrap merges the boundary slots)."""
    F = species.tower.base
    d = species.tower.degree
    m = path.exponents[-1] + path.exponents[0]
    if m >= d:
        m -= d
        scalar = F.mul(scalar, F.from_int(species.tower.constant))
    new_vertex = species.arrow(path.arrows[0]).source
    return Path(new_vertex, path.arrows[1:], path.exponents[1:-1] + (m,)), scalar


def canonical_cyclic_form(elem: AlgebraElement) -> AlgebraElement:
    """Normal form of a potential under rotation, with exact cancellation."""
    sp = elem.species
    F = sp.tower.base
    out: dict[Path, Scalar] = {}
    for path, scalar in elem.terms.items():
        _require_cycle(sp, path)
        best = best_key = None
        cur_p, cur_s = _rotate_once(sp, path, scalar)
        for _ in range(path.length):
            key = (cur_p.arrows, cur_p.exponents)
            if best_key is None or key < best_key:
                best, best_key = (cur_p, cur_s), key
            cur_p, cur_s = _rotate_once(sp, cur_p, cur_s)
        bp, bs = best
        acc = F.add(out.get(bp, F.zero), bs)
        if F.is_zero(acc):
            out.pop(bp, None)
        else:
            out[bp] = acc
    return AlgebraElement(sp, out, elem.truncation, elem.truncated)


def cyclic_derivative(elem: AlgebraElement, arrow_id: str) -> AlgebraElement:
    """Sum over occurrences of the arrow in each cycle of the path read from
    just after that occurrence (rotation invariant)."""
    sp = elem.species
    F = sp.tower.base
    out: dict[Path, Scalar] = {}
    for path, scalar in elem.terms.items():
        _require_cycle(sp, path)
        cur_p, cur_s = path, scalar
        for _ in range(path.length):
            if cur_p.arrows[0] == arrow_id:
                dp, ds = _delete_leading(sp, cur_p, cur_s)
                acc = F.add(out.get(dp, F.zero), ds)
                if F.is_zero(acc):
                    out.pop(dp, None)
                else:
                    out[dp] = acc
            cur_p, cur_s = _rotate_once(sp, cur_p, cur_s)
    return AlgebraElement(sp, out, elem.truncation, elem.truncated)


# ---------------------------------------------------------------------------
# substitutions (algebra endomorphisms fixing the vertex subfields)


def pairing_value(species: Species, path: Path, scalar: Scalar) -> TowerElement:
    """For a length-1 path v^m a v^m', the compositum scalar v^m * v^m'
    times the coefficient, as a tower element."""
    t = species.tower
    m = path.exponents[0] + path.exponents[1]
    coeff = scalar
    if m >= t.degree:
        m -= t.degree
        coeff = t.base.mul(coeff, t.base.from_int(t.constant))
    return t.basis_element(m, coeff)


def scaled_arrow(species: Species, arrow_id: str, value: TowerElement,
                 truncation: int = DEFAULT_TRUNCATION) -> AlgebraElement:
    """The degree-1 element ``value * arrow``: the compositum scalar is split
    back into head and tail eigenbasis decorations."""
    a = species.arrow(arrow_id)
    table = species.pair_decomposition(a.target, a.source)
    t = species.tower
    F = t.base
    inv_c = F.from_int(pow(t.constant, -1, t.p))
    terms: dict[Path, Scalar] = {}
    for gamma in value.support():
        if gamma not in table:
            raise ValueError(
                "scalar with exponent %d is outside the compositum of the %s bundle"
                % (gamma, arrow_id))
        mh, mt, carry = table[gamma]
        coeff = value.coords[gamma]
        if carry:
            coeff = F.mul(coeff, inv_c)
        terms[Path(a.target, (arrow_id,), (mh, mt))] = coeff
    return AlgebraElement(species, terms, truncation)


class Substitution:
    """arrow id -> image element; identity on arrows it omits.

    Valid images keep endpoints, have no length-0 component, and the
    degree-1 parts form an invertible block on every parallel-arrow bundle
    (checked by elimination over the compositum field).
    """

    def __init__(self, species: Species, images: dict[str, AlgebraElement],
                 truncation: int = DEFAULT_TRUNCATION, validate: bool = True):
        self.species = species
        self.images = dict(images)
        for aid, img in self.images.items():
            if img.species != species:
                raise ValueError("image of %r lives in a different species" % aid)
            truncation = img.truncation
        self.truncation = truncation
        if validate:
            self._validate()

    def image(self, arrow_id: str) -> AlgebraElement:
        img = self.images.get(arrow_id)
        if img is None:
            img = self.species.arrow_element(arrow_id, self.truncation)
        return img

    def _validate(self) -> None:
        sp = self.species
        for aid, img in self.images.items():
            a = sp.arrow(aid)
            if img.truncation != self.truncation:
                raise ValueError("substitution images disagree on truncation")
            for path in img.terms:
                if path.length < 1:
                    raise ValueError("image of %r has a length-0 term" % aid)
                if path.vertex != a.target or sp.tail(path) != a.source:
                    raise ValueError("image of %r does not preserve endpoints" % aid)
        # invertibility of the degree-1 block, bundle by bundle
        touched_bundles = {
            (sp.arrow(aid).source, sp.arrow(aid).target) for aid in self.images
        }
        for (src, tgt) in sorted(touched_bundles):
            bundle = sorted(a.id for a in sp.quiver.arrows_between(src, tgt))
            cols = {aid: idx for idx, aid in enumerate(bundle)}
            rows = []
            for aid in bundle:
                row = [sp.tower.zero()] * len(bundle)
                for path, s in self.image(aid).degree_part(1).terms.items():
                    row[cols[path.arrows[0]]] = (
                        row[cols[path.arrows[0]]] + pairing_value(sp, path, s)
                    )
                rows.append(row)
            if _tower_rank(rows) != len(bundle):
                raise ValueError(
                    "degree-1 block of the substitution is singular on the %d->%d bundle"
                    % (src, tgt))


def _tower_rank(rows: list[list[TowerElement]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                coef = rows[i][col]
                rows[i] = [x - coef * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def apply_substitution(elem: AlgebraElement, subst: Substitution) -> AlgebraElement:
    """Extend the substitution to the unique algebra morphism fixing lazy
    paths and decorations, and apply it."""
    sp = elem.species
    if subst.species != sp:
        raise ValueError("substitution belongs to a different species")
    if subst.truncation != elem.truncation:
        raise ValueError("substitution and element truncation differ")
    N = elem.truncation
    out = sp.zero_element(N)
    for path, scalar in elem.terms.items():
        acc = sp.lazy(path.vertex, path.exponents[0], N)
        for q, aid in enumerate(path.arrows):
            if not acc.terms:
                break
            acc = acc * subst.image(aid)
            slot = path.exponents[q + 1]
            if slot:
                acc = acc * sp.lazy(sp.arrow(aid).source, slot, N)
        out = out + acc.scale(scalar)
    return out


# ---------------------------------------------------------------------------
# Jacobian quotient


def enumerate_paths(species: Species, max_length: int) -> list[Path]:
    """All decorated basis paths of length <= max_length, in a fixed order."""
    arrows = sorted(species.quiver.arrows, key=lambda a: a.id)
    paths = [Path(v, (), (m,))
             for v in range(1, species.quiver.n + 1)
             for m in species.exponents_at(v)]
    frontier = list(paths)
    for _ in range(max_length):
        nxt = []
        for p in frontier:
            tail = species.tail(p)
            for a in arrows:
                if a.target != tail:
                    continue
                for m in species.exponents_at(a.source):
                    nxt.append(Path(p.vertex, p.arrows + (a.id,), p.exponents + (m,)))
        paths.extend(nxt)
        frontier = nxt
    return paths


def jacobian_generators(species: Species, potential: AlgebraElement) -> dict[str, AlgebraElement]:
    """Generating family of the Jacobian ideal: one cyclic derivative per
    arrow.  Kept behind this function so a richer family can be swapped in
    without touching the dimension computation."""
    gens = {}
    for a in sorted(species.quiver.arrows, key=lambda a: a.id):
        g = cyclic_derivative(potential, a.id)
        if g.terms:
            gens[a.id] = g
    return gens


def jacobian_quotient_dim(species: Species, potential: AlgebraElement,
                          truncation: int | None = None) -> tuple[int, bool]:
    """Coefficient-field dimension of the truncated algebra modulo the ideal
    generated by all cyclic derivatives (plus everything beyond the
    truncation), and a flag telling whether the dimension already agreed at
    truncation - 1."""
    N = truncation if truncation is not None else potential.truncation

    def dim_at(n: int) -> int:
        pot = potential.truncate(n)
        paths = enumerate_paths(species, n)
        gens = jacobian_generators(species, pot)
        F = species.tower.base
        pivots: dict[Path, dict[Path, Scalar]] = {}

        def reduce_row(row: dict[Path, Scalar]) -> None:
            while row:
                lead = min(row, key=Path.sort_key)
                piv = pivots.get(lead)
                if piv is None:
                    inv = F.inv(row[lead])
                    pivots[lead] = {p: F.mul(inv, s) for p, s in row.items()}
                    return
                coef = row[lead]
                for p, s in piv.items():
                    acc = F.sub(row.get(p, F.zero), F.mul(coef, s))
                    if F.is_zero(acc):
                        row.pop(p, None)
                    else:
                        row[p] = acc

        for aid in sorted(gens):
            gen = gens[aid]
            a = species.arrow(aid)
            min_len = gen.min_length()
            gelem = AlgebraElement(species, gen.terms, n, gen.truncated)
            lefts = [x for x in paths if species.tail(x) == a.source]
            rights = [y for y in paths if y.vertex == a.target]
            for x in lefts:
                if x.length + min_len > n:
                    continue
                xg = AlgebraElement(species, {x: F.one}, n) * gelem
                if not xg.terms:
                    continue
                for y in rights:
                    if x.length + min_len + y.length > n:
                        continue
                    row = (xg * AlgebraElement(species, {y: F.one}, n)).terms
                    if row:
                        reduce_row(dict(row))
        return len(paths) - len(pivots)

    dim = dim_at(N)
    stable = dim == dim_at(N - 1) if N >= 1 else True
    return dim, stable
