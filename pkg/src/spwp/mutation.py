"""Mutation of a species with potential.

``premutate_sp`` lifts the two combinatorial premutation steps to the
potential: cycles through the mutation vertex have each passage replaced by
the matching composite arrow, and for every (incoming, outgoing, eigenbasis
index) triple a starred 3-cycle correction term is added.

``reduce_sp`` then splits off the trivial part.  The degree-2 piece of the
potential is a pairing matrix per 2-cycle bundle, with entries in the
compositum field of the two endpoints; it is diagonalized by elementary
arrow substitutions (each realized as an algebra substitution and applied to
the whole potential, so cross terms are handled exactly).  Correction rounds
then absorb higher-degree terms still mentioning a pivot arrow, pushing them
beyond the truncation order; finally the pivot arrows are deleted.

Everything is deterministic: pivots are chosen by lexicographically smallest
(row id, column id) among the nonzero pairing entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraElement,
    Path,
    Species,
    Substitution,
    apply_substitution,
    canonical_cyclic_form,
    cyclic_derivative,
    scaled_arrow,
    _rotate_once,
)
from .quiver import (
    WeightedQuiver,
    composite_arrow_id,
    premutate_quiver,
    star_arrow_id,
)
from .tower import TowerElement

__all__ = [
    "SpeciesWithPotential",
    "ReductionReport",
    "StepReport",
    "SequenceCheck",
    "premutate_sp",
    "reduce_sp",
    "mutate_sp",
    "mutate_step",
    "is_nondegenerate_along",
]


@dataclass(frozen=True)
class SpeciesWithPotential:
    """A species plus a potential held in rotation-canonical form."""

    species: Species
    potential: AlgebraElement

    def __post_init__(self):
        pot = self.potential
        if pot.species != self.species:
            raise ValueError("potential lives over a different species")
        for path in pot.terms:
            if path.length < 2:
                raise ValueError("potential term %r is shorter than a 2-cycle" % (path,))
            if self.species.tail(path) != path.vertex:
                raise ValueError("potential term %r is not a cycle" % (path,))
        object.__setattr__(self, "potential", canonical_cyclic_form(pot))

    @property
    def truncation(self) -> int:
        return self.potential.truncation


@dataclass(frozen=True)
class ReductionReport:
    removed_pairs: tuple[tuple[str, str], ...]
    correction_rounds: int
    hit_truncation: bool
    residual_2cycles: tuple[tuple[tuple[int, int], int], ...]

    @property
    def clean(self) -> bool:
        return not self.residual_2cycles and not self.hit_truncation


@dataclass(frozen=True)
class StepReport:
    vertex: int
    removed_pairs: tuple[tuple[str, str], ...]
    correction_rounds: int
    hit_truncation: bool
    residual_2cycles: tuple[tuple[tuple[int, int], int], ...]

    @property
    def clean(self) -> bool:
        return not self.residual_2cycles and not self.hit_truncation


@dataclass(frozen=True)
class SequenceCheck:
    ok: bool
    steps: tuple[StepReport, ...]
    final: SpeciesWithPotential


def _rotate_off_vertex(species: Species, path: Path, scalar, k: int):
    """Rotate a cycle until it is not based at k (possible: no loops)."""
    for _ in range(path.length):
        if path.vertex != k:
            return path, scalar
        path, scalar = _rotate_once(species, path, scalar)
    raise ValueError("cycle %r never leaves vertex %d" % (path, k))


def premutate_sp(swp: SpeciesWithPotential, k: int) -> SpeciesWithPotential:
    species = swp.species
    quiver = species.quiver
    if not 1 <= k <= quiver.n:
        raise IndexError("mutation vertex %r out of range 1..%d" % (k, quiver.n))
    if not quiver.is_2_acyclic():
        raise ValueError("potential mutation requires a 2-acyclic quiver")
    tower = species.tower
    F = tower.base
    N = swp.truncation
    dk = quiver.weight(k)
    step = tower.degree // dk

    new_species = Species(premutate_quiver(quiver, k), tower)
    terms: dict[Path, object] = {}

    def add(path: Path, scalar) -> None:
        acc = F.add(terms.get(path, F.zero), scalar)
        if F.is_zero(acc):
            terms.pop(path, None)
        else:
            terms[path] = acc

    # substitute composite arrows for every passage through k
    for path, scalar in swp.potential.terms.items():
        path, scalar = _rotate_off_vertex(species, path, scalar, k)
        arrows: list[str] = []
        exps: list[int] = [path.exponents[0]]
        idx = 0
        while idx < path.length:
            leaving = species.arrow(path.arrows[idx])
            if leaving.source == k:
                entering = path.arrows[idx + 1]
                t = path.exponents[idx + 1] // step
                arrows.append(composite_arrow_id(leaving.id, t, entering))
                exps.append(path.exponents[idx + 2])
                idx += 2
            else:
                arrows.append(leaving.id)
                exps.append(path.exponents[idx + 1])
                idx += 1
        add(Path(path.vertex, tuple(arrows), tuple(exps)), scalar)

    # starred correction cycles b* [b.t.a] a*, weighted by the inverse of the
    # eigenbasis power the composite stands for
    incoming = sorted((a for a in quiver.arrows if a.target == k), key=lambda a: a.id)
    outgoing = sorted((b for b in quiver.arrows if b.source == k), key=lambda b: b.id)
    for b in outgoing:
        for a in incoming:
            for t in range(dk):
                scal, e = tower.basis_inverse(t * step)
                path = Path(k, (star_arrow_id(b.id),
                                composite_arrow_id(b.id, t, a.id),
                                star_arrow_id(a.id)),
                            (e, 0, 0, 0))
                add(path, scal)

    return SpeciesWithPotential(new_species, new_species.element(
        terms, N, truncated=swp.potential.truncated))


# ---------------------------------------------------------------------------
# reduction


def _two_cycle_pairs(quiver: WeightedQuiver) -> list[tuple[int, int]]:
    counts = quiver.arrow_counts()
    return sorted({(min(s, t), max(s, t)) for (s, t) in counts if (t, s) in counts})


def _fold_cycle_value(species: Species, path: Path, scalar) -> TowerElement:
    """Collapse all decorations of a cycle into one compositum scalar."""
    t = species.tower
    F = t.base
    gamma = sum(path.exponents)
    coeff = F.mul(scalar, F.from_int(pow(t.constant, gamma // t.degree, t.p)))
    return t.basis_element(gamma % t.degree, coeff)


def _pairing_entries(species: Species, potential: AlgebraElement, skip: set[str]):
    """Nonzero degree-2 pairing entries (p_id, q_id) -> compositum value.
    For each unordered bundle pair {i < j}, rows are the arrows j -> i and
    columns the arrows i -> j.  Terms touching ``skip`` are excluded."""
    entries: dict[tuple[str, str], TowerElement] = {}
    for path, scalar in potential.terms.items():
        if path.length != 2:
            continue
        if skip.intersection(path.arrows):
            continue
        lead = species.arrow(path.arrows[0])
        i, j = sorted((lead.source, lead.target))
        if lead.target == i:
            rep_path, rep_s = path, scalar
        else:
            rep_path, rep_s = _rotate_once(species, path, scalar)
        key = (rep_path.arrows[0], rep_path.arrows[1])
        val = _fold_cycle_value(species, rep_path, rep_s)
        prev = entries.get(key)
        entries[key] = val if prev is None else prev + val
    return {k: v for k, v in entries.items() if not v.is_zero()}


def reduce_sp(swp: SpeciesWithPotential) -> tuple[SpeciesWithPotential, ReductionReport]:
    species = swp.species
    tower = species.tower
    N = swp.truncation
    current = swp.potential
    removed: list[tuple[str, str]] = []
    removed_arrows: set[str] = set()

    # phase 1: diagonalize the degree-2 pairing by elementary substitutions
    while True:
        entries = _pairing_entries(species, current, removed_arrows)
        if not entries:
            break
        p_id, q_id = min(entries)
        lam_inv = entries[(p_id, q_id)].inverse()
        p_arrow = species.arrow(p_id)
        q_arrow = species.arrow(q_id)
        assert p_arrow.source == q_arrow.target and p_arrow.target == q_arrow.source
        row = {q2: v for (p2, q2), v in entries.items() if p2 == p_id and q2 != q_id}
        col = {p2: v for (p2, q2), v in entries.items() if q2 == q_id and p2 != p_id}
        q_image = scaled_arrow(species, q_id, lam_inv, N)
        for q2, mu in row.items():
            q_image = q_image - scaled_arrow(species, q2, lam_inv * mu, N)
        p_image = species.arrow_element(p_id, N)
        for p2, nu in col.items():
            p_image = p_image - scaled_arrow(species, p2, lam_inv * nu, N)
        images = {q_id: q_image}
        if col:
            images[p_id] = p_image
        current = canonical_cyclic_form(
            apply_substitution(current, Substitution(species, images, N)))
        removed.append((p_id, q_id))
        removed_arrows.update((p_id, q_id))

    # phase 2: push higher-degree terms off the removed arrows
    def non_trivial_part(elem: AlgebraElement) -> AlgebraElement:
        pair_sets = {frozenset(pair) for pair in removed}
        keep = {path: s for path, s in elem.terms.items()
                if not (path.length == 2 and frozenset(path.arrows) in pair_sets)}
        return AlgebraElement(species, keep, N, elem.truncated)

    rounds = 0
    hit_truncation = False
    for _ in range(N + 1):
        rest = non_trivial_part(current)
        if not rest.mentions(removed_arrows):
            break
        images = {}
        for p_id, q_id in removed:
            dq = cyclic_derivative(rest, p_id)
            if dq.terms:
                images[q_id] = species.arrow_element(q_id, N) - dq
            dp = cyclic_derivative(rest, q_id)
            if dp.terms:
                images[p_id] = species.arrow_element(p_id, N) - dp
        if not images:
            hit_truncation = True
            break
        rounds += 1
        current = canonical_cyclic_form(
            apply_substitution(current, Substitution(species, images, N)))
    else:
        hit_truncation = True

    # phase 3: delete the pivot arrows
    rest = non_trivial_part(current)
    dropped = rest.truncated
    final_terms = {}
    for path, scalar in rest.terms.items():
        if removed_arrows.intersection(path.arrows):
            hit_truncation = True
            continue
        final_terms[path] = scalar
    new_quiver = WeightedQuiver(
        species.quiver.weights,
        tuple(a for a in species.quiver.arrows if a.id not in removed_arrows))
    new_species = Species(new_quiver, tower)
    reduced = SpeciesWithPotential(new_species, new_species.element(
        final_terms, N, truncated=dropped))

    counts = new_quiver.arrow_counts()
    residual = tuple(
        ((i, j), min(counts[(i, j)], counts[(j, i)]))
        for (i, j) in _two_cycle_pairs(new_quiver))
    report = ReductionReport(tuple(removed), rounds, hit_truncation, residual)
    return reduced, report


def mutate_sp(swp: SpeciesWithPotential, k: int) -> tuple[SpeciesWithPotential, ReductionReport]:
    """Premutation followed by reduction at vertex k."""
    return reduce_sp(premutate_sp(swp, k))


def mutate_step(swp: SpeciesWithPotential, k: int) -> tuple[SpeciesWithPotential, StepReport]:
    """Like mutate_sp, but the report carries the mutated vertex."""
    result, report = mutate_sp(swp, k)
    step = StepReport(k, report.removed_pairs, report.correction_rounds,
                      report.hit_truncation, report.residual_2cycles)
    return result, step


def is_nondegenerate_along(swp: SpeciesWithPotential,
                           sequence: tuple[int, ...]) -> SequenceCheck:
    """Mutate along the sequence; the check fails at the first step that
    leaves residual 2-cycles (or runs out of truncation headroom)."""
    steps: list[StepReport] = []
    current = swp
    ok = True
    for k in sequence:
        current, report = mutate_sp(current, k)
        step = StepReport(k, report.removed_pairs, report.correction_rounds,
                          report.hit_truncation, report.residual_2cycles)
        steps.append(step)
        if not step.clean:
            ok = False
            break
    return SequenceCheck(ok, tuple(steps), current)
