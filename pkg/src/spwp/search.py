"""Randomized search for potentials that stay non-degenerate along a given
mutation sequence.

Candidates are drawn per extension-field rung: first over the prime field,
then over scalar extensions of degree r coprime to the tower degree, r
ascending up to ``max_r``.  Within a rung the RNG for attempt number a is
``random.Random(f"{seed}:{r}:{a}")`` — string seeding is stable across
platforms and hash randomization.  A candidate assigns to every rotation
orbit of decorated cycles (up to ``max_cycle_length``) a coefficient drawn
as base-p digits, in the sorted order of the orbit representatives, so a
witness is reproducible from (seed, r, attempt) alone.

The first success in (r, attempt) order wins; evaluation is serial, so the
result is deterministic by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .algebra import DEFAULT_TRUNCATION, Path, Species, canonical_cyclic_form
from .mutation import SequenceCheck, SpeciesWithPotential, is_nondegenerate_along
from .quiver import WeightedQuiver, matrix_to_quiver, quiver_to_matrix
from .tower import build_tower, extend_scalars

__all__ = [
    "enumerate_cycles",
    "longest_chordless_cycle_length",
    "default_max_cycle_length",
    "random_potential",
    "replay_candidate",
    "SearchResult",
    "search_nondegenerate",
    "compatibility_report",
]


def enumerate_cycles(species: Species, max_length: int) -> list[Path]:
    """Rotation-orbit representatives (canonical forms) of all decorated
    cycles of length 2..max_length, sorted."""
    quiver = species.quiver
    by_target: dict[int, list] = {v: [] for v in range(1, quiver.n + 1)}
    for a in sorted(quiver.arrows, key=lambda a: a.id):
        by_target[a.target].append(a)
    reps: set[Path] = set()

    def close_walk(arrow_ids: tuple[str, ...]) -> None:
        slots = [species.exponents_at(species.arrow(x).target) for x in arrow_ids]

        def decorate(idx: int, exps: tuple[int, ...]) -> None:
            if idx == len(arrow_ids):
                path = Path(species.arrow(arrow_ids[0]).target, arrow_ids, exps + (0,))
                elem = species.element({path: 1}, max(max_length, DEFAULT_TRUNCATION))
                for rep in canonical_cyclic_form(elem).terms:
                    reps.add(rep)
                return
            for m in slots[idx]:
                decorate(idx + 1, exps + (m,))

        decorate(0, ())

    def walk(start: int, arrow_ids: tuple[str, ...], at: int) -> None:
        for a in by_target[at]:
            ids = arrow_ids + (a.id,)
            if a.source == start and len(ids) >= 2:
                close_walk(ids)
            if len(ids) < max_length:
                walk(start, ids, a.source)

    for start in range(1, quiver.n + 1):
        walk(start, (), start)
    return sorted(reps, key=Path.sort_key)


def longest_chordless_cycle_length(quiver: WeightedQuiver) -> int:
    """Length of the longest directed cycle with no chord; 0 if acyclic."""
    edges = {(a.source, a.target) for a in quiver.arrows}
    succ: dict[int, list[int]] = {v: [] for v in range(1, quiver.n + 1)}
    for (s, t) in sorted(edges):
        succ[s].append(t)
    best = 0

    def chordless(cycle: list[int]) -> bool:
        ln = len(cycle)
        for i in range(ln):
            for j in range(ln):
                if j in (i, (i + 1) % ln):
                    continue
                if (cycle[i], cycle[j]) in edges:
                    return False
        return True

    def dfs(start: int, path: list[int]) -> None:
        nonlocal best
        for nxt in succ[path[-1]]:
            if nxt == start and len(path) >= 2:
                if len(path) > best and chordless(path):
                    best = len(path)
            elif nxt > start and nxt not in path:
                path.append(nxt)
                dfs(start, path)
                path.pop()

    for start in range(1, quiver.n + 1):
        dfs(start, [start])
    return best


def default_max_cycle_length(quiver: WeightedQuiver,
                             truncation: int = DEFAULT_TRUNCATION) -> int:
    length = longest_chordless_cycle_length(quiver)
    return min(length, truncation - 2) if length else 0


def random_potential(species: Species, rng: random.Random, max_length: int,
                     truncation: int = DEFAULT_TRUNCATION) -> SpeciesWithPotential:
    """One coefficient per cycle orbit, drawn in sorted-representative order."""
    F = species.tower.base
    terms = {}
    for rep in enumerate_cycles(species, max_length):
        coeff = F.random(rng)
        if not F.is_zero(coeff):
            terms[rep] = coeff
    return SpeciesWithPotential(species, species.element(terms, truncation))


def replay_candidate(quiver: WeightedQuiver, p: int, r: int, seed, attempt: int,
                     max_cycle_length: int | None = None,
                     truncation: int = DEFAULT_TRUNCATION) -> SpeciesWithPotential:
    """Regenerate the candidate that ``search_nondegenerate`` evaluated as
    (r, attempt) under this seed."""
    tower = extend_scalars(build_tower(p, quiver.weights), r)
    species = Species(quiver, tower)
    if max_cycle_length is None:
        max_cycle_length = default_max_cycle_length(quiver, truncation)
    rng = random.Random("%s:%d:%d" % (seed, r, attempt))
    return random_potential(species, rng, max_cycle_length, truncation)


@dataclass(frozen=True)
class SearchResult:
    found: bool
    prime: int
    sequence: tuple[int, ...]
    seed: object
    attempts: int
    rungs: tuple[int, ...]
    base_degree: int | None = None
    attempt: int | None = None
    witness: SpeciesWithPotential | None = None
    check: SequenceCheck | None = None


def search_nondegenerate(quiver: WeightedQuiver, p: int, sequence,
                         budget: int = 100, seed=0, max_r: int = 7,
                         max_cycle_length: int | None = None,
                         truncation: int = DEFAULT_TRUNCATION) -> SearchResult:
    """Try random potentials until one mutates cleanly along the sequence.

    ``budget`` bounds the attempts per extension rung.  The empty sequence
    is witnessed by the zero potential without spending any attempts.
    """
    sequence = tuple(sequence)
    base_tower = build_tower(p, quiver.weights)
    rungs = [1] + [r for r in range(2, max_r + 1) if gcd(r, base_tower.degree) == 1]
    if max_cycle_length is None:
        max_cycle_length = default_max_cycle_length(quiver, truncation)

    if not sequence:
        species = Species(quiver, base_tower)
        swp = SpeciesWithPotential(species, species.zero_element(truncation))
        return SearchResult(True, p, sequence, seed, 0, tuple(rungs),
                            base_degree=1, attempt=0, witness=swp,
                            check=SequenceCheck(True, (), swp))

    attempts = 0
    for r in rungs:
        tower = extend_scalars(base_tower, r)
        species = Species(quiver, tower)
        cycles = enumerate_cycles(species, max_cycle_length)
        F = tower.base
        for attempt in range(1, budget + 1):
            rng = random.Random("%s:%d:%d" % (seed, r, attempt))
            terms = {}
            for rep in cycles:
                coeff = F.random(rng)
                if not F.is_zero(coeff):
                    terms[rep] = coeff
            swp = SpeciesWithPotential(species, species.element(terms, truncation))
            attempts += 1
            check = is_nondegenerate_along(swp, sequence)
            if check.ok:
                return SearchResult(True, p, sequence, seed, attempts, tuple(rungs),
                                    base_degree=r, attempt=attempt,
                                    witness=swp, check=check)
    return SearchResult(False, p, sequence, seed, attempts, tuple(rungs))


def compatibility_report(matrix=None, quiver=None, prime=None, swp=None) -> list[str]:
    """Cross-check whichever pieces are supplied; returns human-readable
    problems (empty list: everything consistent)."""
    problems: list[str] = []
    if matrix is not None:
        try:
            matrix.require_valid()
        except ValueError as exc:
            problems.append("matrix: %s" % exc)
            matrix = None
    if quiver is not None and matrix is not None:
        try:
            back = quiver_to_matrix(quiver)
        except ValueError as exc:
            problems.append("quiver: %s" % exc)
        else:
            if back.entries != matrix.entries or back.symmetrizer != matrix.symmetrizer:
                problems.append("quiver and matrix disagree (reconstructed %r)"
                                % (back.entries,))
    if matrix is not None and quiver is None:
        try:
            matrix_to_quiver(matrix)
        except ValueError as exc:
            problems.append("matrix does not define an integral quiver: %s" % exc)
    if quiver is not None and not quiver.is_strongly_primitive():
        problems.append("weights are not pairwise coprime; no species exists")
    if prime is not None:
        weights = quiver.weights if quiver is not None else (
            matrix.symmetrizer if matrix is not None else None)
        if weights is not None:
            try:
                build_tower(prime, weights)
            except ValueError as exc:
                problems.append("tower: %s" % exc)
    if swp is not None:
        if quiver is not None and swp.species.quiver != quiver:
            problems.append("potential bundle carries a different quiver")
        if swp.potential.truncated:
            problems.append("potential carries a truncation-loss flag")
    return problems
