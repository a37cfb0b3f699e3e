"""JSON codecs for every object that crosses the CLI/service boundary.

All encoders emit plain JSON types only; term lists are sorted so that equal
objects serialize identically.  Decoders validate through the normal
constructors and raise ValueError with a readable message on bad input.
"""

from __future__ import annotations

from .algebra import AlgebraElement, DEFAULT_TRUNCATION, Path, Species
from .mutation import (
    ReductionReport,
    SequenceCheck,
    SpeciesWithPotential,
    StepReport,
)
from .quiver import Arrow, ExchangeMatrix, WeightedQuiver
from .search import SearchResult
from .tower import FieldTower, build_tower, extend_scalars

__all__ = [
    "tower_to_json", "tower_from_json",
    "matrix_to_json", "matrix_from_json",
    "quiver_to_json", "quiver_from_json",
    "potential_to_json", "potential_from_json",
    "swp_to_json", "swp_from_json",
    "report_to_json", "step_to_json", "sequence_check_to_json",
    "search_result_to_json",
]


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise ValueError("%s: expected an object, got %s" % (what, type(obj).__name__))
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValueError("%s: missing %s" % (what, ", ".join(missing)))


def tower_to_json(tower: FieldTower) -> dict:
    return {
        "p": tower.p,
        "weights": list(tower.weights),
        "degree": tower.degree,
        "constant": tower.constant,
        "base_degree": tower.base_degree,
    }


def tower_from_json(obj) -> FieldTower:
    _require(obj, ("p", "weights"), "tower")
    tower = build_tower(int(obj["p"]), tuple(int(w) for w in obj["weights"]))
    tower = extend_scalars(tower, int(obj.get("base_degree", 1)))
    for key, got in (("degree", tower.degree), ("constant", tower.constant)):
        if key in obj and int(obj[key]) != got:
            raise ValueError("tower: stated %s=%s, canonical value is %s"
                             % (key, obj[key], got))
    return tower


def matrix_to_json(matrix: ExchangeMatrix) -> dict:
    return {"rows": [list(r) for r in matrix.entries],
            "symmetrizer": list(matrix.symmetrizer)}


def matrix_from_json(obj) -> ExchangeMatrix:
    _require(obj, ("rows", "symmetrizer"), "matrix")
    return ExchangeMatrix(
        tuple(tuple(int(x) for x in row) for row in obj["rows"]),
        tuple(int(d) for d in obj["symmetrizer"])).require_valid()


def quiver_to_json(quiver: WeightedQuiver) -> dict:
    return {
        "weights": list(quiver.weights),
        "arrows": [{"id": a.id, "from": a.source, "to": a.target}
                   for a in quiver.arrows],
    }


def quiver_from_json(obj) -> WeightedQuiver:
    _require(obj, ("weights", "arrows"), "quiver")
    arrows = []
    for entry in obj["arrows"]:
        _require(entry, ("id", "from", "to"), "arrow")
        arrows.append(Arrow(str(entry["id"]), int(entry["from"]), int(entry["to"])))
    return WeightedQuiver(tuple(int(w) for w in obj["weights"]), tuple(arrows))


def potential_to_json(elem: AlgebraElement) -> dict:
    F = elem.species.tower.base
    terms = []
    for path, scalar in elem.sorted_terms():
        terms.append({
            "coeff": F.to_json(scalar),
            "arrows": list(path.arrows),
            "omegas": list(path.exponents),
        })
    return {"truncation": elem.truncation, "truncated": elem.truncated,
            "terms": terms}


def potential_from_json(species: Species, obj) -> AlgebraElement:
    _require(obj, ("terms",), "potential")
    F = species.tower.base
    truncation = int(obj.get("truncation", DEFAULT_TRUNCATION))
    terms = {}
    for entry in obj["terms"]:
        _require(entry, ("coeff", "arrows", "omegas"), "potential term")
        arrows = tuple(str(a) for a in entry["arrows"])
        if not arrows:
            raise ValueError("potential term without arrows")
        omegas = tuple(int(m) for m in entry["omegas"])
        head = species.arrow(arrows[0]).target
        path = Path(head, arrows, omegas)
        if species.arrow(arrows[-1]).source != head:
            raise ValueError("potential term is not a closed path: %r" % (path,))
        coeff = F.from_json(entry["coeff"])
        if path in terms:
            raise ValueError("duplicate potential term %r" % (path,))
        terms[path] = coeff
    return species.element(terms, truncation, truncated=bool(obj.get("truncated", False)))


def swp_to_json(swp: SpeciesWithPotential) -> dict:
    tower = swp.species.tower
    return {
        "prime": tower.p,
        "base_degree": tower.base_degree,
        "quiver": quiver_to_json(swp.species.quiver),
        "potential": potential_to_json(swp.potential),
    }


def swp_from_json(obj) -> SpeciesWithPotential:
    _require(obj, ("prime", "quiver", "potential"), "species with potential")
    quiver = quiver_from_json(obj["quiver"])
    tower = extend_scalars(build_tower(int(obj["prime"]), quiver.weights),
                           int(obj.get("base_degree", 1)))
    species = Species(quiver, tower)
    return SpeciesWithPotential(species, potential_from_json(species, obj["potential"]))


def report_to_json(report: ReductionReport) -> dict:
    return {
        "removed_pairs": [list(pair) for pair in report.removed_pairs],
        "correction_rounds": report.correction_rounds,
        "hit_truncation": report.hit_truncation,
        "residual_2cycles": [[list(pair), count]
                             for pair, count in report.residual_2cycles],
        "clean": report.clean,
    }


def step_to_json(step: StepReport) -> dict:
    out = report_to_json(
        ReductionReport(step.removed_pairs, step.correction_rounds,
                        step.hit_truncation, step.residual_2cycles))
    out["vertex"] = step.vertex
    return out


def sequence_check_to_json(check: SequenceCheck) -> dict:
    return {
        "ok": check.ok,
        "steps": [step_to_json(s) for s in check.steps],
        "final": swp_to_json(check.final),
    }


def search_result_to_json(res: SearchResult) -> dict:
    out = {
        "found": res.found,
        "prime": res.prime,
        "sequence": list(res.sequence),
        "seed": res.seed,
        "attempts": res.attempts,
        "rungs": list(res.rungs),
    }
    if res.found:
        out["base_degree"] = res.base_degree
        out["attempt"] = res.attempt
        out["witness"] = swp_to_json(res.witness)
        out["check"] = sequence_check_to_json(res.check)
    return out
