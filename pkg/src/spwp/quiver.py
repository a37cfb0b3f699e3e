"""Skew-symmetrizable exchange matrices, weighted quivers, and mutation.

Vertices are the integers 1..n.  An exchange matrix B with skew-symmetrizer
D = diag(d_1..d_n) corresponds to the weighted quiver with gcd(d_i, d_j) *
b_ij / d_j arrows j -> i for b_ij >= 0; both directions of the dictionary and
mutation on either side live here.  Quiver mutation is performed in two
stages (premutation adds composite arrows and reverses arrows through the
mutation vertex; a separate pass cancels two-cycles) because the species
level needs the intermediate object.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "Arrow",
    "WeightedQuiver",
    "ExchangeMatrix",
    "mutate_matrix",
    "matrix_to_quiver",
    "quiver_to_matrix",
    "premutate_quiver",
    "remove_2cycles",
    "mutate_quiver",
    "composite_arrow_id",
    "star_arrow_id",
    "random_exchange_matrix",
]


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


def composite_arrow_id(out_id: str, index: int, in_id: str) -> str:
    """Id of the composite arrow built from ``in`` -> k -> ``out`` with the
    index-th eigenbasis decoration at k."""
    return "[%s.%d.%s]" % (out_id, index, in_id)


def star_arrow_id(arrow_id: str) -> str:
    return arrow_id + "*"


@dataclass(frozen=True)
class ExchangeMatrix:
    entries: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(int(x) for x in row) for row in self.entries))
        object.__setattr__(self, "symmetrizer", tuple(int(x) for x in self.symmetrizer))

    @property
    def n(self) -> int:
        return len(self.symmetrizer)

    def validate(self) -> bool:
        """True when B is square, zero-diagonal and D*B is skew-symmetric with
        positive D."""
        n = self.n
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            return False
        if any(d < 1 for d in self.symmetrizer):
            return False
        b, d = self.entries, self.symmetrizer
        for i in range(n):
            if b[i][i] != 0:
                return False
            for j in range(n):
                if d[i] * b[i][j] != -d[j] * b[j][i]:
                    return False
        return True

    def require_valid(self) -> "ExchangeMatrix":
        if not self.validate():
            raise ValueError("matrix is not skew-symmetrizable with the given symmetrizer")
        return self


def mutate_matrix(mat: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at vertex k (1-based)."""
    mat.require_valid()
    n = mat.n
    if not 1 <= k <= n:
        raise IndexError("mutation vertex %r out of range 1..%d" % (k, n))
    kk = k - 1
    b = mat.entries
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-b[i][j])
            else:
                sign = (b[i][kk] > 0) - (b[i][kk] < 0)
                row.append(b[i][j] + sign * max(b[i][kk] * b[kk][j], 0))
        new.append(tuple(row))
    return ExchangeMatrix(tuple(new), mat.symmetrizer)


@dataclass(frozen=True)
class WeightedQuiver:
    """Loop-free quiver with positive integer vertex weights.

    Vertices are 1..len(weights); parallel arrows are distinct Arrow records
    and arrow ids must be unique.
    """

    weights: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        n = len(self.weights)
        if n == 0 or any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        seen = set()
        for a in self.arrows:
            if not (1 <= a.source <= n and 1 <= a.target <= n):
                raise ValueError("arrow %s has endpoints outside 1..%d" % (a.id, n))
            if a.source == a.target:
                raise ValueError("loop arrow %s is not allowed" % a.id)
            if a.id in seen:
                raise ValueError("duplicate arrow id %r" % a.id)
            seen.add(a.id)

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight(self, vertex: int) -> int:
        return self.weights[vertex - 1]

    def arrow_counts(self) -> dict[tuple[int, int], int]:
        """(source, target) -> number of parallel arrows."""
        counts: dict[tuple[int, int], int] = {}
        for a in self.arrows:
            key = (a.source, a.target)
            counts[key] = counts.get(key, 0) + 1
        return counts

    def arrows_between(self, source: int, target: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == source and a.target == target]

    def is_2_acyclic(self) -> bool:
        counts = self.arrow_counts()
        return not any(counts.get((t, s), 0) for (s, t) in counts)

    def is_strongly_primitive(self) -> bool:
        w = self.weights
        return all(
            gcd(w[i], w[j]) == 1 for i in range(len(w)) for j in range(i + 1, len(w))
        )


def matrix_to_quiver(mat: ExchangeMatrix) -> WeightedQuiver:
    """Weighted quiver of a valid exchange matrix, with canonical arrow ids."""
    mat.require_valid()
    b, d = mat.entries, mat.symmetrizer
    n = mat.n
    arrows = []
    serial = 0
    for i in range(n):
        for j in range(n):
            if b[i][j] <= 0:
                continue
            g = gcd(d[i], d[j])
            if (g * b[i][j]) % d[j] != 0:
                raise ValueError(
                    "entry b[%d][%d] = %d is not compatible with the symmetrizer"
                    % (i + 1, j + 1, b[i][j])
                )
            count = g * b[i][j] // d[j]
            for _ in range(count):
                serial += 1
                arrows.append(Arrow("a%d" % serial, j + 1, i + 1))
    return WeightedQuiver(tuple(d), tuple(arrows))


def quiver_to_matrix(quiver: WeightedQuiver) -> ExchangeMatrix:
    """Inverse dictionary; requires a 2-acyclic quiver."""
    if not quiver.is_2_acyclic():
        raise ValueError("quiver has a 2-cycle; no exchange matrix exists")
    n = quiver.n
    w = quiver.weights
    counts = quiver.arrow_counts()
    rows = [[0] * n for _ in range(n)]
    for (src, tgt), m in counts.items():
        i, j = tgt - 1, src - 1
        g = gcd(w[i], w[j])
        rows[i][j] = m * w[j] // g
        rows[j][i] = -m * w[i] // g
    return ExchangeMatrix(tuple(tuple(r) for r in rows), w).require_valid()


def premutate_quiver(quiver: WeightedQuiver, k: int) -> WeightedQuiver:
    """Mutation steps 1 and 2 at vertex k: insert composite arrows for every
    path through k, then replace arrows incident to k by reversed starred
    copies.  Two-cycles are not cancelled here."""
    if not 1 <= k <= quiver.n:
        raise IndexError("mutation vertex %r out of range 1..%d" % (k, quiver.n))
    w = quiver.weights
    dk = quiver.weight(k)
    incoming = [a for a in quiver.arrows if a.target == k]   # a: j -> k
    outgoing = [b for b in quiver.arrows if b.source == k]   # b: k -> i
    arrows: list[Arrow] = [a for a in quiver.arrows if k not in (a.source, a.target)]
    for b in outgoing:
        for a in incoming:
            di, dj = w[b.target - 1], w[a.source - 1]
            count = gcd(di, dj) * dk // (gcd(di, dk) * gcd(dk, dj))
            for t in range(count):
                arrows.append(Arrow(composite_arrow_id(b.id, t, a.id), a.source, b.target))
    for a in incoming:
        arrows.append(Arrow(star_arrow_id(a.id), k, a.source))
    for b in outgoing:
        arrows.append(Arrow(star_arrow_id(b.id), b.target, k))
    return WeightedQuiver(w, tuple(arrows))


def remove_2cycles(quiver: WeightedQuiver) -> WeightedQuiver:
    """Cancel a maximal disjoint collection of 2-cycles: for every vertex pair
    drop min(m_ij, m_ji) arrows from each direction, lexicographically
    smallest ids first."""
    doomed: set[str] = set()
    counts = quiver.arrow_counts()
    for (s, t) in sorted(counts):
        if s >= t:
            continue
        kill = min(counts.get((s, t), 0), counts.get((t, s), 0))
        if not kill:
            continue
        for a in sorted(quiver.arrows_between(s, t), key=lambda a: a.id)[:kill]:
            doomed.add(a.id)
        for a in sorted(quiver.arrows_between(t, s), key=lambda a: a.id)[:kill]:
            doomed.add(a.id)
    return WeightedQuiver(
        quiver.weights, tuple(a for a in quiver.arrows if a.id not in doomed)
    )


def mutate_quiver(quiver: WeightedQuiver, k: int) -> WeightedQuiver:
    """Full combinatorial mutation at k; requires a 2-acyclic input."""
    if not quiver.is_2_acyclic():
        raise ValueError("quiver mutation requires a 2-acyclic quiver")
    return remove_2cycles(premutate_quiver(quiver, k))


def random_exchange_matrix(rng, n: int, max_entry: int = 6,
                           weight_pool=(1, 1, 1, 2, 3, 5, 7, 11, 13)) -> ExchangeMatrix:
    """Random valid (B, D) with pairwise-coprime D: draw the strictly upper
    triangle of the skew-symmetric D*B as multiples of lcm(d_i, d_j), then
    divide."""
    while True:
        d = [rng.choice(weight_pool) for _ in range(n)]
        if all(
            gcd(d[i], d[j]) == 1 for i in range(n) for j in range(i + 1, n)
        ):
            break
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            bound = max_entry * g // max(d[i], d[j])
            t = rng.randint(-bound, bound)
            rows[i][j] = t * d[j] // g
            rows[j][i] = -t * d[i] // g
    return ExchangeMatrix(tuple(tuple(r) for r in rows), tuple(d)).require_valid()
