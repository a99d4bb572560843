"""Vertex typing relative to a singular subspace, and Godsil-McKay switching."""

from __future__ import annotations

from dataclasses import dataclass, field

from qsrg.gf2geom import Subspace, span
from qsrg.graph import Graph, iter_bits, point_graph
from qsrg.quadric import Quadric, first_singular_subspace

TYPES = ("I", "II", "III")


@dataclass(frozen=True)
class TypedPartition:
    """Type labels of every vertex with respect to ``alpha``.

    Type I vertices lie on alpha, type II vertices span a singular space with
    alpha, type III are the rest.  ``alpha`` is None when the typing was
    recovered from an unlabelled graph.
    """

    alpha: Subspace | None
    type_of: tuple[str, ...]
    masks: dict[str, int] = field(compare=False, repr=False)

    @classmethod
    def from_types(cls, alpha: Subspace | None, type_of) -> TypedPartition:
        masks = {t: 0 for t in TYPES}
        for i, t in enumerate(type_of):
            masks[t] |= 1 << i
        return cls(alpha, tuple(type_of), masks)

    @property
    def s(self) -> int | None:
        return None if self.alpha is None else self.alpha.dim

    @property
    def x_mask(self) -> int:
        return self.masks["II"]

    @property
    def y_mask(self) -> int:
        return self.masks["I"] | self.masks["III"]

    @property
    def x_set(self) -> frozenset[int]:
        return frozenset(iter_bits(self.x_mask))

    @property
    def y_set(self) -> frozenset[int]:
        return frozenset(iter_bits(self.y_mask))

    def of_type(self, t: str) -> list[int]:
        return list(iter_bits(self.masks[t]))

    def sizes(self) -> dict[str, int]:
        return {t: self.masks[t].bit_count() for t in TYPES}


def classify_vertices(q: Quadric, alpha: Subspace) -> TypedPartition:
    if not q.is_singular(alpha) or alpha.dim < 0:
        raise ValueError("alpha is not a nonempty singular subspace of the quadric")
    if alpha.dim >= q.g:
        raise ValueError(f"need s < g = {q.g}; with s = g there are no type II points")
    on_alpha = alpha.points
    types = []
    for p in q.points:
        if p in on_alpha:
            types.append("I")
        elif all((p ^ a) in q for a in on_alpha):
            types.append("II")
        else:
            types.append("III")
    return TypedPartition.from_types(alpha, types)


def default_partition(q: Quadric, s: int) -> TypedPartition:
    return classify_vertices(q, first_singular_subspace(q, s))


@dataclass
class ValidationReport:
    ok: bool
    x_size: int
    induced_degree: int | None
    hits: dict[str, tuple[int, ...]]  # distinct neighbour counts into X, per type of Y vertex
    violations: list[str]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "x_size": self.x_size,
            "induced_degree": self.induced_degree,
            "hits": {t: list(v) for t, v in self.hits.items()},
            "violations": self.violations,
        }


class SwitchingError(ValueError):
    pass


def gm_validate(g: Graph, part: TypedPartition) -> ValidationReport:
    """Check the two Godsil-McKay conditions, plus the type-specific counts."""
    if len(part.type_of) != g.v:
        raise ValueError("partition and graph disagree on the vertex count")
    xm = part.x_mask
    nx = xm.bit_count()
    violations = []
    if nx == 0 or nx % 2:
        violations.append(f"|X| = {nx} is not a positive even number")
    degs = {(g.adj[i] & xm).bit_count() for i in iter_bits(xm)}
    induced = degs.pop() if len(degs) == 1 else None
    if induced is None:
        witness = min(iter_bits(xm), key=lambda i: (g.adj[i] & xm).bit_count())
        violations.append(f"X does not induce a regular subgraph; vertex {witness}")
    hits: dict[str, tuple[int, ...]] = {}
    want = {"I": nx, "III": nx // 2}
    for t in ("I", "III"):
        seen = set()
        for y in part.of_type(t):
            c = (g.adj[y] & xm).bit_count()
            seen.add(c)
            if c != want[t]:
                violations.append(f"type {t} vertex {y} has {c} neighbours in X, expected {want[t]}")
        hits[t] = tuple(sorted(seen))
    return ValidationReport(not violations, nx, induced, hits, violations)


def _switch(g: Graph, xm: int) -> Graph:
    half = xm.bit_count() // 2
    adj = list(g.adj)
    flipped = [y for y in range(g.v) if not (xm >> y) & 1 and (g.adj[y] & xm).bit_count() == half]
    for y in flipped:
        adj[y] ^= xm
        for x in iter_bits(xm):
            adj[x] ^= 1 << y
    return Graph(g.v, tuple(adj), g.labels)


def gm_switch(g: Graph, part: TypedPartition) -> Graph:
    """Complement the X-neighbourhood of every Y vertex with exactly |X|/2 neighbours in X."""
    report = gm_validate(g, part)
    if not report.ok:
        raise SwitchingError("; ".join(report.violations[:5]))
    return _switch(g, part.x_mask)


def build_direct(q: Quadric, part: TypedPartition) -> Graph:
    """Edge set written straight from the type table: II-III pairs join on 2-secants."""
    pts = q.points
    t = part.type_of
    adj = [0] * q.v
    for i in range(q.v):
        for j in range(i):
            third_on = (pts[i] ^ pts[j]) in q
            mixed = {t[i], t[j]} == {"II", "III"}
            if third_on != mixed:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(q.v, tuple(adj), pts)


def gamma0_involution(q: Quadric, p: int) -> list[int]:
    """Vertex map fixing types I and III, swapping type II Q with the third point of pQ."""
    if p not in q:
        raise ValueError("p is not a point of the quadric")
    part = classify_vertices(q, span([p]))
    perm = list(range(q.v))
    for i in part.of_type("II"):
        perm[i] = q.index[p ^ q.points[i]]
    return perm


def switched_graph(q: Quadric, s: int) -> tuple[TypedPartition, Graph]:
    """Default alpha_s typing and the switched graph built from it."""
    part = default_partition(q, s)
    return part, gm_switch(point_graph(q), part)
