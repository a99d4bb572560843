"""Isomorphism and automorphism search by individualization and refinement.

Partitions are ordered lists of cells, each cell a vertex bitset.  Refinement
splits cells by neighbour counts into splitter cells and records a trace, so
two partitions can be compared step by step and abandoned at the first
divergence.
"""

from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence

from qsrg.cliques import cliques_per_vertex, maximal_cliques, maximum_cliques
from qsrg.graph import Graph, NotSRG, SrgParams, iter_bits, srg_check
from qsrg.switching import TYPES, TypedPartition

DEFAULT_NODE_BUDGET = 1_000_000
DEFAULT_MAX_VERTICES = 150


def node_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("QSRG_NODE_BUDGET", DEFAULT_NODE_BUDGET))


class BudgetExceeded(RuntimeError):
    pass


class _Counter:
    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(f"node budget {self.limit} exhausted")


# -- partitions ---------------------------------------------------------------


def initial_cells(v: int, colors: Sequence | None) -> list[int]:
    if colors is None:
        return [(1 << v) - 1] if v else []
    groups: dict = {}
    for i, c in enumerate(colors):
        groups[c] = groups.get(c, 0) | (1 << i)
    return [groups[c] for c in sorted(groups)]


def refine(adj: Sequence[int], cells: list[int], queue: deque, expect: list | None = None):
    """Split cells until equitable.  Returns (cells, trace), or None when ``expect`` diverges."""
    cells = list(cells)
    trace: list = []
    while queue:
        w = queue.popleft()
        k = 0
        while k < len(cells):
            x = cells[k]
            if x & (x - 1) == 0:
                k += 1
                continue
            groups: dict[int, int] = {}
            for i in iter_bits(x):
                c = (adj[i] & w).bit_count()
                groups[c] = groups.get(c, 0) | (1 << i)
            if len(groups) == 1:
                k += 1
                continue
            keys = sorted(groups)
            pieces = [groups[c] for c in keys]
            step = (k, tuple((c, groups[c].bit_count()) for c in keys))
            if expect is not None and (len(trace) >= len(expect) or expect[len(trace)] != step):
                return None
            trace.append(step)
            cells[k : k + 1] = pieces
            queue.extend(pieces)
            k += len(pieces)
    if expect is not None and len(trace) != len(expect):
        return None
    return cells, trace


def equitable(adj: Sequence[int], cells: list[int]) -> tuple[list[int], list]:
    return refine(adj, cells, deque(cells))


def target_cell(cells: list[int]) -> int:
    """Index of the first smallest non-singleton cell, or -1 when discrete."""
    best, size = -1, None
    for k, c in enumerate(cells):
        n = c.bit_count()
        if n > 1 and (size is None or n < size):
            best, size = k, n
    return best


def individualize(adj, cells: list[int], k: int, v: int, expect=None):
    bit = 1 << v
    new = cells[:k] + [bit, cells[k] & ~bit] + cells[k + 1 :]
    return refine(adj, new, deque([bit]), expect)


def leaf_order(cells: list[int]) -> list[int]:
    return [c.bit_length() - 1 for c in cells]


# -- invariants -----------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    srg: SrgParams | None
    n_cliques: int  # maximum cliques
    clique_size: int
    clique_size_histogram: tuple[tuple[int, int], ...] | None  # inclusion-maximal cliques by size
    cliques_per_vertex_histogram: tuple[tuple[int, int], ...]  # (count, #vertices)

    def to_json(self) -> dict:
        return {
            "srg": None if self.srg is None else list(self.srg.as_tuple()),
            "n_cliques": self.n_cliques,
            "clique_size": self.clique_size,
            "clique_size_histogram": None if self.clique_size_histogram is None else dict(self.clique_size_histogram),
            "cliques_per_vertex_histogram": dict(self.cliques_per_vertex_histogram),
        }


def fingerprint(g: Graph, cliques=None, maximal_histogram: bool = False) -> Fingerprint:
    """Isomorphism invariants; the maximal-clique size histogram is opt-in because it can be large."""
    cliques = maximum_cliques(g) if cliques is None else cliques
    srg = srg_check(g) if g.v >= 2 else None
    per_vertex = cliques_per_vertex(g.v, cliques)
    hist = None
    if maximal_histogram:
        hist = tuple(sorted(Counter(len(c) for c in maximal_cliques(g)).items()))
    return Fingerprint(
        srg=srg if isinstance(srg, SrgParams) else None,
        n_cliques=len(cliques),
        clique_size=max((len(c) for c in cliques), default=0),
        clique_size_histogram=hist,
        cliques_per_vertex_histogram=tuple(sorted(Counter(per_vertex).items())),
    )


def vertex_invariant(g: Graph, cliques=None) -> list[int]:
    """Number of maximum cliques through each vertex."""
    cliques = maximum_cliques(g) if cliques is None else cliques
    return cliques_per_vertex(g.v, cliques)


# -- isomorphism ----------------------------------------------------------------


@dataclass
class IsoResult:
    isomorphic: bool
    mapping: list[int] | None = None
    reason: str = ""
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.isomorphic

    def to_json(self) -> dict:
        return {"isomorphic": self.isomorphic, "mapping": self.mapping, "reason": self.reason, "nodes": self.nodes}


def _search_iso(g1: Graph, g2: Graph, start1, start2, counter: _Counter) -> list[int] | None:
    cells1, _ = start1
    path1 = [cells1]
    # first path through g1 individualizes the first vertex of each target cell
    traces = []
    picks = []
    while True:
        k = target_cell(path1[-1])
        if k < 0:
            break
        v = path1[-1][k] & -path1[-1][k]
        v = v.bit_length() - 1
        nxt, tr = individualize(g1.adj, path1[-1], k, v)
        picks.append(k)
        traces.append(tr)
        path1.append(nxt)
    leaf1 = leaf_order(path1[-1])

    def dfs(level: int, cells2: list[int]) -> list[int] | None:
        counter.tick()
        if level == len(picks):
            perm = [0] * g1.v
            for a, b in zip(leaf1, leaf_order(cells2)):
                perm[a] = b
            return perm if g1.maps_onto(perm, g2) else None
        k = picks[level]
        for w in iter_bits(cells2[k]):
            res = individualize(g2.adj, cells2, k, w, traces[level])
            if res is None:
                continue
            found = dfs(level + 1, res[0])
            if found is not None:
                return found
        return None

    return dfs(0, start2[0])


def is_isomorphic(
    g1: Graph,
    g2: Graph,
    colors1: Sequence | None = None,
    colors2: Sequence | None = None,
    use_cliques: bool = True,
    budget: int | None = None,
) -> IsoResult:
    """Decide isomorphism; a positive answer carries a bijection re-checked edge by edge.

    Optional colourings must be preserved by the bijection.  With
    ``use_cliques`` the maximum-clique fingerprint screens first and the
    per-vertex clique counts seed the initial partition.
    """
    if g1.v != g2.v:
        return IsoResult(False, reason="vertex counts differ")
    if g1.n_edges != g2.n_edges:
        return IsoResult(False, reason="edge counts differ")
    if sorted(map(int.bit_count, g1.adj)) != sorted(map(int.bit_count, g2.adj)):
        return IsoResult(False, reason="degree sequences differ")
    inv1 = inv2 = [0] * g1.v
    if use_cliques:
        c1, c2 = maximum_cliques(g1), maximum_cliques(g2)
        f1, f2 = fingerprint(g1, c1), fingerprint(g2, c2)
        if f1 != f2:
            return IsoResult(False, reason=f"fingerprints differ: {f1.to_json()} vs {f2.to_json()}")
        inv1, inv2 = vertex_invariant(g1, c1), vertex_invariant(g2, c2)
    col1 = [(a, b) for a, b in zip(inv1, colors1 or [0] * g1.v)]
    col2 = [(a, b) for a, b in zip(inv2, colors2 or [0] * g2.v)]
    if sorted(col1) != sorted(col2):
        return IsoResult(False, reason="colour class sizes differ")
    s1 = equitable(g1.adj, initial_cells(g1.v, col1))
    s2 = refine(g2.adj, initial_cells(g2.v, col2), deque(initial_cells(g2.v, col2)), s1[1])
    if s2 is None or [c.bit_count() for c in s1[0]] != [c.bit_count() for c in s2[0]]:
        return IsoResult(False, reason="equitable partitions differ")
    counter = _Counter(node_budget(budget))
    perm = _search_iso(g1, g2, s1, s2, counter)
    if perm is None:
        return IsoResult(False, reason="exhaustive search found no bijection", nodes=counter.nodes)
    if not g1.maps_onto(perm, g2):  # independent re-check of the returned map
        raise AssertionError("search returned a non-isomorphism")
    return IsoResult(True, perm, "bijection verified", counter.nodes)


# -- automorphisms --------------------------------------------------------------


@dataclass
class AutReport:
    status: str  # "ok" or "aborted"
    order: int | None
    orbits: list[list[int]]
    generators: list[list[int]]
    base: list[int] = field(default_factory=list)
    basic_orbit_sizes: list[int] = field(default_factory=list)
    nodes: int = 0
    reason: str = ""

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "order": self.order,
            "orbit_count": self.orbit_count,
            "orbit_sizes": [len(o) for o in self.orbits],
            "orbits": self.orbits,
            "generators": self.generators,
            "base": self.base,
            "basic_orbit_sizes": self.basic_orbit_sizes,
            "nodes": self.nodes,
            "reason": self.reason,
        }


class _Orbits:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union_perm(self, perm: Sequence[int]) -> None:
        for a, b in enumerate(perm):
            ra, rb = self.find(a), self.find(b)
            if ra != rb:
                self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for a in range(len(self.parent)):
            out.setdefault(self.find(a), []).append(a)
        return sorted(out.values())


def _orbit(point: int, gens: list[list[int]]) -> set[int]:
    seen = {point}
    todo = [point]
    while todo:
        a = todo.pop()
        for g in gens:
            b = g[a]
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return seen


def automorphisms(
    g: Graph,
    colors: Sequence | None = None,
    use_cliques: bool = True,
    budget: int | None = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> AutReport:
    """Generators, order and orbits of the colour-preserving automorphism group.

    The order is the product of basic orbit lengths along the first search
    path: at each level every vertex of the target cell is either reached by
    known generators or tested by an exhaustive search for an automorphism
    that fixes the earlier base points.
    """
    if g.v > max_vertices:
        return AutReport("aborted", None, [], [], reason=f"{g.v} vertices exceed the bound {max_vertices}")
    inv = vertex_invariant(g) if use_cliques else [0] * g.v
    col = [(a, b) for a, b in zip(inv, colors or [0] * g.v)]
    counter = _Counter(node_budget(budget))
    cells, _ = equitable(g.adj, initial_cells(g.v, col))
    path, picks, traces, base = [cells], [], [], []
    while (k := target_cell(path[-1])) >= 0:
        v = (path[-1][k] & -path[-1][k]).bit_length() - 1
        nxt, tr = individualize(g.adj, path[-1], k, v)
        picks.append(k)
        traces.append(tr)
        base.append(v)
        path.append(nxt)
    leaf1 = leaf_order(path[-1])

    def dfs(level: int, cells2: list[int]) -> list[int] | None:
        counter.tick()
        if level == len(picks):
            perm = [0] * g.v
            for a, b in zip(leaf1, leaf_order(cells2)):
                perm[a] = b
            return perm if g.is_automorphism(perm) else None
        k = picks[level]
        for w in iter_bits(cells2[k]):
            res = individualize(g.adj, cells2, k, w, traces[level])
            if res is None:
                continue
            found = dfs(level + 1, res[0])
            if found is not None:
                return found
        return None

    gens: list[list[int]] = []
    sizes: list[int] = []
    try:
        for level in range(len(base) - 1, -1, -1):
            b, k = base[level], picks[level]
            orbit = _orbit(b, gens)
            for w in iter_bits(path[level][k]):
                if w in orbit:
                    continue
                res = individualize(g.adj, path[level], k, w, traces[level])
                perm = None if res is None else dfs(level + 1, res[0])
                if perm is not None:
                    gens.append(perm)
                    orbit = _orbit(b, gens)
            sizes.append(len(orbit))
    except BudgetExceeded as exc:
        return AutReport("aborted", None, [], gens, base, nodes=counter.nodes, reason=str(exc))
    sizes.reverse()
    order = 1
    for s in sizes:
        order *= s
    orbits = _Orbits(g.v)
    for p in gens:
        orbits.union_perm(p)
    return AutReport("ok", order, orbits.classes(), gens, base, sizes, counter.nodes)


def setwise_stabilizer_order(g: Graph, s, budget: int | None = None, max_vertices: int = DEFAULT_MAX_VERTICES) -> int:
    """Order of the subgroup of Aut(g) mapping the vertex set ``s`` onto itself.

    Computed as the automorphism group of ``g`` with ``s`` coloured, which is
    exactly that subgroup.
    """
    members = set(s)
    rep = automorphisms(g, colors=[i in members for i in range(g.v)], budget=budget, max_vertices=max_vertices)
    if rep.status != "ok":
        raise BudgetExceeded(rep.reason)
    return rep.order


# -- reconstruction -------------------------------------------------------------


class NotRecognizable(ValueError):
    pass


def recover_types(g: Graph, cliques=None) -> TypedPartition:
    """Type labels of a switched graph from maximum-clique counts: most cliques = I, fewest = III."""
    counts = vertex_invariant(g, cliques)
    levels = sorted(set(counts), reverse=True)
    if len(levels) != 3:
        raise NotRecognizable(f"not a recognizable switched graph: {len(levels)} clique-count classes")
    label = dict(zip(levels, TYPES))
    return TypedPartition.from_types(None, [label[c] for c in counts])


def reconstruct_point_graph(g: Graph, cliques=None) -> Graph:
    """Undo the switch on an unlabelled switched graph by flipping all II-III adjacencies."""
    part = recover_types(g, cliques)
    xm, ym = part.masks["II"], part.masks["III"]
    adj = list(g.adj)
    for i in iter_bits(xm):
        adj[i] ^= ym
    for i in iter_bits(ym):
        adj[i] ^= xm
    return Graph(g.v, tuple(adj))
