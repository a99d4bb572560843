"""Maximal cliques of the switched graphs: enumeration, classification, census."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from qsrg import formulas
from qsrg.gf2geom import Subspace, span
from qsrg.graph import Graph, iter_bits, point_graph
from qsrg.quadric import Quadric
from qsrg.switching import TYPES, TypedPartition

DEFAULT_NODE_BUDGET = 1_000_000


def node_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("QSRG_NODE_BUDGET", DEFAULT_NODE_BUDGET))


def _expand(adj: tuple[int, ...], r: int, p: int, x: int, out: list[int], min_size: int) -> None:
    if not p:
        if not x and r.bit_count() >= min_size:
            out.append(r)
        return
    if r.bit_count() + p.bit_count() < min_size:
        return
    # Tomita pivot: the vertex of P | X leaving the fewest branches
    best, u = -1, 0
    for w in iter_bits(p | x):
        c = (p & adj[w]).bit_count()
        if c > best:
            best, u = c, w
    for v in iter_bits(p & ~adj[u]):
        bit = 1 << v
        _expand(adj, r | bit, p & adj[v], x & adj[v], out, min_size)
        p &= ~bit
        x |= bit


def _color_sort(adj: tuple[int, ...], p: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of P; colour numbers bound the clique size from above."""
    order, colors = [], []
    color, left = 0, p
    while left:
        color += 1
        q = left
        while q:
            low = q & -q
            w = low.bit_length() - 1
            q &= ~adj[w] & ~low
            left ^= low
            order.append(w)
            colors.append(color)
    return order, colors


def _mcq(adj: tuple[int, ...], r: int, rsize: int, p: int, out: list[int], floor: list[int]) -> None:
    order, colors = _color_sort(adj, p)
    for i in range(len(order) - 1, -1, -1):
        if rsize + colors[i] < floor[0]:
            return
        bit = 1 << order[i]
        sub = p & adj[order[i]]
        if sub:
            _mcq(adj, r | bit, rsize + 1, sub, out, floor)
        elif rsize + 1 >= floor[0]:
            out.append(r | bit)
            floor[0] = rsize + 1
        p &= ~bit


def _run_tasks(args) -> list[int]:
    kind, adj, tasks, min_size = args
    out: list[int] = []
    if kind == "maximal":
        for r, p, x in tasks:
            _expand(adj, r, p, x, out, min_size)
    else:
        floor = [min_size]
        for r, p in tasks:
            if p:
                _mcq(adj, r, 1, p, out, floor)
            elif floor[0] <= 1:
                out.append(r)
                floor[0] = 1
    return out


def _maximal_tasks(adj: tuple[int, ...], v: int) -> list[tuple[int, int, int]]:
    p, x = (1 << v) - 1, 0
    tasks = []
    if not v:
        return tasks
    u = max(range(v), key=lambda w: (adj[w].bit_count(), -w))
    for w in iter_bits(p & ~adj[u]):
        bit = 1 << w
        tasks.append((bit, p & adj[w], x & adj[w]))
        p &= ~bit
        x |= bit
    return tasks


def _maximum_tasks(adj: tuple[int, ...], v: int) -> list[tuple[int, int]]:
    p = (1 << v) - 1
    order, _ = _color_sort(adj, p)
    tasks = []
    for w in reversed(order):
        bit = 1 << w
        tasks.append((bit, p & adj[w]))
        p &= ~bit
    return tasks


def _search(kind: str, g: Graph, jobs: int, min_size: int) -> list[int]:
    tasks = _maximal_tasks(g.adj, g.v) if kind == "maximal" else _maximum_tasks(g.adj, g.v)
    if jobs > 1 and len(tasks) > 1:
        chunks = [tasks[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_run_tasks, [(kind, g.adj, c, min_size) for c in chunks])
            return [m for part in parts for m in part]
    return _run_tasks((kind, g.adj, tasks, min_size))


def maximal_cliques(g: Graph, jobs: int = 1, min_size: int = 0) -> list[tuple[int, ...]]:
    """Every inclusion-maximal clique with at least ``min_size`` vertices, sorted lexicographically."""
    return sorted(tuple(iter_bits(m)) for m in _search("maximal", g, jobs, min_size))


def maximum_cliques(g: Graph, jobs: int = 1) -> list[tuple[int, ...]]:
    """All cliques of maximum size (colour-bounded branch and bound with a rising floor)."""
    return list(_maximum_cached(g.v, g.adj, jobs))


@lru_cache(maxsize=16)
def _maximum_cached(v: int, adj: tuple[int, ...], jobs: int) -> tuple[tuple[int, ...], ...]:
    masks = _search("maximum", Graph(v, adj), jobs, 0)
    omega = max((m.bit_count() for m in masks), default=0)
    return tuple(sorted(tuple(iter_bits(m)) for m in masks if m.bit_count() == omega))


def max_clique_size(g: Graph, cliques=None) -> int:
    cliques = maximum_cliques(g) if cliques is None else cliques
    return max((len(c) for c in cliques), default=0)


def cliques_per_vertex(v: int, cliques) -> list[int]:
    counts = [0] * v
    for c in cliques:
        for i in c:
            counts[i] += 1
    return counts


@dataclass
class CliqueReport:
    vertices: tuple[int, ...]
    clique_class: str  # "A", "B" or "unclassified"
    composition: dict[str, int]
    witness_sigma: Subspace | None = None
    witness_pi: Subspace | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)


class CliqueClassificationError(RuntimeError):
    pass


def classify_clique(q: Quadric, part: TypedPartition, c) -> CliqueReport:
    """Identify a clique of a switched graph as Class A or Class B.

    Class A cliques are generators through alpha.  A Class B clique is built
    from generators Sigma (through alpha) and Pi (missing alpha) meeting in a
    (g-1)-space: it is (alpha & Pi) + (Sigma - alpha - Pi) + (Pi - Sigma).
    Cliques smaller than a generator are inclusion-maximal for s > 0 in some
    cases; they come back "unclassified".  A generator-sized clique that fits
    neither class raises.
    """
    alpha = part.alpha
    if alpha is None:
        raise ValueError("classification needs the geometric partition")
    c = tuple(sorted(c))
    by_type = {t: [q.points[i] for i in c if part.type_of[i] == t] for t in TYPES}
    comp = {t: len(v) for t, v in by_type.items()}
    pts = frozenset(q.points[i] for i in c)
    g = q.g
    if len(c) != 2 ** (g + 1) - 1:
        return CliqueReport(c, "unclassified", comp)
    if not by_type["III"]:
        sigma = span(pts)
        if sigma.dim == g and sigma.points == pts and q.is_singular(sigma) and sigma.contains_space(alpha):
            return CliqueReport(c, "A", comp, witness_sigma=sigma)
        raise CliqueClassificationError(f"clique {c} has no type III vertex but is not a generator through alpha")
    sigma = span(alpha.basis + tuple(by_type["II"]))
    pi = span(by_type["I"] + by_type["III"])
    checks = [
        sigma.dim == g and q.is_singular(sigma),
        pi.dim == g and q.is_singular(pi),
        sigma.contains_space(alpha),
        not pi.contains_space(alpha),
        sigma.meet(pi).dim == g - 1,
    ]
    if all(checks):
        expected = (alpha.points & pi.points) | (sigma.points - alpha.points - pi.points) | (pi.points - sigma.points)
        if expected == pts:
            return CliqueReport(c, "B", comp, witness_sigma=sigma, witness_pi=pi)
    raise CliqueClassificationError(f"clique {c} is neither Class A nor Class B")


@dataclass
class CensusReport:
    graph_id: str
    switched: bool
    total: int
    n_A: int
    n_B: int
    per_type: dict[str, list[int]]  # distinct cliques-through counts seen per vertex type
    max_size: int
    compositions: dict[str, list[dict[str, int]]]
    expected: dict
    mismatches: list[str] = field(default_factory=list)
    maximal_size_histogram: dict[int, int] | None = None

    @property
    def match(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        per_type = {t: (v[0] if len(v) == 1 else v) for t, v in self.per_type.items()}
        return {
            "graph_id": self.graph_id,
            "switched": self.switched,
            "total": self.total,
            "n_A": self.n_A,
            "n_B": self.n_B,
            "per_type": per_type,
            "max_size": self.max_size,
            "expected": self.expected,
            "maximal_size_histogram": self.maximal_size_histogram,
            "match": self.match,
            "mismatches": self.mismatches,
        }


def expected_census(q: Quadric, s: int, switched: bool) -> dict:
    fam, r = q.family, q.r
    if switched:
        total = formulas.total_cliques(fam, r, s)
        n_a = formulas.n_class_a(fam, r, s)
        per_type = formulas.cliques_through(fam, r, s)
        comp = formulas.clique_composition(q.g, s)
    else:
        total = formulas.generator_count(fam, r)
        n_a = formulas.n_class_a(fam, r, s)
        through_point = formulas.n_class_a(fam, r, 0)
        per_type = {t: through_point for t in TYPES}
        comp = {"A": formulas.clique_composition(q.g, s)["A"]}
    return {
        "total": total,
        "n_A": n_a,
        "n_B": total - n_a,
        "per_type": per_type,
        "max_size": 2 ** (q.g + 1) - 1,
        "compositions": comp,
    }


def clique_census(
    q: Quadric,
    part: TypedPartition,
    g: Graph,
    cliques=None,
    graph_id: str = "",
    jobs: int = 1,
    all_maximal: bool = False,
) -> CensusReport:
    """Count maximum cliques by class and by vertex type and compare with the closed forms.

    ``g`` may be the point-graph itself (detected by equality) or the switched
    graph built from ``part``.  In the point-graph, cliques off alpha are
    counted as ``n_B`` but are not Class B.  With ``all_maximal`` the size
    histogram of every inclusion-maximal clique is attached as well.
    """
    s = part.s
    switched = g != point_graph(q)
    cliques = maximum_cliques(g, jobs) if cliques is None else cliques
    classes = {"A": 0, "B": 0}
    compositions: dict[str, set] = {"A": set(), "B": set()}
    alpha_mask = part.masks["I"]
    for c in cliques:
        if switched:
            rep = classify_clique(q, part, c)
            cls, comp = rep.clique_class, rep.composition
        else:
            cls = "A" if (alpha_mask & ~_mask(c)) == 0 else "B"
            comp = {t: sum(1 for i in c if part.type_of[i] == t) for t in TYPES}
        if cls == "unclassified":
            raise CliqueClassificationError(f"clique {c} is not of maximum size")
        classes[cls] += 1
        if switched or cls == "A":
            compositions[cls].add(tuple(comp[t] for t in TYPES))
    counts = cliques_per_vertex(g.v, cliques)
    per_type = {t: sorted({counts[i] for i in part.of_type(t)}) for t in TYPES}
    report = CensusReport(
        graph_id=graph_id or f"{q.family.value[0].upper()}{q.n}_s{s}" + ("" if switched else "_point_graph"),
        switched=switched,
        total=len(cliques),
        n_A=classes["A"],
        n_B=classes["B"],
        per_type=per_type,
        max_size=max((len(c) for c in cliques), default=0),
        compositions={k: [dict(zip(TYPES, t)) for t in sorted(v)] for k, v in compositions.items() if v},
        expected=expected_census(q, s, switched),
    )
    if all_maximal:
        hist: dict[int, int] = {}
        for c in maximal_cliques(g, jobs):
            hist[len(c)] = hist.get(len(c), 0) + 1
        report.maximal_size_histogram = dict(sorted(hist.items()))
    exp = report.expected
    for key in ("total", "n_A", "n_B", "max_size"):
        if getattr(report, key) != exp[key]:
            report.mismatches.append(f"{key}: enumerated {getattr(report, key)}, predicted {exp[key]}")
    for t in TYPES:
        if per_type[t] and per_type[t] != [exp["per_type"][t]]:
            report.mismatches.append(f"cliques through type {t}: enumerated {per_type[t]}, predicted {exp['per_type'][t]}")
    for cls, comps in report.compositions.items():
        if comps != [exp["compositions"][cls]]:
            report.mismatches.append(f"Class {cls} compositions {comps}, predicted {exp['compositions'][cls]}")
    if sum(counts) != report.total * report.max_size:
        report.mismatches.append("double count of vertex-clique incidences failed")
    return report


def _mask(c) -> int:
    m = 0
    for i in c:
        m |= 1 << i
    return m


@dataclass
class PartitionResult:
    status: str  # "true", "false" or "undecided"
    witness: list[tuple[int, ...]] | None = None
    nodes: int = 0
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "true"


def clique_partition_exists(g: Graph, cliques=None, budget: int | None = None) -> PartitionResult:
    """Exact cover of the vertex set by maximum cliques (pass ``cliques`` to use another family)."""
    cliques = maximum_cliques(g) if cliques is None else cliques
    sizes = {len(c) for c in cliques}
    if len(sizes) == 1:
        m = sizes.pop()
        if g.v % m:
            return PartitionResult("false", reason=f"{g.v} vertices are not divisible by clique size {m}")
    rows = [_mask(c) for c in cliques]
    by_col: list[list[int]] = [[] for _ in range(g.v)]
    for k, row in enumerate(rows):
        for i in iter_bits(row):
            by_col[i].append(k)
    limit = node_budget(budget)
    nodes = 0
    chosen: list[int] = []

    class Budget(Exception):
        pass

    def search(uncovered: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > limit:
            raise Budget
        if not uncovered:
            return True
        best_col, best_rows = -1, None
        for col in iter_bits(uncovered):
            opts = [k for k in by_col[col] if not rows[k] & used]
            if best_rows is None or len(opts) < len(best_rows):
                best_col, best_rows = col, opts
                if not opts:
                    return False
        for k in best_rows:
            chosen.append(k)
            if search(uncovered & ~rows[k], used | rows[k]):
                return True
            chosen.pop()
        return False

    try:
        found = search((1 << g.v) - 1, 0)
    except Budget:
        return PartitionResult("undecided", nodes=nodes, reason=f"node budget {limit} exhausted")
    if found:
        return PartitionResult("true", [cliques[k] for k in chosen], nodes)
    return PartitionResult("false", nodes=nodes, reason="exact cover search exhausted")
