"""Non-singular quadrics of PG(n, 2) in canonical coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from qsrg.gf2geom import MAX_N, Subspace, dot, kernel, span


class Family(str, Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"

    @classmethod
    def parse(cls, value: str | Family) -> Family:
        if isinstance(value, Family):
            return value
        aliases = {"e": "elliptic", "h": "hyperbolic", "p": "parabolic"}
        value = aliases.get(value.lower(), value.lower())
        return cls(value)


MIN_N = {Family.HYPERBOLIC: 3, Family.PARABOLIC: 4, Family.ELLIPTIC: 5}


@dataclass(frozen=True)
class QuadraticForm:
    """Upper-triangular form: ``terms`` lists the pairs (i, j), i <= j, with c_ij = 1."""

    width: int
    terms: tuple[tuple[int, int], ...]

    def __call__(self, x: int) -> int:
        acc = 0
        for i, j in self.terms:
            acc ^= (x >> i) & (x >> j) & 1
        return acc

    @cached_property
    def polar_rows(self) -> tuple[int, ...]:
        """Row i holds the j with b(e_i, e_j) = 1; the diagonal is always zero."""
        rows = [0] * self.width
        for i, j in self.terms:
            if i != j:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        return tuple(rows)

    def bilinear(self, x: int, y: int) -> int:
        acc = 0
        rows = self.polar_rows
        while x:
            low = x & -x
            acc ^= dot(rows[low.bit_length() - 1], y)
            x ^= low
        return acc


def standard_form(family: Family, n: int) -> QuadraticForm:
    w = n + 1
    if family is Family.PARABOLIC:
        terms = [(0, 0)] + [(i, i + 1) for i in range(1, w, 2)]
    elif family is Family.HYPERBOLIC:
        terms = [(i, i + 1) for i in range(0, w, 2)]
    else:
        terms = [(0, 0), (0, 1), (1, 1)] + [(i, i + 1) for i in range(2, w, 2)]
    return QuadraticForm(w, tuple(terms))


@dataclass(frozen=True)
class Quadric:
    family: Family
    n: int
    form: QuadraticForm
    points: tuple[int, ...]
    index: dict[int, int] = field(compare=False, repr=False)

    @property
    def r(self) -> int:
        return self.n // 2

    @property
    def g(self) -> int:
        """Projective index: dimension of a generator."""
        return self.r if self.family is Family.HYPERBOLIC else self.r - 1

    @property
    def v(self) -> int:
        return len(self.points)

    def __contains__(self, p: int) -> bool:
        return p in self.index

    def is_singular(self, sub: Subspace) -> bool:
        """True when every point of ``sub`` lies on the quadric."""
        b = sub.basis
        if any(x not in self.index for x in b):
            return False
        return all(self.form.bilinear(b[i], b[j]) == 0 for i in range(len(b)) for j in range(i))

    def collinear(self, p1: int, p2: int) -> bool:
        """Both points on the quadric and the line joining them inside it."""
        return (p1 ^ p2) in self.index

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per point index, the bitset of indices of collinear points."""
        pts, idx = self.points, self.index
        masks = [0] * len(pts)
        for i, p in enumerate(pts):
            for j in range(i):
                if (p ^ pts[j]) in idx:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        return tuple(masks)

    def mask_of(self, pts) -> int:
        m = 0
        for p in pts:
            m |= 1 << self.index[p]
        return m

    def points_in_mask(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.points[low.bit_length() - 1])
            mask ^= low
        return out


def expected_point_count(family: Family, r: int) -> int:
    if family is Family.ELLIPTIC:
        return 2 ** (2 * r + 1) - 2**r - 1
    if family is Family.HYPERBOLIC:
        return 2 ** (2 * r + 1) + 2**r - 1
    return 2 ** (2 * r) - 1


def check_family_n(family: Family, n: int) -> None:
    if family is Family.PARABOLIC and n % 2:
        raise ValueError(f"parabolic quadrics need even n, got n={n}")
    if family is not Family.PARABOLIC and n % 2 == 0:
        raise ValueError(f"{family.value} quadrics need odd n, got n={n}")
    if n < MIN_N[family]:
        raise ValueError(f"{family.value} quadric needs n >= {MIN_N[family]} for projective index >= 1, got n={n}")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the supported maximum {MAX_N}")


def standard_quadric(family: Family | str, n: int) -> Quadric:
    family = Family.parse(family)
    check_family_n(family, n)
    form = standard_form(family, n)
    pts = tuple(x for x in range(1, 1 << (n + 1)) if form(x) == 0)
    return Quadric(family, n, form, pts, {p: i for i, p in enumerate(pts)})


def _sort_key(s: Subspace) -> tuple[int, ...]:
    return tuple(sorted(s.points))


def subspaces_in_quadric(q: Quadric, d: int) -> list[Subspace]:
    """All projective d-subspaces lying in the quadric, in lexicographic order of point sets."""
    if not 0 <= d <= q.g:
        raise ValueError(f"d must lie in [0, {q.g}], got {d}")
    return _levels(q, d)[d]


def generators(q: Quadric) -> list[Subspace]:
    return subspaces_in_quadric(q, q.g)


_LEVEL_CACHE: dict[tuple[Family, int], list[list[Subspace]]] = {}


def _levels(q: Quadric, d: int) -> list[list[Subspace]]:
    key = (q.family, q.n)
    levels = _LEVEL_CACHE.setdefault(key, [])
    if not levels:
        levels.append([span([p]) for p in q.points])
    masks = q.neighbor_masks
    while len(levels) <= d:
        found: set[Subspace] = set()
        for sub in levels[-1]:
            common = -1
            for b in sub.basis:
                common &= masks[q.index[b]]
            common &= ~q.mask_of(sub.points)
            for x in q.points_in_mask(common):
                found.add(span(sub.basis + (x,)))
        levels.append(sorted(found, key=_sort_key))
    return levels


def first_singular_subspace(q: Quadric, s: int) -> Subspace:
    """Span of the first s+1 independent points of the lexicographically first generator."""
    if not 0 <= s <= q.g:
        raise ValueError(f"s must lie in [0, {q.g}], got {s}")
    gen = _first_generator(q)
    chosen: list[int] = []
    for p in sorted(gen.points):
        if len(chosen) == s + 1:
            break
        if span(chosen + [p]).dim == len(chosen):
            chosen.append(p)
    return span(chosen)


def _first_generator(q: Quadric) -> Subspace:
    # greedy: always extend by the smallest admissible point; lexicographically first
    masks = q.neighbor_masks
    chosen: list[int] = []
    allowed = (1 << q.v) - 1
    while True:
        sub = span(chosen)
        cand = allowed & ~q.mask_of(sub.points) if chosen else allowed
        if not cand:
            return sub
        low = cand & -cand
        x = q.points[low.bit_length() - 1]
        chosen.append(x)
        allowed &= masks[q.index[x]]


def tangent_generator(q: Quadric, sigma: Subspace, x: int) -> Subspace:
    """The generator through ``x`` meeting the generator ``sigma`` in a (g-1)-space."""
    if sigma.dim != q.g or not q.is_singular(sigma):
        raise ValueError("sigma is not a generator of the quadric")
    if x not in q:
        raise ValueError("x is not a point of the quadric")
    if x in sigma:
        raise ValueError("x lies on sigma")
    h = span(p for p in sigma.points if q.form.bilinear(p, x) == 0)
    pi = span(h.basis + (x,))
    assert h.dim == q.g - 1 and q.is_singular(pi)
    return pi


def nucleus(q: Quadric) -> int:
    """Radical point of the polar form of a parabolic quadric."""
    if q.family is not Family.PARABOLIC:
        raise ValueError("no nucleus: the polar form of an odd-dimensional quadric is non-degenerate")
    rad = kernel(q.form.polar_rows, q.n + 1)
    if len(rad) != 1:
        raise ValueError(f"polar radical has dimension {len(rad)}, expected a single point")
    return rad[0]


def quadric_section_kind(q: Quadric, pi: Subspace) -> str:
    """Classify how ``pi`` meets the quadric: contained, one or two hyperplanes, or other."""
    on = frozenset(p for p in pi.points if p in q)
    if on == pi.points:
        return "contained"
    if pi.dim < 1 or not on:
        return "other"
    inside = [h for h in pi.hyperplanes() if h.points <= on]
    if len(inside) == 1 and inside[0].points == on:
        return "one_hyperplane"
    if len(inside) == 2 and inside[0].points | inside[1].points == on:
        return "two_hyperplanes"
    return "other"
