"""Points and subspaces of PG(n, 2) with vectors packed into Python ints.

A point is a nonzero int whose bit ``i`` is coordinate ``x_i``.  Over GF(2)
every projective point has exactly one nonzero representative, so point
equality is plain integer equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

MAX_N = 15  # vectors are at most 16 bits wide


def third_point(p1: int, p2: int) -> int:
    """Return the third point on the line through ``p1`` and ``p2``."""
    if p1 == p2:
        raise ValueError("degenerate line")
    if p1 <= 0 or p2 <= 0:
        raise ValueError("points must be nonzero vectors")
    return p1 ^ p2


def echelon(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span, ordered by decreasing pivot."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            v = min(v, v ^ r)
        if v:
            # clear the new pivot out of existing rows
            top = v.bit_length() - 1
            rows = [r ^ v if (r >> top) & 1 else r for r in rows]
            rows.append(v)
    rows.sort(reverse=True)
    return tuple(rows)


def rank(vectors: Iterable[int]) -> int:
    return len(echelon(vectors))


def in_span(basis: tuple[int, ...], v: int) -> bool:
    for r in basis:
        v = min(v, v ^ r)
    return v == 0


def points_of(basis: tuple[int, ...]) -> frozenset[int]:
    pts = [0]
    for b in basis:
        pts += [p ^ b for p in pts]
    return frozenset(pts[1:])


def dot(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def kernel(rows: Iterable[int], width: int) -> tuple[int, ...]:
    """Basis of ``{x : dot(row, x) = 0 for every row}`` inside GF(2)^width."""
    piv = {}  # pivot column -> reduced row
    for r in echelon(rows):
        piv[r.bit_length() - 1] = r
    free = [c for c in range(width) if c not in piv]
    out = []
    for f in free:
        x = 1 << f
        for c, r in piv.items():
            if (r >> f) & 1:
                x |= 1 << c
        out.append(x)
    return echelon(out)


@dataclass(frozen=True)
class Subspace:
    """A projective subspace given by its canonical (echelon) basis."""

    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @property
    def points(self) -> frozenset[int]:
        return _points_cached(self.basis)

    def __contains__(self, p: int) -> bool:
        return p != 0 and in_span(self.basis, p)

    def __len__(self) -> int:
        return (1 << len(self.basis)) - 1

    def contains_space(self, other: Subspace) -> bool:
        return all(b in self for b in other.basis)

    def meet(self, other: Subspace) -> Subspace:
        small, big = sorted((self, other), key=len)
        return span(p for p in small.points if p in big)

    def join(self, other: Subspace) -> Subspace:
        return span(self.basis + other.basis)

    def hyperplanes(self) -> list[Subspace]:
        """All codimension-one subspaces, as kernels of nonzero functionals."""
        if self.dim < 0:
            return []
        k = len(self.basis)
        out = []
        for f in range(1, 1 << k):
            vecs = []
            for c in range(1, 1 << k):
                if dot(f, c) == 0:
                    vecs.append(_combine(self.basis, c))
            out.append(span(vecs))
        return sorted(out, key=lambda s: s.basis)


_POINT_CACHE: dict[tuple[int, ...], frozenset[int]] = {}


def _points_cached(basis: tuple[int, ...]) -> frozenset[int]:
    pts = _POINT_CACHE.get(basis)
    if pts is None:
        pts = points_of(basis)
        if len(_POINT_CACHE) < 200_000:
            _POINT_CACHE[basis] = pts
    return pts


def _combine(basis: tuple[int, ...], coeffs: int) -> int:
    return reduce(lambda acc, i: acc ^ basis[i], (i for i in range(len(basis)) if (coeffs >> i) & 1), 0)


def span(pts: Iterable[int]) -> Subspace:
    """Smallest subspace containing ``pts``; the empty input gives dimension -1."""
    return Subspace(echelon(pts))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional vector space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces_in(dim_big: int, dim_small: int, q: int) -> int:
    """Number of projective ``dim_small``-subspaces of a projective ``dim_big``-space."""
    if dim_small > dim_big:
        raise ValueError("dim_small must not exceed dim_big")
    return gaussian_binomial(dim_big + 1, dim_small + 1, q)
