"""Immutable simple graphs on bitset rows, SRG checks and graph6 I/O."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from qsrg.quadric import Quadric


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[i]`` is the bitset of neighbours of vertex i."""

    v: int
    adj: tuple[int, ...]
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.v:
            raise ValueError("adjacency length does not match vertex count")
        for i, row in enumerate(self.adj):
            if (row >> i) & 1:
                raise ValueError(f"loop at vertex {i}")
            if row >> self.v:
                raise ValueError(f"row {i} names a vertex >= {self.v}")
            for j in iter_bits(row):
                if not (self.adj[j] >> i) & 1:
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
        adj = [0] * v
        for a, b in edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(v, tuple(adj), labels)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.v) for j in iter_bits(self.adj[i]) if i < j]

    @property
    def n_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image graph under the vertex map i -> perm[i]."""
        adj = [0] * self.v
        for i, row in enumerate(self.adj):
            m = 0
            for j in iter_bits(row):
                m |= 1 << perm[j]
            adj[perm[i]] = m
        return Graph(self.v, tuple(adj))

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        return self.maps_onto(perm, self)

    def maps_onto(self, perm: Sequence[int], other: Graph) -> bool:
        """True when i -> perm[i] is an isomorphism from self onto ``other``."""
        if self.v != other.v or sorted(perm) != list(range(self.v)):
            return False
        for i, row in enumerate(self.adj):
            m = 0
            for j in iter_bits(row):
                m |= 1 << perm[j]
            if m != other.adj[perm[i]]:
                return False
        return True


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for i in vertices:
        m |= 1 << i
    return m


def point_graph(q: Quadric) -> Graph:
    """Collinearity graph of the quadric: vertices are its points in canonical order."""
    return Graph(q.v, q.neighbor_masks, q.points)


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def feasible(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


@dataclass(frozen=True)
class NotSRG:
    reason: str
    witness: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def srg_check(g: Graph) -> SrgParams | NotSRG:
    """Exhaustive pair scan for constant degree, lambda and mu."""
    if g.v < 2:
        raise ValueError("srg_check needs at least two vertices")
    k = g.degree(0)
    for i in range(1, g.v):
        if g.degree(i) != k:
            return NotSRG("degree not constant", (0, i))
    lam = mu = None
    for i in range(g.v):
        row = g.adj[i]
        for j in range(i + 1, g.v):
            c = (row & g.adj[j]).bit_count()
            if (row >> j) & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    return NotSRG("lambda not constant", (i, j))
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return NotSRG("mu not constant", (i, j))
    if lam is None or mu is None:
        return NotSRG("complete or empty graph", ())
    return SrgParams(g.v, k, lam, mu)


# graph6: https://users.cecs.anu.edu.au/~bdm/data/formats.txt


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    raise ValueError("graph too large for graph6")


def encode_graph6(g: Graph) -> bytes:
    bits = []
    for j in range(1, g.v):
        row = g.adj[j]
        for i in range(j):
            bits.append((row >> i) & 1)
    bits += [0] * (-len(bits) % 6)
    body = bytes(63 + int("".join(map(str, bits[k : k + 6])), 2) for k in range(0, len(bits), 6))
    return _encode_n(g.v) + body


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise ValueError("empty graph6 string")
    if any(not 63 <= c <= 126 for c in data):
        raise ValueError("graph6 data contains a non-printable byte")
    if data[0] == 126:
        if len(data) > 1 and data[1] == 126:
            raise ValueError("8-byte graph6 size prefix not supported")
        if len(data) < 4:
            raise ValueError("truncated graph6 size prefix")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    value = 0
    for c in body:
        value = (value << 6) | (c - 63)
    total = 6 * len(body)
    if value & ((1 << (total - nbits)) - 1):
        raise ValueError("graph6 padding bits are not zero")
    adj = [0] * n
    pos = total - 1
    for j in range(1, n):
        for i in range(j):
            if (value >> pos) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos -= 1
    return Graph(n, tuple(adj))
