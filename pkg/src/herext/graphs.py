"""Simple undirected graphs on at most 64 vertices.

Graphs are immutable: ``n`` vertices labelled ``0..n-1`` and one adjacency
bitmask per vertex.  All operations return new values.  The 64-vertex cap
keeps every adjacency row in a single machine word.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from herext import kernels

VERTEX_CAP = 64


@dataclass(frozen=True, order=True)
class Graph:
    """Immutable simple graph: ``rows[u]`` is the neighbour bitmask of u."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= VERTEX_CAP:
            raise ValueError(f"vertex count must be in 0..{VERTEX_CAP}, got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {u} has neighbour bits outside 0..{self.n - 1}")
            if row >> u & 1:
                raise ValueError(f"vertex {u} has a self-loop")
        for u, row in enumerate(self.rows):
            for v in _bits(row):
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"adjacency is not symmetric at ({u}, {v})")

    # -- basic queries ----------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return self.rows[u].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in _bits(self.rows[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def is_clique(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1) // 2

    def isolated_mask(self) -> int:
        mask = 0
        for u, row in enumerate(self.rows):
            if row == 0:
                mask |= 1 << u
        return mask

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise ValueError(f"vertex {u} out of range 0..{self.n - 1}")

    # -- derived graphs ---------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError("self-loops are not allowed")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def with_vertex(self, neighbours: int = 0) -> "Graph":
        """Append vertex ``n`` joined to the bitmask ``neighbours``."""
        if self.n >= VERTEX_CAP:
            raise ValueError(f"cannot exceed {VERTEX_CAP} vertices")
        if neighbours & ~((1 << self.n) - 1):
            raise ValueError("neighbour mask names vertices that do not exist")
        bit = 1 << self.n
        rows = [row | bit if neighbours >> u & 1 else row for u, row in enumerate(self.rows)]
        rows.append(neighbours)
        return Graph(self.n + 1, tuple(rows))

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled in the order given."""
        order = list(vertices)
        if len(set(order)) != len(order):
            raise ValueError("duplicate vertices")
        for u in order:
            self._check_vertex(u)
        pos = {u: i for i, u in enumerate(order)}
        rows = []
        for u in order:
            row = 0
            for v in _bits(self.rows[u]):
                if v in pos:
                    row |= 1 << pos[v]
            rows.append(row)
        return Graph(len(order), tuple(rows))

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Relabelled copy: new vertex ``i`` is old vertex ``perm[i]``."""
        order = list(perm)
        if sorted(order) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return self.induced_subgraph(order)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(self.rows)))

    def connected_components(self) -> tuple[tuple[int, ...], ...]:
        """Vertex sets of the components, each sorted, ordered by least vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                grown = comp
                for u in _bits(frontier):
                    grown |= self.rows[u]
                frontier = grown & ~comp
                comp = grown
            seen |= comp
            comps.append(tuple(_bits(comp)))
        return tuple(comps)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        for u, v in self.edges():
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- constructors ----------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << u) for u in range(n)))


def path_graph(n: int) -> Graph:
    g = empty_graph(n)
    for u in range(n - 1):
        g = g.add_edge(u, u + 1)
    return g


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return path_graph(n).add_edge(n - 1, 0)


def complete_multipartite(sizes: Iterable[int]) -> Graph:
    """Complete multipartite graph; parts are consecutive vertex ranges."""
    parts = list(sizes)
    if any(s < 1 for s in parts):
        raise ValueError("part sizes must be positive")
    n = sum(parts)
    if n > VERTEX_CAP:
        raise ValueError(f"cannot exceed {VERTEX_CAP} vertices")
    full = (1 << n) - 1
    rows = []
    start = 0
    for s in parts:
        part_mask = ((1 << s) - 1) << start
        rows.extend([full & ~part_mask] * s)
        start += s
    return Graph(n, tuple(rows))


def turan_graph(r: int, n: int) -> Graph:
    """Complete r-partite graph on n vertices with near-equal parts."""
    if r < 1:
        raise ValueError("need at least one part")
    if n < r:
        raise ValueError("need at least one vertex per part")
    q, rem = divmod(n, r)
    return complete_multipartite([q + 1] * rem + [q] * (r - rem))


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    g = empty_graph(n)
    for u, v in edges:
        g = g.add_edge(u, v)
    return g


# -- clique and induced-subgraph queries ------------------------------------


@lru_cache(maxsize=65536)
def _clique_cached(n: int, rows: tuple[int, ...]) -> tuple[int, int]:
    return kernels.max_clique(rows, n)


def clique_number(g: Graph) -> int:
    return _clique_cached(g.n, g.rows)[0]


def maximum_clique(g: Graph) -> tuple[int, ...]:
    """Vertices of one maximum clique, sorted."""
    return tuple(_bits(_clique_cached(g.n, g.rows)[1]))


def contains_induced(g: Graph, h: Graph, forced: int = -1) -> bool:
    """Does ``g`` contain an induced copy of ``h``?

    With ``forced >= 0`` only copies using that vertex of ``g`` count.
    """
    if forced >= 0:
        g._check_vertex(forced)
    if h.n > g.n:
        return False
    if h.n == 0:
        return forced < 0
    return kernels.contains_induced(g.rows, g.n, h.rows, h.n, forced)


# -- canonical form ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Canonical key of an isomorphism class.

    ``key`` is the graph6 encoding of the canonical relabelling, so equal keys
    mean isomorphic graphs and keys sort by (n, canonical adjacency bits).
    """

    key: bytes

    @property
    def graph6(self) -> str:
        return self.key.decode("ascii")

    def graph(self) -> Graph:
        return from_graph6(self.graph6)


@lru_cache(maxsize=65536)
def _canonical_cached(n: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    return kernels.canonical_rows(rows, n)


def canonical_graph(g: Graph) -> Graph:
    """The canonically relabelled representative of g's isomorphism class."""
    return Graph(g.n, _canonical_cached(g.n, g.rows))


def canonical_form(g: Graph) -> CanonicalForm:
    return CanonicalForm(to_graph6(canonical_graph(g)).encode("ascii"))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_graph(g).rows == canonical_graph(h).rows


# -- graph6 ------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    """Encode in graph6: column-major upper triangle, 6 bits per byte."""
    if g.n <= 62:
        out = bytearray([g.n + 63])
    else:
        out = bytearray([126, (g.n >> 12 & 63) + 63, (g.n >> 6 & 63) + 63, (g.n & 63) + 63])
    acc = 0
    nbits = 0
    for v in range(1, g.n):
        for u in range(v):
            acc = acc << 1 | g.rows[u] >> v & 1
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << 6 - nbits) + 63)
    return out.decode("ascii")


def from_graph6(text: str) -> Graph:
    """Decode a graph6 string (optionally prefixed ``>>graph6<<``)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    if not data:
        raise ValueError("empty graph6 string")
    for b in data:
        if not 63 <= b <= 126:
            raise ValueError(f"invalid graph6 byte {b}")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise ValueError("unsupported graph6 vertex count")
        n = (data[1] - 63 << 12) | (data[2] - 63 << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n > VERTEX_CAP:
        raise ValueError(f"graph6 string has {n} vertices, cap is {VERTEX_CAP}")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    rows = [0] * n
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if body[idx // 6] - 63 >> (5 - idx % 6) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            idx += 1
    if idx % 6:
        pad = body[-1] - 63 & (1 << 6 - idx % 6) - 1
        if pad:
            raise ValueError("graph6 padding bits must be zero")
    return Graph(n, tuple(rows))


# -- edge-list text ----------------------------------------------------------


def to_edge_list_text(g: Graph) -> str:
    """Plain-text form: first line ``n``, then one ``u v`` line per edge."""
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    lines = [ln for ln in (raw.split("#")[0].strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list text")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"edge lines must be 'u v', got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return graph_from_edges(n, edges)


def density(g: Graph) -> Fraction:
    """Edge count over C(n, 2); needs at least 2 vertices."""
    if g.n < 2:
        raise ValueError("density needs at least 2 vertices")
    return Fraction(g.edge_count(), g.n * (g.n - 1) // 2)
