"""Immutable simple graphs stored as bitset rows, plus the basic kernels.

Row ``v`` of a :class:`Graph` is a Python int whose bit ``w`` is set iff
``v ~ w``.  Common-neighbour counting is ``(rows[x] & rows[y]).bit_count()``;
whole-graph counts go through the cached dense matrix instead.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError

CycleProfile = tuple  # sorted tuple of cycle lengths, e.g. (4, 4, 4)

DEFAULT_VERTEX_CAP = 20_000


def vertex_cap() -> int:
    """Graph size cap; overridable through ``GRIDLOCUS_CAP``."""
    raw = os.environ.get("GRIDLOCUS_CAP")
    return int(raw) if raw else DEFAULT_VERTEX_CAP


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row.astype(bool), bitorder="little").tobytes(), "little")


class Graph:
    """Finite simple undirected graph on vertices ``0 .. n_vertices-1``."""

    def __init__(self, n_vertices: int, rows: Sequence[int], labels: Sequence[str] | None = None,
                 check: bool = True):
        self.n_vertices = int(n_vertices)
        self.rows = tuple(rows)
        self.labels = tuple(labels) if labels is not None else None
        if len(self.rows) != self.n_vertices:
            raise DomainError("row count does not match vertex count")
        if self.labels is not None and len(self.labels) != self.n_vertices:
            raise DomainError("label count does not match vertex count")
        if check:
            self._validate()

    def _validate(self):
        full = (1 << self.n_vertices) - 1
        for v, row in enumerate(self.rows):
            if row >> v & 1:
                raise DomainError(f"loop at vertex {v}")
            if row & ~full:
                raise DomainError(f"row {v} points past the last vertex")
            for w in bits(row):
                if not self.rows[w] >> v & 1:
                    raise DomainError(f"edge {v}-{w} is not symmetric")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        rows = [0] * n_vertices
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise DomainError(f"edge {u}-{v} out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n_vertices, rows, labels, check=False)

    @classmethod
    def from_matrix(cls, matrix, labels=None) -> "Graph":
        mat = np.asarray(matrix).astype(bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DomainError("adjacency matrix must be square")
        if mat.diagonal().any() or (mat != mat.T).any():
            raise DomainError("adjacency matrix must be symmetric with zero diagonal")
        g = cls(mat.shape[0], [_row_to_int(r) for r in mat], labels, check=False)
        g.__dict__["matrix"] = mat.astype(np.uint8)
        return g

    # -- basic queries ----------------------------------------------------------
    def __len__(self):
        return self.n_vertices

    def __eq__(self, other):
        return isinstance(other, Graph) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Graph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> int(v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @cached_property
    def n_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    # -- cached dense views -------------------------------------------------
    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (uint8)."""
        n = self.n_vertices
        nbytes = max(1, (n + 7) // 8)
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        raw = np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes) if n else np.zeros((0, 1), np.uint8)
        return np.unpackbits(raw, axis=1, bitorder="little")[:, :n].copy()

    @cached_property
    def common_counts(self) -> np.ndarray:
        """``C[x, y] = |N(x) & N(y)|`` for every ordered pair."""
        a = self.matrix.astype(np.float32)
        return np.rint(a @ a).astype(np.int32)

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs distance matrix; ``-1`` marks unreachable pairs."""
        n = self.n_vertices
        dist = np.full((n, n), -1, dtype=np.int16)
        if n == 0:
            return dist
        np.fill_diagonal(dist, 0)
        a = self.matrix.astype(np.float32)
        frontier = np.eye(n, dtype=np.float32)
        seen = np.eye(n, dtype=bool)
        level = 0
        while True:
            level += 1
            nxt = ((frontier @ a) > 0) & ~seen
            if not nxt.any():
                break
            dist[nxt] = level
            seen |= nxt
            frontier = nxt.astype(np.float32)
        return dist

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n_vertices) - 1

    def diameter(self) -> int:
        d = self.distances
        if (d < 0).any():
            raise DomainError("diameter of a disconnected graph")
        return int(d.max()) if self.n_vertices else 0

    def complement(self) -> "Graph":
        full = (1 << self.n_vertices) - 1
        rows = [(full & ~r) & ~(1 << v) for v, r in enumerate(self.rows)]
        return Graph(self.n_vertices, rows, self.labels, check=False)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        n = self.n_vertices
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(n)):
            raise DomainError("not a permutation")
        rows = [0] * n
        for v, row in enumerate(self.rows):
            rows[perm[v]] = mask_of(perm[w] for w in bits(row))
        labels = None
        if self.labels is not None:
            labels = [None] * n
            for v, lab in enumerate(self.labels):
                labels[perm[v]] = lab
        return Graph(n, rows, labels, check=False)


# -- single-source distances ---------------------------------------------------

@dataclass
class DistanceProfile:
    source: int
    dist: list[int]
    k: list[int]
    eccentricity: int
    k_2_by_mu: dict[int, int] | None = None
    ell_x: Fraction | None = None
    layers: list[int] = field(default_factory=list, repr=False)

    @property
    def reachable(self) -> int:
        return sum(self.k)


def bfs_profile(g: Graph, x: int, with_mu: bool = False, n: int | None = None) -> DistanceProfile:
    """Exact distances from ``x``.

    With ``with_mu`` the distance-2 layer is split by ``c_2`` value
    (``k_2_by_mu[c] = #{z at distance 2 with c common neighbours}``); with
    ``n`` also given, ``ell_x = k_2_by_mu[2(n-1)] / n``.
    """
    if not 0 <= x < g.n_vertices:
        raise DomainError(f"vertex {x} out of range")
    dist = [-1] * g.n_vertices
    dist[x] = 0
    layers = [1 << x]
    seen = 1 << x
    while True:
        nxt = 0
        for v in bits(layers[-1]):
            nxt |= g.rows[v]
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        for v in bits(nxt):
            dist[v] = len(layers)
        layers.append(nxt)
    prof = DistanceProfile(x, dist, [m.bit_count() for m in layers], len(layers) - 1, layers=layers)
    if with_mu:
        by_mu: dict[int, int] = {}
        if len(layers) > 2:
            rx = g.rows[x]
            for z in bits(layers[2]):
                c = (rx & g.rows[z]).bit_count()
                by_mu[c] = by_mu.get(c, 0) + 1
        prof.k_2_by_mu = dict(sorted(by_mu.items()))
        if n is not None:
            prof.ell_x = Fraction(by_mu.get(2 * (n - 1), 0), n)
    return prof


def induced(g: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph on ``vertices``; new vertex ``i`` is ``vertices[i]``."""
    vertices = list(vertices)
    for v in vertices:
        if not 0 <= v < g.n_vertices:
            raise DomainError(f"vertex {v} out of range")
    if len(set(vertices)) != len(vertices):
        raise DomainError("repeated vertex in induced()")
    index = {v: i for i, v in enumerate(vertices)}
    sel = mask_of(vertices)
    rows = [mask_of(index[w] for w in bits(g.rows[v] & sel)) for v in vertices]
    labels = [g.labels[v] for v in vertices] if g.labels is not None else None
    return Graph(len(vertices), rows, labels, check=False)


def common_neighbors(g: Graph, x: int, y: int) -> list[int]:
    if x == y:
        raise DomainError("common_neighbors needs two distinct vertices")
    return bits(g.rows[x] & g.rows[y])


# -- cliques --------------------------------------------------------------------

def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with Tomita pivoting), sorted."""
    rows = g.rows
    out: list[tuple[int, ...]] = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(tuple(bits(r)))
            return
        px = p | x
        pivot = max(bits(px), key=lambda u: (p & rows[u]).bit_count())
        for v in bits(p & ~rows[pivot]):
            bit = 1 << v
            expand(r | bit, p & rows[v], x & rows[v])
            p &= ~bit
            x |= bit

    if g.n_vertices:
        expand(0, (1 << g.n_vertices) - 1, 0)
    return sorted(out)


def local_grid_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Maximal cliques of a locally grid graph, two per edge.

    The common neighbourhood of an edge ``xy`` in a locally ``m x n`` grid
    graph is a disjoint union of two cliques; adding ``x, y`` to each gives the
    two maximal cliques through the edge.  Raises DomainError if the common
    neighbourhood does not have that shape.
    """
    rows = g.rows
    found: set[int] = set()
    for x, y in g.edges():
        common = rows[x] & rows[y]
        parts = []
        rest = common
        while rest:
            w = (rest & -rest).bit_length() - 1
            part = (rows[w] & common) | (1 << w)
            if part & rest != part:
                raise DomainError(f"edge {x}-{y}: common neighbourhood is not 2 disjoint cliques")
            parts.append(part)
            rest &= ~part
        if len(parts) > 2:
            raise DomainError(f"edge {x}-{y}: common neighbourhood has {len(parts)} components")
        while len(parts) < 2:
            parts.append(0)
        for part in parts:
            for w in bits(part):
                if (rows[w] | (1 << w)) & part != part:
                    raise DomainError(f"edge {x}-{y}: component is not a clique")
            found.add(part | (1 << x) | (1 << y))
    # a part of size zero gives just the edge, which may sit inside a larger clique
    cliques = [c for c in found if not any(c != d and c & d == c for d in found)]
    return sorted(tuple(bits(c)) for c in cliques)


# -- rook grids and cycles ------------------------------------------------------

def rook_grid_mask(rows: Sequence[int], sel: int, m: int, n: int) -> bool:
    """Is the subgraph induced on ``sel`` isomorphic to ``K_m x K_n``?

    Works directly on the host's bitset rows.  Through a base vertex there
    must be exactly two lines (maximal cliques); the other lines through the
    points of each base line give the two parallel classes, which must each
    partition ``sel`` and meet each other in single points.  Once every line
    is a clique, comparing the edge count with the number of collinear pairs
    rules out any extra edges.
    """
    if m > n:
        m, n = n, m
    if m < 1 or sel.bit_count() != m * n:
        return False
    members = bits(sel)
    for u in members:
        if (rows[u] & sel).bit_count() != m + n - 2:
            return False
    if m == 1:
        return True  # (n-1)-regular on n vertices is complete

    def is_clique(line: int) -> bool:
        return all(((rows[u] & sel) | (1 << u)) & line == line for u in bits(line))

    v0 = members[0]
    around = rows[v0] & sel
    w = (around & -around).bit_length() - 1
    first = ((rows[w] & around) | (1 << w)) | (1 << v0)
    second = (around & ~first) | (1 << v0)
    if sorted((first.bit_count(), second.bit_count())) != [m, n]:
        return False
    if not (is_clique(first) and is_clique(second)):
        return False
    across_first = [second] + [((rows[u] & sel) & ~first) | (1 << u) for u in bits(first & ~(1 << v0))]
    across_second = [first] + [((rows[u] & sel) & ~second) | (1 << u) for u in bits(second & ~(1 << v0))]
    for family, size in ((across_first, second.bit_count()), (across_second, first.bit_count())):
        union = 0
        for line in family:
            if line.bit_count() != size or line & union or not is_clique(line):
                return False
            union |= line
        if union != sel:
            return False
    for p in across_first:
        for q in across_second:
            if (p & q).bit_count() != 1:
                return False
    edges = sum((rows[u] & sel).bit_count() for u in members) // 2
    return edges == m * n * (m + n - 2) // 2


def is_rook_grid(g: Graph, m: int, n: int) -> bool:
    """True iff ``g`` is isomorphic to ``K_m x K_n``."""
    return rook_grid_mask(g.rows, (1 << g.n_vertices) - 1, m, n)


def cycle_lengths(rows: Sequence[int], mask: int) -> CycleProfile:
    """Cycle profile of the subgraph induced on ``mask``; it must be 2-regular."""
    lengths = []
    rest = mask
    while rest:
        start = (rest & -rest).bit_length() - 1
        prev, cur, length = -1, start, 0
        while True:
            nb = rows[cur] & mask
            if nb.bit_count() != 2:
                raise DomainError(f"vertex {cur} has degree {nb.bit_count()} in a supposed union of cycles")
            length += 1
            rest &= ~(1 << cur)
            lo = (nb & -nb).bit_length() - 1
            hi = nb.bit_length() - 1
            nxt = hi if lo == prev else lo
            if prev == -1:
                nxt = lo
            prev, cur = cur, nxt
            if cur == start:
                break
        lengths.append(length)
    return tuple(sorted(lengths))


def cycle_decomposition(g: Graph) -> CycleProfile:
    return cycle_lengths(g.rows, (1 << g.n_vertices) - 1)


def layer_neighbor_counts(g: Graph) -> list[np.ndarray]:
    """``M[i][x, y] = |Gamma_i(x) & Gamma(y)|`` for ``0 <= i <= diameter + 1``.

    For ``d(x, y) = i`` this gives ``c_i = M[i-1]``, ``a_i = M[i]`` and
    ``b_i = M[i+1]`` at ``[x, y]``.  Cached on the graph.
    """
    cached = g.__dict__.get("_layer_counts")
    if cached is not None:
        return cached
    dist = g.distances
    if (dist < 0).any():
        raise DomainError("graph is disconnected")
    diam = int(dist.max()) if g.n_vertices else 0
    a = g.matrix.astype(np.float32)
    out = []
    for i in range(diam + 2):
        layer = (dist == i).astype(np.float32)
        out.append(np.rint(layer @ a).astype(np.int32))
    g.__dict__["_layer_counts"] = out
    return out
