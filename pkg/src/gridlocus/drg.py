"""Distance-regularity, strong regularity and antipodal structure."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, InvalidParameterError, NotDistanceRegularError
from .graph import Graph, bits, layer_neighbor_counts, mask_of


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def diameter(self) -> int:
        return len(self.b)

    @property
    def a(self) -> tuple[int, ...]:
        k = self.b[0] if self.b else 0
        bb = self.b + (0,)
        cc = (0,) + self.c
        return tuple(k - bb[i] - cc[i] for i in range(self.diameter + 1))

    def class_sizes(self) -> list[int]:
        """``k_i`` from ``k_{i+1} c_{i+1} = k_i b_i``."""
        sizes = [Fraction(1)]
        for b, c in zip(self.b, self.c):
            sizes.append(sizes[-1] * b / c)
        if any(s.denominator != 1 for s in sizes):
            raise DomainError("intersection array gives non-integral class sizes")
        return [int(s) for s in sizes]

    def as_tuple(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.b, self.c

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.b)) + "; " + ", ".join(map(str, self.c)) + ")"

    def to_dict(self) -> dict:
        return {"diameter": self.diameter, "b": list(self.b), "c": list(self.c), "a": list(self.a)}


def _first_mismatch(values: np.ndarray, mask: np.ndarray):
    """First (x, y) in row-major order where ``values`` differs from its first masked entry."""
    idx = np.argwhere(mask)
    ref = values[tuple(idx[0])]
    bad = values[mask] != ref
    if not bad.any():
        return int(ref), None
    x, y = idx[int(np.argmax(bad))]
    return int(ref), (int(idx[0][0]), int(idx[0][1]), int(x), int(y))


def intersection_numbers(g: Graph) -> IntersectionArray:
    """The intersection array, or NotDistanceRegularError naming two pairs that disagree."""
    if g.n_vertices == 0 or not g.is_connected():
        raise DomainError("intersection numbers need a connected nonempty graph")
    degs = g.degrees()
    if len(set(degs)) != 1:
        v = next(i for i, d in enumerate(degs) if d != degs[0])
        raise NotDistanceRegularError(f"not regular: deg({0})={degs[0]}, deg({v})={degs[v]}", (0, v))
    dist = g.distances
    diam = int(dist.max())
    counts = layer_neighbor_counts(g)
    b, c = [], []
    checks = [("b", i, counts[i + 1], b) for i in range(diam)] + [("c", i, counts[i - 1], c) for i in range(1, diam + 1)]
    for name, i, mat, out in checks:
        ref, bad = _first_mismatch(mat, dist == i)
        if bad is not None:
            x0, y0, x, y = bad
            raise NotDistanceRegularError(
                f"{name}_{i} differs: {name}_{i}({x0},{y0})={ref} but {name}_{i}({x},{y})={int(mat[x, y])}",
                ((x0, y0), (x, y)))
        out.append(ref)
    return IntersectionArray(tuple(b), tuple(c))


@dataclass(frozen=True)
class SrgParams:
    N: int
    k: int
    lam: int
    nu: int

    def identity_holds(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.N - self.k - 1) * self.nu

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.N, self.k, self.lam, self.nu


def srg_check(g: Graph) -> SrgParams | None:
    """Strongly regular parameters, or None when lambda or nu varies."""
    if not g.is_connected():
        raise DomainError("srg_check needs a connected graph")
    if g.diameter() != 2:
        raise DomainError(f"srg_check needs diameter 2, got {g.diameter()}")
    if not g.is_regular():
        return None
    cc = g.common_counts
    adj = g.matrix.astype(bool)
    far = g.distances == 2
    lam = np.unique(cc[adj])
    nu = np.unique(cc[far])
    if len(lam) != 1 or len(nu) != 1:
        return None
    return SrgParams(g.n_vertices, g.degree(0), int(lam[0]), int(nu[0]))


def srg_multiplicities(p: SrgParams) -> tuple[Fraction, Fraction] | None:
    """Eigenvalue multiplicities ``(f, g)`` when rational, else None.

    ``f, g = (N - 1 +/- ((N-1)(nu-lam) - 2k) / sqrt((nu-lam)^2 + 4(k-nu))) / 2``.
    An irrational square root leaves only the conference case
    ``(N-1)(nu-lam) = 2k``, where both equal ``(N-1)/2``.
    """
    if not p.identity_holds():
        raise InvalidParameterError(f"{p.as_tuple()} violates k(k-lam-1) = (N-k-1) nu")
    disc = (p.nu - p.lam) ** 2 + 4 * (p.k - p.nu)
    if disc < 0:
        return None
    root = math.isqrt(disc)
    numer = (p.N - 1) * (p.nu - p.lam) - 2 * p.k
    if root * root == disc:
        if root == 0:
            return None
        shift = Fraction(numer, root)
        return (Fraction(p.N - 1) + shift) / 2, (Fraction(p.N - 1) - shift) / 2
    if numer == 0:
        half = Fraction(p.N - 1, 2)
        return half, half
    return None


def srg_feasibility(p: SrgParams) -> bool:
    mult = srg_multiplicities(p)
    return mult is not None and all(m.denominator == 1 and m >= 0 for m in mult)


def antipodal_partition(g: Graph) -> list[tuple[int, ...]] | None:
    """Blocks ``{x} + Gamma_D(x)`` if they form a partition, else None."""
    if not g.is_connected():
        return None
    dist = g.distances
    diam = int(dist.max()) if g.n_vertices else 0
    if diam == 0:
        return [(v,) for v in range(g.n_vertices)]
    blocks = {}
    for x in range(g.n_vertices):
        block = tuple(sorted([x] + np.flatnonzero(dist[x] == diam).tolist()))
        blocks.setdefault(block[0], block)
        if blocks[block[0]] != block:
            return None
    covered = sorted(v for b in blocks.values() for v in b)
    if covered != list(range(g.n_vertices)):
        return None
    for block in blocks.values():
        sub = dist[np.ix_(block, block)]
        off = ~np.eye(len(block), dtype=bool)
        if (sub[off] != diam).any():
            return None
    return sorted(blocks.values())


def quotient_graph(g: Graph, partition: Sequence[Sequence[int]]) -> Graph:
    seen = [v for block in partition for v in block]
    if sorted(seen) != list(range(g.n_vertices)) or any(len(b) == 0 for b in partition):
        raise DomainError("not a partition of the vertex set")
    block_masks = [mask_of(b) for b in partition]
    rows = []
    for i, bm in enumerate(block_masks):
        nbr = 0
        for v in bits(bm):
            nbr |= g.rows[v]
        rows.append(mask_of(j for j, other in enumerate(block_masks) if j != i and nbr & other))
    return Graph(len(partition), rows, check=False)


@dataclass
class DistanceDiagram:
    source: int
    classes: list[str]
    sizes: list[int]
    edges: dict[tuple[str, str], int | None] = field(default_factory=dict)
    regular: bool = True

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "classes": [{"name": n, "size": s} for n, s in zip(self.classes, self.sizes)],
            "edges": [{"from": a, "to": b, "neighbours_each": m} for (a, b), m in self.edges.items()],
            "regular": self.regular,
        }


def distance_diagram(g: Graph, x: int) -> DistanceDiagram:
    """Distance classes from ``x`` with ``Gamma_2(x)`` split by ``c_2`` value.

    ``edges[(P, Q)]`` is the number of neighbours in ``Q`` that every vertex of
    ``P`` has, or None when that number varies (the diagram is then not
    regular).
    """
    if not g.is_connected():
        raise DomainError("distance diagram needs a connected graph")
    dist = g.distances[x]
    cc = g.common_counts[x]
    names, members = [], []
    for i in range(int(dist.max()) + 1):
        layer = np.flatnonzero(dist == i)
        if i == 2:
            for c in sorted(set(cc[layer].tolist())):
                names.append(f"2:c2={c}")
                members.append(layer[cc[layer] == c])
        else:
            names.append(str(i))
            members.append(layer)
    adj = g.matrix.astype(np.int32)
    diagram = DistanceDiagram(x, names, [len(m) for m in members])
    for p, mp in zip(names, members):
        for q, mq in zip(names, members):
            counts = adj[np.ix_(mp, mq)].sum(axis=1)
            if counts.max() == 0:
                continue
            if counts.min() == counts.max():
                diagram.edges[(p, q)] = int(counts[0])
            else:
                diagram.edges[(p, q)] = None
                diagram.regular = False
    return diagram
