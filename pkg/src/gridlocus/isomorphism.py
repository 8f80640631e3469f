"""Exact isomorphism decision for small graphs.

Colour refinement runs on the disjoint union of both graphs so colour names
are shared; when refinement stalls, one vertex of the first graph is
individualised against each same-coloured vertex of the second and the
search recurses.  A discrete colouring yields a bijection that is checked
edge by edge before it is accepted.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError
from .graph import Graph

ISO_VERTEX_CAP = 512


def _refine(adj: np.ndarray, colours: np.ndarray) -> np.ndarray:
    while True:
        k = int(colours.max()) + 1
        onehot = np.zeros((len(colours), k), dtype=np.int32)
        onehot[np.arange(len(colours)), colours] = 1
        signature = np.column_stack([colours, adj @ onehot])
        _, new = np.unique(signature, axis=0, return_inverse=True)
        new = new.ravel()
        if new.max() == colours.max():
            return new
        colours = new


def _balanced(colours: np.ndarray, n1: int) -> bool:
    k = int(colours.max()) + 1
    return np.array_equal(np.bincount(colours[:n1], minlength=k), np.bincount(colours[n1:], minlength=k))


def find_isomorphism(g1: Graph, g2: Graph, cap: int = ISO_VERTEX_CAP) -> list[int] | None:
    """A vertex map ``g1 -> g2`` preserving adjacency, or None."""
    for g in (g1, g2):
        if g.n_vertices > cap:
            raise CapacityError(f"isomorphism test limited to {cap} vertices, got {g.n_vertices}")
    n = g1.n_vertices
    if n != g2.n_vertices or g1.n_edges != g2.n_edges:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    if n == 0:
        return []
    adj = np.zeros((2 * n, 2 * n), dtype=np.int32)
    adj[:n, :n] = g1.matrix
    adj[n:, n:] = g2.matrix
    rows1, rows2 = g1.rows, g2.rows

    def search(colours: np.ndarray) -> list[int] | None:
        colours = _refine(adj, colours)
        if not _balanced(colours, n):
            return None
        counts = np.bincount(colours[:n])
        if counts.max() == 1:
            where = {int(c): i for i, c in enumerate(colours[n:])}
            perm = [where[int(c)] for c in colours[:n]]
            for v in range(n):
                image = 0
                for w in range(n):
                    if rows1[v] >> w & 1:
                        image |= 1 << perm[w]
                if image != rows2[perm[v]]:
                    return None
            return perm
        sizes = np.where(counts > 1, counts, n + 1)
        target = int(np.argmin(sizes))
        v = int(np.flatnonzero(colours[:n] == target)[0])
        fresh = int(colours.max()) + 1
        for w in np.flatnonzero(colours[n:] == target):
            trial = colours.copy()
            trial[v] = fresh
            trial[n + int(w)] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    return search(np.zeros(2 * n, dtype=np.int64))


def are_isomorphic(g1: Graph, g2: Graph, cap: int = ISO_VERTEX_CAP) -> bool:
    return find_isomorphism(g1, g2, cap) is not None
