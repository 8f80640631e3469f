"""Small named graphs used as comparison points."""

from __future__ import annotations

from itertools import combinations
from math import comb

from .errors import CapacityError, InvalidParameterError
from .graph import Graph, vertex_cap


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)], check=False)


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def _subset_label(s) -> str:
    return "{" + ",".join(map(str, s)) + "}"


def johnson(v: int, k: int, cap: int | None = None) -> Graph:
    """k-subsets of range(v), adjacent when they share k-1 elements."""
    if not 1 <= k <= v - 1:
        raise InvalidParameterError(f"need 1 <= k <= v-1, got v={v}, k={k}")
    cap = vertex_cap() if cap is None else cap
    if comb(v, k) > cap:
        raise CapacityError(f"J({v},{k}) has {comb(v, k)} vertices, cap is {cap}")
    subsets = list(combinations(range(v), k))
    masks = [sum(1 << i for i in s) for s in subsets]
    rows = []
    for a in masks:
        row = 0
        for j, b in enumerate(masks):
            if (a & b).bit_count() == k - 1:
                row |= 1 << j
        rows.append(row)
    return Graph(len(subsets), rows, [_subset_label(s) for s in subsets], check=False)


def rook_grid(m: int, n: int) -> Graph:
    """K_m x K_n; vertex ``i*n + j`` is cell (i, j)."""
    if m < 1 or n < 1:
        raise InvalidParameterError("rook grid sides must be positive")
    rows = []
    for i in range(m):
        for j in range(n):
            row = 0
            for jj in range(n):
                if jj != j:
                    row |= 1 << (i * n + jj)
            for ii in range(m):
                if ii != i:
                    row |= 1 << (ii * n + j)
            rows.append(row)
    labels = [f"({i},{j})" for i in range(m) for j in range(n)]
    return Graph(m * n, rows, labels, check=False)


def rook_complement(n: int) -> Graph:
    return rook_grid(n, n).complement()


def halved_antipodal_johnson(v: int, k: int, cap: int | None = None) -> Graph:
    """J(2k, k) with each k-set glued to its complement."""
    if v != 2 * k or k < 2:
        raise InvalidParameterError(f"needs v = 2k with k >= 2, got v={v}, k={k}")
    cap = vertex_cap() if cap is None else cap
    if comb(v, k) // 2 > cap:
        raise CapacityError(f"quotient has {comb(v, k) // 2} vertices, cap is {cap}")
    reps = [s for s in combinations(range(v), k) if 0 in s]
    full = (1 << v) - 1
    masks = [sum(1 << i for i in s) for s in reps]
    rows = []
    for a in masks:
        row = 0
        for j, b in enumerate(masks):
            if (a & b).bit_count() == k - 1 or ((full ^ a) & b).bit_count() == k - 1:
                row |= 1 << j
        rows.append(row)
    return Graph(len(reps), rows, [_subset_label(s) for s in reps], check=False)


CORPUS_NAMES = (
    "gamma3", "gamma5", "gamma7", "J(6,3)", "J(10,5)", "rook_complement(4)",
    "halved_J(8,4)", "rook_grid(5,5)", "petersen",
)


def corpus_graph(name: str) -> Graph:
    """One graph of the standard comparison corpus, by name."""
    if name.startswith("gamma"):
        from .field import context_for_n
        from .symplectic import build_gamma

        return build_gamma(context_for_n(int(name[5:])))
    builders = {
        "J(6,3)": lambda: johnson(6, 3),
        "J(10,5)": lambda: johnson(10, 5),
        "rook_complement(4)": lambda: rook_complement(4),
        "halved_J(8,4)": lambda: halved_antipodal_johnson(8, 4),
        "rook_grid(5,5)": lambda: rook_grid(5, 5),
        "petersen": petersen,
    }
    if name not in builders:
        raise InvalidParameterError(f"unknown corpus graph {name!r}; choose from {', '.join(CORPUS_NAMES)}")
    return builders[name]()


def corpus() -> dict[str, Graph]:
    return {name: corpus_graph(name) for name in CORPUS_NAMES}
