"""Structural audits for locally grid graphs.

Every audit takes an immutable :class:`Graph`, works from its cached distance
and common-neighbour matrices plus the clique list, and reports failures as
:class:`Violation` records instead of raising.  Checks whose standing
hypothesis fails are either noted as "hypothesis unmet" (parameter bounds) or
refused with :class:`HypothesisUnmetError` (parity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .drg import distance_diagram
from .errors import DomainError, HypothesisUnmetError, NotLocallyGridError
from .graph import Graph, bits, local_grid_cliques, maximal_cliques, rook_grid_mask
from .report import AuditReport


# -- detection ---------------------------------------------------------------

def detect_locally_grid(g: Graph) -> tuple[int, int]:
    """``(m, n)`` with ``m <= n`` such that every neighbourhood is ``K_m x K_n``."""
    cached = g.__dict__.get("_local_grid")
    if cached is not None:
        return cached
    if g.n_vertices == 0 or not g.is_connected():
        raise DomainError("detect_locally_grid needs a connected nonempty graph")
    rows = g.rows
    k = g.degree(0)
    if k == 0:
        raise NotLocallyGridError("vertex 0 has empty neighbourhood", 0)
    w = (rows[0] & -rows[0]).bit_length() - 1
    s = (rows[0] & rows[w]).bit_count() + 2  # m + n
    disc = s * s - 4 * k
    root = math.isqrt(disc) if disc >= 0 else -1
    if root < 0 or root * root != disc or (s - root) % 2:
        raise NotLocallyGridError("vertex 0: neighbourhood size and local degree fit no grid", 0)
    m, n = (s - root) // 2, (s + root) // 2
    for v in range(g.n_vertices):
        if not rook_grid_mask(rows, rows[v], m, n):
            raise NotLocallyGridError(f"neighbourhood of vertex {v} is not K_{m} x K_{n}", v)
    g.__dict__["_local_grid"] = (m, n)
    return m, n


def square_grid_order(g: Graph) -> int:
    m, n = detect_locally_grid(g)
    if m != n:
        raise DomainError(f"graph is locally {m} x {n}, not square")
    return n


@dataclass
class GridData:
    """Cached per-graph data shared by the audits."""
    n: int
    cliques: list[int]  # bitmasks
    membership: np.ndarray  # (n_cliques, n_vertices) bool
    dist: np.ndarray
    common: np.ndarray
    vertex_cliques: list[list[int]]

    @property
    def n_cliques(self) -> int:
        return len(self.cliques)


def grid_data(g: Graph) -> GridData:
    cached = g.__dict__.get("_grid_data")
    if cached is not None:
        return cached
    n = square_grid_order(g)
    cliques = [sum(1 << v for v in c) for c in local_grid_cliques(g)]
    member = np.zeros((len(cliques), g.n_vertices), dtype=bool)
    for i, c in enumerate(cliques):
        member[i, bits(c)] = True
    through = [[] for _ in range(g.n_vertices)]
    for i, c in enumerate(cliques):
        for v in bits(c):
            through[v].append(i)
    data = GridData(n, cliques, member, g.distances, g.common_counts, through)
    g.__dict__["_grid_data"] = data
    return data


def _clique_profiles(data: GridData):
    """Per clique: ``d(x, C)``, ``|C & Gamma(x)|``, ``|C & Gamma_2(x)|`` for all x (n_cliques x N)."""
    dist = data.dist
    dmin = np.empty((data.n_cliques, dist.shape[0]), dtype=np.int16)
    in1 = np.empty_like(dmin)
    in2 = np.empty_like(dmin)
    for i in range(data.n_cliques):
        sub = dist[:, data.membership[i]]
        dmin[i] = sub.min(axis=1)
        in1[i] = (sub == 1).sum(axis=1)
        in2[i] = (sub == 2).sum(axis=1)
    return dmin, in1, in2


# -- census ----------------------------------------------------------------------

@dataclass
class StructuralCensus:
    n: int
    n_vertices: int
    n_cliques: int
    n_triangles: int
    clique_sizes: list[int]
    report: AuditReport = field(repr=False, default=None)

    @property
    def ok(self) -> bool:
        return self.report.ok

    def to_dict(self) -> dict:
        return {"n": self.n, "n_vertices": self.n_vertices, "n_cliques": self.n_cliques,
                "n_triangles": self.n_triangles, "clique_sizes": self.clique_sizes,
                **self.report.to_dict()}


def structural_census(g: Graph, cross_check_limit: int = 120) -> StructuralCensus:
    """Edge, triangle and clique counts checked against the locally grid formulas.

    Graphs with at most ``cross_check_limit`` vertices also have their cliques
    recomputed by the generic enumerator.
    """
    n = square_grid_order(g)
    data = grid_data(g)
    rep = AuditReport("structural_census")
    N = g.n_vertices
    adj = g.matrix.astype(bool)
    common = data.common
    sizes = sorted({c.bit_count() for c in data.cliques})
    rep.expect(sizes == [n + 1], "clique-size", "every maximal clique has n+1 vertices", detail=f"sizes {sizes}")

    edge_common = common[adj]
    bad = np.argwhere(adj & (common != 2 * (n - 1)))
    rep.expect(len(bad) == 0, "edge-triangles", "each edge lies in 2(n-1) triangles",
               tuple(map(int, bad[0])) if len(bad) else ())
    per_edge = data.membership.astype(np.int32).T @ data.membership.astype(np.int32)
    bad = np.argwhere(adj & (per_edge != 2))
    rep.expect(len(bad) == 0, "edge-in-two-cliques", "each edge lies in exactly two maximal cliques",
               tuple(map(int, bad[0])) if len(bad) else ())
    # common neighbourhood of an edge = the two cliques through it, minus the edge
    for x, y in g.edges():
        through = [data.cliques[i] for i in data.vertex_cliques[x] if data.cliques[i] >> y & 1]
        union = 0
        for c in through:
            union |= c
        union &= ~((1 << x) | (1 << y))
        if union != g.rows[x] & g.rows[y] or len(through) != 2 or (through[0] & through[1]).bit_count() != 2:
            rep.add("edge-common-2K", "common neighbourhood of an edge is 2K_{n-1}", (x, y))
            break

    n_triangles = int(edge_common.sum()) // 6
    per_clique = sum(math.comb(c.bit_count(), 3) for c in data.cliques)
    rep.expect(per_clique == n_triangles, "triangle-unique-clique", "each triangle lies in a unique maximal clique",
               detail=f"sum over cliques {per_clique}, triangles {n_triangles}")
    rep.expect(data.n_cliques * (n + 1) == N * 2 * n, "clique-count", "clique count = |V| 2n/(n+1)",
               detail=f"{data.n_cliques} cliques on {N} vertices")
    rep.expect(3 * n_triangles == N * n * n * (n - 1), "triangle-count", "triangle count = |V| n^2 (n-1)/3",
               detail=f"{n_triangles} triangles")
    rep.expect((2 * N) % (n + 1) == 0, "order-div-n+1", "n+1 divides 2|V|")
    if n % 3 == 2:
        rep.expect(N % 3 == 0, "order-div-3", "3 divides |V| when n = 2 mod 3")
    if N <= cross_check_limit:
        generic = sorted(tuple(bits(c)) for c in data.cliques) == maximal_cliques(g)
        rep.expect(generic, "clique-cross-check", "specialised clique list equals generic enumeration")
    return StructuralCensus(n, N, data.n_cliques, n_triangles, sizes, rep)


# -- clique distances ------------------------------------------------------------

def clique_distance_audit(g: Graph) -> AuditReport:
    """Distance from each vertex to each maximal clique, against the clique lemmas."""
    rep = AuditReport("clique_distance")
    try:
        data = grid_data(g)
    except (NotLocallyGridError, DomainError) as exc:
        witness = (exc.vertex,) if isinstance(exc, NotLocallyGridError) else ()
        rep.add("locally-grid", "graph is locally n x n grid", witness, str(exc))
        return rep
    n = data.n
    dist, common = data.dist, data.common
    dmin, in1, in2 = _clique_profiles(data)
    contains = data.membership
    for ci, c in enumerate(data.cliques):
        members = np.flatnonzero(contains[ci])
        outside = ~contains[ci]
        d1 = outside & (dmin[ci] == 1)
        bad = np.flatnonzero(d1 & ((in1[ci] != 2) | (in2[ci] != n - 1)))
        for x in bad[:1]:
            rep.add("d1-shape", "d(x,C)=1 gives |C & G(x)|=2 and |C & G2(x)|=n-1", (int(x), ci),
                    f"|C&G(x)|={in1[ci][x]}, |C&G2(x)|={in2[ci][x]}")
        d2 = np.flatnonzero(outside & (dmin[ci] == 2))
        for x in d2:
            ys = members[dist[x, members] == 2]
            cs = common[x, ys]
            if (cs > 2 * (n - 1)).any():
                rep.add("d2-c2-bound", "d(x,C)=2 gives c2(x,y) <= 2(n-1) on C & G2(x)", (int(x), ci))
            if len(ys) < int(cs.max()) // 2 + 1:
                rep.add("d2-size", "d(x,C)=2 and c2(x,y)=2m give |C & G2(x)| >= m+1", (int(x), ci))
            if (cs == 2 * n).any():
                rep.add("c2n-all-near", "c2(x,y)=2n puts every clique through y at distance 1", (int(x), ci))
    # for every distance-2 pair, count cliques through y at distance 1 and 2 from x
    near = (dmin == 1).astype(np.int32)
    far = (dmin == 2).astype(np.int32)
    inc = contains.astype(np.int32)
    near_count = near.T @ inc  # [x, y] = cliques through y at distance 1 from x
    far_count = far.T @ inc
    two = dist == 2
    m_half = common // 2
    bad_near = np.argwhere(two & (m_half < n) & ((near_count != common) | (far_count != 2 * (n - m_half))))
    if len(bad_near):
        x, y = map(int, bad_near[0])
        rep.add("cliques-through-y", "c2=2m<2n: 2m cliques through y at distance 1, 2(n-m) at distance 2",
                (x, y), f"near={near_count[x, y]}, far={far_count[x, y]}, c2={common[x, y]}")
    bad_full = np.argwhere(two & (m_half == n) & (near_count != 2 * n))
    if len(bad_full):
        rep.add("c2n-all-near", "c2(x,y)=2n puts every clique through y at distance 1",
                tuple(map(int, bad_full[0])))
    rep.stats = {"pairs_checked": int(((dmin == 1) | (dmin == 2)).sum()), "n_cliques": data.n_cliques}
    return rep


# -- parameter bounds --------------------------------------------------------------

def parameter_bounds_audit(g: Graph) -> AuditReport:
    """Per-pair bounds on ``b_i, c_i`` and per-vertex bounds on ``k_i``.

    ``m*`` is the global minimum of ``c_2 / 2``; the ``k``-bounds need
    ``m <= n-1`` and use ``min(m*, n-1)``, which is still a valid lower bound.
    """
    from .graph import layer_neighbor_counts

    rep = AuditReport("parameter_bounds")
    n = square_grid_order(g)
    dist, common = g.distances, g.common_counts
    counts = layer_neighbor_counts(g)
    ecc = dist.max(axis=1)
    N = g.n_vertices
    two = dist == 2
    if not two.any():
        rep.unmet.append("no pairs at distance 2; m* undefined")
        return rep
    m_star = int(common[two].min()) // 2
    m_eff = min(m_star, n - 1)
    rep.stats["m_star"] = m_star
    rep.stats["m_used_in_k_bounds"] = m_eff
    k = np.stack([(dist == i).sum(axis=1) for i in range(int(ecc.max()) + 1)], axis=1)
    rep.stats["k_profiles"] = sorted({tuple(row) for row in k.tolist()})

    # b_1 = (n-1)^2 is what makes the left-hand side n^2 (n-1)^2
    one = dist == 1
    rep.expect((counts[2][one] == (n - 1) ** 2).all(), "b1", "b_1(x,y) = (n-1)^2 on edges")
    # edges between consecutive layers, counted from both sides
    for i in range(1, int(ecc.max()) + 1):
        lhs = ((dist == i - 1) * counts[i]).sum(axis=1)
        rhs = ((dist == i) * counts[i - 1]).sum(axis=1)
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            rep.add("b=c", "sum of b_{i-1} over G_{i-1}(x) = sum of c_i over G_i(x)", (int(bad[0]), i))
    sum_c2 = (two * common).sum(axis=1)
    bad = np.flatnonzero(sum_c2 != n * n * (n - 1) ** 2)
    if len(bad):
        rep.add("sum-k2m", "n^2 (n-1)^2 = sum over m of 2m k_{2,2m}(x)", (int(bad[0]),), f"got {sum_c2[bad[0]]}")
    rep.expect((dist == dist.T).all() and (common == common.T).all(), "symmetry", "distances and c_2 are symmetric")

    # per-vertex k bounds, in exact integer form
    m = m_eff
    k2 = k[:, 2] if k.shape[1] > 2 else np.zeros(N, dtype=np.int64)
    bad = np.flatnonzero(2 * m * k2 > n * n * (n - 1) ** 2)
    if len(bad):
        rep.add("k2-bound", "k_2(x) <= n^2 (n-1)^2 / (2m)", (int(bad[0]),))
    if k.shape[1] > 3:
        bad = np.flatnonzero(k[:, 3] * (m + 1) ** 2 > k2 * (n - m) ** 2)
        if len(bad):
            rep.add("k3-bound", "k_3(x) <= k_2(x) (n-m)^2/(m+1)^2", (int(bad[0]),))
    for i in range(4, k.shape[1]):
        bad = np.flatnonzero(k[:, i] * (m + 1) ** 2 > k[:, i - 1] * (n - m - 1) ** 2)
        if len(bad):
            rep.add("ki-bound", "k_i(x) <= k_{i-1}(x) (n-m-1)^2/(m+1)^2", (int(bad[0]), i))

    # per-pair bounds
    b2 = counts[3] if len(counts) > 3 else np.zeros_like(common)
    bad = np.argwhere(two & (b2 > (n - common // 2) ** 2))
    if len(bad):
        rep.add("b2-bound", "c_2(x,y)=2m gives b_2(x,y) <= (n-m)^2", tuple(map(int, bad[0])))
    for i in range(3, int(ecc.max()) + 1):
        layer = dist == i
        c_i = counts[i - 1]
        b_i = counts[i + 1]
        bad = np.argwhere(layer & (c_i < (m_star + 1) ** 2))
        if len(bad):
            rep.add(f"c{i}-bound", f"c_{i}(x,z) >= (m*+1)^2", tuple(map(int, bad[0])))
        bad = np.argwhere(layer & (b_i > max(n - m_star - 1, 0) ** 2))
        if len(bad):
            rep.add(f"b{i}-bound", f"b_{i}(x,z) <= (n-m*-1)^2", tuple(map(int, bad[0])))
    return rep


# -- mu-graphs around a clique ---------------------------------------------------

@dataclass
class MuCliqueReport:
    x: int
    clique: tuple[int, ...]
    distance: int
    S: tuple[int, ...]
    T: tuple[int, ...]
    delta_members: tuple[int, ...]  # the y in C & Gamma_2(x) whose mu-graphs form Delta
    matched_edges: tuple[tuple[int, int], ...]


def _check_mu_clique(g: Graph, x: int, c: int, d: int, dist_x: np.ndarray, rep: AuditReport, ci: int):
    rows = g.rows
    rx = rows[x]
    ys = [y for y in bits(c) if dist_x[y] == 2]
    mus = [rx & rows[y] for y in ys]
    inside = c & rx  # C & Gamma(x)
    union = 0
    ones = twos = threes = 0
    for mu in mus:
        threes |= twos & mu
        twos |= ones & mu
        ones |= mu
        union |= mu
    S = union & ~c
    if d == 2:
        T = 0
    else:
        uv = bits(inside)
        T = S & (rows[uv[0]] | rows[uv[1]]) if len(uv) == 2 else 0
    exactly_one = ones & ~twos
    exactly_two = twos & ~threes
    wit = (x, ci)
    if T & ~exactly_one:
        rep.add("mu-number", "w in T lies in exactly one mu-graph of Delta", wit)
    if (S & ~T) & ~exactly_two:
        rep.add("mu-number", "w in S\\T lies in exactly two mu-graphs of Delta", wit)

    double_edges = set()
    for i in range(len(mus)):
        for j in range(i + 1, len(mus)):
            meet = mus[i] & mus[j]
            extra = meet & ~inside
            if meet & inside != inside:
                rep.add("mu-meet", "two mu-graphs of Delta both contain C & G(x)", wit)
            if extra:
                e = bits(extra)
                if len(e) != 2 or not rows[e[0]] >> e[1] & 1 or extra & ~(S & ~T):
                    rep.add("mu-meet", "two mu-graphs of Delta meet in C & G(x) plus at most one edge in S\\T",
                            wit, f"extra vertices {e}")
                else:
                    double_edges.add((e[0], e[1]))
    # an edge inside S lies in exactly two mu-graphs iff it is such an intersection
    for a, b in list(double_edges):
        cover = sum(1 for mu in mus if mu >> a & 1 and mu >> b & 1)
        if cover != 2:
            rep.add("matching", "a doubly covered edge lies in exactly two mu-graphs", wit)
    covered = 0
    matching_ok = True
    for a, b in double_edges:
        pair = (1 << a) | (1 << b)
        if covered & pair:
            matching_ok = False
        covered |= pair
    if not matching_ok or covered != S & ~T:
        rep.add("matching", "doubly covered edges form a perfect matching on S\\T", wit)
    total = sum(m.bit_count() for m in mus)
    if total != 2 * S.bit_count():
        rep.add("sum-S", "2|S| = sum of c_2(x,y) over C & G2(x)", wit, f"{total} vs 2*{S.bit_count()}")
    if total % 4:
        rep.add("sum-mod-4", "sum of c_2(x,y) over C & G2(x) is 0 mod 4", wit, f"sum {total}")
    return S, T, ys, double_edges, total


def mu_clique_matching_audit(g: Graph, keep_reports: bool = False) -> AuditReport:
    """mu-graphs of ``x`` with the vertices of a nearby clique, for every ``(x, C)``.

    ``report.details`` holds one :class:`MuCliqueReport` per pair when
    ``keep_reports`` is set.
    """
    data = grid_data(g)
    if data.n < 3:
        raise DomainError(f"needs n >= 3, graph is locally {data.n} x {data.n}")
    rep = AuditReport("mu_clique_matching")
    dmin, _, _ = _clique_profiles(data)
    sums = {1: set(), 2: set()}
    checked = 0
    details = []
    for ci, c in enumerate(data.cliques):
        for x in np.flatnonzero(((dmin[ci] == 1) | (dmin[ci] == 2)) & ~data.membership[ci]):
            x = int(x)
            d = int(dmin[ci][x])
            S, T, ys, edges, total = _check_mu_clique(g, x, c, d, data.dist[x], rep, ci)
            sums[d].add(total)
            checked += 1
            if keep_reports:
                details.append(MuCliqueReport(x, tuple(bits(c)), d, tuple(bits(S)), tuple(bits(T)),
                                              tuple(ys), tuple(sorted(edges))))
    rep.stats = {"pairs_checked": checked, "c2_sums_d1": sorted(sums[1]), "c2_sums_d2": sorted(sums[2])}
    if keep_reports:
        rep.details = details
    return rep


# -- parity (all mu >= 2(n-1)) ---------------------------------------------------

def _require_large_mu(g: Graph, n: int, what: str):
    dist, common = g.distances, g.common_counts
    small = np.argwhere((dist == 2) & (common < 2 * (n - 1)))
    if len(small):
        x, y = map(int, small[0])
        raise HypothesisUnmetError(
            f"{what} needs every mu-graph of order >= 2(n-1) = {2 * (n - 1)}; "
            f"pair ({x},{y}) has c2 = {common[x, y]}", (x, y))


def parity_audit(g: Graph) -> AuditReport:
    data = grid_data(g)
    n = data.n
    _require_large_mu(g, n, "parity_audit")
    rep = AuditReport("parity")
    dist, common = data.dist, data.common
    rep.expect(int(dist.max()) <= 3, "diameter", "diameter <= 3", detail=f"diameter {int(dist.max())}")
    dmin, _, _ = _clique_profiles(data)
    for ci, c in enumerate(data.cliques):
        members = np.flatnonzero(data.membership[ci])
        for x in np.flatnonzero(~data.membership[ci]):
            d = int(dmin[ci][x])
            if d not in (1, 2):
                rep.add("clique-distance", "d(x,C) is 1 or 2", (int(x), ci), f"d={d}")
                continue
            ys = members[dist[x, members] == 2]
            cs = common[x, ys]
            if d == 1:
                if int((cs == 2 * (n - 1)).sum()) % 2:
                    rep.add("d1-even", "d(x,C)=1: an even number of y with c2 = 2(n-1)", (int(x), ci))
                if n % 2 == 0 and not (cs == 2 * n).any():
                    rep.add("d1-even-n", "d(x,C)=1, n even: some y has c2 = 2n", (int(x), ci))
            else:
                if (cs != 2 * (n - 1)).any():
                    rep.add("d2-all", "d(x,C)=2: every y in C & G2(x) has c2 = 2(n-1)", (int(x), ci))
                if n % 2 == 0 and len(ys) == len(members):
                    rep.add("d2-even-n", "d(x,C)=2, n even: C is not inside G2(x)", (int(x), ci))
    return rep


# -- the 5 x 5 case ---------------------------------------------------------------

# neighbours-each multiplicities for the 72-vertex alternative, keyed by class names
DIAGRAM_72 = {
    ("0", "1"): 25,
    ("1", "0"): 1, ("1", "1"): 8, ("1", "2:c2=8"): 8, ("1", "2:c2=10"): 8,
    ("2:c2=10", "1"): 10, ("2:c2=10", "2:c2=8"): 10, ("2:c2=10", "2:c2=10"): 5,
    ("2:c2=8", "1"): 8, ("2:c2=8", "2:c2=8"): 8, ("2:c2=8", "2:c2=10"): 8, ("2:c2=8", "3"): 1,
    ("3", "2:c2=8"): 25,
}
DIAGRAM_72_SIZES = {"0": 1, "1": 25, "2:c2=8": 25, "2:c2=10": 20, "3": 1}


def matches_diagram_72(diagram) -> bool:
    sizes = dict(zip(diagram.classes, diagram.sizes))
    return diagram.regular and sizes == DIAGRAM_72_SIZES and dict(diagram.edges) == DIAGRAM_72


@dataclass
class FiveByFiveRecord:
    n_vertices: int
    order_at_most_300: bool
    order_div_6: bool
    mu_at_least_8: bool
    eccentricities: list[int]
    branch: str  # "78", "72", "other" or "mu<8"
    c2_constant_8: bool | None
    diagram_72_ok: bool | None
    report: AuditReport = field(repr=False, default=None)

    def to_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "report"}
        out.update(self.report.to_dict())
        return out


def five_by_five_audit(g: Graph) -> FiveByFiveRecord:
    if not g.is_connected():
        raise DomainError("five_by_five_audit needs a connected graph")
    m, n = detect_locally_grid(g)
    if (m, n) != (5, 5):
        raise DomainError(f"graph is locally {m} x {n}, not 5 x 5")
    rep = AuditReport("five_by_five")
    N = g.n_vertices
    dist, common = g.distances, g.common_counts
    two = dist == 2
    ecc = sorted(set(dist.max(axis=1).tolist()))
    le300 = rep.expect(N <= 300, "order-300", "|V| <= 300", detail=f"|V|={N}")
    div6 = rep.expect(N % 6 == 0, "order-div-6", "|V| = 0 mod 6", detail=f"|V|={N}")
    big = bool((common[two] >= 8).all())
    branch, c2_8, diag_ok = "mu<8", None, None
    if big:
        rep.expect(ecc == [3], "eccentricity", "every vertex has eccentricity 3", detail=f"{ecc}")
        rep.expect(N in (72, 78), "order-72-78", "|V| is 72 or 78", detail=f"|V|={N}")
        branch = str(N) if N in (72, 78) else "other"
        if N == 78:
            c2_8 = bool((common[two] == 8).all())
            rep.expect(c2_8, "c2-8", "|V|=78 gives c2 = 8 for every distance-2 pair")
        elif N == 72:
            diag_ok = all(matches_diagram_72(distance_diagram(g, x)) for x in range(N))
            rep.expect(diag_ok, "diagram-72", "|V|=72 forces the 1/25/25/20/1 distance diagram")
    return FiveByFiveRecord(N, le300, div6, big, ecc, branch, c2_8, diag_ok, rep)
