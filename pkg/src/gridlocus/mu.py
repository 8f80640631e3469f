"""mu-graphs (common neighbourhoods of distance-2 pairs) and whole-graph censuses."""

from __future__ import annotations

import multiprocessing
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, HypothesisUnmetError
from .field import FieldContext
from .graph import CycleProfile, Graph, bits, cycle_lengths, induced
from .locgrid import detect_locally_grid, grid_data
from .report import AuditReport
from .symplectic import divisor_of_profile, odd_divisors, vertex_count


@dataclass
class MuGraph:
    pair: tuple[int, int]
    vertices: tuple[int, ...]
    graph: Graph = field(repr=False)
    profile: CycleProfile | None  # None when the mu-graph is not 2-regular

    @property
    def order(self) -> int:
        return len(self.vertices)


def mu_graph(g: Graph, x: int, y: int) -> MuGraph:
    if x == y or g.distances[x, y] != 2:
        raise DomainError(f"vertices {x} and {y} are not at distance 2")
    common = g.rows[x] & g.rows[y]
    verts = tuple(bits(common))
    try:
        profile = cycle_lengths(g.rows, common)
    except DomainError:
        profile = None
    return MuGraph((x, y), verts, induced(g, verts), profile)


@dataclass
class MuCensus:
    counts: dict[CycleProfile, int]
    n_pairs: int
    per_vertex_uniform: bool
    report: AuditReport = field(repr=False, default=None)

    def profiles(self) -> list[CycleProfile]:
        return sorted(self.counts)

    def to_json(self) -> list[dict]:
        return [{"profile": list(p), "count": c} for p, c in sorted(self.counts.items())]


def _census_rows(g: Graph, xs, m: int, through: list[list[int]], cliques: list[int] | None):
    """Census over unordered distance-2 pairs ``(x, y)``, ``x`` in ``xs``, ``y > x``."""
    rows = g.rows
    dist = g.distances
    counts: Counter = Counter()
    per_vertex = {}
    violations = []
    for x in xs:
        rx = rows[x]
        for y in (np.flatnonzero(dist[x, x + 1:] == 2) + x + 1).tolist():
            common = rx & rows[y]
            try:
                prof = cycle_lengths(rows, common)
            except DomainError:
                violations.append(("two-regular", "mu-graph is a union of cycles", (x, y)))
                prof = ("non-2-regular",)
            else:
                if any(length % 2 or length < 4 for length in prof):
                    violations.append(("even-cycles", "mu cycles are even of length >= 4", (x, y)))
                if sum(prof) > 2 * m:
                    violations.append(("sum-m", "sum of half cycle lengths <= n", (x, y)))
                if cliques is not None:
                    for end in (x, y):
                        if any((cliques[i] & common).bit_count() > 2 for i in through[end]):
                            violations.append(("clique-sharing",
                                               "no two mu-edges in one n-clique of an endpoint's neighbourhood",
                                               (x, y, end)))
                            break
            counts[prof] += 1
            per_vertex.setdefault(x, Counter())[prof] += 1
            per_vertex.setdefault(y, Counter())[prof] += 1
    return counts, per_vertex, violations


_SHARED: dict = {}


def _census_worker(xs):
    g, m, through, cliques = _SHARED["args"]
    return _census_rows(g, xs, m, through, cliques)


def mu_census(g: Graph, jobs: int = 1, validate: bool = True) -> MuCensus:
    """Cycle profile of every mu-graph, counted over unordered distance-2 pairs.

    ``jobs > 1`` shards the base vertices over worker processes; the merged
    result does not depend on the shard layout.
    """
    m, _ = detect_locally_grid(g)
    cliques = through = None
    if validate:
        data = grid_data(g) if m == _ else None
        if data is not None:
            cliques, through = data.cliques, data.vertex_cliques
    g.distances  # materialise before any fork
    N = g.n_vertices
    if jobs > 1 and N > 64:
        shards = [list(range(i, N, jobs)) for i in range(jobs)]
        _SHARED["args"] = (g, m, through, cliques)
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            parts = list(pool.map(_census_worker, shards))
        _SHARED.clear()
    else:
        parts = [_census_rows(g, range(N), m, through, cliques)]
    counts: Counter = Counter()
    per_vertex: dict = {}
    rep = AuditReport("mu_census")
    for c, pv, viol in parts:
        counts.update(c)
        for v, hist in pv.items():
            per_vertex.setdefault(v, Counter()).update(hist)
        for check, ref, wit in viol:
            rep.add(check, ref, wit)
    rep.violations.sort(key=lambda v: v.witness)
    hists = {tuple(sorted(h.items())) for h in per_vertex.values()}
    total = sum(counts.values())
    rep.stats = {"pairs": total, "profiles": {",".join(map(str, p)): k for p, k in sorted(counts.items())}}
    return MuCensus(dict(sorted(counts.items())), total, len(hists) <= 1, rep)


def divisor_of(profile: CycleProfile) -> int | None:
    if not all(isinstance(length, int) for length in profile):
        return None  # the non-2-regular sentinel
    return divisor_of_profile(profile)


def divisor_set(census: MuCensus) -> set[int]:
    return {d for d in (divisor_of(p) for p in census.counts) if d is not None}


def divisor_profile_check(g: Graph, ctx: FieldContext, census: MuCensus | None = None) -> bool:
    """Every mu-graph is ``d`` equal cycles with ``d`` an odd divisor of ``n-1``, and every such ``d`` occurs."""
    n = ctx.n
    if g.n_vertices != vertex_count(n) or g.degree(0) != n * n:
        raise DomainError(f"graph with {g.n_vertices} vertices does not match the context for n={n}")
    census = census if census is not None else mu_census(g)
    allowed = set(odd_divisors(n - 1))
    for prof in census.counts:
        d = divisor_of(prof)
        if d is None or d not in allowed or prof[0] * d != 2 * (n - 1):
            return False
    return divisor_set(census) == allowed


def k2_by_mu_table(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """``(values, table)`` where ``table[x, j] = #{z in Gamma_2(x) : c_2(x,z) = values[j]}``."""
    dist, common = g.distances, g.common_counts
    two = dist == 2
    values = np.unique(common[two])
    table = np.stack([(two & (common == v)).sum(axis=1) for v in values], axis=1) if len(values) else \
        np.zeros((g.n_vertices, 0), dtype=np.int64)
    return values, table


def k2_identities_audit(g: Graph) -> AuditReport:
    """Counting identities for ``k_2`` when every mu-graph has order ``>= 2(n-1)``.

    Raises :class:`HypothesisUnmetError` when some mu-graph is smaller.
    """
    m, n = detect_locally_grid(g)
    if m != n:
        raise DomainError(f"graph is locally {m} x {n}, not square")
    dist, common = g.distances, g.common_counts
    two = dist == 2
    small = np.argwhere(two & (common < 2 * (n - 1)))
    if len(small):
        x, y = map(int, small[0])
        raise HypothesisUnmetError(
            f"k2 identities need every mu-graph of order >= {2 * (n - 1)}; pair ({x},{y}) has c2 = {common[x, y]}",
            (x, y))
    rep = AuditReport("k2_identities")
    k_small = (two & (common == 2 * (n - 1))).sum(axis=1).astype(np.int64)
    k_big = (two & (common == 2 * n)).sum(axis=1).astype(np.int64)
    k2 = two.sum(axis=1).astype(np.int64)
    k3 = (dist == 3).sum(axis=1).astype(np.int64)
    lhs = n * n * (n - 1) ** 2

    def first(mask):
        idx = np.flatnonzero(mask)
        return (int(idx[0]),) if len(idx) else None

    checks = [
        ("k2-split", "k_2 = k_{2,2(n-1)} + k_{2,2n}", k2 != k_small + k_big),
        ("edges-k2", "n^2 (n-1)^2 = 2(n-1) k_{2,2(n-1)} + 2n k_{2,2n}",
         2 * (n - 1) * k_small + 2 * n * k_big != lhs),
        ("div-n", "k_{2,2(n-1)} = 0 mod n", k_small % n != 0),
        ("div-n-1", "k_{2,2n} = 0 mod n-1", k_big % max(n - 1, 1) != 0),
        ("k2-sum2", "k_2 = n(n-1)^2/2 + k_{2,2(n-1)}/n", 2 * n * k2 != n * n * (n - 1) ** 2 + 2 * k_small),
        ("k2-k3-bounds", "k_2 <= n^2(n-1)/2 and k_3 <= (n-1)/2", (2 * k2 > n * n * (n - 1)) | (2 * k3 > n - 1)),
    ]
    ell = k_small // n
    modulus = n + 1 if n % 2 == 0 else (n + 1) // 2
    checks += [
        ("ell-range", "l_x <= n(n-1)/2", 2 * ell > n * (n - 1)),
        ("ell-congruence", "l_x + k_3(x) = 0 mod (n+1) for even n, mod (n+1)/2 for odd n", (ell + k3) % modulus != 0),
    ]
    for check, ref, bad in checks:
        wit = first(bad)
        if wit is not None:
            rep.add(check, ref, wit)
    rep.stats = {
        "per_vertex": sorted({(int(a), int(b), int(c), int(d)) for a, b, c, d in zip(k_small, k_big, ell, k3)}),
        "columns": ["k_2,2(n-1)", "k_2,2n", "ell", "k_3"],
    }
    return rep
