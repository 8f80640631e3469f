"""Exhaustive search for six pairwise-compatible mu-graph candidates in K_n x K_n.

If a locally n x n graph had an (n+1)-clique inside some ``Gamma_2(x)``, the
mu-graphs of ``x`` with the clique vertices would be induced subgraphs of the
rook grid of order ``2(n-1)`` that pairwise either miss each other or share
exactly one edge, with no host cell used more than twice.  This module
enumerates those candidates and searches for such families containing a fixed
seed candidate.

Cells are numbered ``i*n + j`` (0-based row ``i``, column ``j``), the same
numbering as :func:`gridlocus.reference.rook_grid`.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import multiprocessing
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, CertificateError, DomainError, InvalidParameterError
from .graph import CycleProfile, bits, cycle_lengths, mask_of
from .reference import rook_grid

DEFAULT_CANDIDATE_BUDGET = 200_000
DEFAULT_BRUTE_BUDGET = 2_000_000
DEFAULT_NODE_BUDGET = 50_000_000

# The two seeds used for n = 5, as 1-based (row, column) cells.
CANONICAL_SEEDS = {
    "cyc8": ((1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 1)),
    "cyc44": ((1, 1), (1, 2), (2, 2), (2, 1), (3, 3), (3, 4), (4, 4), (4, 3)),
}


@dataclass(frozen=True, order=True)
class MuCandidate:
    host: int  # side of the rook grid
    cells: tuple[int, ...]
    profile: CycleProfile = field(compare=False)

    @property
    def mask(self) -> int:
        return mask_of(self.cells)

    @property
    def kind(self) -> str:
        if len(self.profile) == 1:
            return "cycle"
        if self.profile == (4, 4):
            return "cyc44"
        return "union"

    def one_based(self) -> list[tuple[int, int]]:
        return [(c // self.host + 1, c % self.host + 1) for c in self.cells]


def host_rows(n: int) -> list[int]:
    return rook_grid(n, n).rows


def cells_from_one_based(n: int, pairs) -> tuple[int, ...]:
    out = []
    for a, b in pairs:
        if not (1 <= a <= n and 1 <= b <= n):
            raise InvalidParameterError(f"cell ({a},{b}) is outside K_{n} x K_{n}")
        out.append((a - 1) * n + (b - 1))
    return tuple(sorted(out))


def profile_of_cells(n: int, cells, rows: list[int] | None = None) -> CycleProfile | None:
    """Cycle profile of the induced subgraph, or None if it is not 2-regular."""
    rows = rows if rows is not None else host_rows(n)
    try:
        return cycle_lengths(rows, mask_of(cells))
    except DomainError:
        return None


def allowed_profiles(n: int, kind) -> set[CycleProfile]:
    """Profiles of order ``2(n-1)`` selected by ``kind``.

    ``kind`` is ``"cycle"``, ``"cyc8"`` (an 8-cycle, so n = 5), ``"cyc44"``
    (two 4-cycles), ``"all"`` (any union of even cycles of length >= 4) or an
    explicit tuple of cycle lengths.
    """
    if n < 3:
        raise InvalidParameterError(f"host side must be >= 3, got {n}")
    order = 2 * (n - 1)
    if kind == "all":
        out = set()

        def parts(rest, most, acc):
            if rest == 0:
                out.add(tuple(sorted(acc)))
                return
            for length in range(min(rest, most), 3, -1):
                if length % 2 == 0:
                    parts(rest - length, length, acc + [length])

        parts(order, order, [])
        return out
    named = {"cycle": (order,), "cyc8": (8,), "cyc44": (4, 4)}
    profile = named.get(kind) if isinstance(kind, str) else tuple(sorted(kind))
    if profile is None:
        raise InvalidParameterError(f"unknown candidate kind {kind!r}")
    if sum(profile) != order or any(length < 4 or length % 2 for length in profile):
        raise InvalidParameterError(f"profile {profile} is not a union of even cycles of order {order}")
    return {profile}


def _templates(k: int) -> list[tuple[tuple[int, int], ...]]:
    """All k x k 0/1 patterns with every row and column sum 2, as (row, col) cells."""
    pairs = list(itertools.combinations(range(k), 2))
    out = []

    def rec(row, col_deg, acc):
        if row == k:
            out.append(tuple(acc))
            return
        remaining = k - row
        for a, b in pairs:
            if col_deg[a] < 2 and col_deg[b] < 2:
                col_deg[a] += 1
                col_deg[b] += 1
                # every column must still be able to reach degree 2
                if all(2 - d <= remaining - 1 for d in col_deg):
                    rec(row + 1, col_deg, acc + [(row, a), (row, b)])
                col_deg[a] -= 1
                col_deg[b] -= 1

    rec(0, [0] * k, [])
    return out


def enumerate_candidates(n: int, kind="all", budget: int = DEFAULT_CANDIDATE_BUDGET) -> list[MuCandidate]:
    """All induced subgraphs of K_n x K_n of order ``2(n-1)`` with a profile selected by ``kind``.

    An induced union of cycles meets each row and column it uses in exactly
    two cells, so it uses ``n-1`` rows and ``n-1`` columns.  We enumerate the
    row/column sum-2 patterns on a ``(n-1) x (n-1)`` board once and place them
    on every choice of rows and columns.
    """
    wanted = allowed_profiles(n, kind)
    k = n - 1
    templates = _templates(k)
    placements = math.comb(n, k) ** 2
    if len(templates) * placements > budget:
        raise CapacityError(f"{len(templates) * placements} placements exceed the candidate budget {budget}")
    local = host_rows(k)
    kept = []
    for tpl in templates:
        prof = cycle_lengths(local, mask_of(r * k + c for r, c in tpl))
        if prof in wanted:
            kept.append((tpl, prof))
    out = []
    for rsel in itertools.combinations(range(n), k):
        for csel in itertools.combinations(range(n), k):
            for tpl, prof in kept:
                cells = tuple(sorted(rsel[r] * n + csel[c] for r, c in tpl))
                out.append(MuCandidate(n, cells, prof))
    out.sort()
    return out


def brute_force_candidates(n: int, kind="all", budget: int = DEFAULT_BRUTE_BUDGET) -> list[MuCandidate]:
    """Same result as :func:`enumerate_candidates` by testing every ``2(n-1)``-subset."""
    wanted = allowed_profiles(n, kind)
    size = 2 * (n - 1)
    total = math.comb(n * n, size)
    if total > budget:
        raise CapacityError(f"{total} subsets exceed the brute-force budget {budget}")
    rows = host_rows(n)
    out = []
    for cells in itertools.combinations(range(n * n), size):
        sel = mask_of(cells)
        if all((rows[c] & sel).bit_count() == 2 for c in cells):
            prof = cycle_lengths(rows, sel)
            if prof in wanted:
                out.append(MuCandidate(n, cells, prof))
    return out


def sampled_enumeration_audit(n: int, candidates: list[MuCandidate], kind="all",
                              samples: int = 100_000, rng_seed: int = 0) -> int:
    """Mismatches between ``candidates`` and the direct profile test on random subsets.

    Half of the samples are drawn as random ``2(n-1)``-subsets of the host and
    half as perturbations of listed candidates, since uniform subsets are
    almost never candidates.
    """
    wanted = allowed_profiles(n, kind)
    rows = host_rows(n)
    listed = {c.cells for c in candidates}
    rng = random.Random(rng_seed)
    size = 2 * (n - 1)
    mismatches = 0
    for i in range(samples):
        if i % 2 == 0 or not candidates:
            cells = tuple(sorted(rng.sample(range(n * n), size)))
        else:
            base = list(rng.choice(candidates).cells)
            if rng.random() < 0.5:
                out = rng.randrange(size)
                fresh = rng.choice([c for c in range(n * n) if c not in base])
                base[out] = fresh
            cells = tuple(sorted(base))
        prof = profile_of_cells(n, cells, rows)
        if (prof in wanted) != (cells in listed):
            mismatches += 1
    return mismatches


def checksum(candidates: list[MuCandidate]) -> str:
    payload = json.dumps([list(c.cells) for c in sorted(candidates)], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


# -- compatibility ------------------------------------------------------------

def compatible(x1: MuCandidate, x2: MuCandidate) -> bool:
    """Vertex-disjoint, or meeting in exactly two cells that are adjacent in the host."""
    if x1.host != x2.host:
        raise DomainError(f"candidates live in different hosts ({x1.host} and {x2.host})")
    common = set(x1.cells) & set(x2.cells)
    if not common:
        return True
    if len(common) != 2:
        return False
    a, b = sorted(common)
    n = x1.host
    return a // n == b // n or a % n == b % n


def _host_edges(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n * n) for b in range(a + 1, n * n) if a // n == b // n or a % n == b % n]


def compatibility_matrix(candidates: list[MuCandidate]) -> np.ndarray:
    """Boolean matrix of :func:`compatible`, computed with incidence products."""
    if not candidates:
        return np.zeros((0, 0), dtype=bool)
    n = candidates[0].host
    if any(c.host != n for c in candidates):
        raise DomainError("candidates live in different hosts")
    cell_inc = np.zeros((len(candidates), n * n), dtype=np.int32)
    for i, c in enumerate(candidates):
        cell_inc[i, list(c.cells)] = 1
    edges = _host_edges(n)
    ea = np.array([e[0] for e in edges])
    eb = np.array([e[1] for e in edges])
    edge_inc = (cell_inc[:, ea] & cell_inc[:, eb]).astype(np.int32)
    shared_cells = cell_inc @ cell_inc.T
    shared_edges = edge_inc @ edge_inc.T
    return (shared_cells == 0) | ((shared_cells == 2) & (shared_edges == 1))


@dataclass
class CompatibilitySystem:
    candidates: list[MuCandidate]
    seed: int  # index into candidates
    pair_ok: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if not 0 <= self.seed < len(self.candidates):
            raise DomainError("seed is not one of the candidates")
        if self.pair_ok is None:
            self.pair_ok = compatibility_matrix(self.candidates)
        self.masks = [c.mask for c in self.candidates]
        self.compat_bits = [mask_of(np.flatnonzero(row).tolist()) for row in self.pair_ok]

    @property
    def host(self) -> int:
        return self.candidates[0].host

    @classmethod
    def build(cls, n: int, seed_cells, kind="all", candidates=None) -> "CompatibilitySystem":
        cands = candidates if candidates is not None else enumerate_candidates(n, kind)
        cells = tuple(sorted(seed_cells))
        index = {c.cells: i for i, c in enumerate(cands)}
        if cells not in index:
            raise DomainError(f"seed {cells} is not a candidate of K_{n} x K_{n}")
        return cls(cands, index[cells])


@dataclass
class SearchResult:
    seed: int
    target_size: int
    level_counts: dict[int, int]  # level k = number of k-sets containing the seed
    sets_at_target: list[tuple[int, ...]]
    nodes: int
    kept_levels: dict[int, list[tuple[int, ...]]] = field(default_factory=dict, repr=False)

    @property
    def max_size_found(self) -> int:
        return max((k for k, v in self.level_counts.items() if v), default=0)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "target_size": self.target_size,
            "level_counts": {str(k): v for k, v in sorted(self.level_counts.items())},
            "max_size_found": self.max_size_found,
            "sets_at_target": [list(s) for s in self.sets_at_target],
            "nodes": self.nodes,
        }


def _search_branch(system: CompatibilitySystem, first: int, target: int, keep: set[int], node_budget: int):
    """Depth-first search of families ``{seed, first, ...}`` with later indices increasing."""
    masks, compat = system.masks, system.compat_bits
    seed = system.seed
    counts = [0] * (target + 1)
    kept: dict[int, list] = {k: [] for k in keep}
    nodes = 0
    start_twice = masks[seed] & masks[first]
    start_once = masks[seed] | masks[first]
    start_allowed = compat[seed] & compat[first] & ~((1 << (first + 1)) - 1)
    stack = [(start_allowed, start_once, start_twice, (first,))]
    while stack:
        allowed, once, twice, chosen = stack.pop()
        level = len(chosen) + 1
        counts[level] += 1
        nodes += 1
        if nodes > node_budget:
            raise CapacityError(f"search exceeded {node_budget} nodes", partial=counts)
        if level in kept:
            kept[level].append(tuple(sorted((seed,) + chosen)))
        if level == target:
            continue
        for c in bits(allowed):
            m = masks[c]
            if m & twice:  # some cell would lie in three candidates
                continue
            stack.append((allowed & compat[c] & ~((1 << (c + 1)) - 1), once | m, twice | (once & m), chosen + (c,)))
    return counts, kept, nodes


_SHARED: dict = {}


def _search_worker(firsts):
    system, target, keep, budget = _SHARED["args"]
    total = [0] * (target + 1)
    kept: dict[int, list] = {k: [] for k in keep}
    nodes = 0
    for f in firsts:
        c, k, nd = _search_branch(system, f, target, keep, budget)
        total = [a + b for a, b in zip(total, c)]
        for lvl, sets in k.items():
            kept[lvl].extend(sets)
        nodes += nd
    return total, kept, nodes


def extend_search(system: CompatibilitySystem, target_size: int = 6, keep_levels=(),
                  jobs: int = 1, node_budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    """Count families of pairwise-compatible candidates containing the seed, by size.

    A family is admissible when its members are pairwise compatible and no
    host cell lies in more than two of them.  ``keep_levels`` lists the sizes
    whose families are returned in full; the target level is always kept.
    """
    if target_size < 1:
        raise InvalidParameterError("target size must be positive")
    keep = set(keep_levels) | {target_size}
    seed = system.seed
    firsts = bits(system.compat_bits[seed])
    counts = [0] * (target_size + 1)
    counts[1] = 1
    kept: dict[int, list] = {k: [] for k in keep}
    if 1 in kept:
        kept[1].append((seed,))
    nodes = 1
    if target_size >= 2:
        if jobs > 1 and len(firsts) > 1:
            shards = [firsts[i::jobs] for i in range(jobs)]
            _SHARED["args"] = (system, target_size, keep, node_budget)
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
                parts = list(pool.map(_search_worker, shards))
            _SHARED.clear()
        else:
            parts = [_search_worker_local(system, firsts, target_size, keep, node_budget)]
        for c, k, nd in parts:
            counts = [a + b for a, b in zip(counts, c)]
            for lvl, sets in k.items():
                kept[lvl].extend(sets)
            nodes += nd
    for lvl in kept:
        kept[lvl].sort()
    return SearchResult(seed, target_size, {k: counts[k] for k in range(1, target_size + 1)},
                        kept[target_size], nodes, kept)


def _search_worker_local(system, firsts, target, keep, budget):
    _SHARED["args"] = (system, target, keep, budget)
    try:
        return _search_worker(firsts)
    finally:
        _SHARED.clear()


def brute_force_levels(system: CompatibilitySystem, target_size: int) -> dict[int, int]:
    """Level counts by testing every subset containing the seed; small systems only."""
    others = [i for i in range(len(system.candidates)) if i != system.seed]
    out = {1: 1}
    for k in range(2, target_size + 1):
        out[k] = sum(
            1 for rest in itertools.combinations(others, k - 1)
            if family_admissible(system, (system.seed,) + rest)
        )
    return out


# -- conditions on a finished family --------------------------------------------

def _multiplicity(system: CompatibilitySystem, family) -> dict[int, int]:
    mult: dict[int, int] = {}
    for i in family:
        for c in system.candidates[i].cells:
            mult[c] = mult.get(c, 0) + 1
    return mult


def family_admissible(system: CompatibilitySystem, family) -> bool:
    """Pairwise compatible and every cell in at most two members."""
    if any(not system.pair_ok[a, b] for a, b in itertools.combinations(family, 2)):
        return False
    return max(_multiplicity(system, family).values()) <= 2


def every_cell_twice(system: CompatibilitySystem, family) -> bool:
    """Each cell of the union lies in exactly two members."""
    return all(v == 2 for v in _multiplicity(system, family).values())


def shared_edges_form_matching(system: CompatibilitySystem, family, perfect: bool = False) -> bool:
    """The edges shared by two members are pairwise disjoint; with ``perfect`` they also cover the union."""
    used: set[int] = set()
    union: set[int] = set()
    for a, b in itertools.combinations(family, 2):
        common = set(system.candidates[a].cells) & set(system.candidates[b].cells)
        if common:
            if common & used:
                return False
            used |= common
    for i in family:
        union |= set(system.candidates[i].cells)
    return used == union if perfect else True


def posterior_checks(system: CompatibilitySystem, families) -> dict:
    """Stronger conditions evaluated on a list of families found by the search."""
    families = list(families)
    admissible = sum(family_admissible(system, f) for f in families)
    matching = sum(shared_edges_form_matching(system, f) for f in families)
    twice = sum(every_cell_twice(system, f) for f in families)
    perfect = sum(shared_edges_form_matching(system, f, perfect=True) for f in families)
    return {
        "families": len(families),
        "admissible": admissible,
        "shared_edges_matching": matching,
        "every_cell_twice": twice,
        "perfect_matching": perfect,
        "discrepancies": (len(families) - admissible) + (len(families) - matching),
    }


# -- certificate ------------------------------------------------------------------

def direct_clique_scan(n: int = 5) -> dict:
    """Count ``(x, C)`` with C a maximal clique of Gamma^(n) lying inside ``Gamma_2(x)``."""
    from .field import context_for_n
    from .locgrid import grid_data
    from .symplectic import build_gamma

    g = build_gamma(context_for_n(n), labels=False)
    data = grid_data(g)
    two = g.distances == 2
    hits = 0
    for clique in data.cliques:
        members = bits(clique)
        hits += int(two[:, members].all(axis=1).sum())
    return {"n": n, "vertices": g.n_vertices, "cliques": len(data.cliques), "cliques_inside_gamma2": hits}


def _seed_cells(n: int, seed, candidates: list[MuCandidate]) -> tuple[int, ...]:
    """Cells of a seed given by kind name or explicitly as 0-based cells."""
    if not isinstance(seed, str):
        cells = tuple(sorted(seed))
    elif n == 5 and seed in CANONICAL_SEEDS:
        cells = cells_from_one_based(n, CANONICAL_SEEDS[seed])
    else:
        profile = next(iter(allowed_profiles(n, seed)))
        match = next((c for c in candidates if c.profile == profile), None)
        if match is None:
            raise DomainError(f"no candidate of kind {seed!r} in K_{n} x K_{n}")
        cells = match.cells
    if not any(c.cells == cells for c in candidates):
        raise DomainError(f"seed {cells} is not a candidate of K_{n} x K_{n}")
    return cells


def lemma_no_6clique_certificate(n: int = 5, target_size: int | None = None, alternates: int = 10,
                                 rng_seed: int = 0, jobs: int = 1, direct_scan: bool = True,
                                 enumeration_samples: int = 100_000, seeds=("cyc8", "cyc44"),
                                 expect_empty: bool = True) -> dict:
    """Run the search from each seed kind and package the outcome as a JSON-ready record.

    Raises :class:`CertificateError` when ``expect_empty`` and some family of
    ``target_size`` (default ``n+1``) is found.
    """
    target = n + 1 if target_size is None else target_size
    started = time.perf_counter()
    candidates = enumerate_candidates(n, "all")
    by_profile: dict[str, list[MuCandidate]] = {}
    for c in candidates:
        by_profile.setdefault(",".join(map(str, c.profile)), []).append(c)
    enum_audit = {"method": "sampled", "samples": enumeration_samples,
                  "mismatches": sampled_enumeration_audit(n, candidates, "all", enumeration_samples, rng_seed)} \
        if enumeration_samples else None
    if n <= 4:
        enum_audit = {"method": "exhaustive",
                      "mismatches": int(brute_force_candidates(n, "all") != candidates)}
    pair_ok = compatibility_matrix(candidates)
    rng = random.Random(rng_seed)
    runs = []
    for kind in seeds:
        cells = _seed_cells(n, kind, candidates)
        system = CompatibilitySystem(candidates, [c.cells for c in candidates].index(cells), pair_ok)
        t0 = time.perf_counter()
        res = extend_search(system, target, keep_levels=(target - 1,), jobs=jobs)
        run = {
            "seed_kind": kind if isinstance(kind, str) else "explicit",
            "seed_cells": [list(p) for p in candidates[system.seed].one_based()],
            "seed_profile": list(candidates[system.seed].profile),
            **res.to_dict(),
            "seconds": round(time.perf_counter() - t0, 3),
            "posterior_level_before_target": posterior_checks(system, res.kept_levels.get(target - 1, [])),
        }
        same_kind = [i for i, c in enumerate(candidates) if c.profile == candidates[system.seed].profile]
        alt = []
        for idx in rng.sample(same_kind, min(alternates, len(same_kind))):
            alt_sys = CompatibilitySystem(candidates, idx, pair_ok)
            alt_res = extend_search(alt_sys, target, jobs=jobs)
            alt.append({"seed_cells": [list(p) for p in candidates[idx].one_based()],
                        "max_size_found": alt_res.max_size_found,
                        "level_counts": {str(k): v for k, v in alt_res.level_counts.items()}})
        run["alternate_seeds"] = alt
        run["alternates_agree"] = all(a["max_size_found"] == res.max_size_found for a in alt)
        runs.append(run)
    cert = {
        "host": n,
        "target_size": target,
        "candidate_counts": {k: len(v) for k, v in sorted(by_profile.items())},
        "candidate_checksums": {k: checksum(v) for k, v in sorted(by_profile.items())},
        "pool_checksum": checksum(candidates),
        "enumeration_audit": enum_audit,
        "runs": runs,
        "target_level_empty": all(r["level_counts"][str(target)] == 0 for r in runs),
    }
    if direct_scan and n == 5 and target == 6:
        cert["direct_scan"] = direct_clique_scan(5)
    cert["wall_seconds"] = round(time.perf_counter() - started, 3)
    cert["ok"] = (cert["target_level_empty"] == expect_empty
                  and all(r["alternates_agree"] for r in runs)
                  and (enum_audit is None or enum_audit["mismatches"] == 0)
                  and all(r["posterior_level_before_target"]["discrepancies"] == 0 for r in runs)
                  and cert.get("direct_scan", {}).get("cliques_inside_gamma2", 0) == 0)
    if expect_empty and not cert["target_level_empty"]:
        raise CertificateError(f"found families of size {target}", cert)
    return cert
