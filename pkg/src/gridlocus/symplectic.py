"""The locally n x n grid graph built from R-cosets of a symplectic plane.

Vertices are the orbits ``Ru`` of nonzero vectors ``u = a e + b f`` of
GF(q)^2 under the index-``r`` subgroup R of GF(q)*, and ``Ru ~ Rv`` iff
``a_u b_v - b_u a_v`` lies in R.

Canonical representatives: R shifts discrete logs by multiples of ``r``, so
scaling ``u`` until its first nonzero coordinate has discrete log in
``[0, r)`` picks out exactly one vector per orbit.  The vertex list is

    index j*q + b   for (omega^j, b),  0 <= j < r, b in GF(q)
    index r*q + j   for (0, omega^j),  0 <= j < r

which makes ``vertex_index`` O(1).
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, DomainError, InvalidParameterError
from .field import FieldContext
from .graph import CycleProfile, Graph, cycle_lengths, mask_of, vertex_cap


class SymVector(NamedTuple):
    """The vector ``a*e + b*f``; field elements are packed ints."""
    a: int
    b: int


VertexId = SymVector  # always held in canonical form


def symplectic_form(ctx: FieldContext, u: SymVector, v: SymVector) -> int:
    return ctx.sub(ctx.mul(u.a, v.b), ctx.mul(u.b, v.a))


def canonical_vertex(ctx: FieldContext, u: SymVector) -> VertexId:
    a, b = u
    if a == 0 and b == 0:
        raise DomainError("the zero vector is not a vertex")
    lead = a if a else b
    shift = -(ctx.dlog(lead) // ctx.r) * ctx.r  # rho = omega^shift lies in R
    rho = ctx.omega_pow(shift)
    return SymVector(ctx.mul(rho, a), ctx.mul(rho, b))


def scale(ctx: FieldContext, gamma: int, u: SymVector) -> SymVector:
    return SymVector(ctx.mul(gamma, u.a), ctx.mul(gamma, u.b))


def adjacent(ctx: FieldContext, u: VertexId, v: VertexId) -> bool:
    return ctx.in_R(symplectic_form(ctx, u, v))


def vertex_count(n: int) -> int:
    return (n * n + 1) * (n + 1) // 2


def vertices(ctx: FieldContext) -> list[VertexId]:
    q, r = ctx.q, ctx.r
    out = [SymVector(ctx.omega_pow(j), b) for j in range(r) for b in range(q)]
    out += [SymVector(0, ctx.omega_pow(j)) for j in range(r)]
    return out


def vertex_index(ctx: FieldContext, v: VertexId) -> int:
    """Position of a canonical vertex in :func:`vertices`."""
    a, b = v
    if a:
        j = ctx.dlog(a)
        if j >= ctx.r:
            raise DomainError(f"{v} is not canonical")
        return j * ctx.q + b
    if b == 0:
        raise DomainError("the zero vector is not a vertex")
    j = ctx.dlog(b)
    if j >= ctx.r:
        raise DomainError(f"{v} is not canonical")
    return ctx.r * ctx.q + j


def vertex_label(v: VertexId) -> str:
    return f"{v.a},{v.b}"


@lru_cache(maxsize=8)
def _vertex_arrays(ctx: FieldContext) -> tuple[np.ndarray, np.ndarray]:
    vs = vertices(ctx)
    a = np.fromiter((v.a for v in vs), dtype=np.int64, count=len(vs))
    b = np.fromiter((v.b for v in vs), dtype=np.int64, count=len(vs))
    return a, b


@lru_cache(maxsize=8)
def _sub_table(ctx: FieldContext) -> np.ndarray | None:
    if ctx.q > 2048:
        return None
    x = np.arange(ctx.q)
    return ctx.vsub(x[:, None], x[None, :]).astype(np.int32)


def _form_values(ctx: FieldContext, ua, ub, va, vb) -> np.ndarray:
    """Vectorised ``ua*vb - ub*va`` with numpy broadcasting."""
    left = ctx.vmul(ua, vb)
    right = ctx.vmul(ub, va)
    table = _sub_table(ctx)
    if table is not None:
        return table[left, right]
    return ctx.vsub(left, right)


def in_R_mask(ctx: FieldContext, values) -> np.ndarray:
    return ctx.r_member[np.asarray(values)]


def build_gamma(ctx: FieldContext, cap: int | None = None, labels: bool = True) -> Graph:
    """Full graph on all ``(n^2+1)(n+1)/2`` cosets."""
    cap = vertex_cap() if cap is None else cap
    count = vertex_count(ctx.n)
    if count > cap:
        raise CapacityError(f"graph would have {count} vertices, cap is {cap}")
    a, b = _vertex_arrays(ctx)
    adj = np.zeros((count, count), dtype=bool)
    chunk = max(1, 4_000_000 // count)
    for start in range(0, count, chunk):
        stop = min(count, start + chunk)
        vals = _form_values(ctx, a[start:stop, None], b[start:stop, None], a[None, :], b[None, :])
        adj[start:stop] = ctx.r_member[vals]
    names = [vertex_label(v) for v in vertices(ctx)] if labels else None
    return Graph.from_matrix(adj, labels=names)


def antipodal_block_of(ctx: FieldContext, u: VertexId) -> frozenset[VertexId]:
    """All cosets ``R'u``; the ``r`` multiples ``omega^j u`` hit each coset once."""
    return frozenset(canonical_vertex(ctx, scale(ctx, ctx.omega_pow(j), u)) for j in range(ctx.r))


def neighborhood_adjacency_oracle(ctx: FieldContext, alpha: int, alpha2: int) -> bool:
    """Predicted adjacency of ``R(alpha e + f)`` and ``R(alpha2 e + f)``."""
    if alpha == alpha2:
        raise DomainError("need two distinct field elements")
    s, t = ctx.even_odd_split(alpha), ctx.even_odd_split(alpha2)
    return (s.ev == t.ev) != (s.odd == t.odd)


def _check_distance_two(ctx: FieldContext, beta: int):
    if beta == 0 or ctx.in_R(beta):
        raise DomainError(f"beta={beta} lies in R or is zero; Re and R beta^-1 f are then not at distance 2")


def mu_cycle_oracle(ctx: FieldContext, beta: int) -> CycleProfile:
    """Predicted mu-graph of ``Re`` and ``R beta^-1 f``: ``d`` cycles of equal length."""
    _check_distance_two(ctx, beta)
    ev, odd = ctx.even_odd_split(beta)
    assert ev and odd, "beta outside R has both split parts nonzero"
    length = ctx.mult_order(ctx.div(ev, odd))
    d = 2 * (ctx.n - 1) // length
    return (length,) * d


def odd_divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1, 2) if k % d == 0]


def realize_divisor(ctx: FieldContext, d: int) -> tuple[VertexId, VertexId, int]:
    """``(Re, R beta^-1 f, beta)`` whose mu-graph is ``d`` cycles."""
    n = ctx.n
    if d < 1 or d % 2 == 0 or (n - 1) % d:
        raise InvalidParameterError(f"d={d} is not an odd divisor of {n - 1}")
    beta = ctx.add(1, ctx.omega_pow(-ctx.r * d))
    x = canonical_vertex(ctx, SymVector(1, 0))
    y = canonical_vertex(ctx, SymVector(0, ctx.inv(beta)))
    return x, y, beta


def common_neighbors_local(ctx: FieldContext, x: VertexId, y: VertexId) -> list[VertexId]:
    """Common neighbours of two vertices straight from the form, no graph needed."""
    a, b = _vertex_arrays(ctx)
    bx = _form_values(ctx, x.a, x.b, a, b)
    by = _form_values(ctx, y.a, y.b, a, b)
    hits = np.flatnonzero(ctx.r_member[bx] & ctx.r_member[by])
    return [SymVector(int(a[i]), int(b[i])) for i in hits]


def local_mu_profile(ctx: FieldContext, x: VertexId, y: VertexId) -> CycleProfile:
    common = common_neighbors_local(ctx, x, y)
    if not common:
        return ()
    ca = np.array([v.a for v in common])
    cb = np.array([v.b for v in common])
    adj = ctx.r_member[_form_values(ctx, ca[:, None], cb[:, None], ca[None, :], cb[None, :])]
    rows = [mask_of(np.flatnonzero(row).tolist()) for row in adj]
    return cycle_lengths(rows, (1 << len(common)) - 1)


def local_mu_crosscheck(ctx: FieldContext, beta: int) -> bool:
    """Does direct enumeration of the mu-graph of ``Re, R beta^-1 f`` match the oracle?"""
    predicted = mu_cycle_oracle(ctx, beta)
    x = canonical_vertex(ctx, SymVector(1, 0))
    y = canonical_vertex(ctx, SymVector(0, ctx.inv(beta)))
    common = common_neighbors_local(ctx, x, y)
    if len(common) != 2 * (ctx.n - 1):
        return False
    return local_mu_profile(ctx, x, y) == predicted


def divisor_of_profile(profile: CycleProfile) -> int | None:
    """Number of cycles if all have equal length, else None."""
    if not profile or len(set(profile)) != 1:
        return None
    return len(profile)


def beta_of_vertex(ctx: FieldContext, y: VertexId) -> int:
    """For ``y = R(0, b)`` return ``beta = b^-1`` so that ``y = R beta^-1 f``."""
    if y.a != 0:
        raise DomainError(f"{y} is not of the form R beta^-1 f")
    return ctx.inv(y.b)

