import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridlocus.errors import DomainError
from gridlocus.graph import (Graph, bfs_profile, bits, common_neighbors, cycle_lengths, induced, is_rook_grid,
                             layer_neighbor_counts, local_grid_cliques, mask_of, maximal_cliques, rook_grid_mask)
from gridlocus.isomorphism import are_isomorphic
from gridlocus.reference import complete, cycle, path, rook_grid


@st.composite
def random_graphs(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n_vertices))
    h.add_edges_from(g.edges())
    return h


@given(st.sets(st.integers(0, 200)))
def test_bits_roundtrip(vs):
    assert bits(mask_of(vs)) == sorted(vs)


def test_graph_validation():
    with pytest.raises(DomainError):
        Graph(2, [0b10, 0])
    with pytest.raises(DomainError):
        Graph(1, [0b1])
    with pytest.raises(DomainError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(DomainError):
        Graph.from_matrix([[0, 1], [0, 0]])


@given(random_graphs())
@settings(max_examples=80, deadline=None)
def test_distances_match_networkx(g):
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    d = g.distances
    for x in range(g.n_vertices):
        for y in range(g.n_vertices):
            assert d[x, y] == ref[x].get(y, -1)
    assert g.is_connected() == (g.n_vertices == 0 or nx.is_connected(to_nx(g)))


@given(random_graphs(), st.data())
@settings(max_examples=60, deadline=None)
def test_bfs_profile_symmetric_and_triangle(g, data):
    d = g.distances
    x = data.draw(st.integers(0, g.n_vertices - 1))
    prof = bfs_profile(g, x)
    assert prof.dist == d[x].tolist()
    assert sum(prof.k) == int((d[x] >= 0).sum())
    assert (d == d.T).all()
    for y, z in itertools.product(range(g.n_vertices), repeat=2):
        if d[x, y] >= 0 and d[y, z] >= 0:
            assert d[x, z] <= d[x, y] + d[y, z]


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_common_counts(g):
    cc = g.common_counts
    for x, y in itertools.combinations(range(g.n_vertices), 2):
        assert cc[x, y] == len(common_neighbors(g, x, y))


@given(random_graphs(max_n=16))
@settings(max_examples=80, deadline=None)
def test_maximal_cliques_match_networkx_and_brute_force(g):
    ours = maximal_cliques(g)
    assert ours == sorted(tuple(sorted(c)) for c in nx.find_cliques(to_nx(g)))
    for c in ours:
        assert all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
        outside = [w for w in range(g.n_vertices) if w not in c]
        assert not any(all(g.has_edge(w, u) for u in c) for w in outside)


def test_local_grid_cliques_agree_with_generic(gamma5, j63, rc4):
    for g in (gamma5, j63, rc4):
        assert local_grid_cliques(g) == maximal_cliques(g)


def test_local_grid_cliques_rejects_wrong_shape():
    # edge 0-1 has three pairwise non-adjacent common neighbours
    claw = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    with pytest.raises(DomainError):
        local_grid_cliques(claw)


def test_is_rook_grid_agrees_with_isomorphism(gamma3, j63, rc4, hj84, grid55, pet):
    corpus = [gamma3, j63, rc4, hj84, grid55, pet, rook_grid(3, 4), rook_grid(2, 5), cycle(4), complete(5)]
    for g in corpus:
        N = g.n_vertices
        for m in range(1, N + 1):
            if N % m or m > N // m:
                continue
            assert is_rook_grid(g, m, N // m) == are_isomorphic(g, rook_grid(m, N // m)), (N, m)


def test_rook_grid_mask_on_neighbourhoods(gamma5, j105):
    for g, n in ((gamma5, 5), (j105, 5)):
        for v in range(0, g.n_vertices, 7):
            assert rook_grid_mask(g.rows, g.rows[v], n, n)


def test_cycle_lengths():
    two = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4)])
    assert cycle_lengths(two.rows, (1 << 10) - 1) == (4, 6)
    with pytest.raises(DomainError):
        cycle_lengths(path(4).rows, 0b1111)


def test_induced_and_relabel(gamma5):
    sub = induced(gamma5, gamma5.neighbors(0))
    assert is_rook_grid(sub, 5, 5)
    perm = list(np.random.default_rng(0).permutation(gamma5.n_vertices))
    moved = gamma5.relabel(perm)
    assert moved.n_edges == gamma5.n_edges
    assert all(moved.has_edge(perm[u], perm[v]) for u, v in gamma5.edges())


def test_complement_and_diameter():
    c5 = cycle(5)
    assert are_isomorphic(c5, c5.complement())
    assert c5.diameter() == 2
    with pytest.raises(DomainError):
        Graph.from_edges(3, [(0, 1)]).diameter()


def test_layer_neighbor_counts(gamma5):
    m = layer_neighbor_counts(gamma5)
    d = gamma5.distances
    x, y = np.argwhere(d == 2)[0]
    assert (m[1][x, y], m[2][x, y], m[3][x, y]) == (8, 16, 1)


def test_bfs_profile_with_mu(gamma5):
    prof = bfs_profile(gamma5, 0, with_mu=True, n=5)
    assert prof.k == [1, 25, 50, 2]
    assert prof.k_2_by_mu == {8: 50}
    assert prof.ell_x == 10
