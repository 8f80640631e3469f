import random
from collections import Counter

import networkx as nx
import pytest

from gridlocus.errors import DomainError, HypothesisUnmetError
from gridlocus.field import context_for_n
from gridlocus.mu import (divisor_of, divisor_profile_check, divisor_set, k2_by_mu_table, k2_identities_audit,
                          mu_census, mu_graph)
from gridlocus.reference import johnson


def _nx_profile(g, x, y):
    G = nx.Graph(list(g.edges()))
    common = set(G[x]) & set(G[y])
    sub = G.subgraph(common)
    assert all(d == 2 for _, d in sub.degree())
    return tuple(sorted(len(c) for c in nx.connected_components(sub)))


def _nx_census(g):
    G = nx.Graph(list(g.edges()))
    counts = Counter()
    for x, layers in nx.all_pairs_shortest_path_length(G):
        for y, d in layers.items():
            if d == 2 and y > x:
                sub = G.subgraph(set(G[x]) & set(G[y]))
                counts[tuple(sorted(len(c) for c in nx.connected_components(sub)))] += 1
    return dict(counts)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_census_matches_networkx(gamma_of, n):
    g = gamma_of(n)
    census = mu_census(g)
    assert census.counts == _nx_census(g)
    assert census.report.ok and census.per_vertex_uniform


def test_census_values(gamma_of):
    assert mu_census(gamma_of(3)).counts == {(4,): 90}
    assert mu_census(gamma_of(5)).counts == {(8,): 1950}
    assert mu_census(gamma_of(7)).counts == {(4, 4, 4): 4900, (12,): 9800}


def test_jobs_invariance(gamma_of):
    g = gamma_of(7)
    assert mu_census(g, jobs=3).counts == mu_census(g).counts


def test_mu_graph_symmetry_and_oracle(gamma_of):
    g = gamma_of(7)
    rng = random.Random(3)
    pairs = [(int(x), int(y)) for x, y in zip(*(g.distances == 2).nonzero())]
    for x, y in rng.sample(pairs, 25):
        a, b = mu_graph(g, x, y), mu_graph(g, y, x)
        assert a.profile == b.profile == _nx_profile(g, x, y)
        assert a.vertices == b.vertices and a.order == g.common_counts[x, y]


def test_mu_graph_distance_guard(gamma3):
    with pytest.raises(DomainError):
        mu_graph(gamma3, 0, 0)
    nb = next(iter(gamma3.neighbors(0)))
    with pytest.raises(DomainError):
        mu_graph(gamma3, 0, nb)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_johnson_mu_graphs_are_squares(k):
    census = mu_census(johnson(2 * k, k))
    assert set(census.counts) == {(4,)}


def test_divisor_sets(gamma_of):
    assert divisor_set(mu_census(gamma_of(7))) == {1, 3}
    assert divisor_set(mu_census(gamma_of(9))) == {1}
    for n in (3, 5, 7, 9):
        assert divisor_profile_check(gamma_of(n), context_for_n(n))
    assert divisor_of(("non-2-regular",)) is None
    assert divisor_of((4, 4, 4)) == 3


def test_divisor_check_rejects_mismatched_context(gamma_of):
    with pytest.raises(DomainError):
        divisor_profile_check(gamma_of(5), context_for_n(7))


def test_k2_table_sums(gamma5, j105):
    for g in (gamma5, j105):
        values, table = k2_by_mu_table(g)
        assert (table.sum(axis=1) == (g.distances == 2).sum(axis=1)).all()
        assert set(values.tolist()) == set(g.common_counts[g.distances == 2].tolist())


def test_k2_identities(gamma_of, rc4, hj84):
    rep = k2_identities_audit(gamma_of(5))
    assert rep.ok and rep.stats["per_vertex"] == [(50, 0, 10, 2)]
    rep = k2_identities_audit(gamma_of(7))
    assert rep.ok
    assert k2_identities_audit(rc4).stats["per_vertex"] == [(0, 6, 0, 0)]
    assert k2_identities_audit(hj84).stats["per_vertex"] == [(0, 18, 0, 0)]


def test_k2_identities_independent_counts(gamma_of):
    # k_2 and k_3 straight from BFS layers
    for n in (3, 5, 7):
        g = gamma_of(n)
        G = nx.Graph(list(g.edges()))
        layers = Counter(nx.single_source_shortest_path_length(G, 0).values())
        small, big, ell, k3 = k2_identities_audit(g).stats["per_vertex"][0]
        assert small + big == layers[2] and k3 == layers.get(3, 0)
        assert 2 * (n - 1) * small + 2 * n * big == n * n * (n - 1) ** 2


def test_k2_identities_unmet(j105):
    with pytest.raises(HypothesisUnmetError):
        k2_identities_audit(j105)
