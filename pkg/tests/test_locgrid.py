import networkx as nx
import pytest

from gridlocus.errors import DomainError, HypothesisUnmetError, NotLocallyGridError
from gridlocus.graph import Graph
from gridlocus.locgrid import (clique_distance_audit, detect_locally_grid, five_by_five_audit,
                               mu_clique_matching_audit, parameter_bounds_audit, parity_audit, structural_census)
from gridlocus.reference import johnson

SQUARE = ["gamma3", "gamma5", "j63", "rc4", "hj84", "j105"]


def _nx(g):
    return nx.Graph(list(g.edges()))


@pytest.mark.parametrize("name,shape", [("gamma3", (3, 3)), ("gamma5", (5, 5)), ("gamma7", (7, 7)),
                                        ("j63", (3, 3)), ("rc4", (3, 3)), ("hj84", (4, 4)), ("j105", (5, 5))])
def test_detect(request, name, shape):
    assert detect_locally_grid(request.getfixturevalue(name)) == shape


def test_detect_rectangular():
    assert sorted(detect_locally_grid(johnson(7, 3))) == [3, 4]


def test_neighbourhood_is_grid_by_networkx(gamma5):
    G = _nx(gamma5)
    target = nx.cartesian_product(nx.complete_graph(5), nx.complete_graph(5))
    for v in (0, 17, 77):
        assert nx.is_isomorphic(G.subgraph(G[v]), target)


@pytest.mark.parametrize("name", SQUARE)
def test_structural_census_formulas(request, name):
    g = request.getfixturevalue(name)
    n = detect_locally_grid(g)[0]
    N = g.n_vertices
    census = structural_census(g)
    assert census.ok, census.report.violations
    assert census.n_cliques == N * 2 * n // (n + 1)
    assert census.n_triangles == N * n * n * (n - 1) // 3
    assert census.clique_sizes == [n + 1]
    triangles = sum(nx.triangles(_nx(g)).values()) // 3
    assert census.n_triangles == triangles


def test_structural_census_known_counts(gamma5, j63, rc4):
    assert (structural_census(gamma5).n_cliques, structural_census(gamma5).n_triangles) == (130, 2600)
    assert (structural_census(j63).n_cliques, structural_census(j63).n_triangles) == (30, 120)
    assert (structural_census(rc4).n_cliques, structural_census(rc4).n_triangles) == (24, 96)


@pytest.mark.parametrize("name", SQUARE)
def test_audits_clean(request, name):
    g = request.getfixturevalue(name)
    for audit in (clique_distance_audit, parameter_bounds_audit, mu_clique_matching_audit):
        rep = audit(g)
        assert rep.ok, (audit.__name__, rep.violations[:3])


@pytest.mark.parametrize("name", ["gamma3", "gamma5", "gamma7", "j63", "rc4", "hj84"])
def test_parity_clean(request, name):
    rep = parity_audit(request.getfixturevalue(name))
    assert rep.ok, rep.violations[:3]


def test_parity_needs_large_mu(j105):
    with pytest.raises(HypothesisUnmetError) as info:
        parity_audit(j105)
    x, y = info.value.witness
    assert j105.distances[x, y] == 2 and j105.common_counts[x, y] < 8


def test_mu_clique_sums_are_multiples_of_four(gamma5):
    rep = mu_clique_matching_audit(gamma5)
    assert all(s % 4 == 0 for s in rep.stats["c2_sums_d1"] + rep.stats["c2_sums_d2"])


def test_five_by_five(gamma5, j105):
    rec = five_by_five_audit(gamma5)
    assert rec.branch == "78" and rec.c2_constant_8 and rec.report.ok
    assert rec.eccentricities == [3] and rec.order_div_6
    rec = five_by_five_audit(j105)
    assert rec.branch == "mu<8" and not rec.mu_at_least_8
    assert rec.n_vertices == 252 and rec.order_at_most_300 and rec.order_div_6


def test_five_by_five_wrong_shape(gamma3):
    with pytest.raises(DomainError):
        five_by_five_audit(gamma3)


def test_not_locally_grid(pet):
    with pytest.raises(NotLocallyGridError):
        detect_locally_grid(pet)
    rep = clique_distance_audit(pet)
    assert not rep.ok and rep.violations[0].check == "locally-grid"


def test_claw_rejected():
    claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises((NotLocallyGridError, DomainError)):
        detect_locally_grid(claw)


def test_mu_clique_matching_needs_n3():
    k22_local = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises((DomainError, NotLocallyGridError)):
        mu_clique_matching_audit(k22_local)
