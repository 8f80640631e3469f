from math import comb

import pytest

from gridlocus.drg import antipodal_partition, quotient_graph, srg_check
from gridlocus.errors import CapacityError, InvalidParameterError
from gridlocus.graph import induced, is_rook_grid
from gridlocus.isomorphism import are_isomorphic
from gridlocus.locgrid import detect_locally_grid
from gridlocus.mu import mu_census
from gridlocus.reference import (CORPUS_NAMES, corpus_graph, cycle, halved_antipodal_johnson, johnson, petersen,
                                 rook_complement, rook_grid)


def test_johnson_small_cases(j63, j105):
    assert (j63.n_vertices, j63.degree(0), j63.is_regular()) == (20, 9, True)
    assert (j105.n_vertices, j105.degree(0), j105.is_regular()) == (252, 25, True)
    octa = johnson(4, 2)
    assert octa.n_vertices == 6 and octa.degree(0) == 4
    assert all(are_isomorphic(induced(octa, octa.neighbors(v)), cycle(4)) for v in range(6))


def test_johnson_adjacency_definition():
    g = johnson(7, 3)
    sets = [set(map(int, lab.strip("{}").split(","))) for lab in g.labels]
    for u in range(g.n_vertices):
        for v in range(g.n_vertices):
            assert g.has_edge(u, v) == (len(sets[u] & sets[v]) == 2)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_johnson_locally_grid_with_mu_4(k):
    g = johnson(2 * k, k)
    assert detect_locally_grid(g) == (k, k)
    assert mu_census(g).counts.keys() == {(4,)}


def test_rook_graphs(rc4, grid55):
    assert is_rook_grid(grid55, 5, 5)
    assert (rc4.n_vertices, rc4.degree(0)) == (16, 9)
    assert detect_locally_grid(rc4) == (3, 3)
    assert srg_check(rc4).as_tuple() == (16, 9, 4, 6)
    assert are_isomorphic(rook_complement(3), rook_grid(3, 3))
    assert grid55.labels[7] == "(1,2)"


def test_halved_johnson(hj84, j63):
    assert hj84.n_vertices == 35 and detect_locally_grid(hj84) == (4, 4)
    for k in (2, 3, 4, 5):
        assert halved_antipodal_johnson(2 * k, k).n_vertices == comb(2 * k, k) // 2
    half = halved_antipodal_johnson(6, 3)
    quotient = quotient_graph(j63, antipodal_partition(j63))
    assert half.n_vertices == 10 and are_isomorphic(half, quotient)


def test_errors():
    with pytest.raises(InvalidParameterError):
        johnson(5, 0)
    with pytest.raises(InvalidParameterError):
        halved_antipodal_johnson(7, 3)
    with pytest.raises(CapacityError):
        johnson(30, 15)
    with pytest.raises(InvalidParameterError):
        rook_grid(0, 3)
    with pytest.raises(InvalidParameterError):
        corpus_graph("nope")


def test_corpus_names():
    assert corpus_graph("petersen") == petersen()
    assert len(CORPUS_NAMES) == len(set(CORPUS_NAMES))
    assert corpus_graph("gamma3").n_vertices == 20
