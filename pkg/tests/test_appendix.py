import itertools
import json
import random
from collections import Counter

import pytest

from gridlocus.appendix import (CANONICAL_SEEDS, CompatibilitySystem, MuCandidate, allowed_profiles,
                                brute_force_candidates, brute_force_levels, cells_from_one_based, checksum,
                                compatibility_matrix, compatible, direct_clique_scan, enumerate_candidates,
                                extend_search, lemma_no_6clique_certificate, posterior_checks,
                                profile_of_cells, sampled_enumeration_audit)
from gridlocus.errors import CapacityError, CertificateError, DomainError, InvalidParameterError


@pytest.fixture(scope="module")
def pool5():
    return enumerate_candidates(5, "all")


def naive_levels(cands, seed, target):
    """Unordered admissible families through ``seed``, by plain recursion over ``compatible``."""
    counts = Counter({1: 1})

    def grow(family, start):
        if len(family) == target:
            return
        for j in range(start, len(cands)):
            if j == seed or not all(compatible(cands[j], cands[i]) for i in family):
                continue
            mult = Counter(c for i in family + [j] for c in cands[i].cells)
            if max(mult.values()) > 2:
                continue
            counts[len(family) + 1] += 1
            grow(family + [j], j + 1)

    grow([seed], 0)
    return {k: counts.get(k, 0) for k in range(1, target + 1)}


@pytest.mark.parametrize("n", [3, 4])
def test_enumeration_matches_brute_force(n):
    cands = enumerate_candidates(n, "all")
    assert cands == brute_force_candidates(n, "all")
    assert all(len(c.cells) == 2 * (n - 1) for c in cands)


def test_small_counts():
    assert len(enumerate_candidates(3)) == 9
    assert len(enumerate_candidates(4)) == 96


def test_n5_counts_match_full_brute_force(pool5):
    brute = brute_force_candidates(5, "all")
    assert brute == pool5
    kinds = Counter(c.profile for c in pool5)
    assert kinds == {(8,): 1800, (4, 4): 450}
    assert enumerate_candidates(5, "cyc8") == [c for c in pool5 if c.profile == (8,)]


def test_sampled_audit(pool5):
    assert sampled_enumeration_audit(5, pool5, "all", 5000, 1) == 0
    assert sampled_enumeration_audit(5, [c for c in pool5 if c.profile == (8,)], "all", 5000, 1) > 0


def test_allowed_profiles():
    assert allowed_profiles(5, "all") == {(8,), (4, 4)}
    assert allowed_profiles(7, "all") == {(12,), (4, 8), (6, 6), (4, 4, 4)}
    assert allowed_profiles(7, (4, 8)) == {(4, 8)}
    for n, kind in [(3, "cyc8"), (4, "cyc44"), (5, (4, 6)), (2, "all"), (5, "triangle")]:
        with pytest.raises(InvalidParameterError):
            allowed_profiles(n, kind)


def test_budget_guard():
    with pytest.raises(CapacityError):
        enumerate_candidates(5, "all", budget=100)


def test_canonical_seeds(pool5):
    for name, profile in (("cyc8", (8,)), ("cyc44", (4, 4))):
        cells = cells_from_one_based(5, CANONICAL_SEEDS[name])
        assert profile_of_cells(5, cells) == profile
        cand = next(c for c in pool5 if c.cells == cells)
        assert sorted(cand.one_based()) == sorted(CANONICAL_SEEDS[name])
    with pytest.raises(InvalidParameterError):
        cells_from_one_based(5, [(0, 1)])


def _cand(n, cells):
    cells = tuple(sorted(cells))
    return MuCandidate(n, cells, profile_of_cells(n, cells))


def test_compatible_examples():
    x = _cand(5, cells_from_one_based(5, CANONICAL_SEEDS["cyc8"]))
    assert not compatible(x, x)
    with pytest.raises(DomainError):
        compatible(x, _cand(3, (0, 1, 3, 4)))
    # K_3 x K_3, cell = 3*row + col
    a = _cand(3, (0, 1, 3, 4))
    assert not compatible(a, _cand(3, (4, 5, 7, 8)))  # one shared cell
    assert compatible(a, _cand(3, (1, 2, 4, 5)))  # shares the column edge 1-4
    # K_4 x K_4: two 6-cycles meeting in the non-adjacent cells (0,0) and (1,1)
    y = _cand(4, (0, 1, 5, 6, 10, 8))
    z = _cand(4, (0, 3, 7, 5, 13, 12))
    assert y.profile == z.profile == (6,)
    assert set(y.cells) & set(z.cells) == {0, 5}
    assert not compatible(y, z)
    w = _cand(4, (4, 7, 9, 11, 12, 13))
    assert w.profile == (6,) and compatible(y, w)  # disjoint


def test_matrix_matches_pairwise(pool5):
    rng = random.Random(5)
    sample = rng.sample(pool5, 120)
    mat = compatibility_matrix(sample)
    for i, j in itertools.product(range(len(sample)), repeat=2):
        assert mat[i, j] == compatible(sample[i], sample[j])


@pytest.mark.parametrize("n,target", [(3, 3), (4, 4)])
def test_levels_small_hosts(n, target):
    cands = enumerate_candidates(n)
    system = CompatibilitySystem(cands, 0)
    res = extend_search(system, target)
    assert res.level_counts == brute_force_levels(system, target) == naive_levels(cands, 0, target)


def test_small_host_values():
    assert extend_search(CompatibilitySystem(enumerate_candidates(3), 0), 3).level_counts == {1: 1, 2: 4, 3: 2}
    assert extend_search(CompatibilitySystem(enumerate_candidates(4), 0), 4).level_counts == \
        {1: 1, 2: 21, 3: 60, 4: 44}


@pytest.mark.parametrize("name,expected", [("cyc8", {1: 1, 2: 153, 3: 840, 4: 296, 5: 36, 6: 0}),
                                           ("cyc44", {1: 1, 2: 169, 3: 1152, 4: 368, 5: 36, 6: 0})])
def test_host5_levels(pool5, name, expected):
    system = CompatibilitySystem.build(5, cells_from_one_based(5, CANONICAL_SEEDS[name]), candidates=pool5)
    res = extend_search(system, 6, keep_levels=(5,))
    assert res.level_counts == expected
    assert naive_levels(pool5, system.seed, 6) == expected
    post = posterior_checks(system, res.kept_levels[5])
    assert post["families"] == 36 and post["discrepancies"] == 0


def test_jobs_invariance(pool5):
    system = CompatibilitySystem.build(5, cells_from_one_based(5, CANONICAL_SEEDS["cyc44"]), candidates=pool5)
    assert extend_search(system, 6, jobs=3).level_counts == extend_search(system, 6).level_counts


def test_seed_must_be_candidate(pool5):
    with pytest.raises(DomainError):
        CompatibilitySystem.build(5, (0, 1, 2), candidates=pool5)


def test_direct_scan():
    scan = direct_clique_scan(5)
    assert scan == {"n": 5, "vertices": 78, "cliques": 130, "cliques_inside_gamma2": 0}


def test_certificate_deterministic():
    a = lemma_no_6clique_certificate(alternates=3, enumeration_samples=2000, direct_scan=False)
    b = lemma_no_6clique_certificate(alternates=3, enumeration_samples=2000, direct_scan=False)
    for cert in (a, b):
        cert.pop("wall_seconds")
        for run in cert["runs"]:
            run.pop("seconds")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["ok"] and a["target_level_empty"]
    assert a["candidate_counts"] == {"4,4": 450, "8": 1800}
    assert a["pool_checksum"] == checksum(enumerate_candidates(5))
    assert all(r["alternates_agree"] and r["max_size_found"] == 5 for r in a["runs"])


def test_certificate_raises_when_target_reachable():
    with pytest.raises(CertificateError) as info:
        lemma_no_6clique_certificate(target_size=5, alternates=0, enumeration_samples=0, direct_scan=False)
    assert info.value.certificate["target_level_empty"] is False
    cert = lemma_no_6clique_certificate(target_size=5, alternates=0, enumeration_samples=0, direct_scan=False,
                                       expect_empty=False)
    assert cert["ok"]
