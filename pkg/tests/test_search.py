import pytest

from coretorus.normal import NormalVector, check_admissible, check_matching
from coretorus.search import (BudgetExhausted, SearchBudget,
                              enumerate_admissible, find_meridian_discs,
                              minimal_complexity_disc, verify_61_1,
                              verify_61_2)
from coretorus.slopes import fib


def test_zero_budget_gives_zero_vector(fam):
    vecs = enumerate_admissible(fam(0).tri, SearchBudget(0))
    assert vecs == [NormalVector.zero(1)]


def test_enumeration_is_exhaustive_and_valid(fam):
    tri = fam(1).tri
    vecs = enumerate_admissible(tri, SearchBudget(8))
    assert len(vecs) == len(set(vecs))
    for v in vecs:
        assert check_admissible(v)
        assert check_matching(tri, v)[0]
        assert v.piece_count() <= 8
    assert NormalVector.vertex_link(tri) in vecs


def test_enumeration_prefix_monotone(fam):
    tri = fam(1).tri
    small = enumerate_admissible(tri, SearchBudget(5))
    big = enumerate_admissible(tri, SearchBudget(8))
    assert big[:len(small)] == small


def test_enumeration_matches_brute_force_on_one_tet(fam):
    # independent oracle: scan the whole coordinate grid of the single
    # tetrahedron and keep what is admissible and matching
    from itertools import product
    tri = fam(0).tri
    budget = 4
    brute = []
    for coords in product(range(budget + 1), repeat=7):
        if sum(coords) > budget:
            continue
        v = NormalVector([coords])
        if check_admissible(v) and check_matching(tri, v)[0]:
            brute.append(v)
    brute.sort(key=lambda v: (v.piece_count(), v.coords))
    assert enumerate_admissible(tri, SearchBudget(budget)) == brute


def test_jobs_do_not_change_output(fam):
    tri = fam(1).tri
    assert enumerate_admissible(tri, SearchBudget(8)) == \
        enumerate_admissible(tri, SearchBudget(8), jobs=3)


def test_weight_budget(fam):
    tri = fam(0).tri
    from coretorus.normal import total_weight
    vecs = enumerate_admissible(tri, SearchBudget(8, max_weight=6))
    assert all(total_weight(tri, v) <= 6 for v in vecs)
    all_vecs = enumerate_admissible(tri, SearchBudget(8))
    manual = [v for v in all_vecs if total_weight(tri, v) <= 6]
    assert vecs == manual


def test_time_limit():
    from coretorus.layered import family
    tri = family(3).tri
    with pytest.raises(BudgetExhausted):
        list(__import__("coretorus.search", fromlist=["x"])._enumerate_raw(
            tri, SearchBudget(40, time_limit=0.0)))
    res = find_meridian_discs(tri, SearchBudget(40, time_limit=0.0))
    assert res.inconclusive and not res.discs


def test_discs_found_and_verified(fam, minimal_disc, homology_of):
    # recorded minima: pieces fib(i+6) - 5, length = sum of the cuts
    expected = {0: (3, 6, 6), 1: (8, 10, 11), 2: (16, 16, 19)}
    for i, (pieces, length, weight) in expected.items():
        d = minimal_disc(i)
        assert d.piece_count == pieces == fib(i + 6) - 5
        assert d.boundary_length == length
        assert d.weight == weight


def test_minimal_disc_length_equals_curve_formula(fam, minimal_disc, homology_of):
    # the minimal disc boundary realizes the shortest normal meridian curve:
    # its length equals the length formula at slope (0,1) over the
    # meridian-calibrated boundary edge slopes
    from coretorus.normal import min_curve_length
    from coretorus.slopes import Slope, SlopeTriple
    for i in range(3):
        h = homology_of(i)
        triple = SlopeTriple(h.boundary_edge_slopes.values())
        assert minimal_disc(i).boundary_length == \
            min_curve_length(triple, Slope(0, 1)) == sum(h.boundary_edge_cuts.values())


def test_no_disc_below_budget(fam):
    res = find_meridian_discs(fam(2).tri, SearchBudget(10))
    assert res.inconclusive and not res.discs


def test_inconclusive_minimal_disc(fam):
    res = minimal_complexity_disc(fam(1).tri, SearchBudget(4))
    assert res.inconclusive and res.disc is None


def test_every_disc_passes_surface_checks(fam, homology_of):
    tri = fam(1).tri
    cal = homology_of(1).calibration
    res = find_meridian_discs(tri, SearchBudget(fib(7) - 4), cal)
    assert res.discs
    for d in res.discs:
        s = d.surface
        assert s.connected and s.euler_by_component == [1]
        assert len(s.boundary_curves_by_component[0]) == 1
        assert cal.is_meridian_class(
            cal.coords_of_cycle(s.boundary_curves_by_component[0][0].chain))


def test_verify_61_1_small():
    for i in range(3):
        rep = verify_61_1(i)
        assert rep.status == "pass"
        assert rep.details["min_pieces"] >= fib(i + 3)
        assert rep.details["min_crossings_of_newest_edge"] >= fib(i + 3)


def test_verify_61_1_inconclusive():
    rep = verify_61_1(2, SearchBudget(6))
    assert rep.status == "inconclusive"


def test_verify_61_2():
    for i in (0, 1, 2, 5, 12, 20):
        rep = verify_61_2(i, 1000)
        assert rep.status == "pass"
    assert verify_61_2(5).details["minimizing_n"] == 1


def test_verify_61_2_brute_force_window():
    # the minimum over the window really is the reported value
    import random
    rng = random.Random(1)
    for _ in range(10):
        i = rng.randint(0, 15)
        rep = verify_61_2(i, 200)
        x, y = fib(i + 3), fib(i + 2)
        vals = [abs(n * x - y) for n in range(-200, 201)]
        assert rep.details["min_intersection"] == min(vals)
