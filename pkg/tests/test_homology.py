import random

from hypothesis import given, settings, strategies as st

from coretorus.homology import (IntegerLattice, boundary_h1, calibrate,
                                first_homology, manifold_h1, mat_mul,
                                smith_normal_form, solid_torus_candidate)
from coretorus.layered import BASE_T0_TEXT
from coretorus.slopes import Slope
from coretorus.triangulation import parse_tri

BALL_TEXT = "tets 1\n0: - - - -\n"


@given(st.lists(st.lists(st.integers(-9, 9), min_size=1, max_size=5),
                min_size=1, max_size=5).filter(
                    lambda rows: len({len(r) for r in rows}) == 1))
@settings(max_examples=80)
def test_snf_transforms(rows):
    D, U, Uinv, V, Vinv = smith_normal_form(rows)
    m, n = len(rows), len(rows[0])
    assert mat_mul(mat_mul(U, rows), V) == D
    ident_m = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    ident_n = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    assert mat_mul(U, Uinv) == ident_m
    assert mat_mul(V, Vinv) == ident_n
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(len(diag) - 1):
        if diag[i + 1] != 0:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        assert diag[i] >= 0
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0


def test_integer_solve():
    lat = IntegerLattice([[2, 0], [0, 3]], 2, 2)
    assert lat.solve([4, 9]) == [2, 3]
    assert lat.solve([1, 0]) is None
    lat2 = IntegerLattice([[1, 1]], 1, 2)
    x = lat2.solve([5])
    assert x is not None and x[0] + x[1] == 5


def test_ball_homology():
    tri = parse_tri(BALL_TEXT)
    h = first_homology(tri)
    assert h.h1_rank == 0 and not h.h1_torsion
    assert h.boundary_map_kernel_slope is None
    assert not solid_torus_candidate(tri).candidate


def test_solid_torus_homology():
    tri = parse_tri(BASE_T0_TEXT)
    h = first_homology(tri)
    assert h.h1_rank == 1 and not h.h1_torsion
    assert h.boundary_map_kernel_slope == Slope(0, 1)
    # the three boundary edges cut the meridian disc 1, 2 and 3 times
    assert sorted(h.boundary_edge_cuts.values()) == [1, 2, 3]
    assert sorted(str(s) for s in h.boundary_edge_slopes.values()) == \
        ["(1,0)", "(2,1)", "(3,1)"]
    assert solid_torus_candidate(tri).candidate


def test_boundary_h1_of_torus_is_z2():
    tri = parse_tri(BASE_T0_TEXT)
    h1b = boundary_h1(tri.boundary_complex)
    assert h1b.rank == 2 and not h1b.torsion


def test_calibration_meridian_class():
    tri = parse_tri(BASE_T0_TEXT)
    cal = calibrate(tri)
    assert cal is not None
    mult, s = cal.slope_of_coords(cal.kernel)
    assert mult == 1 and s == Slope(0, 1)
    assert cal.is_meridian_class(cal.kernel)
    assert not cal.is_meridian_class(cal.lam)
    # the kernel really does die in H1(M)
    assert cal.manifold_image(cal.kernel) == 0
    assert cal.manifold_image(cal.lam) in (1, -1)


def test_class_of_cycle_roundtrip():
    tri = parse_tri(BASE_T0_TEXT)
    h1 = manifold_h1(tri)
    rng = random.Random(7)
    for _ in range(20):
        coords = tuple(rng.randint(-3, 3) for _ in range(h1.rank))
        z = h1.representative_cycle(list(coords))
        assert h1.class_of_cycle(z) == coords
