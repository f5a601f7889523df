import pytest

from coretorus.normal import (NormalVector, boundary_counts_match,
                              boundary_curves_from_counts, check_admissible,
                              check_matching, curve_slopes, edge_weight,
                              min_curve_length, reconstruct, total_weight)
from coretorus.slopes import Slope, SlopeTriple, intersection, slope_seq
from coretorus.triangulation import parse_tri

BALL_TEXT = "tets 1\n0: - - - -\n"


def test_vector_basics():
    v = NormalVector([(1, 2, 0, 0, 0, 3, 0)])
    assert v.tri(0, 1) == 2 and v.quad(0, 1) == 3
    assert v.quad_type(0) == 1
    assert v.piece_count() == 6
    assert (2 * v).piece_count() == 12
    assert (v + v) == 2 * v
    assert NormalVector.from_json(v.to_json()) == v
    assert "T 1 2 0 0 | Q 0 3 0" in v.to_text()
    with pytest.raises(ValueError):
        NormalVector([(1, -1, 0, 0, 0, 0, 0)])


def test_admissibility():
    assert check_admissible(NormalVector.zero(2))
    assert not check_admissible(NormalVector([(0, 0, 0, 0, 1, 1, 0)]))
    assert check_admissible(NormalVector([(3, 0, 0, 0, 0, 0, 5)]))


def test_matching_examples(fam):
    tri = fam(0).tri
    assert check_matching(tri, NormalVector.zero(1))[0]
    assert check_matching(tri, NormalVector.vertex_link(tri))[0]
    ok, violations = check_matching(tri, NormalVector([(1, 0, 0, 0, 0, 0, 0)]))
    assert not ok and violations


def test_vertex_link_reconstruction(fam, homology_of):
    tri = fam(0).tri
    s = reconstruct(tri, NormalVector.vertex_link(tri))
    assert s.connected
    assert s.euler_by_component == [1]          # boundary vertex: link is a disc
    assert s.orientable_by_component == [True]
    assert s.weight == 6
    curve_slopes(tri, s, homology_of(0).calibration)
    (curve,) = s.boundary_curves_by_component[0]
    assert curve.length == 6
    assert curve.chain == {}                    # null-homologous on the torus
    assert curve.slope is None and curve.multiplicity == 0


def test_ball_vertex_link_is_four_spheres_worth():
    tri = parse_tri(BALL_TEXT)
    s = reconstruct(tri, NormalVector.vertex_link(tri))
    assert len(s.components) == 4
    assert s.euler_by_component == [1, 1, 1, 1]


def test_minimal_disc_reconstruction(fam, homology_of, minimal_disc):
    tri = fam(0).tri
    d = minimal_disc(0)
    s = d.surface
    assert s.connected and s.euler_by_component == [1]
    assert d.boundary_length == 6 and d.weight == 6
    (curve,) = s.boundary_curves_by_component[0]
    assert curve.multiplicity == 1 and curve.slope == Slope(0, 1)
    # crossings of each boundary edge equal the cut numbers
    cuts = homology_of(0).boundary_edge_cuts
    for e, c in cuts.items():
        assert edge_weight(tri, d.vector, e) == c


def test_doubling_scales_everything(fam, minimal_disc):
    tri = fam(0).tri
    d = minimal_disc(0)
    s1 = d.surface
    s2 = reconstruct(tri, 2 * d.vector)
    assert len(s2.components) == 2 * len(s1.components)
    assert sum(s2.euler_by_component) == 2 * sum(s1.euler_by_component)
    assert s2.weight == 2 * s1.weight
    assert s2.piece_count == 2 * s1.piece_count


def test_weight_additivity(fam):
    tri = fam(1).tri
    a = NormalVector.vertex_link(tri)
    b = 2 * a
    assert total_weight(tri, a) + total_weight(tri, b) == total_weight(tri, a + b)


def test_euler_two_ways_small_vectors(fam):
    from coretorus.search import SearchBudget, enumerate_admissible
    tri = fam(1).tri
    for v in enumerate_admissible(tri, SearchBudget(6)):
        s = reconstruct(tri, v)
        assert s.euler_total == s.euler_from_counts


def test_min_curve_length_formula():
    t = SlopeTriple({Slope(1, 0), Slope(1, 1), Slope(2, 1)})
    assert min_curve_length(t, Slope(0, 1)) == 4
    assert min_curve_length(t, Slope(1, 0)) == 2   # the edge itself: other two
    assert min_curve_length(t, Slope(1, 1)) == 2


def test_min_curve_length_edge_slope_counts_others():
    for i in range(4):
        t = SlopeTriple({slope_seq(i), slope_seq(i + 1), slope_seq(i + 2)})
        for j in (i, i + 1, i + 2):
            s = slope_seq(j)
            others = [e for e in t if e != s]
            assert min_curve_length(t, s) == sum(intersection(s, e) for e in others)


def _side_sum_counts(bc, lt, s):
    """Corner counts of the normal curve with side sums equal to the
    intersection numbers of s with the tracked edge labels."""
    from coretorus.triangulation import FACE_VERTICES
    counts = []
    for i, (t, f) in enumerate(bc.triangles):
        verts = FACE_VERTICES[f]
        side_sum = {}
        for k in range(3):
            pair = bc.side_vertices(i, k)
            be = bc.bedges[bc.bedge_of_side[(i, k)]]
            lab = lt.boundary_slopes[be.manifold_edge]
            side_sum[pair] = intersection(s, lab)
        row = []
        for vtx in verts:
            incident = [p for p in side_sum if vtx in p]
            opposite = next(p for p in side_sum if vtx not in p)
            num = sum(side_sum[p] for p in incident) - side_sum[opposite]
            if num < 0 or num % 2:
                return None
            row.append(num // 2)
        counts.append(row)
    return counts


def test_boundary_curve_oracle_attains_formula(fam, homology_of):
    # the canonical curve with the formula's side sums is connected, has the
    # predicted length, and its label-basis class is the slope it was built
    # from
    from coretorus.layered import label_chain_class
    for i in range(3):
        lt = fam(i)
        bc = lt.tri.boundary_complex
        triple = lt.triple
        for s in [Slope(0, 1), Slope(1, 0), Slope(1, 2), Slope(3, 1), Slope(2, -1)]:
            counts = _side_sum_counts(bc, lt, s)
            if counts is None or s in triple:
                continue
            curves = boundary_curves_from_counts(bc, counts)
            assert len(curves) == 1
            assert curves[0]["length"] == min_curve_length(triple, s)
            mult, got = label_chain_class(lt, curves[0]["chain"])
            assert (mult, got) == (1, s)
