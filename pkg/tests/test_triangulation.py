import pytest

from coretorus.layered import BASE_T0_TEXT
from coretorus.triangulation import (ParseError, Triangulation,
                                     TriangulationError, parse_tri,
                                     serialize_tri)

BALL_TEXT = "tets 1\n0: - - - -\n"


def test_parse_serialize_roundtrip():
    for text in (BASE_T0_TEXT, BALL_TEXT):
        tri = parse_tri(text)
        assert serialize_tri(tri) == text
        assert serialize_tri(parse_tri(serialize_tri(tri))) == text


def test_parse_comments_and_spacing():
    messy = "# a solid torus\n tets 1 \n0:  -  - 0:1230   0:3012 # glued pair\n"
    assert serialize_tri(parse_tri(messy)) == BASE_T0_TEXT


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError):
        parse_tri("")
    with pytest.raises(ParseError) as e:
        parse_tri("tets x\n")
    assert e.value.line == 1
    with pytest.raises(ParseError) as e:
        parse_tri("tets 1\n0: - -\n")
    assert e.value.line == 2
    with pytest.raises(ParseError):
        parse_tri("tets 2\n0: - - - -\n")          # missing row
    with pytest.raises(ParseError):
        parse_tri("tets 1\n0: - - 0:12 -\n")       # bad token


def test_involution_violation():
    # face (0,0) claims to glue to (0,1) but (0,1) says boundary
    with pytest.raises(TriangulationError):
        Triangulation([[(0, (1, 0, 2, 3)), None, None, None]])


def test_self_gluing_rejected():
    with pytest.raises(TriangulationError):
        Triangulation([[(0, (0, 1, 2, 3)), None, None, None]])


def test_reversed_edge_rejected():
    # gluing face 0 to face 1 by swapping 0 and 1 reverses their common edges
    glu = [[None] * 4]
    perm = (1, 0, 3, 2)
    glu[0][2] = (0, perm)
    glu[0][3] = (0, perm)
    with pytest.raises(TriangulationError):
        Triangulation(glu)


def test_nonorientable_rejected():
    # an even self-gluing permutation cannot be coherently oriented
    perm = (0, 3, 1, 2)   # sends face 2 to face perm[2] = 1, a 3-cycle on 1,2,3
    inv = (0, 2, 3, 1)
    glu = [[None, perm and (0, inv), (0, perm), None]]
    glu[0][1] = (0, inv)
    with pytest.raises(TriangulationError):
        Triangulation(glu)


def test_ball_skeleton():
    tri = parse_tri(BALL_TEXT)
    sk = tri.skeleton()
    assert (sk.vertex_classes, sk.edge_classes, sk.face_classes) == (4, 6, 4)
    assert sk.euler_characteristic == 1
    bc = tri.boundary_complex
    assert len(bc.components) == 1
    assert bc.component_summary()[0]["euler"] == 2      # sphere
    assert not bc.is_single_torus


def test_solid_torus_skeleton():
    tri = parse_tri(BASE_T0_TEXT)
    sk = tri.skeleton()
    assert (sk.vertex_classes, sk.edge_classes, sk.face_classes) == (1, 3, 3)
    assert sk.euler_characteristic == 0
    assert sorted(sk.edge_degrees) == [1, 2, 3]
    assert all(sk.edge_on_boundary)
    bc = tri.boundary_complex
    assert bc.is_one_vertex_torus
    assert len(bc.bedges) == 3


def test_face_slot_accounting():
    for text in (BASE_T0_TEXT, BALL_TEXT):
        tri = parse_tri(text)
        glued = sum(1 for t in range(tri.tet_count) for f in range(4)
                    if tri.gluings[t][f] is not None)
        assert glued % 2 == 0
        assert glued + len(tri.boundary_faces) == 4 * tri.tet_count


def test_edge_walks_cover_slots():
    tri = parse_tri(BASE_T0_TEXT)
    for ec in tri.edge_classes:
        walk = tri.edge_walk(ec.index)
        seen = {(t, tuple(sorted(d))) for t, d, _, _ in walk["sectors"]}
        assert seen == {(t, e) for t, e in ec.slots}
        assert walk["boundary"] == ec.boundary
