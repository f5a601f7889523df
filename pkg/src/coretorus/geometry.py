"""Straight-line realization of normal surfaces in exact rational arithmetic.

The k-th crossing point along an edge of weight w sits at parameter
(k+1)/(w+1) measured along the edge class's representative direction, which
makes the ordering of crossing points consistent in every tetrahedron
around the edge.  Arcs are straight segments between their edge points in
the affine structure of each face; triangles are flat; squares are realized
as two flat triangles glued along a chosen diagonal.

All predicates (segment intersection, sidedness) are exact over Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .normal import (QUAD_MISSED, edge_slot_crossings, face_stack,
                     piece_sides_in_face, quad_low_side)
from .triangulation import FACE_VERTICES


# -- exact 2D predicates -----------------------------------------------------

def orient2(p, q, r):
    """Sign of the cross product (q-p) x (r-p)."""
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def on_segment(p, q, r):
    """Is r on the closed segment pq (assuming collinear)?"""
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def segments_intersect(p1, q1, p2, q2):
    """Do the closed segments share any point?"""
    d1 = orient2(p2, q2, p1)
    d2 = orient2(p2, q2, q1)
    d3 = orient2(p1, q1, p2)
    d4 = orient2(p1, q1, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and on_segment(p2, q2, p1):
        return True
    if d2 == 0 and on_segment(p2, q2, q1):
        return True
    if d3 == 0 and on_segment(p1, q1, p2):
        return True
    if d4 == 0 and on_segment(p1, q1, q2):
        return True
    return False


def segments_cross_properly(p1, q1, p2, q2):
    """Transverse interior crossing: endpoints strictly on opposite sides."""
    d1 = orient2(p2, q2, p1)
    d2 = orient2(p2, q2, q1)
    d3 = orient2(p1, q1, p2)
    d4 = orient2(p1, q1, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


# face charts: vertex order FACE_VERTICES[f]; chart drops the first
# barycentric coordinate, so corner 0 is the origin
_CHART = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def face_chart_point(f, vertex_weights):
    """2D chart point of a barycentric combination on face f.

    ``vertex_weights`` maps tetrahedron vertices (of face f) to rationals
    summing to 1.
    """
    verts = FACE_VERTICES[f]
    x = Fraction(0)
    y = Fraction(0)
    for i, v in enumerate(verts):
        w = Fraction(vertex_weights.get(v, 0))
        x += w * _CHART[i][0]
        y += w * _CHART[i][1]
    return (x, y)


def corner_point(f, v):
    return face_chart_point(f, {v: Fraction(1)})


@dataclass
class FaceArc:
    piece: tuple
    cut_vertex: int
    level: int
    p0: tuple               # chart point on the first edge at the cut vertex
    p1: tuple
    plus_side_is_cut: bool  # global + coorientation points at the cut vertex


class GeometrizedSurface:
    """Per face slot: straight arcs with exactly placed endpoints and the
    global transverse orientation; per piece: flat 3D triangles in the
    reference simplex."""

    def __init__(self, tri, surface):
        self.tri = tri
        self.surface = surface
        self.vector = surface.vector
        if not all(surface.orientable_by_component):
            raise ValueError("geometrized coorientation needs a two-sided surface")
        self._piece_id = {p: i for i, p in enumerate(surface.pieces)}
        self._face_arcs = {}
        for t in range(tri.tet_count):
            for f in range(4):
                self._face_arcs[(t, f)] = self._build_face(t, f)

    def edge_point_param(self, t, directed_edge, position):
        """Parameter along the directed tet edge of the crossing at the given
        slot position, i.e. (k+1)/(w+1) in the class direction."""
        w = edge_slot_crossings(self.vector, t, tuple(sorted(directed_edge)))
        return Fraction(position + 1, w + 1)

    def _build_face(self, t, f):
        arcs = []
        v = self.vector
        for vtx in FACE_VERTICES[f]:
            x, y = (u for u in FACE_VERTICES[f] if u != vtx)
            stack = face_stack(v, t, f, vtx)
            for j, piece in enumerate(stack):
                s0 = self.edge_point_param(t, (vtx, x), j)
                s1 = self.edge_point_param(t, (vtx, y), j)
                p0 = face_chart_point(f, {vtx: 1 - s0, x: s0})
                p1 = face_chart_point(f, {vtx: 1 - s1, y: s1})
                pid = self._piece_id[piece]
                plus_is_cut = self.surface.sigma[pid] * piece_sides_in_face(piece, f) == 1
                arcs.append(FaceArc(piece, vtx, j, p0, p1, plus_is_cut))
        return arcs

    def face_arcs(self, t, f):
        return self._face_arcs[(t, f)]

    def arcs_disjoint_in_every_face(self):
        for (t, f), arcs in self._face_arcs.items():
            for i in range(len(arcs)):
                for j in range(i + 1, len(arcs)):
                    if segments_intersect(arcs[i].p0, arcs[i].p1,
                                          arcs[j].p0, arcs[j].p1):
                        return False
        return True

    # -- 3D realization ----------------------------------------------------

    def piece_corners(self, piece):
        """Corner points of a piece in the reference simplex (Q^4 barycentric),
        in cyclic order around the piece."""
        kind, t, a, level = piece
        v = self.vector
        if kind == "tri":
            corners = []
            others = [u for u in range(4) if u != a]
            for x in others:
                s = self.edge_point_param(t, (a, x), level)
                corners.append(self._simplex_point(a, x, s))
            return corners
        # quad: cyclic order around the four crossed edges
        low = sorted(QUAD_MISSED[a][0])
        high = sorted(QUAD_MISSED[a][1])
        cyc = [(low[0], high[0]), (low[0], high[1]), (low[1], high[1]), (low[1], high[0])]
        corners = []
        for u, w in cyc:
            pos = self._quad_edge_position(t, a, level, (u, w))
            s = self.edge_point_param(t, (u, w), pos)
            corners.append(self._simplex_point(u, w, s))
        return corners

    def _quad_edge_position(self, t, q, m, directed_edge):
        u, w = directed_edge
        v = self.vector
        pos_among_quads = m if u in quad_low_side(q) else v.quad(t, q) - 1 - m
        return v.tri(t, u) + pos_among_quads

    @staticmethod
    def _simplex_point(u, w, s):
        pt = [Fraction(0)] * 4
        pt[u] = 1 - s
        pt[w] = s
        return tuple(pt)

    def piece_flat_triangles(self, piece):
        """One triangle for a normal triangle, two (sharing the chosen
        diagonal) for a square.  The diagonal is the one whose endpoints have
        the lexicographically larger pair of edge positions, a documented
        arbitrary-but-fixed choice."""
        corners = self.piece_corners(piece)
        if len(corners) == 3:
            return [tuple(corners)]
        d1 = tuple(sorted((corners[0], corners[2])))
        d2 = tuple(sorted((corners[1], corners[3])))
        if d1 >= d2:
            return [(corners[0], corners[1], corners[2]),
                    (corners[0], corners[2], corners[3])]
        return [(corners[1], corners[2], corners[3]),
                (corners[1], corners[3], corners[0])]

    def transversality_margin(self):
        """A rational smaller than every gap between special points on every
        edge, safe as a perturbation budget for transverse curves."""
        gaps = [Fraction(1)]
        for ec in self.tri.edge_classes:
            t, e = ec.slots[0]
            w = edge_slot_crossings(self.vector, t, e)
            gaps.append(Fraction(1, w + 1))
        return min(gaps) / 4


def geometrize(tri, surface) -> GeometrizedSurface:
    return GeometrizedSurface(tri, surface)
