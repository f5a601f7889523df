"""PL curves in the 2-skeleton, transverse push-offs, and certificates.

A PL curve is a cyclic chain of straight segments carried by faces, with
exact rational barycentric coordinates in each face class's representative
slot.  Consecutive segments meet at a common point of a common edge class
(or at an interior point of a common face, which subdivision tests use).

Certificates never trust floating point: embeddedness is exact segment
arithmetic, the pairing with a meridian disc is a signed count of exact
proper crossings against the disc's straightened arcs, and the homology
class of a curve is computed by collapsing each edge crossing to the edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .geometry import (GeometrizedSurface, corner_point, face_chart_point,
                       orient2, segments_cross_properly, segments_intersect)
from .homology import manifold_h1
from .slopes import Slope, at_least_golden_power, fib, intersection, slope_seq
from .triangulation import FACE_VERTICES


class CurveError(ValueError):
    pass


class NonTransverseError(CurveError):
    pass


def _chart(f, weights):
    return face_chart_point(f, weights)


@dataclass(frozen=True)
class Segment:
    face_class: int
    p0: tuple                 # barycentric (3 Fractions), rep-slot vertex order
    p1: tuple


@dataclass
class PLCurve:
    tri: object
    segments: list

    def __post_init__(self):
        if not self.segments:
            raise CurveError("a curve needs at least one segment")
        for seg in self.segments:
            for p in (seg.p0, seg.p1):
                if len(p) != 3 or sum(p) != 1 or any(c < 0 for c in p):
                    raise CurveError(f"bad barycentric point {p}")
                if any(c == 1 for c in p):
                    raise CurveError("curve touches a vertex")
            if seg.p0 == seg.p1:
                raise CurveError("degenerate segment")
        self.junctions = self._junctions()

    def rep_slot(self, seg):
        return self.tri.face_classes[seg.face_class][0]

    def _edge_point(self, seg, which):
        """(edge_class, canonical parameter, pair, slot) when the endpoint is
        on an edge, else None."""
        t, f = self.rep_slot(seg)
        bary = seg.p0 if which == 0 else seg.p1
        verts = FACE_VERTICES[f]
        zeros = [i for i, c in enumerate(bary) if c == 0]
        if not zeros:
            return None
        if len(zeros) != 1:
            raise CurveError("curve touches a vertex")
        a, b = (verts[j] for j in range(3) if j != zeros[0])
        param_ab = bary[verts.index(b)]
        ec = self.tri.edge_class_of[(t, (a, b))]
        sign = self.tri.edge_classes[ec].dir_sign[(t, (a, b))]
        canonical = param_ab if sign == 1 else 1 - param_ab
        return ec, canonical, (a, b), (t, f)

    def _junctions(self):
        """Per cyclic gap between segment k and k+1: either
        ("edge", edge_class, canonical param, exit data, entry data) or
        ("interior", face_class, point)."""
        out = []
        n = len(self.segments)
        for k in range(n):
            a = self.segments[k]
            b = self.segments[(k + 1) % n]
            ea = self._edge_point(a, 1)
            eb = self._edge_point(b, 0)
            if ea is not None and eb is not None:
                if ea[0] != eb[0] or ea[1] != eb[1]:
                    raise CurveError(
                        f"segments {k},{(k + 1) % n} do not meet on a common edge point")
                out.append(("edge", ea[0], ea[1], (a, ea), (b, eb)))
            elif ea is None and eb is None:
                if a.face_class != b.face_class or a.p1 != b.p0:
                    raise CurveError(
                        f"segments {k},{(k + 1) % n} do not share an interior point")
                out.append(("interior", a.face_class, a.p1))
            else:
                raise CurveError(
                    f"segments {k},{(k + 1) % n} mix edge and interior endpoints")
        return out

    @property
    def one_skeleton_hits(self):
        return sum(1 for j in self.junctions if j[0] == "edge")

    def hit_edge_classes(self):
        return [j[1] for j in self.junctions if j[0] == "edge"]

    def carrier_face_classes(self):
        return sorted({s.face_class for s in self.segments})

    def touches_boundary(self):
        tri = self.tri
        for s in self.segments:
            if len(tri.face_classes[s.face_class]) == 1:
                return True
        for j in self.junctions:
            if j[0] == "edge" and tri.edge_classes[j[1]].boundary:
                return True
        return False

    def to_json(self):
        out = []
        for s in self.segments:
            out.append({
                "face": s.face_class,
                "p0": [str(c) for c in s.p0],
                "p1": [str(c) for c in s.p1],
            })
        return out

    @staticmethod
    def from_json(tri, data):
        segs = [Segment(d["face"],
                        tuple(Fraction(c) for c in d["p0"]),
                        tuple(Fraction(c) for c in d["p1"]))
                for d in data]
        return PLCurve(tri, segs)


def _on_segment_strict(a, b, q):
    """Is q on the closed segment ab, excluding the endpoint a == q, b == q?"""
    if q == a or q == b:
        return False
    if orient2(a, b, q) != 0:
        return False
    return (min(a[0], b[0]) <= q[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]))


def is_embedded(curve: PLCurve) -> bool:
    """Exact pairwise disjointness, allowing only the shared junction point
    between cyclically consecutive segments."""
    n = len(curve.segments)
    # distinct edge junctions must be distinct manifold points
    edge_pts = [(j[1], j[2]) for j in curve.junctions if j[0] == "edge"]
    if len(set(edge_pts)) != len(edge_pts):
        return False
    by_face = {}
    for idx, seg in enumerate(curve.segments):
        t, f = curve.rep_slot(seg)
        a = _chart(f, {v: seg.p0[i] for i, v in enumerate(FACE_VERTICES[f])})
        b = _chart(f, {v: seg.p1[i] for i, v in enumerate(FACE_VERTICES[f])})
        by_face.setdefault(seg.face_class, []).append((idx, a, b))
    for fc, segs in by_face.items():
        for (i, a1, b1), (j, a2, b2) in combinations(segs, 2):
            if not segments_intersect(a1, b1, a2, b2):
                continue
            adjacent = (j - i) % n == 1 or (i - j) % n == 1
            if not adjacent or n == 1:
                return False
            shared = {a1, b1} & {a2, b2}
            if len(shared) != 1:
                return False
            p = shared.pop()
            q1 = b1 if a1 == p else a1
            q2 = b2 if a2 == p else a2
            if segments_cross_properly(a1, b1, a2, b2):
                return False
            # overlap along a common line through the junction
            if orient2(p, q1, q2) == 0:
                d1 = (q1[0] - p[0], q1[1] - p[1])
                d2 = (q2[0] - p[0], q2[1] - p[1])
                if d1[0] * d2[0] + d1[1] * d2[1] > 0:
                    return False
            # an endpoint in the other segment's interior
            if _on_segment_strict(a1, b1, q2) or _on_segment_strict(a2, b2, q1):
                return False
    return True


def arcs_per_face(curve: PLCurve):
    """Straight arcs per face class interior (isolated edge points do not
    count), plus the maximum."""
    counts = {}
    for s in curve.segments:
        counts[s.face_class] = counts.get(s.face_class, 0) + 1
    return counts, (max(counts.values()) if counts else 0)


def face_bound_check(curve: PLCurve, bound=10):
    counts, mx = arcs_per_face(curve)
    bad = [fc for fc, c in counts.items() if c > bound]
    return {"max_arcs": mx, "bound": bound, "ok": mx <= bound, "violations": bad}


def _face_runs(curve: PLCurve):
    """Compress the curve to maximal runs within one face, each run carrying
    its entry and exit edge data.  Interior junctions (from subdivision)
    disappear; a curve with no edge junction has no runs."""
    edge_positions = [k for k, j in enumerate(curve.junctions) if j[0] == "edge"]
    if not edge_positions:
        return []
    n = len(curve.segments)
    runs = []
    for idx, k in enumerate(edge_positions):
        nxt = edge_positions[(idx + 1) % len(edge_positions)]
        # the run starts with segment k+1 and ends with segment nxt
        first = (k + 1) % n
        j_in = curve.junctions[k]
        j_out = curve.junctions[nxt]
        runs.append({
            "face_class": curve.segments[first].face_class,
            "entry": j_in[4][1],     # edge data where the run begins
            "exit": j_out[3][1],     # edge data where the run ends
        })
    return runs


def curve_h1_class(curve: PLCurve):
    """Class of the curve in H1(M): collapse each edge junction to a run
    along the edge between the corners cut off by the face paths on its two
    sides."""
    tri = curve.tri
    runs = _face_runs(curve)
    chain = [0] * len(tri.edge_classes)
    m = len(runs)
    for idx, run in enumerate(runs):
        nxt = runs[(idx + 1) % m]
        # junction between run idx (exiting) and run idx+1 (entering)
        ec = run["exit"][0]
        end_a = _cut_corner_end(tri, run["entry"], run["exit"])
        end_b = _cut_corner_end(tri, nxt["exit"], nxt["entry"])
        if end_a != end_b:
            chain[ec] += 1 if end_a == 0 else -1
    return manifold_h1(tri).class_of_cycle(chain)


def _cut_corner_end(tri, other_edge_data, this_edge_data):
    """Which end (0 tail / 1 head of the class representative) of this edge
    the corner shared with the run's other side sits at."""
    ec, canonical, (a, b), (t, f) = this_edge_data
    _, _, other_pair, _ = other_edge_data
    shared = set(other_pair) & {a, b}
    if len(shared) != 1:
        raise CurveError("face run does not join two distinct sides")
    corner = shared.pop()
    sign = tri.edge_classes[ec].dir_sign[(t, (a, b))]
    local_end = 0 if corner == a else 1
    return local_end if sign == 1 else 1 - local_end


def algebraic_intersection(curve: PLCurve, geom: GeometrizedSurface) -> int:
    """Signed crossings of a 2-skeleton curve with a cooriented straightened
    surface: +1 when the curve passes from the surface's negative side to
    its positive side."""
    total = 0
    for seg in curve.segments:
        t, f = curve.rep_slot(seg)
        verts = FACE_VERTICES[f]
        c0 = _chart(f, {v: seg.p0[i] for i, v in enumerate(verts)})
        c1 = _chart(f, {v: seg.p1[i] for i, v in enumerate(verts)})
        for arc in geom.face_arcs(t, f):
            d0 = orient2(arc.p0, arc.p1, c0)
            d1 = orient2(arc.p0, arc.p1, c1)
            if d0 == 0 or d1 == 0:
                if segments_intersect(arc.p0, arc.p1, c0, c1):
                    raise NonTransverseError("curve endpoint on a surface arc")
                continue
            if not segments_cross_properly(arc.p0, arc.p1, c0, c1):
                if segments_intersect(arc.p0, arc.p1, c0, c1):
                    raise NonTransverseError("curve meets a surface arc endpoint")
                continue
            o_cut = orient2(arc.p0, arc.p1, corner_point(f, arc.cut_vertex))
            if o_cut == 0:
                raise NonTransverseError("degenerate surface arc")
            into_cut_side = d1 == o_cut
            into_plus = into_cut_side == arc.plus_side_is_cut
            total += 1 if into_plus else -1
    return total


# ---------------------------------------------------------------------------
# the one-crossing curve certificate (the make-61 search)
# ---------------------------------------------------------------------------

@dataclass
class CurveCertificate:
    curve: PLCurve
    kind: str                     # "pre-core" | "core"
    witness_disc: object          # MeridianDisc or None
    algebraic_pairing: int | None
    winding: int                  # homological class in H1(M) = Z
    one_skeleton_hits: int
    hit_edge_class: int | None
    max_arcs_per_face: int
    max_arcs_per_tet: int | None = None
    embedded: bool = True


def make_61_curve(lt, witness_disc=None) -> CurveCertificate:
    """A pre-core curve in the 2-skeleton meeting the 1-skeleton once.

    ``lt`` is a layered triangulation of the family; the curve is found by
    exhaustive search over one-segment loops in faces that carry the same
    edge class on two of their sides, certified by embeddedness, a single
    1-skeleton crossing on the (1,0)-labeled edge, and winding number one.
    The certificate kind is "core" exactly when the curve misses the
    boundary, which happens from the first layering on.
    """
    tri = lt.tri
    if slope_seq(0) in set(lt.boundary_slopes.values()):
        target_edge = lt.class_with_label(slope_seq(0))
    else:
        # the (1,0) edge is interior once layered; its base-tetrahedron slot
        # still identifies the class
        target_edge = tri.edge_class_of[(0, (0, 1))]
    geom = None
    if witness_disc is not None:
        geom = GeometrizedSurface(tri, witness_disc.surface)

    candidates = []
    for fc_idx, slots in enumerate(tri.face_classes):
        t, f = slots[0]
        verts = FACE_VERTICES[f]
        pairs = list(combinations(verts, 2))
        for k1, k2 in combinations(range(3), 2):
            ec1 = tri.edge_class_of[(t, pairs[k1])]
            ec2 = tri.edge_class_of[(t, pairs[k2])]
            if ec1 == ec2 and ec1 == target_edge:
                candidates.append((fc_idx, t, f, pairs[k1], pairs[k2]))
    params = [Fraction(1, 4), Fraction(3, 4), Fraction(1, 3), Fraction(2, 3),
              Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5)]
    for fc_idx, t, f, pair1, pair2 in candidates:
        ec = tri.edge_class_of[(t, pair1)]
        sign1 = tri.edge_classes[ec].dir_sign[(t, pair1)]
        sign2 = tri.edge_classes[ec].dir_sign[(t, pair2)]
        for u in params:
            u1 = u if sign1 == 1 else 1 - u
            u2 = u if sign2 == 1 else 1 - u
            p0 = _side_point(f, pair1, u1)
            p1 = _side_point(f, pair2, u2)
            if p0 == p1:
                continue
            try:
                curve = PLCurve(tri, [Segment(fc_idx, p0, p1)])
            except CurveError:
                continue
            if curve.one_skeleton_hits != 1:
                continue
            if not is_embedded(curve):
                continue
            winding = curve_h1_class(curve)[0]
            if abs(winding) != 1:
                continue
            pairing = None
            if geom is not None:
                try:
                    pairing = algebraic_intersection(curve, geom)
                except NonTransverseError:
                    continue
                if abs(pairing) != 1:
                    continue
            counts, mx = arcs_per_face(curve)
            kind = "pre-core" if curve.touches_boundary() else "core"
            return CurveCertificate(
                curve=curve, kind=kind, witness_disc=witness_disc,
                algebraic_pairing=pairing, winding=winding,
                one_skeleton_hits=1, hit_edge_class=ec,
                max_arcs_per_face=mx, embedded=True,
            )
    raise CurveError("no one-crossing pre-core curve found; this is a bug")


def _side_point(f, pair, param):
    """Barycentric point on the side with the given vertex pair, at the given
    parameter from the first vertex of the (sorted) pair."""
    verts = FACE_VERTICES[f]
    a, b = pair
    bary = [Fraction(0)] * 3
    bary[verts.index(a)] = 1 - param
    bary[verts.index(b)] = param
    return tuple(bary)


# ---------------------------------------------------------------------------
# transverse push-off and the per-tetrahedron bound
# ---------------------------------------------------------------------------

@dataclass
class Chord:
    tet: int
    entry: tuple        # (face, barycentric point in slot coordinates)
    exit: tuple
    bends: list = field(default_factory=list)


@dataclass
class TransverseCurve:
    tri: object
    chords: list

    def arcs_per_tet(self):
        counts = {}
        for ch in self.chords:
            counts[ch.tet] = counts.get(ch.tet, 0) + 1
        return counts, (max(counts.values()) if counts else 0)

    def endpoints_interior(self):
        for ch in self.chords:
            for f, p in (ch.entry, ch.exit):
                if any(c <= 0 for c in p):
                    return False
        return True


def tet_bound_check(tc: TransverseCurve, bound=18):
    counts, mx = tc.arcs_per_tet()
    bad = [t for t, c in counts.items() if c > bound]
    return {"max_arcs": mx, "bound": bound, "ok": mx <= bound,
            "violations": bad, "endpoints_interior": tc.endpoints_interior()}


def push_off(curve: PLCurve, delta=Fraction(1, 16)) -> TransverseCurve:
    """Displace a 2-skeleton curve to a curve transverse to the 2-skeleton.

    Each segment is pushed into the tetrahedron behind the first slot of its
    carrier face; around each edge junction the displaced curve runs through
    the pages of the edge's link between the two carrier slots, meeting each
    intermediate face in one interior point near the junction.  The chords
    between consecutive face crossings are the per-tetrahedron arcs.
    """
    tri = curve.tri
    if any(j[0] != "edge" for j in curve.junctions):
        raise CurveError("push-off expects a curve with edge junctions only")
    n = len(curve.segments)
    sides = [curve.rep_slot(s) for s in curve.segments]

    # events: cyclic list of oriented face crossings:
    # (entry-side slot and point, exit-side slot and point, tet entered)
    events = []
    for k, j in enumerate(curve.junctions):
        _, ec, u, (seg_a, ea), (seg_b, eb) = j
        slot_a, pair_a = sides[k], ea[2]
        slot_b, pair_b = sides[(k + 1) % n], eb[2]
        walk = tri.edge_walk(ec)
        occs = _page_occurrences(walk)
        key_a = (slot_a, tuple(sorted(pair_a)))
        key_b = (slot_b, tuple(sorted(pair_b)))
        if key_a not in occs or key_b not in occs:
            raise CurveError("carrier face is not a page of the junction edge link")
        for page_idx, s_from, s_to in _sector_steps(walk, occs[key_a], occs[key_b]):
            side_from = _page_side(walk, page_idx, s_from)
            side_to = _page_side(walk, page_idx, s_to)
            pt_from = _near_edge_point(tri, ec, u, side_from[0][0], side_from[0][1],
                                       side_from[1], delta)
            pt_to = _near_edge_point(tri, ec, u, side_to[0][0], side_to[0][1],
                                     side_to[1], delta)
            tet_after = walk["sectors"][s_to][0]
            events.append((side_from[0], pt_from, side_to[0], pt_to, tet_after))

    if not events:
        raise CurveError("push-off crosses no faces; the curve sits in one tetrahedron")
    chords = []
    m = len(events)
    for i, (_, _, slot_to, pt_to, tet_after) in enumerate(events):
        nxt = events[(i + 1) % m]
        chords.append(Chord(tet_after, (slot_to[1], pt_to), (nxt[0][1], nxt[1])))
    return TransverseCurve(tri, chords)


def _page_occurrences(walk):
    """Map (face slot, sorted edge pair) -> the index of the sector behind
    that side of the page."""
    occs = {}
    for i, (t, d, f_in, f_out) in enumerate(walk["sectors"]):
        occs[((t, f_in), tuple(sorted(d)))] = i
        occs[((t, f_out), tuple(sorted(d)))] = i
    return occs


def _page_side(walk, page_idx, sector_idx):
    """((slot, pair)) of the page as seen from the given adjacent sector."""
    t, d, f_in, f_out = walk["sectors"][sector_idx]
    pg_t, pg_f, pg_d = walk["pages"][page_idx]
    pair = tuple(sorted(d))
    if walk["boundary"]:
        if sector_idx == page_idx - 1:
            return ((t, f_out), pair)
        if sector_idx == page_idx:
            return ((t, f_in), pair)
    else:
        n = len(walk["sectors"])
        if sector_idx == page_idx:
            return ((t, f_out), pair)
        if sector_idx == (page_idx + 1) % n:
            return ((t, f_in), pair)
    raise CurveError("sector is not adjacent to the page")


def _sector_steps(walk, sector_a, sector_b):
    """Oriented page crossings (page index, from sector, to sector) leading
    from one sector of an edge link to another, the shorter way around for
    interior edges."""
    n = len(walk["sectors"])
    if walk["boundary"]:
        steps = []
        if sector_a <= sector_b:
            for i in range(sector_a, sector_b):
                steps.append((i + 1, i, i + 1))     # page i+1 splits i | i+1
        else:
            for i in range(sector_a, sector_b, -1):
                steps.append((i, i, i - 1))
        return steps
    fwd, bwd = [], []
    i = sector_a
    while i != sector_b:
        fwd.append((i, i, (i + 1) % n))             # page i splits i | i+1
        i = (i + 1) % n
    i = sector_a
    while i != sector_b:
        j = (i - 1) % n
        bwd.append((j, i, j))
        i = j
    return fwd if len(fwd) <= len(bwd) else bwd


def _near_edge_point(tri, ec, canonical_u, t, f, pair, delta):
    """Interior point of face slot (t, f) at edge-class parameter u along the
    class representative, pushed depth delta off the edge."""
    sign = tri.edge_classes[ec].dir_sign[(t, pair)]
    u = canonical_u if sign == 1 else 1 - canonical_u
    a, b = pair
    c = next(v for v in FACE_VERTICES[f] if v not in pair)
    verts = FACE_VERTICES[f]
    bary = [Fraction(0)] * 3
    bary[verts.index(a)] = (1 - u) * (1 - delta)
    bary[verts.index(b)] = u * (1 - delta)
    bary[verts.index(c)] = delta
    return tuple(bary)


# ---------------------------------------------------------------------------
# boundary pre-core lengths (companion arithmetic to verify 61-2)
# ---------------------------------------------------------------------------

def min_boundary_precore_length(i: int, n_window: int = 50):
    """Minimum 1-skeleton crossings of a boundary pre-core curve (slope
    (1, n)) on the i-th layered triangulation, with exact golden-ratio
    certificates for the lower bounds."""
    triple = [slope_seq(i), slope_seq(i + 1), slope_seq(i + 2)]
    best = None
    best_n = None
    for n in range(-n_window, n_window + 1):
        s = Slope(1, n)
        val = sum(intersection(s, e) for e in triple)
        if best is None or val < best:
            best, best_n = val, n
    x = fib(i + 3)
    ok = (3 * best >= x) and at_least_golden_power(best, i - 1)
    return {
        "i": i,
        "min_length": best,
        "minimizing_n": best_n,
        "bound_third_of_x": Fraction(x, 3),
        "golden_exponent": i - 1,
        "ok": ok,
    }
