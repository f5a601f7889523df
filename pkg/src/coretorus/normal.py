"""Normal surface coordinates and reconstruction.

Coordinates are 7 nonnegative integers per tetrahedron: four triangle counts
(one per cut-off vertex) and three quad counts (one per pair of opposite
edges missed).  Admissibility allows at most one nonzero quad coordinate per
tetrahedron; the matching equations require induced arc counts to agree
across every interior face.

Reconstruction builds the surface cell by cell: edge crossing points,
face arcs with their stacking order, pieces, connected components, Euler
characteristic both from the assembled complex and independently from the
coordinate counts, two-sidedness, and the boundary curves with their slopes
(computed homologically, by collapsing each curve to a loop of boundary
edges, never by assuming minimal position).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .triangulation import FACE_VERTICES, TriangulationError

# quad type q misses the two opposite edges QUAD_MISSED[q]; the side of the
# first (the one containing vertex 0) is the "low" side used to index copies
QUAD_MISSED = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def quad_crosses(q, edge):
    return tuple(sorted(edge)) not in QUAD_MISSED[q]


def quad_cut_vertex(q, f):
    """The vertex cut off by the type-q quad's arc in face f."""
    verts = FACE_VERTICES[f]
    for missed in QUAD_MISSED[q]:
        if missed[0] in verts and missed[1] in verts:
            return next(v for v in verts if v not in missed)
    raise ValueError("a quad misses exactly one edge of every face")


def quad_low_side(q):
    return QUAD_MISSED[q][0]


@dataclass(frozen=True)
class NormalVector:
    """Per tetrahedron: (tri0, tri1, tri2, tri3, q01_23, q02_13, q03_12)."""
    coords: tuple

    def __init__(self, coords):
        coords = tuple(tuple(int(c) for c in row) for row in coords)
        for row in coords:
            if len(row) != 7 or any(c < 0 for c in row):
                raise ValueError("each tetrahedron needs 7 nonnegative coordinates")
        object.__setattr__(self, "coords", coords)

    def tri(self, t, v):
        return self.coords[t][v]

    def quad(self, t, q):
        return self.coords[t][4 + q]

    def quad_type(self, t):
        """The single quad type present in tetrahedron t, or None."""
        types = [q for q in range(3) if self.quad(t, q) > 0]
        if len(types) > 1:
            raise ValueError(f"tetrahedron {t} has two quad types")
        return types[0] if types else None

    def piece_count(self):
        return sum(sum(row) for row in self.coords)

    def __add__(self, other):
        return NormalVector(tuple(tuple(a + b for a, b in zip(r1, r2))
                                  for r1, r2 in zip(self.coords, other.coords)))

    def __rmul__(self, k):
        return NormalVector(tuple(tuple(k * c for c in row) for row in self.coords))

    def to_json(self):
        return [list(row) for row in self.coords]

    def to_text(self):
        lines = []
        for t, row in enumerate(self.coords):
            lines.append(f"tet {t}: T {row[0]} {row[1]} {row[2]} {row[3]} | "
                         f"Q {row[4]} {row[5]} {row[6]}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_json(data):
        return NormalVector(tuple(tuple(row) for row in data))

    @staticmethod
    def zero(tet_count):
        return NormalVector(tuple((0,) * 7 for _ in range(tet_count)))

    @staticmethod
    def vertex_link(tri):
        return NormalVector(tuple((1, 1, 1, 1, 0, 0, 0) for _ in range(tri.tet_count)))


def check_admissible(v: NormalVector) -> bool:
    for t in range(len(v.coords)):
        if sum(1 for q in range(3) if v.quad(t, q) > 0) > 1:
            return False
    return True


def arc_count(v: NormalVector, t, f, vtx):
    """Arcs of the given type (cut-off vertex) in face f of tetrahedron t."""
    n = v.tri(t, vtx)
    q = v.quad_type(t)
    if q is not None and quad_cut_vertex(q, f) == vtx:
        n += v.quad(t, q)
    return n


def check_matching(tri, v: NormalVector):
    """(ok, violations): one linear equation per interior face and arc type."""
    if len(v.coords) != tri.tet_count:
        raise ValueError("coordinate vector does not match the triangulation size")
    violations = []
    for idx, slots in enumerate(tri.face_classes):
        if len(slots) != 2:
            continue
        (t1, f1), (t2, f2) = slots
        perm = tri.gluings[t1][f1][1]
        for vtx in FACE_VERTICES[f1]:
            if arc_count(v, t1, f1, vtx) != arc_count(v, t2, f2, perm[vtx]):
                violations.append((idx, (t1, f1), vtx))
    return (not violations), violations


def edge_slot_crossings(v: NormalVector, t, edge):
    u, w = edge
    n = v.tri(t, u) + v.tri(t, w)
    q = v.quad_type(t)
    if q is not None and quad_crosses(q, edge):
        n += v.quad(t, q)
    return n


def edge_weight(tri, v: NormalVector, edge_class_index):
    """Crossings of the surface with one edge class (all slots agree)."""
    ec = tri.edge_classes[edge_class_index]
    counts = {edge_slot_crossings(v, t, e) for t, e in ec.slots}
    if len(counts) != 1:
        raise TriangulationError(f"inconsistent crossings on edge class {ec.index}")
    return counts.pop()


def total_weight(tri, v: NormalVector):
    return sum(edge_weight(tri, v, ec.index) for ec in tri.edge_classes)


# -- stacking orders ---------------------------------------------------------

def face_stack(v: NormalVector, t, f, vtx):
    """Pieces behind the type-vtx arcs of face f of tet t, nearest vtx first."""
    out = [("tri", t, vtx, j) for j in range(v.tri(t, vtx))]
    q = v.quad_type(t)
    if q is not None and quad_cut_vertex(q, f) == vtx:
        count = v.quad(t, q)
        if vtx in quad_low_side(q):
            out += [("quad", t, q, m) for m in range(count)]
        else:
            out += [("quad", t, q, m) for m in reversed(range(count))]
    return out


def edge_stack(v: NormalVector, t, directed_edge):
    """Pieces crossing the edge, ordered along the given direction."""
    u, w = directed_edge
    out = [("tri", t, u, j) for j in range(v.tri(t, u))]
    q = v.quad_type(t)
    if q is not None and quad_crosses(q, (min(u, w), max(u, w))):
        count = v.quad(t, q)
        if u in quad_low_side(q):
            out += [("quad", t, q, m) for m in range(count)]
        else:
            out += [("quad", t, q, m) for m in reversed(range(count))]
    out += [("tri", t, w, j) for j in reversed(range(v.tri(t, w)))]
    return out


def piece_sides_in_face(piece, f):
    """+1 if the piece's canonical coorientation points toward the vertex its
    arc cuts off in face f (triangles point at their vertex; quads point at
    the high side of the pair of edges they miss)."""
    kind, t, a, _ = piece
    if kind == "tri":
        return 1
    return 1 if quad_cut_vertex(a, f) in QUAD_MISSED[a][1] else -1


# -- reconstruction ----------------------------------------------------------

@dataclass
class Arc:
    face_class: int
    rep_slot: tuple          # (t, f) used for the type/stack coordinates
    cut_vertex: int          # in rep_slot coordinates
    level: int
    sides: tuple             # ((t, f, vtx, piece), ...) one or two entries
    endpoints: tuple = ()    # ((edge_class, canonical_index), ...) length 2


@dataclass
class NormalCurve:
    """One boundary curve component."""
    arcs: list               # arc ids in cyclic order
    crossings: list          # (edge_class, canonical_index) in cyclic order
    triangle_counts: dict    # boundary triangle index -> per-corner counts
    length: int
    chain: dict              # boundary-edge 1-cycle (bedge -> coefficient)
    multiplicity: int = 0    # |class| as a multiple of a primitive slope
    slope: object = None     # Slope or None when null-homologous


@dataclass
class ReconstructedSurface:
    tri: object
    vector: NormalVector
    pieces: list
    components: list          # list of sorted piece-id lists
    euler_by_component: list
    orientable_by_component: list
    boundary_curves_by_component: list
    weight: int
    piece_count: int
    euler_total: int
    euler_from_counts: int
    sigma: dict               # piece id -> +1/-1 transverse orientation, if two-sided
    arcs: list = field(default_factory=list)

    @property
    def connected(self):
        return len(self.components) == 1

    def component_summary(self, i):
        return {
            "euler": self.euler_by_component[i],
            "orientable": self.orientable_by_component[i],
            "boundary_curves": len(self.boundary_curves_by_component[i]),
            "pieces": len(self.components[i]),
        }


def _canonical_edge_index(tri, v, t, directed_edge, position):
    """Slot position along a directed tet edge -> index along the class rep."""
    ec = tri.edge_classes[tri.edge_class_of[(t, tuple(sorted(directed_edge)))]]
    w = edge_slot_crossings(v, t, tuple(sorted(directed_edge)))
    if ec.dir_sign[(t, directed_edge)] == 1:
        return ec.index, position
    return ec.index, w - 1 - position


def reconstruct(tri, v: NormalVector) -> ReconstructedSurface:
    if not check_admissible(v):
        raise ValueError("vector is not admissible")
    ok, violations = check_matching(tri, v)
    if not ok:
        raise ValueError(f"matching equations violated: {violations[:3]}")

    pieces = []
    piece_id = {}
    for t in range(tri.tet_count):
        for vtx in range(4):
            for j in range(v.tri(t, vtx)):
                piece_id[("tri", t, vtx, j)] = len(pieces)
                pieces.append(("tri", t, vtx, j))
        q = v.quad_type(t)
        if q is not None:
            for m in range(v.quad(t, q)):
                piece_id[("quad", t, q, m)] = len(pieces)
                pieces.append(("quad", t, q, m))

    arcs = []
    for fc_idx, slots in enumerate(tri.face_classes):
        t1, f1 = slots[0]
        for vtx in FACE_VERTICES[f1]:
            stack1 = face_stack(v, t1, f1, vtx)
            if len(slots) == 2:
                t2, f2 = slots[1]
                perm = tri.gluings[t1][f1][1]
                stack2 = face_stack(v, t2, f2, perm[vtx])
                if len(stack1) != len(stack2):
                    raise TriangulationError("matching holds but stacks disagree")
            for j, piece in enumerate(stack1):
                sides = [(t1, f1, vtx, piece)]
                if len(slots) == 2:
                    sides.append((t2, f2, perm[vtx], stack2[j]))
                x, y = (u for u in FACE_VERTICES[f1] if u != vtx)
                ends = []
                for other in (x, y):
                    ends.append(_canonical_edge_index(tri, v, t1, (vtx, other), j))
                arcs.append(Arc(fc_idx, (t1, f1), vtx, j, tuple(sides), tuple(ends)))

    uf_parent = list(range(len(pieces)))

    def find(a):
        while uf_parent[a] != a:
            uf_parent[a] = uf_parent[uf_parent[a]]
            a = uf_parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            uf_parent[max(ra, rb)] = min(ra, rb)

    # two-sidedness: sigma * side must agree across every interior arc
    sigma = {}
    relations = []
    for arc in arcs:
        if len(arc.sides) == 2:
            (t1, f1, v1, p1), (t2, f2, v2, p2) = arc.sides
            union(piece_id[p1], piece_id[p2])
            relations.append((piece_id[p1], piece_id[p2],
                              piece_sides_in_face(p1, f1) * piece_sides_in_face(p2, f2)))

    comp_of = {}
    components = {}
    for pid in range(len(pieces)):
        root = find(pid)
        comp_of[pid] = root
        components.setdefault(root, []).append(pid)
    comp_roots = sorted(components)
    comp_index = {root: i for i, root in enumerate(comp_roots)}

    orientable = [True] * len(comp_roots)
    sigma = {pid: None for pid in range(len(pieces))}
    adj = {pid: [] for pid in range(len(pieces))}
    for a, b, rel in relations:
        adj[a].append((b, rel))
        adj[b].append((a, rel))
    for root in comp_roots:
        start = components[root][0]
        sigma[start] = 1
        queue = [start]
        while queue:
            a = queue.pop()
            for b, rel in adj[a]:
                # continuity: sigma * (side the coorientation points to) matches
                want = sigma[a] * rel
                if sigma[b] is None:
                    sigma[b] = want
                    queue.append(b)
                elif sigma[b] != want:
                    orientable[comp_index[root]] = False

    # crossing points, each once per edge class
    weight = total_weight(tri, v)
    crossing_comp = {}
    for ec in tri.edge_classes:
        t, e = ec.slots[0]
        stack = edge_stack(v, t, e)
        for pos, piece in enumerate(stack):
            key = _canonical_edge_index(tri, v, t, e, pos)
            crossing_comp[key] = comp_index[comp_of[piece_id[piece]]]

    # consistency: every slot sees each crossing in the same component
    for ec in tri.edge_classes:
        for t, e in ec.slots:
            stack = edge_stack(v, t, e)
            for pos, piece in enumerate(stack):
                key = _canonical_edge_index(tri, v, t, e, pos)
                if crossing_comp[key] != comp_index[comp_of[piece_id[piece]]]:
                    raise TriangulationError("edge crossing spans two components")

    n_comp = len(comp_roots)
    v_count = [0] * n_comp
    e_count = [0] * n_comp
    f_count = [0] * n_comp
    for key, c in crossing_comp.items():
        v_count[c] += 1
    for arc in arcs:
        c = comp_index[comp_of[piece_id[arc.sides[0][3]]]]
        e_count[c] += 1
    for pid in range(len(pieces)):
        f_count[comp_index[comp_of[pid]]] += 1
    euler_by_component = [v_count[i] - e_count[i] + f_count[i] for i in range(n_comp)]

    # independent Euler characteristic from the coordinates alone
    arcs_from_counts = 0
    for slots in tri.face_classes:
        t1, f1 = slots[0]
        arcs_from_counts += sum(arc_count(v, t1, f1, vtx) for vtx in FACE_VERTICES[f1])
    euler_from_counts = weight - arcs_from_counts + v.piece_count()
    euler_total = sum(euler_by_component)
    if euler_total != euler_from_counts:
        raise TriangulationError("Euler characteristic computations disagree")

    curves = _boundary_curves(tri, v, arcs, piece_id, comp_of, comp_index)
    curves_by_component = [[] for _ in range(n_comp)]
    for comp, curve in curves:
        curves_by_component[comp].append(curve)

    return ReconstructedSurface(
        tri=tri, vector=v, pieces=pieces,
        components=[sorted(components[r]) for r in comp_roots],
        euler_by_component=euler_by_component,
        orientable_by_component=orientable,
        boundary_curves_by_component=curves_by_component,
        weight=weight, piece_count=v.piece_count(),
        euler_total=euler_total, euler_from_counts=euler_from_counts,
        sigma=sigma, arcs=arcs,
    )


def _boundary_curves(tri, v, arcs, piece_id, comp_of, comp_index):
    bc = tri.boundary_complex
    boundary_arcs = [i for i, a in enumerate(arcs)
                     if len(tri.face_classes[a.face_class]) == 1]
    # half-edge pairing: each boundary crossing matches its two arc ends
    by_endpoint = {}
    for i in boundary_arcs:
        for which in (0, 1):
            by_endpoint.setdefault(arcs[i].endpoints[which], []).append((i, which))
    partner = {}
    for end, halves in by_endpoint.items():
        if len(halves) != 2:
            raise TriangulationError(f"boundary crossing {end} has {len(halves)} arc ends")
        partner[halves[0]] = halves[1]
        partner[halves[1]] = halves[0]

    visited = set()
    out = []
    for start_arc in boundary_arcs:
        if (start_arc, 0) in visited:
            continue
        cyc = []                    # (arc id, entry end slot)
        cyc_cross = []
        cur = (start_arc, 0)
        while True:
            a, s = cur
            visited.add((a, s))
            visited.add((a, 1 - s))
            cyc.append(cur)
            exit_half = (a, 1 - s)
            cyc_cross.append(arcs[a].endpoints[1 - s])
            nxt = partner[exit_half]
            if nxt == (start_arc, 0):
                break
            cur = nxt

        tri_counts = {}
        for i, _ in cyc:
            a = arcs[i]
            bi = bc.tri_index[a.rep_slot]
            tri_counts.setdefault(bi, [0, 0, 0])
            corner = list(FACE_VERTICES[a.rep_slot[1]]).index(a.cut_vertex)
            tri_counts[bi][corner] += 1

        chain = {}
        n = len(cyc)
        for k in range(n):
            prev_id, prev_entry = cyc[k]
            next_id, next_entry = cyc[(k + 1) % n]
            ecls, _ = cyc_cross[k]
            bedge = bc.bedge_of_manifold_edge[ecls]
            prev_end = _cut_end(bc, arcs[prev_id], 1 - prev_entry)
            next_end = _cut_end(bc, arcs[next_id], next_entry)
            if prev_end != next_end:
                chain[bedge] = chain.get(bedge, 0) + (1 if prev_end == 0 else -1)

        comp = comp_index[comp_of[piece_id[arcs[start_arc].sides[0][3]]]]
        curve = NormalCurve(
            arcs=[i for i, _ in cyc], crossings=cyc_cross, triangle_counts=tri_counts,
            length=len(cyc), chain={k: c for k, c in chain.items() if c},
        )
        out.append((comp, curve))
    return out


def _cut_end(bc, arc, end_slot):
    """Which end (0/1, in the boundary edge's representative direction) the
    arc's cut vertex sits at, for the arc endpoint in the given slot."""
    t, f = arc.rep_slot
    i = bc.tri_index[(t, f)]
    x, y = (u for u in FACE_VERTICES[f] if u != arc.cut_vertex)
    other = x if end_slot == 0 else y
    pair = tuple(sorted((arc.cut_vertex, other)))
    k = bc.side_of(i, pair)
    return bc.corner_end(i, k, arc.cut_vertex)


def curve_slopes(tri, surface: ReconstructedSurface, calibration):
    """Attach (multiplicity, slope) to every boundary curve, in place."""
    for curves in surface.boundary_curves_by_component:
        for c in curves:
            mult, slope = calibration.slope_of_cycle(c.chain)
            c.multiplicity = mult
            c.slope = slope
    return surface


def min_curve_length(triple, s) -> int:
    """Minimal length of a normal curve of slope s: the sum of its
    intersection numbers with the three boundary edge slopes."""
    from .slopes import intersection
    return sum(intersection(s, e) for e in triple)


# -- standalone normal curves on the boundary surface ------------------------

def boundary_counts_match(bc, counts):
    """Do per-triangle corner counts satisfy the edge matching equations?"""
    for be in bc.bedges:
        sums = set()
        for i, k in be.sides:
            u, v = bc.side_vertices(i, k)
            verts = FACE_VERTICES[bc.triangles[i][1]]
            sums.add(counts[i][verts.index(u)] + counts[i][verts.index(v)])
        if len(sums) != 1:
            return False
    return True


def boundary_curves_from_counts(bc, counts):
    """Reconstruct the normal multicurve on the boundary surface with the
    given corner arc counts: one record per component, with its length and
    its boundary-edge 1-cycle (for the homology class)."""
    if not boundary_counts_match(bc, counts):
        raise ValueError("corner counts violate the matching equations")

    arcs = []        # (triangle, corner vertex, level)
    for i, (t, f) in enumerate(bc.triangles):
        verts = FACE_VERTICES[f]
        for pos, vtx in enumerate(verts):
            for level in range(counts[i][pos]):
                arcs.append((i, vtx, level))

    def endpoints(arc):
        i, vtx, level = arc
        t, f = bc.triangles[i]
        verts = FACE_VERTICES[f]
        out = []
        for other in (u for u in verts if u != vtx):
            pair = tuple(sorted((vtx, other)))
            k = bc.side_of(i, pair)
            be = bc.bedges[bc.bedge_of_side[(i, k)]]
            c_a = counts[i][verts.index(pair[0])]
            c_b = counts[i][verts.index(pair[1])]
            pos = level if vtx == pair[0] else c_a + c_b - 1 - level
            sign = be.sign[(i, pair)]
            canonical = pos if sign == 1 else c_a + c_b - 1 - pos
            out.append((be.index, canonical))
        return tuple(out)

    ends = {}
    for idx, arc in enumerate(arcs):
        for which, pt in enumerate(endpoints(arc)):
            ends.setdefault(pt, []).append((idx, which))
    partner = {}
    for pt, halves in ends.items():
        if len(halves) != 2:
            raise ValueError(f"crossing {pt} has {len(halves)} arc ends")
        partner[halves[0]] = halves[1]
        partner[halves[1]] = halves[0]

    visited = set()
    out = []
    for start in range(len(arcs)):
        if (start, 0) in visited:
            continue
        cyc = []
        cur = (start, 0)
        while True:
            a, s = cur
            visited.add((a, s))
            visited.add((a, 1 - s))
            cyc.append(cur)
            nxt = partner[(a, 1 - s)]
            if nxt == (start, 0):
                break
            cur = nxt
        chain = {}
        n = len(cyc)
        for k in range(n):
            a_id, a_in = cyc[k]
            b_id, b_in = cyc[(k + 1) % n]
            pt = endpoints(arcs[a_id])[1 - a_in]
            be_idx = pt[0]
            end_a = _corner_end_of_arc(bc, arcs[a_id], 1 - a_in)
            end_b = _corner_end_of_arc(bc, arcs[b_id], b_in)
            if end_a != end_b:
                chain[be_idx] = chain.get(be_idx, 0) + (1 if end_a == 0 else -1)
        out.append({
            "arcs": [arcs[a] for a, _ in cyc],
            "length": n,
            "chain": {k: c for k, c in chain.items() if c},
        })
    return out


def _corner_end_of_arc(bc, arc, end_slot):
    i, vtx, level = arc
    t, f = bc.triangles[i]
    others = [u for u in FACE_VERTICES[f] if u != vtx]
    other = others[end_slot]
    pair = tuple(sorted((vtx, other)))
    k = bc.side_of(i, pair)
    return bc.corner_end(i, k, vtx)
