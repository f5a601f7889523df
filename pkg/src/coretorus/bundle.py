"""Cutting along a normal surface and the parallelity bundle.

Cutting the solid torus along a meridian disc leaves, in each tetrahedron,
vertex caps, one or two central chunks, and parallelity slabs between
adjacent parallel pieces.  The parallelity bundle is bigger than the union
of those tetrahedron slabs: between two adjacent parallel arcs in a face
lies a parallelity rectangle of the face's thickening, and between two
consecutive crossing points on an edge lies a slab of the edge's thickening
(always a product piece, whatever the flanking pieces are).  The bundle's
base surface F is therefore assembled from three kinds of 2-cells:

  P cells: slabs between consecutive same-type pieces in a tetrahedron,
  R cells: rectangles between consecutive arcs of one corner stack of a face,
  Q cells: slabs between consecutive crossing points of an edge,

glued along canonically named 1-cells, with 0-cells named by (tetrahedron,
edge pair, crossing gap, adjacent face).  Components, base Euler
characteristics, base orientability (product versus twisted) and the
contacts with the two disc copies and the annulus A all come out of this
complex by counting and 2-coloring.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .normal import (NormalVector, QUAD_MISSED, arc_count, edge_slot_crossings,
                     edge_weight, edge_stack, face_stack, piece_sides_in_face,
                     quad_cut_vertex, quad_low_side, reconstruct)
from .triangulation import FACE_VERTICES, TriangulationError


# ---------------------------------------------------------------------------
# region decomposition of the cut manifold
# ---------------------------------------------------------------------------

def tet_regions(v: NormalVector, t):
    """Closures of the components of the tetrahedron minus the surface."""
    regions = []
    q = v.quad_type(t)
    qc = v.quad(t, q) if q is not None else 0
    for vtx in range(4):
        if v.tri(t, vtx) >= 1:
            regions.append(("cap", vtx))
        for k in range(v.tri(t, vtx) - 1):
            regions.append(("tslab", vtx, k))
    for m in range(qc - 1):
        regions.append(("qslab", m))
    if qc:
        regions.append(("central", "low"))
        regions.append(("central", "high"))
    else:
        regions.append(("central", None))
    return regions


def region_sweep_oracle(v: NormalVector, t):
    """Independent region list: sweep positions along each corner stack and
    across the quad stack, one region per achievable position."""
    out = []
    q = v.quad_type(t)
    qc = v.quad(t, q) if q is not None else 0
    for vtx in range(4):
        for depth in range(v.tri(t, vtx)):
            out.append(("cap", vtx) if depth == 0 else ("tslab", vtx, depth - 1))
    for pos in range(qc + 1):
        if pos == 0:
            out.append(("central", "low") if qc else ("central", None))
        elif pos == qc:
            out.append(("central", "high"))
        else:
            out.append(("qslab", pos - 1))
    return out


def _central_side(q, vtx):
    return "low" if vtx in quad_low_side(q) else "high"


def region_behind_face_bit(v: NormalVector, t, f, bit):
    """The tetrahedron region whose closure contains the given face bit.

    Face bits: ("corner", vtx, k) is the piece of the face containing the
    corner (k = 0) or lying between arcs k-1 and k of the vtx stack;
    ("central",) is the hexagonal middle.
    """
    q = v.quad_type(t)
    qc = v.quad(t, q) if q is not None else 0
    if bit[0] == "central":
        if qc == 0:
            return ("central", None)
        vq = quad_cut_vertex(q, f)
        return ("central", "high" if _central_side(q, vq) == "low" else "low")
    _, vtx, k = bit
    stack = face_stack(v, t, f, vtx)
    if k == 0:
        if v.tri(t, vtx) >= 1:
            return ("cap", vtx)
        return ("central", _central_side(q, vtx))
    lo, hi = stack[k - 1], stack[k]
    if lo[0] == "tri" and hi[0] == "tri":
        return ("tslab", vtx, lo[3])
    if lo[0] == "quad" and hi[0] == "quad":
        return ("qslab", min(lo[3], hi[3]))
    return ("central", _central_side(q, vtx))


def face_bits(v: NormalVector, t, f):
    bits = [("central",)]
    for vtx in FACE_VERTICES[f]:
        for k in range(arc_count(v, t, f, vtx)):
            bits.append(("corner", vtx, k))
    return bits


@dataclass
class CutComplex:
    tri: object
    vector: NormalVector
    surface: object
    regions: dict                  # (t, region) -> node index
    adjacency: list                # sorted node-index pairs
    components: list               # list of sorted node lists
    euler_cut: int
    a_patch_count: int
    sheet_patches: dict            # piece id -> labels of its (plus, minus) sides

    @property
    def component_count(self):
        return len(self.components)

    def regions_in_bundle(self):
        return [key for key in self.regions if key[1][0] in ("tslab", "qslab")]


def cut_along(tri, disc) -> CutComplex:
    """Cut the manifold along a two-sided normal surface.

    ``disc`` may be a NormalVector or anything with a ``vector`` attribute.
    """
    v = disc if isinstance(disc, NormalVector) else disc.vector
    surface = reconstruct(tri, v)
    if not all(surface.orientable_by_component):
        raise ValueError("cutting code requires a two-sided surface")

    regions = {}
    for t in range(tri.tet_count):
        for r in tet_regions(v, t):
            regions[(t, r)] = len(regions)
        if sorted(tet_regions(v, t)) != sorted(region_sweep_oracle(v, t)):
            raise TriangulationError("region decomposition disagrees with the sweep")

    adjacency = set()
    a_patches = 0
    for slots in tri.face_classes:
        t1, f1 = slots[0]
        for bit in face_bits(v, t1, f1):
            r1 = regions[(t1, region_behind_face_bit(v, t1, f1, bit))]
            if len(slots) == 2:
                t2, f2 = slots[1]
                perm = tri.gluings[t1][f1][1]
                bit2 = bit if bit[0] == "central" else ("corner", perm[bit[1]], bit[2])
                r2 = regions[(t2, region_behind_face_bit(v, t2, f2, bit2))]
                adjacency.add(tuple(sorted((r1, r2))))
            else:
                a_patches += 1

    parent = list(range(len(regions)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in adjacency:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comps = {}
    for key, idx in regions.items():
        comps.setdefault(find(idx), []).append(idx)
    components = [sorted(comps[r]) for r in sorted(comps)]

    # Euler characteristic of the cut manifold from its cell structure
    weight = surface.weight
    n_arcs = 0
    face_bit_total = 0
    for slots in tri.face_classes:
        t1, f1 = slots[0]
        a = sum(arc_count(v, t1, f1, vtx) for vtx in FACE_VERTICES[f1])
        n_arcs += a
        face_bit_total += a + 1
    segments = sum(edge_weight(tri, v, ec.index) + 1 for ec in tri.edge_classes)
    v_x = len(tri.vertex_classes) + 2 * weight
    e_x = segments + 2 * n_arcs
    f_x = face_bit_total + 2 * v.piece_count()
    euler_cut = v_x - e_x + f_x - len(regions)
    chi_m = tri.skeleton().euler_characteristic
    if euler_cut != chi_m + surface.euler_total:
        raise TriangulationError("cut Euler characteristic fails chi(X) = chi(M) + chi(S)")

    sheet_patches = {}
    for pid in range(len(surface.pieces)):
        s = surface.sigma[pid]
        sheet_patches[pid] = ("D+", "D-") if s == 1 else ("D-", "D+")

    return CutComplex(tri, v, surface, regions, sorted(adjacency), components,
                      euler_cut, a_patches, sheet_patches)


# ---------------------------------------------------------------------------
# the parallelity bundle's base complex
# ---------------------------------------------------------------------------

@dataclass
class _Cell:
    name: tuple
    sides: list          # 1-cell names, cyclic
    corners: list        # corners[i] sits between sides[i-1] and sides[i]
    free: list           # per side, filled in during assembly
    a_contact: list      # per side: touches the annulus A
    sheets: list         # global signs of the two horizontal sheets


@dataclass
class BundleComponent:
    cells: list
    base_euler: int
    base_orientable: bool
    meets_dminus: bool
    meets_dplus: bool
    meets_a: bool

    @property
    def is_product(self):
        return self.base_orientable


def _canonical_gap(tri, v, t, directed_edge, slot_gap):
    """Gap (j, j+1) along a directed slot edge -> gap along the class."""
    pair = tuple(sorted(directed_edge))
    ec = tri.edge_classes[tri.edge_class_of[(t, pair)]]
    w = edge_slot_crossings(v, t, pair)
    if ec.dir_sign[(t, directed_edge)] == 1:
        return slot_gap
    return w - 2 - slot_gap


def _piece_dir_sign(piece, directed_edge):
    """Sign of the piece's canonical coorientation along the directed edge."""
    kind, t, a, _ = piece
    u, w = directed_edge
    if kind == "tri":
        return -1 if a == u else 1
    return 1 if w in QUAD_MISSED[a][1] else -1


class BundleComplex:
    def __init__(self, tri, vector, surface):
        self.tri = tri
        self.v = vector
        self.surface = surface
        self.piece_id = {p: i for i, p in enumerate(surface.pieces)}
        self.cells = {}
        self._build_p_cells()
        self._build_r_cells()
        self._build_q_cells()

    @staticmethod
    def _corner(t, pair, gap, f, bd=False):
        return (t, pair, gap, f, bd)

    @staticmethod
    def _rp_side(t, f, vtx, level):
        return ("RP", t, f, vtx, level)

    @staticmethod
    def _pq_side(t, pair, gap):
        return ("PQ", t, pair, gap)

    def _add_cell(self, name, sides, corners, sheets, a_contact=None):
        if a_contact is None:
            a_contact = [False] * len(sides)
        if len(sides) != len(corners) or len(sides) != len(a_contact):
            raise AssertionError(f"malformed cell {name}")
        self.cells[name] = _Cell(name, sides, corners, [True] * len(sides),
                                 a_contact, sheets)

    # -- P cells -----------------------------------------------------------

    def _build_p_cells(self):
        v = self.v
        tri = self.tri
        for t in range(tri.tet_count):
            for vtx in range(4):
                for k in range(v.tri(t, vtx) - 1):
                    x0, x1, x2 = sorted(u for u in range(4) if u != vtx)
                    f01 = next(u for u in range(4) if u not in (vtx, x0, x1))
                    f12 = next(u for u in range(4) if u not in (vtx, x1, x2))
                    f20 = next(u for u in range(4) if u not in (vtx, x2, x0))
                    seq = [((vtx, x0), f20, f01), ((vtx, x1), f01, f12),
                           ((vtx, x2), f12, f20)]
                    sides, corners = [], []
                    for d, f_prev, f_next in seq:
                        pair = tuple(sorted(d))
                        gap = _canonical_gap(tri, v, t, d, k)
                        sides.append(self._pq_side(t, pair, gap))
                        corners.append(self._corner(t, pair, gap, f_prev))
                        sides.append(self._rp_side(t, f_next, vtx, k))
                        corners.append(self._corner(t, pair, gap, f_next))
                    sheets = self._p_sheets(("tri", t, vtx, k), ("tri", t, vtx, k + 1))
                    self._add_cell(("P", t, "tri", vtx, k), sides, corners, sheets)
            q = v.quad_type(t)
            if q is None:
                continue
            l0, l1 = sorted(QUAD_MISSED[q][0])
            h0, h1 = sorted(QUAD_MISSED[q][1])
            cyc = [(l0, h0), (l0, h1), (l1, h1), (l1, h0)]
            for m in range(v.quad(t, q) - 1):
                sides, corners = [], []
                for idx, d in enumerate(cyc):
                    prev_d = cyc[idx - 1]
                    next_d = cyc[(idx + 1) % 4]
                    f_prev = next(u for u in range(4) if u not in set(d) | set(prev_d))
                    f_next = next(u for u in range(4) if u not in set(d) | set(next_d))
                    pair = tuple(sorted(d))
                    slot_gap = self._quad_slot_gap(t, q, m, d)
                    gap = _canonical_gap(tri, v, t, d, slot_gap)
                    sides.append(self._pq_side(t, pair, gap))
                    corners.append(self._corner(t, pair, gap, f_prev))
                    vq = quad_cut_vertex(q, f_next)
                    sides.append(self._rp_side(t, f_next, vq,
                                               self._quad_arc_level(t, q, m, f_next)))
                    corners.append(self._corner(t, pair, gap, f_next))
                sheets = self._p_sheets(("quad", t, q, m), ("quad", t, q, m + 1))
                self._add_cell(("P", t, "quad", q, m), sides, corners, sheets)

    def _quad_slot_gap(self, t, q, m, directed_edge):
        """Slot gap on the edge between quad copies m and m+1."""
        u = directed_edge[0]
        base = self.v.tri(t, u)
        if u in quad_low_side(q):
            return base + m
        return base + self.v.quad(t, q) - 2 - m

    def _quad_arc_level(self, t, q, m, f):
        """Lower arc level (in the face's corner stack) of the slab between
        quad copies m and m+1."""
        vq = quad_cut_vertex(q, f)
        base = self.v.tri(t, vq)
        if vq in quad_low_side(q):
            return base + m
        return base + self.v.quad(t, q) - 2 - m

    def _p_sheets(self, piece_lo, piece_hi):
        sig = self.surface.sigma
        lo, hi = self.piece_id[piece_lo], self.piece_id[piece_hi]
        if piece_lo[0] == "tri":
            # the lower triangle faces the slab away from its vertex
            return [-sig[lo], sig[hi]]
        # the lower quad copy faces the slab toward the high side
        return [sig[lo], -sig[hi]]

    # -- R cells -----------------------------------------------------------

    def _build_r_cells(self):
        v = self.v
        tri = self.tri
        for fc_idx, slots in enumerate(tri.face_classes):
            t1, f1 = slots[0]
            for vtx in FACE_VERTICES[f1]:
                stack1 = face_stack(v, t1, f1, vtx)
                x, y = (u for u in FACE_VERTICES[f1] if u != vtx)
                for j in range(len(stack1) - 1):
                    px, py = tuple(sorted((vtx, x))), tuple(sorted((vtx, y)))
                    gx = _canonical_gap(tri, v, t1, (vtx, x), j)
                    gy = _canonical_gap(tri, v, t1, (vtx, y), j)
                    side_t1 = self._rp_side(t1, f1, vtx, j)
                    end_x = ("QR", (t1, f1), px, gx)
                    end_y = ("QR", (t1, f1), py, gy)
                    sheets = self._r_sheets(f1, stack1[j], stack1[j + 1])
                    if len(slots) == 2:
                        t2, f2 = slots[1]
                        perm = tri.gluings[t1][f1][1]
                        dx2 = (perm[vtx], perm[x])
                        dy2 = (perm[vtx], perm[y])
                        sides = [side_t1, end_y,
                                 self._rp_side(t2, f2, perm[vtx], j), end_x]
                        corners = [
                            self._corner(t1, px, gx, f1),
                            self._corner(t1, py, gy, f1),
                            self._corner(t2, tuple(sorted(dy2)),
                                         _canonical_gap(tri, v, t2, dy2, j), f2),
                            self._corner(t2, tuple(sorted(dx2)),
                                         _canonical_gap(tri, v, t2, dx2, j), f2),
                        ]
                        a_contact = [False] * 4
                    else:
                        sides = [side_t1, end_y, ("RA", (t1, f1), vtx, j), end_x]
                        corners = [
                            self._corner(t1, px, gx, f1),
                            self._corner(t1, py, gy, f1),
                            self._corner(t1, py, gy, f1, bd=True),
                            self._corner(t1, px, gx, f1, bd=True),
                        ]
                        a_contact = [False, False, True, False]
                    self._add_cell(("R", fc_idx, vtx, j), sides, corners,
                                   sheets, a_contact)

    def _r_sheets(self, f, piece_lo, piece_hi):
        sig = self.surface.sigma
        lo, hi = self.piece_id[piece_lo], self.piece_id[piece_hi]
        # the lower arc faces the slab on the side away from the cut vertex
        return [-sig[lo] * piece_sides_in_face(piece_lo, f),
                sig[hi] * piece_sides_in_face(piece_hi, f)]

    # -- Q cells -----------------------------------------------------------

    def _build_q_cells(self):
        v = self.v
        tri = self.tri
        for ec in tri.edge_classes:
            w = edge_weight(tri, v, ec.index)
            if w < 2:
                continue
            walk = tri.edge_walk(ec.index)
            for gap in range(w - 1):
                name = ("Q", ec.index, gap)
                sheets = self._q_sheets(ec, walk, gap)
                sides, corners, a_contact = [], [], []
                pages, sectors = walk["pages"], walk["sectors"]
                if walk["boundary"]:
                    t0, fin0, d0 = pages[0]
                    t_l, f_l, d_l = pages[-1]
                    sides.append(("QA", ec.index, gap))
                    corners.append(self._q_corner(t_l, d_l, gap, f_l, bd=True))
                    a_contact.append(True)
                    sides.append(self._q_page_side(pages[0], gap))
                    corners.append(self._q_corner(t0, d0, gap, fin0, bd=True))
                    a_contact.append(False)
                    for idx, (t, d, f_in, f_out) in enumerate(sectors):
                        sides.append(self._pq_side(t, tuple(sorted(d)), gap))
                        corners.append(self._q_corner(t, d, gap, f_in))
                        a_contact.append(False)
                        sides.append(self._q_page_side(pages[idx + 1], gap))
                        corners.append(self._q_corner(t, d, gap, f_out))
                        a_contact.append(False)
                    self._add_cell(name, sides, corners, sheets, a_contact)
                else:
                    for idx, (t, d, f_in, f_out) in enumerate(sectors):
                        sides.append(self._pq_side(t, tuple(sorted(d)), gap))
                        corners.append(self._q_corner(t, d, gap, f_in))
                        a_contact.append(False)
                        sides.append(self._q_page_side(pages[idx], gap))
                        corners.append(self._q_corner(t, d, gap, f_out))
                        a_contact.append(False)
                    self._add_cell(name, sides, corners, sheets, a_contact)

    def _q_corner(self, t, d, canonical_gap, f, bd=False):
        return self._corner(t, tuple(sorted(d)), canonical_gap, f, bd)

    def _q_page_side(self, page, canonical_gap):
        """Name of the 2-handle 1-cell this page crosses, in the coordinates
        of the face class's representative slot."""
        t, f, d = page
        fc_idx = self.tri.face_class_of[(t, f)]
        slots = self.tri.face_classes[fc_idx]
        t1, f1 = slots[0]
        if (t, f) == (t1, f1):
            rep_pair = tuple(sorted(d))
        else:
            perm = self.tri.gluings[t1][f1][1]
            inv = [0] * 4
            for i, pv in enumerate(perm):
                inv[pv] = i
            rep_pair = tuple(sorted((inv[d[0]], inv[d[1]])))
        return ("QR", (t1, f1), rep_pair, canonical_gap)

    def _q_sheets(self, ec, walk, gap):
        v = self.v
        signs = set()
        for t, d, f_in, f_out in walk["sectors"]:
            pair = tuple(sorted(d))
            w = edge_slot_crossings(v, t, pair)
            aligned = ec.dir_sign[(t, d)] == 1
            slot_gap = gap if aligned else w - 2 - gap
            stack = edge_stack(v, t, d)
            p_a, p_b = stack[slot_gap], stack[slot_gap + 1]
            lo_piece, hi_piece = (p_a, p_b) if aligned else (p_b, p_a)
            toward_hi = d if aligned else (d[1], d[0])
            lo = self.surface.sigma[self.piece_id[lo_piece]] * _piece_dir_sign(lo_piece, toward_hi)
            hi = -self.surface.sigma[self.piece_id[hi_piece]] * _piece_dir_sign(hi_piece, toward_hi)
            signs.add((lo, hi))
        if len(signs) != 1:
            raise TriangulationError("edge slab sheet signs disagree between sectors")
        return list(signs.pop())

    # -- assembly ------------------------------------------------------------

    def components(self):
        side_users = {}
        for cell in self.cells.values():
            for i, s in enumerate(cell.sides):
                side_users.setdefault(s, []).append((cell.name, i))
        for s, users in side_users.items():
            if len(users) > 2:
                raise TriangulationError(f"1-cell {s} has {len(users)} users")
            if len(users) == 2:
                for cname, i in users:
                    self.cells[cname].free[i] = False

        names = sorted(self.cells)
        index = {n: i for i, n in enumerate(names)}
        parent = list(range(len(names)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for s, users in side_users.items():
            if len(users) == 2:
                a, b = find(index[users[0][0]]), find(index[users[1][0]])
                if a != b:
                    parent[max(a, b)] = min(a, b)

        groups = {}
        for n in names:
            groups.setdefault(find(index[n]), []).append(n)

        out = []
        for root in sorted(groups):
            cell_names = groups[root]
            sheets = [s for n in cell_names for s in self.cells[n].sheets]
            out.append(BundleComponent(
                cells=cell_names,
                base_euler=self._component_euler(cell_names),
                base_orientable=self._component_orientable(cell_names),
                meets_dminus=any(s == -1 for s in sheets),
                meets_dplus=any(s == 1 for s in sheets),
                meets_a=any(any(self.cells[n].a_contact) for n in cell_names),
            ))
        return out

    def _component_euler(self, cell_names):
        sides, corners = set(), set()
        for n in cell_names:
            cell = self.cells[n]
            sides.update(cell.sides)
            corners.update(cell.corners)
        return len(corners) - len(sides) + len(cell_names)

    def _component_orientable(self, cell_names):
        traversal = {}
        for n in cell_names:
            cell = self.cells[n]
            k = len(cell.sides)
            for i, s in enumerate(cell.sides):
                traversal.setdefault(s, []).append(
                    (n, cell.corners[i], cell.corners[(i + 1) % k]))
        sign = {}
        adj = {n: [] for n in cell_names}
        for s, users in traversal.items():
            if len(users) != 2:
                continue
            (n1, a1, b1), (n2, a2, b2) = users
            if (a1, b1) == (b2, a2):
                rel = 1          # opposite traversal: compatible orientations
            elif (a1, b1) == (a2, b2):
                rel = -1
            else:
                raise TriangulationError(f"side {s} glued with mismatched corners")
            adj[n1].append((n2, rel))
            adj[n2].append((n1, rel))
        for start in cell_names:
            if start in sign:
                continue
            sign[start] = 1
            queue = [start]
            while queue:
                a = queue.pop()
                for b, rel in adj[a]:
                    want = sign[a] * rel
                    if b not in sign:
                        sign[b] = want
                        queue.append(b)
                    elif sign[b] != want:
                        return False
        return True


def parallelity_bundle(tri, disc) -> list:
    """Connected components of the parallelity bundle of the cut manifold."""
    v = disc if isinstance(disc, NormalVector) else disc.vector
    surface = reconstruct(tri, v)
    return BundleComplex(tri, v, surface).components()


def bundle_prime(components) -> list:
    """The components that intersect the annulus A."""
    return [c for c in components if c.meets_a]


@dataclass
class ClaimsReport:
    claim1: bool
    claim2: bool
    input_is_minimal: bool | None
    details: dict = field(default_factory=dict)


def check_claims(tri, disc, minimal_disc=None) -> ClaimsReport:
    """Claim 1: every bundle component is a product (orientable base).
    Claim 2: every component meeting A meets both copies of the disc."""
    v = disc if isinstance(disc, NormalVector) else disc.vector
    comps = parallelity_bundle(tri, v)
    claim1 = all(c.base_orientable for c in comps)
    prime = bundle_prime(comps)
    claim2 = all(c.meets_dminus and c.meets_dplus for c in prime)
    minimal = None
    if minimal_disc is not None:
        other = (minimal_disc if isinstance(minimal_disc, NormalVector)
                 else minimal_disc.vector)
        minimal = v == other
    details = {
        "components": len(comps),
        "components_meeting_a": len(prime),
        "bases": [(c.base_euler, c.base_orientable,
                   c.meets_dminus, c.meets_dplus, c.meets_a) for c in comps],
    }
    if minimal is False:
        details["note"] = "input not minimal"
    return ClaimsReport(claim1, claim2, minimal, details)
