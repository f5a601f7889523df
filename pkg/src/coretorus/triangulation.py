"""Generalized triangulations: tetrahedra with affine face gluings.

A triangulation is a list of tetrahedra, each with four faces (face ``f`` is
opposite vertex ``f``), and a gluing table: face ``f`` of tetrahedron ``t``
is either boundary or glued to a face of another (or the same) tetrahedron
by a vertex permutation of {0,1,2,3}.  Validation enforces that the gluing
relation is a fixed-point-free involution, that no edge is identified with
itself reversing orientation, that every edge link is connected, and that a
consistent orientation exists.

The quotient skeleton (vertex, edge and face classes) is computed by
union-find over the identifications induced by the gluings, with directed
edge classes retained so every chain-level computation downstream has exact
signs available.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

FACE_VERTICES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class TriangulationError(ValueError):
    pass


class ParseError(TriangulationError):
    def __init__(self, message, line=None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


def perm_inverse(p):
    inv = [0, 0, 0, 0]
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_sign(p):
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [sorted(groups[r]) for r in sorted(groups)]


@dataclass(frozen=True)
class SkeletonSummary:
    vertex_classes: int
    edge_classes: int
    face_classes: int
    tet_count: int
    edge_degrees: tuple          # slots per edge class
    edge_on_boundary: tuple      # per edge class
    euler_characteristic: int


@dataclass
class EdgeClass:
    index: int
    slots: list                  # [(tet, (u, v)) with u < v]
    rep: tuple                   # representative directed edge (tet, (a, b))
    boundary: bool
    dir_sign: dict               # (tet, (p, q)) -> +1/-1 relative to rep

    @property
    def degree(self):
        return len(self.slots)


class Triangulation:
    """Immutable after construction; all derived data is cached and read-only."""

    def __init__(self, gluings):
        table = []
        for t, faces in enumerate(gluings):
            if len(faces) != 4:
                raise TriangulationError(f"tetrahedron {t} needs exactly 4 face entries")
            row = []
            for f, g in enumerate(faces):
                if g is None:
                    row.append(None)
                    continue
                t2, perm = g
                perm = tuple(perm)
                if sorted(perm) != [0, 1, 2, 3]:
                    raise TriangulationError(f"face ({t},{f}): {perm} is not a permutation")
                if not 0 <= t2 < len(gluings):
                    raise TriangulationError(f"face ({t},{f}) glued to missing tetrahedron {t2}")
                row.append((t2, perm))
            table.append(tuple(row))
        self.gluings = tuple(table)
        self.tet_count = len(table)
        self._validate()

    # -- validation ------------------------------------------------------

    def _validate(self):
        for t in range(self.tet_count):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                t2, perm = g
                f2 = perm[f]
                if (t2, f2) == (t, f):
                    raise TriangulationError(f"face ({t},{f}) is glued to itself")
                back = self.gluings[t2][f2]
                if back is None or back != (t, perm_inverse(perm)):
                    raise TriangulationError(
                        f"gluing of face ({t},{f}) to ({t2},{f2}) is not an involution")
        self._check_edges()
        self._check_orientability()
        for ec in self.edge_classes:
            self._walk_for_validation(ec)

    def _check_edges(self):
        for ec in self.edge_classes:
            t, (u, v) = ec.slots[0]
            if self._directed_uf.find((t, (u, v))) == self._directed_uf.find((t, (v, u))):
                raise TriangulationError(
                    f"edge {ec.slots[0]} is identified with itself reversing orientation")

    def _check_orientability(self):
        self.orientation  # raises if inconsistent

    def _walk_for_validation(self, ec):
        walk = self.edge_walk(ec.index)
        seen = {(t, tuple(sorted(d))) for (t, d, _, _) in walk["sectors"]}
        if seen != {(t, e) for t, e in ec.slots}:
            raise TriangulationError(
                f"edge class {ec.index} has a disconnected link (pinched edge)")

    # -- quotient skeleton -----------------------------------------------

    @cached_property
    def _directed_uf(self):
        items = [(t, (p, q)) for t in range(self.tet_count)
                 for p in range(4) for q in range(4) if p != q]
        uf = _UnionFind(items)
        for t in range(self.tet_count):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                t2, perm = g
                for p in FACE_VERTICES[f]:
                    for q in FACE_VERTICES[f]:
                        if p != q:
                            uf.union((t, (p, q)), (t2, (perm[p], perm[q])))
        return uf

    @cached_property
    def edge_classes(self):
        uf = _UnionFind([(t, e) for t in range(self.tet_count) for e in EDGE_PAIRS])
        duf = self._directed_uf
        for t in range(self.tet_count):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                t2, perm = g
                verts = FACE_VERTICES[f]
                for i in range(3):
                    for j in range(i + 1, 3):
                        u, v = verts[i], verts[j]
                        u2, v2 = sorted((perm[u], perm[v]))
                        uf.union((t, (u, v)), (t2, (u2, v2)))
        classes = []
        for idx, slots in enumerate(uf.classes()):
            rep_t, (ru, rv) = slots[0]
            rep = (rep_t, (ru, rv))
            rep_root = duf.find(rep)
            sign = {}
            for t, (u, v) in slots:
                for d in ((u, v), (v, u)):
                    sign[(t, d)] = 1 if duf.find((t, d)) == rep_root else -1
            boundary = any(self._edge_slot_on_boundary(t, e) for t, e in slots)
            classes.append(EdgeClass(idx, slots, rep, boundary, sign))
        return classes

    def _edge_slot_on_boundary(self, t, edge):
        u, v = edge
        for f in range(4):
            if f not in (u, v) and self.gluings[t][f] is None:
                return True
        return False

    @cached_property
    def edge_class_of(self):
        out = {}
        for ec in self.edge_classes:
            for t, e in ec.slots:
                out[(t, e)] = ec.index
        return out

    @cached_property
    def vertex_classes(self):
        uf = _UnionFind([(t, v) for t in range(self.tet_count) for v in range(4)])
        for t in range(self.tet_count):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                t2, perm = g
                for v in FACE_VERTICES[f]:
                    uf.union((t, v), (t2, perm[v]))
        return uf.classes()

    @cached_property
    def vertex_class_of(self):
        out = {}
        for idx, corners in enumerate(self.vertex_classes):
            for c in corners:
                out[c] = idx
        return out

    @cached_property
    def face_classes(self):
        """Each interior class is a glued slot pair; boundary faces are singletons."""
        classes = []
        seen = set()
        for t in range(self.tet_count):
            for f in range(4):
                if (t, f) in seen:
                    continue
                g = self.gluings[t][f]
                if g is None:
                    classes.append(((t, f),))
                    seen.add((t, f))
                else:
                    t2, perm = g
                    classes.append(((t, f), (t2, perm[f])))
                    seen.add((t, f))
                    seen.add((t2, perm[f]))
        return classes

    @cached_property
    def face_class_of(self):
        out = {}
        for idx, slots in enumerate(self.face_classes):
            for s in slots:
                out[s] = idx
        return out

    @cached_property
    def boundary_faces(self):
        return [(t, f) for t in range(self.tet_count) for f in range(4)
                if self.gluings[t][f] is None]

    @cached_property
    def orientation(self):
        """Orientation sign per tetrahedron; raises if none exists."""
        sign = {}
        for start in range(self.tet_count):
            if start in sign:
                continue
            sign[start] = 1
            queue = [start]
            while queue:
                t = queue.pop()
                for f in range(4):
                    g = self.gluings[t][f]
                    if g is None:
                        continue
                    t2, perm = g
                    want = -sign[t] * perm_sign(perm)
                    if t2 not in sign:
                        sign[t2] = want
                        queue.append(t2)
                    elif sign[t2] != want:
                        raise TriangulationError("triangulation is not orientable")
        return sign

    def skeleton(self) -> SkeletonSummary:
        v = len(self.vertex_classes)
        e = len(self.edge_classes)
        f = len(self.face_classes)
        return SkeletonSummary(
            vertex_classes=v,
            edge_classes=e,
            face_classes=f,
            tet_count=self.tet_count,
            edge_degrees=tuple(ec.degree for ec in self.edge_classes),
            edge_on_boundary=tuple(ec.boundary for ec in self.edge_classes),
            euler_characteristic=v - e + f - self.tet_count,
        )

    # -- edge links --------------------------------------------------------

    def edge_walk(self, edge_class_index):
        """Ordered link of an edge class.

        Returns {"boundary": bool, "pages": [...], "sectors": [...]} where a
        sector is (tet, directed_edge, face_in, face_out) and a page is
        (tet, face, directed_edge) naming the face slot crossed after the
        sector, in the tetrahedron it is about to leave.  For a boundary
        edge the pages start and end with the two boundary face slots; for
        an interior edge both lists are cyclic and aligned so that
        pages[i] separates sectors[i] from sectors[i+1].
        """
        ec = self.edge_classes[edge_class_index]
        bd_sides = []
        for t, (u, v) in ec.slots:
            for f in range(4):
                if f not in (u, v) and self.gluings[t][f] is None:
                    bd_sides.append((t, (u, v), f))
        if bd_sides:
            t, (u, v), f_in = bd_sides[0]
            d = (u, v)
            pages = [(t, f_in, d)]
            sectors = []
            while True:
                f_out = next(x for x in range(4) if x not in d and x != f_in)
                sectors.append((t, d, f_in, f_out))
                g = self.gluings[t][f_out]
                if g is None:
                    pages.append((t, f_out, d))
                    return {"boundary": True, "pages": pages, "sectors": sectors}
                t2, perm = g
                pages.append((t, f_out, d))
                t, d, f_in = t2, (perm[d[0]], perm[d[1]]), perm[f_out]
        # interior edge: walk a cycle
        t, (u, v) = ec.slots[0]
        d = (u, v)
        f_in = next(x for x in range(4) if x not in d)
        start = (t, d, f_in)
        pages = []
        sectors = []
        while True:
            f_out = next(x for x in range(4) if x not in d and x != f_in)
            sectors.append((t, d, f_in, f_out))
            g = self.gluings[t][f_out]
            pages.append((t, f_out, d))
            t2, perm = g
            t, d, f_in = t2, (perm[d[0]], perm[d[1]]), perm[f_out]
            if (t, d, f_in) == start:
                return {"boundary": False, "pages": pages, "sectors": sectors}

    @cached_property
    def boundary_complex(self):
        from .boundary import BoundaryComplex
        return BoundaryComplex(self)


# -- exchange format -------------------------------------------------------

def parse_tri(text: str) -> Triangulation:
    """Parse the exchange format.

    First line ``tets N``; then one line per tetrahedron ``i: tok0 tok1 tok2
    tok3`` where a token is ``-`` for a boundary face or ``t:abcd`` for a
    gluing sending vertex k of this tetrahedron to digit k.  ``#`` starts a
    comment.
    """
    rows = {}
    count = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if count is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "tets":
                raise ParseError("expected header 'tets N'", lineno)
            try:
                count = int(parts[1])
            except ValueError:
                raise ParseError(f"bad tetrahedron count {parts[1]!r}", lineno)
            if count < 0:
                raise ParseError("tetrahedron count must be nonnegative", lineno)
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected '<i>: tok0 tok1 tok2 tok3'", lineno)
        try:
            idx = int(head)
        except ValueError:
            raise ParseError(f"bad tetrahedron index {head!r}", lineno)
        if not 0 <= idx < count:
            raise ParseError(f"tetrahedron index {idx} out of range", lineno)
        if idx in rows:
            raise ParseError(f"duplicate row for tetrahedron {idx}", lineno)
        toks = rest.split()
        if len(toks) != 4:
            raise ParseError(f"tetrahedron {idx} needs 4 face tokens", lineno)
        faces = []
        for tok in toks:
            if tok == "-":
                faces.append(None)
                continue
            t2s, sep2, digits = tok.partition(":")
            if not sep2 or len(digits) != 4 or not digits.isdigit():
                raise ParseError(f"bad face token {tok!r}", lineno)
            try:
                t2 = int(t2s)
            except ValueError:
                raise ParseError(f"bad face token {tok!r}", lineno)
            faces.append((t2, tuple(int(c) for c in digits)))
        rows[idx] = faces
    if count is None:
        raise ParseError("missing 'tets N' header")
    if set(rows) != set(range(count)):
        missing = sorted(set(range(count)) - set(rows))
        raise ParseError(f"missing rows for tetrahedra {missing}")
    return Triangulation([rows[i] for i in range(count)])


def serialize_tri(tri: Triangulation, labels=None) -> str:
    """Canonical text form; bit-exact (tet order, single spaces).

    ``labels`` may map edge class indices to strings, emitted as comments.
    """
    lines = [f"tets {tri.tet_count}"]
    for t in range(tri.tet_count):
        toks = []
        for f in range(4):
            g = tri.gluings[t][f]
            if g is None:
                toks.append("-")
            else:
                t2, perm = g
                toks.append(f"{t2}:{''.join(str(v) for v in perm)}")
        lines.append(f"{t}: {' '.join(toks)}")
    if labels:
        for idx in sorted(labels):
            ec = tri.edge_classes[idx]
            lines.append(f"# edge {idx} rep {ec.rep} {labels[idx]}")
    return "\n".join(lines) + "\n"
