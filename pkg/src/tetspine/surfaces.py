"""Normal surfaces built from spine subpolyhedra, and their topology.

A normal surface is stored by its coordinates: per tetrahedron, 4 triangle
counts (indexed by the cut-off corner) and 3 quadrilateral counts. Quad type
q separates the edge {0, q+1} from the opposite edge. Two constructions are
provided: a surface subpolyhedron is itself normal (type I), and the
boundary of a small regular neighborhood of any simple subpolyhedron is
normal (type II). Topology is recovered by assembling the discs into a
complex: points on edge classes, arcs on triangle classes, discs inside
tetrahedra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InternalLinkError,
    MatchingViolationError,
    NotASurfaceError,
)
from .spine import SpecialSpine, SubPolyhedron, dual_spine, enumerate_simple_subpolyhedra
from .triangulation import EDGE_PAIRS, FACE_VERTS, Triangulation

# quad type separating each edge pair from its opposite
QTYPE_OF_PAIR: dict[tuple[int, int], int] = {
    (0, 1): 0, (2, 3): 0,
    (0, 2): 1, (1, 3): 1,
    (0, 3): 2, (1, 2): 2,
}
# the two edge pairs separated by each quad type; the first contains vertex 0
QSEP: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class NormalSurface:
    """Normal coordinates of one normal isotopy class."""

    triangulation: Triangulation
    tri: tuple[tuple[int, int, int, int], ...]
    quad: tuple[tuple[int, int, int], ...]
    provenance: tuple[str, int]  # ("I" | "II" | "external", face bitmask)

    @property
    def coords(self) -> tuple[int, ...]:
        flat: list[int] = []
        for t in range(self.triangulation.n):
            flat.extend(self.tri[t])
            flat.extend(self.quad[t])
        return tuple(flat)

    @property
    def is_empty(self) -> bool:
        return not any(self.coords)

    @property
    def is_trivial(self) -> bool:
        return not any(x for qs in self.quad for x in qs)

    def arc_count(self, t: int, f: int, v: int) -> int:
        """Normal arcs on face f of tetrahedron t cutting off corner v."""
        return self.tri[t][v] + self.quad[t][QTYPE_OF_PAIR[_pair(v, f)]]

    def slot_weight(self, t: int, u: int, v: int) -> int:
        """Intersection points with the edge {u, v} of tetrahedron t."""
        skip = QTYPE_OF_PAIR[_pair(u, v)]
        return (
            self.tri[t][u]
            + self.tri[t][v]
            + sum(q for i, q in enumerate(self.quad[t]) if i != skip)
        )

    def matching_violations(self) -> list[tuple[int, int, int]]:
        """(tet, face, corner) triples where arc counts disagree across a gluing."""
        bad = []
        tr = self.triangulation
        for tc in tr.triangle_classes:
            (t0, f0), (t1, f1) = tc.rep, tc.other
            for v in FACE_VERTS[f0]:
                if self.arc_count(t0, f0, v) != self.arc_count(t1, f1, tc.perm[v]):
                    bad.append((t0, f0, v))
        return bad

    def check_valid(self) -> None:
        for t in range(self.triangulation.n):
            if sum(1 for q in self.quad[t] if q) > 1:
                raise MatchingViolationError(
                    f"tetrahedron {t} holds two quad types: {self.quad[t]}"
                )
        bad = self.matching_violations()
        if bad:
            raise MatchingViolationError(f"arc counts disagree at {bad}")


@dataclass(frozen=True)
class SurfaceReport:
    chi: int
    orientable: bool
    connected: bool
    components: int
    classification: str
    trivial: bool
    max_edge_weight: int


def _classify(chi: int, orientable: bool) -> str:
    if orientable:
        if chi == 2:
            return "sphere"
        if chi == 0:
            return "torus"
    else:
        if chi == 1:
            return "rp2"
        if chi == 0:
            return "klein"
    return f"other({chi})"


def _germ_slots(spine: SpecialSpine, t: int, mask: int) -> list[int]:
    return [p for p in range(6) if mask >> spine.corner_germs[t][p] & 1]


def _link_shape(slots: list[int]) -> tuple:
    """Shape of the germ set of a simple subpolyhedron inside one tetrahedron.

    Returns ("empty",), ("cone", corner), ("band", quad type),
    ("theta", missing pair) or ("full",).
    """
    k = len(slots)
    if k == 0:
        return ("empty",)
    if k == 3:
        pairs = [EDGE_PAIRS[p] for p in slots]
        for d in range(4):
            if all(d in pr for pr in pairs):
                return ("cone", d)
    elif k == 4:
        missing = [EDGE_PAIRS[p] for p in range(6) if p not in slots]
        if not set(missing[0]) & set(missing[1]):
            return ("band", QTYPE_OF_PAIR[missing[0]])
    elif k == 5:
        missing = next(EDGE_PAIRS[p] for p in range(6) if p not in slots)
        return ("theta", missing)
    elif k == 6:
        return ("full",)
    raise InternalLinkError(f"germ slots {slots} form no admissible link shape")


def _build(
    tri_counts: list[list[int]],
    quad_counts: list[list[int]],
    provenance: tuple[str, int],
    tr: Triangulation,
) -> NormalSurface:
    ns = NormalSurface(
        triangulation=tr,
        tri=tuple(tuple(r) for r in tri_counts),
        quad=tuple(tuple(r) for r in quad_counts),
        provenance=provenance,
    )
    ns.check_valid()
    return ns


def type_I_surface(spine: SpecialSpine, q: SubPolyhedron) -> NormalSurface:
    """The surface subpolyhedron Q itself, in normal coordinates."""
    if not q.is_surface:
        raise NotASurfaceError("subpolyhedron has a germ count of 3 at some edge")
    if q.is_empty:
        raise NotASurfaceError("the empty subpolyhedron has no type I surface")
    tr = spine.triangulation
    tri_counts = [[0] * 4 for _ in range(tr.n)]
    quad_counts = [[0] * 3 for _ in range(tr.n)]
    for t in range(tr.n):
        shape = _link_shape(_germ_slots(spine, t, q.faces))
        if shape[0] == "cone":
            tri_counts[t][shape[1]] += 1
        elif shape[0] == "band":
            quad_counts[t][shape[1]] += 1
        elif shape[0] != "empty":
            raise InternalLinkError(
                f"surface subpolyhedron has {shape[0]} germs in tetrahedron {t}"
            )
    return _build(tri_counts, quad_counts, ("I", q.faces), tr)


def type_II_surface(spine: SpecialSpine, q: SubPolyhedron) -> NormalSurface:
    """Boundary of a small regular neighborhood of the subpolyhedron Q."""
    if q.is_empty:
        raise ValueError("type II surface needs a nonempty subpolyhedron")
    tr = spine.triangulation
    tri_counts = [[0] * 4 for _ in range(tr.n)]
    quad_counts = [[0] * 3 for _ in range(tr.n)]
    for t in range(tr.n):
        shape = _link_shape(_germ_slots(spine, t, q.faces))
        if shape[0] == "cone":
            tri_counts[t][shape[1]] += 2
        elif shape[0] == "band":
            quad_counts[t][shape[1]] += 2
        elif shape[0] == "theta":
            u, w = shape[1]
            for v in range(4):
                if v not in (u, w):
                    tri_counts[t][v] += 1
            quad_counts[t][QTYPE_OF_PAIR[(u, w)]] += 1
        elif shape[0] == "full":
            for v in range(4):
                tri_counts[t][v] += 1
    return _build(tri_counts, quad_counts, ("II", q.faces), tr)


class _DiscComplex:
    """Points, arcs, and discs of a normal surface, with adjacency."""

    def __init__(self, ns: NormalSurface) -> None:
        self.ns = ns
        tr = ns.triangulation
        ecs = tr.edge_classes

        # edge weights per class; every slot of a class must agree
        self.weights: list[int] = []
        for ec in ecs:
            vals = set()
            for s in ec.slots:
                t, (u, v) = s // 6, EDGE_PAIRS[s % 6]
                vals.add(ns.slot_weight(t, u, v))
            if len(vals) != 1:
                raise MatchingViolationError(
                    f"edge class {ec.index} sees weights {sorted(vals)}"
                )
            self.weights.append(vals.pop())
        self.point_base = [0]
        for w in self.weights:
            self.point_base.append(self.point_base[-1] + w)
        self.num_points = self.point_base[-1]

        # discs: ("tri", t, corner, copy) and ("quad", t, type, copy)
        self.discs: list[tuple] = []
        for t in range(tr.n):
            for v in range(4):
                for m in range(ns.tri[t][v]):
                    self.discs.append(("tri", t, v, m))
            for qt in range(3):
                for j in range(ns.quad[t][qt]):
                    self.discs.append(("quad", t, qt, j))

        # boundary data per disc
        self.disc_points: list[list[int]] = []
        self.disc_arcs: list[list[tuple]] = []  # canonical (class, corner, depth, dir)
        for disc in self.discs:
            pts, arcs = self._boundary(disc)
            self.disc_points.append(pts)
            self.disc_arcs.append(arcs)

        self.arc_sides: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
        for d, arcs in enumerate(self.disc_arcs):
            for cls, corner, depth, direction in arcs:
                self.arc_sides.setdefault((cls, corner, depth), []).append((d, direction))
        for key, sides in self.arc_sides.items():
            if len(sides) != 2:
                raise MatchingViolationError(
                    f"arc {key} bounds {len(sides)} discs, expected 2"
                )

    def _point(self, t: int, u: int, v: int, depth: int) -> int:
        """Global id of the depth-th intersection point from u on edge {u, v}."""
        tr = self.ns.triangulation
        cls = tr.edge_class_of(t, u, v)
        w = self.weights[cls]
        asc = depth if u < v else w - 1 - depth
        if tr.edge_sign_of(t, min(u, v), max(u, v)) != 1:
            asc = w - 1 - asc
        return self.point_base[cls] + asc

    def _canon_arc(self, t: int, f: int, corner: int, depth: int, direction: int) -> tuple:
        """Arc key on the representative side of the triangle class.

        direction 0 means the disc walks the arc from its endpoint on the
        corner's edge toward the smaller off-corner vertex to the one toward
        the larger, in local labels.
        """
        tr = self.ns.triangulation
        idx = tr.triangle_class_of(t, f)
        tc = tr.triangle_classes[idx]
        if (t, f) == tc.rep:
            return (idx, corner, depth, direction)
        phi = tc.perm
        inv = [0, 0, 0, 0]
        for i, img in enumerate(phi):
            inv[img] = i
        corner0 = inv[corner]
        x0, y0 = sorted(w for w in FACE_VERTS[tc.rep[1]] if w != corner0)
        if phi[x0] > phi[y0]:
            direction = 1 - direction
        return (idx, corner0, depth, direction)

    def _boundary(self, disc: tuple) -> tuple[list[int], list[tuple]]:
        kind, t, a, m = disc
        ns = self.ns
        if kind == "tri":
            v = a
            oa, ob, oc = (u for u in range(4) if u != v)
            pts = [self._point(t, v, x, m) for x in (oa, ob, oc)]
            arcs = [
                self._canon_arc(t, oc, v, m, 0),
                self._canon_arc(t, oa, v, m, 0),
                self._canon_arc(t, ob, v, m, 1),
            ]
            return pts, arcs
        qt = a
        j = m
        (e0, e1), (e2, e3) = QSEP[qt]
        nq = ns.quad[t][qt]
        tr_t = ns.tri[t]
        pts = [
            self._point(t, e0, e2, tr_t[e0] + j),
            self._point(t, e1, e2, tr_t[e1] + j),
            self._point(t, e1, e3, tr_t[e1] + j),
            self._point(t, e0, e3, tr_t[e0] + j),
        ]
        arcs = [
            self._canon_arc(t, e3, e2, tr_t[e2] + nq - 1 - j, 0),
            self._canon_arc(t, e0, e1, tr_t[e1] + j, 0),
            self._canon_arc(t, e2, e3, tr_t[e3] + nq - 1 - j, 1),
            self._canon_arc(t, e1, e0, tr_t[e0] + j, 1),
        ]
        return pts, arcs

    def components(self) -> list[list[int]]:
        """Disc ids grouped by connected component, in first-disc order."""
        nd = len(self.discs)
        parent = list(range(nd))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for sides in self.arc_sides.values():
            a, b = sides[0][0], sides[1][0]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for d in range(nd):
            groups.setdefault(find(d), []).append(d)
        return sorted(groups.values(), key=lambda g: g[0])


def reconstruct(ns: NormalSurface) -> SurfaceReport:
    """Topology of the normal surface: per-component chi and orientability."""
    ns.check_valid()
    cx = _DiscComplex(ns)
    groups = cx.components()

    comp_of_disc: dict[int, int] = {}
    for ci, grp in enumerate(groups):
        for d in grp:
            comp_of_disc[d] = ci

    comp_points: list[set[int]] = [set() for _ in groups]
    comp_arcs = [0] * len(groups)
    for d, pts in enumerate(cx.disc_points):
        comp_points[comp_of_disc[d]].update(pts)
    for key, sides in cx.arc_sides.items():
        comp_arcs[comp_of_disc[sides[0][0]]] += 1

    chi_total = 0
    orientable = True
    for ci, grp in enumerate(groups):
        chi_total += len(comp_points[ci]) - comp_arcs[ci] + len(grp)

    # orientation flip bits over the disc adjacency graph
    flip: dict[int, int] = {}
    for start in range(len(cx.discs)):
        if start in flip:
            continue
        flip[start] = 0
        stack = [start]
        while stack:
            d = stack.pop()
            for key in cx.disc_arcs[d]:
                (d1, dir1), (d2, dir2) = cx.arc_sides[key[:3]]
                if d1 == d2:
                    # the disc meets itself along this arc
                    if dir1 == dir2:
                        orientable = False
                    continue
                other = d2 if d1 == d else d1
                want = flip[d] ^ dir1 ^ dir2 ^ 1
                if other in flip:
                    if flip[other] != want:
                        orientable = False
                else:
                    flip[other] = want
                    stack.append(other)

    ncomp = len(groups)
    connected = ncomp == 1
    if ncomp == 0:
        classification = "empty"
    elif connected:
        classification = _classify(chi_total, orientable)
    else:
        classification = f"other({chi_total})"
    return SurfaceReport(
        chi=chi_total,
        orientable=orientable,
        connected=connected,
        components=ncomp,
        classification=classification,
        trivial=ns.is_trivial,
        max_edge_weight=max(cx.weights, default=0),
    )


def edge_weights(ns: NormalSurface) -> list[int]:
    """Intersection count with each edge class."""
    return list(_DiscComplex(ns).weights)


def max_edge_weight(ns: NormalSurface) -> int:
    return max(edge_weights(ns), default=0)


def vertex_bound_after_cut(tr: Triangulation, ns: NormalSurface) -> int:
    """Tetrahedra free of quads: bounds the complexity after cutting."""
    return sum(1 for t in range(tr.n) if not any(ns.quad[t]))


def split_components(ns: NormalSurface) -> list[NormalSurface]:
    """Restrict the coordinates to each connected component of the surface."""
    cx = _DiscComplex(ns)
    groups = cx.components()
    if len(groups) <= 1:
        return [ns]
    out = []
    for grp in groups:
        tri_counts = [[0] * 4 for _ in range(ns.triangulation.n)]
        quad_counts = [[0] * 3 for _ in range(ns.triangulation.n)]
        for d in grp:
            kind, t, a, _ = cx.discs[d]
            if kind == "tri":
                tri_counts[t][a] += 1
            else:
                quad_counts[t][a] += 1
        out.append(_build(tri_counts, quad_counts, ns.provenance, ns.triangulation))
    return out


@dataclass(frozen=True, eq=False)
class CensusEntry:
    surface: NormalSurface
    report: SurfaceReport


def census(tr: Triangulation, budget: int | None = None) -> list[CensusEntry]:
    """All connected type I and type II normal surfaces, up to normal isotopy.

    Every surface subpolyhedron contributes itself (type I); every nonempty
    simple subpolyhedron contributes its neighborhood boundary (type II).
    Disconnected results are split into components; duplicates (equal
    normal coordinates) are dropped. Sorted by coordinate vector.
    """
    spine = dual_spine(tr)
    produced: list[NormalSurface] = []
    for q in enumerate_simple_subpolyhedra(spine, budget=budget):
        if q.is_empty:
            continue
        if q.is_surface:
            produced.append(type_I_surface(spine, q))
        produced.append(type_II_surface(spine, q))
    seen: dict[tuple[int, ...], NormalSurface] = {}
    for ns in produced:
        for comp in split_components(ns):
            key = comp.coords
            if key not in seen:
                seen[key] = comp
    entries = [
        CensusEntry(surface=ns, report=reconstruct(ns))
        for ns in sorted(seen.values(), key=lambda s: s.coords)
    ]
    return entries
