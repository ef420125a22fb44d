"""Triangulations as face pairings of labelled tetrahedra.

A triangulation holds n tetrahedra with vertex labels 0..3; face i is the
triangle opposite vertex i.  Every face slot (tet, face) is glued to exactly
one other slot by a vertex permutation, the pairing is a fixed-point-free
involution, and the two directions carry mutually inverse permutations.
Partially glued complexes are rejected, so the underlying space is a closed
or ideal pseudo-manifold.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import GluingError, ParseError, UngluedFaceError

Perm = tuple[int, int, int, int]

EDGE_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX: dict[tuple[int, int], int] = {p: i for i, p in enumerate(EDGE_PAIRS)}
FACE_VERTS: tuple[tuple[int, int, int], ...] = tuple(
    tuple(v for v in range(4) if v != f) for f in range(4)
)
IDENTITY: Perm = (0, 1, 2, 3)


def perm_inverse(p: Perm) -> Perm:
    inv = [0, 0, 0, 0]
    for i in range(4):
        inv[p[i]] = i
    return tuple(inv)


def perm_compose(p: Perm, q: Perm) -> Perm:
    """Permutation applying q first, then p."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def _all_perms() -> tuple[Perm, ...]:
    perms = []
    for a in range(4):
        for b in range(4):
            if b == a:
                continue
            for c in range(4):
                if c in (a, b):
                    continue
                d = 6 - a - b - c
                perms.append((a, b, c, d))
    return tuple(perms)


ALL_PERMS: tuple[Perm, ...] = _all_perms()


def edge_slot(t: int, u: int, v: int) -> int:
    """Index of the undirected edge slot {u, v} of tetrahedron t."""
    if u > v:
        u, v = v, u
    return t * 6 + PAIR_INDEX[(u, v)]


class _SignedDSU:
    """Union-find with a sign bit on each edge to the parent."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.sign = [0] * n
        self.rank = [0] * n

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        s = 0
        for y in reversed(path):
            s ^= self.sign[y]
            self.parent[y] = x
            self.sign[y] = s
        acc = 0
        # recompute accumulated sign for the original element
        # (path compression already rewired everything onto the root)
        if path:
            acc = self.sign[path[0]]
        return x, acc

    def union(self, x: int, y: int, s: int) -> bool:
        """Join x ~ y with relative sign s; False reports a sign conflict."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            return (sx ^ sy) == s
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
            sx, sy = sy, sx
        self.parent[ry] = rx
        self.sign[ry] = sx ^ sy ^ s
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True


class _DSU:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


@dataclass(frozen=True)
class EdgeClass:
    """Orbit of edge slots under the gluing maps.

    slots are global edge-slot indices sorted ascending; signs[i] is +1 when
    slot i's ascending vertex order agrees with the class orientation (the
    ascending order of the representative slot slots[0]).
    """

    index: int
    slots: tuple[int, ...]
    signs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.slots)

    @property
    def rep(self) -> int:
        return self.slots[0]


@dataclass(frozen=True)
class VertexClass:
    index: int
    slots: tuple[int, ...]  # global vertex slots t*4+v, sorted


@dataclass(frozen=True)
class TriangleClass:
    """Glued pair of face slots; perm maps rep-side labels to the other side."""

    index: int
    rep: tuple[int, int]
    other: tuple[int, int]
    perm: Perm


@dataclass(frozen=True)
class VertexLinkSurface:
    chi: int
    orientable: bool
    triangles: int

    @property
    def is_sphere(self) -> bool:
        return self.chi == 2 and self.orientable

    @property
    def classification(self) -> str:
        if self.chi == 2 and self.orientable:
            return "sphere"
        if self.chi == 1 and not self.orientable:
            return "rp2"
        if self.chi == 0:
            return "torus" if self.orientable else "klein"
        return "other"


class Triangulation:
    """Immutable closed-face-pairing of n tetrahedra."""

    def __init__(self, n: int, gluings: Mapping[tuple[int, int], tuple[int, int, Iterable[int]]]) -> None:
        if n < 1:
            raise GluingError("need at least one tetrahedron")
        table: list[list[tuple[int, int, Perm] | None]] = [[None] * 4 for _ in range(n)]
        for (t, f), (t2, f2, perm) in gluings.items():
            perm = tuple(perm)
            if not (0 <= t < n and 0 <= f < 4):
                raise GluingError(f"face slot ({t},{f}) out of range")
            if not (0 <= t2 < n and 0 <= f2 < 4):
                raise GluingError(f"target slot ({t2},{f2}) out of range for ({t},{f})")
            if sorted(perm) != [0, 1, 2, 3]:
                raise GluingError(f"invalid permutation {perm} at ({t},{f})")
            if perm[f] != f2:
                raise GluingError(
                    f"permutation {perm} at ({t},{f}) does not carry the face onto ({t2},{f2})"
                )
            if (t2, f2) == (t, f):
                raise GluingError(f"face slot ({t},{f}) glued to itself")
            if table[t][f] is not None:
                raise GluingError(f"face slot ({t},{f}) glued twice")
            table[t][f] = (t2, f2, perm)
        missing = [(t, f) for t in range(n) for f in range(4) if table[t][f] is None]
        if missing:
            raise UngluedFaceError(missing)
        for t in range(n):
            for f in range(4):
                t2, f2, perm = table[t][f]
                back = table[t2][f2]
                if back[0] != t or back[1] != f or back[2] != perm_inverse(perm):
                    raise GluingError(
                        f"gluings at ({t},{f}) and ({t2},{f2}) are not mutually inverse"
                    )
        self.n = n
        self._table: tuple[tuple[tuple[int, int, Perm], ...], ...] = tuple(
            tuple(row) for row in table
        )
        # force edge-orientation consistency early; a slot identified with its
        # own reversal has no usable quotient cell structure
        self._edge_data

    def gluing(self, t: int, f: int) -> tuple[int, int, Perm]:
        return self._table[t][f]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self._table == other._table

    def __hash__(self) -> int:
        return hash(self._table)

    def __repr__(self) -> str:
        return f"<Triangulation n={self.n}>"

    # ---- identification classes -------------------------------------------------

    @cached_property
    def _edge_data(self) -> tuple[tuple[EdgeClass, ...], list[int], list[int]]:
        n = self.n
        dsu = _SignedDSU(6 * n)
        for t in range(n):
            for f in range(4):
                t2, f2, perm = self._table[t][f]
                verts = FACE_VERTS[f]
                for i in range(3):
                    for j in range(i + 1, 3):
                        a, b = verts[i], verts[j]
                        a2, b2 = perm[a], perm[b]
                        s = 0 if (a2 < b2) else 1
                        if not dsu.union(edge_slot(t, a, b), edge_slot(t2, a2, b2), s):
                            pair = EDGE_PAIRS[edge_slot(t, a, b) % 6]
                            raise GluingError(
                                f"edge {pair} of tetrahedron {t} is identified with "
                                "itself reversed"
                            )
        groups: dict[int, list[int]] = {}
        for s in range(6 * n):
            root, _ = dsu.find(s)
            groups.setdefault(root, []).append(s)
        classes = []
        class_of = [0] * (6 * n)
        sign_of = [0] * (6 * n)
        for idx, members in enumerate(sorted(groups.values(), key=lambda m: m[0])):
            rep = members[0]
            _, srep = dsu.find(rep)
            signs = []
            for m in members:
                _, sm = dsu.find(m)
                sg = 1 if (sm ^ srep) == 0 else -1
                signs.append(sg)
                class_of[m] = idx
                sign_of[m] = sg
            classes.append(EdgeClass(idx, tuple(members), tuple(signs)))
        return tuple(classes), class_of, sign_of

    @property
    def edge_classes(self) -> tuple[EdgeClass, ...]:
        return self._edge_data[0]

    def edge_class_of(self, t: int, u: int, v: int) -> int:
        return self._edge_data[1][edge_slot(t, u, v)]

    def edge_sign_of(self, t: int, u: int, v: int) -> int:
        """+1 when slot ascending order matches the class orientation."""
        return self._edge_data[2][edge_slot(t, u, v)]

    @cached_property
    def _vertex_data(self) -> tuple[tuple[VertexClass, ...], list[int]]:
        n = self.n
        dsu = _DSU(4 * n)
        for t in range(n):
            for f in range(4):
                t2, _, perm = self._table[t][f]
                for v in FACE_VERTS[f]:
                    dsu.union(t * 4 + v, t2 * 4 + perm[v])
        groups: dict[int, list[int]] = {}
        for s in range(4 * n):
            groups.setdefault(dsu.find(s), []).append(s)
        classes = []
        class_of = [0] * (4 * n)
        for idx, members in enumerate(sorted(groups.values(), key=lambda m: m[0])):
            for m in members:
                class_of[m] = idx
            classes.append(VertexClass(idx, tuple(members)))
        return tuple(classes), class_of

    @property
    def vertex_classes(self) -> tuple[VertexClass, ...]:
        return self._vertex_data[0]

    def vertex_class_of(self, t: int, v: int) -> int:
        return self._vertex_data[1][t * 4 + v]

    @cached_property
    def triangle_classes(self) -> tuple[TriangleClass, ...]:
        classes = []
        seen = set()
        for t in range(self.n):
            for f in range(4):
                if (t, f) in seen:
                    continue
                t2, f2, perm = self._table[t][f]
                seen.add((t, f))
                seen.add((t2, f2))
                classes.append(TriangleClass(len(classes), (t, f), (t2, f2), perm))
        return tuple(classes)

    @cached_property
    def _triangle_class_of(self) -> dict[tuple[int, int], int]:
        out = {}
        for tc in self.triangle_classes:
            out[tc.rep] = tc.index
            out[tc.other] = tc.index
        return out

    def triangle_class_of(self, t: int, f: int) -> int:
        return self._triangle_class_of[(t, f)]

    # ---- vertex links -------------------------------------------------------------

    @cached_property
    def vertex_links(self) -> tuple[VertexLinkSurface, ...]:
        """Link surface of each vertex class, from its corner-triangle complex."""
        n = self.n

        def corner(t: int, v: int, u: int) -> int:
            shift = u - (1 if u > v else 0)
            return t * 12 + v * 3 + shift

        dsu = _DSU(12 * n)
        for t in range(n):
            for f in range(4):
                t2, _, perm = self._table[t][f]
                for v in FACE_VERTS[f]:
                    for u in range(4):
                        if u == v or u == f:
                            continue
                        dsu.union(corner(t, v, u), corner(t2, perm[v], perm[u]))

        def link_dir(v: int, f: int) -> int:
            # corner triangle at (t, v) oriented by ascending corner labels;
            # -1 when the link edge inside face f joins the outer corner pair
            others = [u for u in range(4) if u != v]
            a, b = sorted(u for u in others if u != f)
            return -1 if (a, b) == (others[0], others[2]) else 1

        links = []
        for vc in self.vertex_classes:
            tris = [(s // 4, s % 4) for s in vc.slots]
            froots = set()
            for t, v in tris:
                for u in range(4):
                    if u != v:
                        froots.add(dsu.find(corner(t, v, u)))
            nv = len(froots)
            nf = len(tris)
            ne = 3 * nf // 2
            chi = nv - ne + nf
            # propagate triangle orientations across the 3 link edges each
            sign: dict[tuple[int, int], int] = {}
            orientable = True
            for start in tris:
                if start in sign:
                    continue
                sign[start] = 1
                stack = [start]
                while stack:
                    t, v = stack.pop()
                    for f in range(4):
                        if f == v:
                            continue
                        t2, f2, perm = self._table[t][f]
                        nbr = (t2, perm[v])
                        x, y = sorted(u for u in range(4) if u != v and u != f)
                        order = 1 if perm[x] < perm[y] else -1
                        rel = -link_dir(v, f) * link_dir(perm[v], f2) * order
                        want = sign[(t, v)] * rel
                        if nbr in sign:
                            if sign[nbr] != want:
                                orientable = False
                        else:
                            sign[nbr] = want
                            stack.append(nbr)
            links.append(VertexLinkSurface(chi, orientable, nf))
        return tuple(links)

    @property
    def is_closed(self) -> bool:
        return all(lk.is_sphere for lk in self.vertex_links)

    @property
    def kind(self) -> str:
        return "closed" if self.is_closed else "ideal"

    def counts(self) -> tuple[int, int, int, int]:
        """(vertex classes, edge classes, triangle classes, tetrahedra)."""
        return (len(self.vertex_classes), len(self.edge_classes), 2 * self.n, self.n)

    def euler_characteristic(self) -> int:
        v, e, f, t = self.counts()
        return v - e + f - t

    # ---- isomorphism ---------------------------------------------------------------

    def _canon_encode(self, start: int, p0: Perm) -> tuple[int, ...]:
        idx_of = {start: 0}
        perms = {start: p0}
        order = [start]
        out: list[int] = []
        ci = 0
        while ci < len(order):
            t = order[ci]
            mt = perms[t]
            mt_inv = perm_inverse(mt)
            for face in range(4):
                f = mt_inv[face]
                t2, f2, phi = self._table[t][f]
                if t2 not in idx_of:
                    idx_of[t2] = len(order)
                    perms[t2] = perm_compose(mt, perm_inverse(phi))
                    order.append(t2)
                m2 = perms[t2]
                out.append(idx_of[t2])
                out.append(m2[f2])
                out.extend(perm_compose(m2, perm_compose(phi, mt_inv)))
            ci += 1
        return tuple(out)

    @cached_property
    def canonical_form(self) -> tuple[int, ...]:
        """Lexicographically minimal relabelled gluing table."""
        best = None
        for start in range(self.n):
            for p0 in ALL_PERMS:
                enc = self._canon_encode(start, p0)
                if best is None or enc < best:
                    best = enc
        return (self.n,) + best

    def is_isomorphic_to(self, other: Triangulation) -> bool:
        return self.n == other.n and self.canonical_form == other.canonical_form


# ---- text format --------------------------------------------------------------------


def parse_triangulation(text: str) -> Triangulation:
    """Parse the gluing-table text format.

    Lines: optional `# comment`, one `tets: N` header, then one
    `g <tet> <face> <tet'> <face'> <p0p1p2p3>` line per glued slot direction.
    Both directions of every gluing must be present and mutually inverse.
    """
    n: int | None = None
    gluings: dict[tuple[int, int], tuple[int, int, Perm]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        if tokens[0] == "tets:":
            if n is not None:
                raise ParseError("duplicate tets: header", lineno, 1)
            if len(tokens) != 2:
                raise ParseError("tets: header takes one count", lineno, 1)
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad tetrahedron count {tokens[1]!r}", lineno, len(tokens[0]) + 2)
            if n < 1:
                raise ParseError("tetrahedron count must be positive", lineno, len(tokens[0]) + 2)
            continue
        if tokens[0] == "g":
            if n is None:
                raise ParseError("gluing line before tets: header", lineno, 1)
            if len(tokens) != 6:
                raise ParseError("gluing line needs 5 fields after g", lineno, 1)
            col = raw.index(tokens[0]) + 1
            try:
                t, f, t2, f2 = (int(x) for x in tokens[1:5])
            except ValueError:
                raise ParseError("gluing fields must be integers", lineno, col)
            word = tokens[5]
            if len(word) != 4 or not word.isdigit():
                raise ParseError(f"bad permutation {word!r}", lineno, col)
            perm = tuple(int(c) for c in word)
            if sorted(perm) != [0, 1, 2, 3]:
                raise ParseError(f"bad permutation {word!r}", lineno, col)
            if (t, f) in gluings:
                raise ParseError(f"duplicate gluing for slot ({t},{f})", lineno, col)
            gluings[(t, f)] = (t2, f2, perm)
            continue
        raise ParseError(f"unrecognized line {tokens[0]!r}", lineno, 1)
    if n is None:
        raise ParseError("missing tets: header", 0, 0)
    return Triangulation(n, gluings)


def serialize_triangulation(tri: Triangulation, comment: str | None = None) -> str:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    lines.append(f"tets: {tri.n}")
    for t in range(tri.n):
        for f in range(4):
            t2, f2, perm = tri.gluing(t, f)
            word = "".join(str(x) for x in perm)
            lines.append(f"g {t} {f} {t2} {f2} {word}")
    return "\n".join(lines) + "\n"
