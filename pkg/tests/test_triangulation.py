import pytest

from fixtures_data import CUSPED, DOUBLE, RP2LINK, S3_ONE_TET, T41, T52
from tetspine.errors import GluingError, NotClosedError, ParseError, UngluedFaceError
from tetspine.homology import h1, smith_diagonal
from tetspine.triangulation import (
    EDGE_PAIRS,
    FACE_VERTS,
    Triangulation,
    edge_slot,
    parse_triangulation,
    perm_compose,
    perm_inverse,
    serialize_triangulation,
)

ALL_FIXTURES = {
    "T41": T41,
    "T52": T52,
    "S3_ONE_TET": S3_ONE_TET,
    "DOUBLE": DOUBLE,
    "CUSPED": CUSPED,
    "RP2LINK": RP2LINK,
}


def load(text):
    return parse_triangulation(text)


# ---- permutation helpers ------------------------------------------------------------


def test_perm_helpers():
    p = (2, 0, 3, 1)
    assert perm_compose(perm_inverse(p), p) == (0, 1, 2, 3)
    assert perm_compose(p, perm_inverse(p)) == (0, 1, 2, 3)
    q = (1, 0, 3, 2)
    # compose applies the right factor first
    assert perm_compose(p, q)[0] == p[q[0]]
    assert edge_slot(2, 3, 1) == 2 * 6 + EDGE_PAIRS.index((1, 3))


# ---- text format --------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
def test_parse_serialize_round_trip(name):
    text = ALL_FIXTURES[name]
    tri = load(text)
    again = load(serialize_triangulation(tri))
    assert again == tri
    assert serialize_triangulation(again) == serialize_triangulation(tri)


def test_serialize_comment_and_blank_lines():
    tri = load(T52)
    text = serialize_triangulation(tri, comment="hello\nworld")
    assert text.startswith("# hello\n# world\n")
    assert load("\n\n" + text + "\n") == tri


@pytest.mark.parametrize(
    "text,line,needle",
    [
        ("tets: x", 1, "bad tetrahedron count"),
        ("tets: 0", 1, "must be positive"),
        ("tets: 1\ntets: 1", 2, "duplicate tets"),
        ("tets: 1 2", 1, "one count"),
        ("g 0 0 0 1 1230", 1, "before tets"),
        ("tets: 1\ng 0 0 0 1", 2, "5 fields"),
        ("tets: 1\ng 0 a 0 1 1230", 2, "integers"),
        ("tets: 1\ng 0 0 0 1 12345", 2, "bad permutation"),
        ("tets: 1\ng 0 0 0 1 1130", 2, "bad permutation"),
        ("tets: 1\ng 0 0 0 1 1230\ng 0 0 0 1 1230", 3, "duplicate gluing"),
        ("tets: 1\nbogus line", 2, "unrecognized"),
        ("", 0, "missing tets"),
        ("# only a comment\n", 0, "missing tets"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, needle):
    with pytest.raises(ParseError) as exc:
        load(text)
    assert needle in str(exc.value)
    assert f"line {line}" in str(exc.value) or line == 0


# ---- constructor validation ---------------------------------------------------------


def base_gluings():
    return dict(
        (
            ((0, 0), (0, 1, (1, 2, 3, 0))),
            ((0, 1), (0, 0, (3, 0, 1, 2))),
            ((0, 2), (0, 3, (2, 0, 3, 1))),
            ((0, 3), (0, 2, (1, 3, 0, 2))),
        )
    )


def test_constructor_accepts_t52():
    tri = Triangulation(1, base_gluings())
    assert tri == load(T52)


def test_constructor_rejects_bad_face_image():
    g = base_gluings()
    g[(0, 0)] = (0, 2, (1, 2, 3, 0))  # perm[0] = 1, not 2
    with pytest.raises(GluingError, match="does not carry the face"):
        Triangulation(1, g)


def test_constructor_rejects_self_gluing():
    with pytest.raises(GluingError, match="glued to itself"):
        Triangulation(1, {(0, 0): (0, 0, (0, 2, 1, 3))})


def test_constructor_rejects_non_involution():
    g = base_gluings()
    # carries face 1 onto face 0 but is not the inverse of the (0,0) entry
    g[(0, 1)] = (0, 0, (2, 0, 3, 1))
    with pytest.raises(GluingError, match="mutually inverse"):
        Triangulation(1, g)


def test_constructor_rejects_unglued_faces():
    g = base_gluings()
    del g[(0, 2)], g[(0, 3)]
    with pytest.raises(UngluedFaceError) as exc:
        Triangulation(1, g)
    assert (0, 2) in exc.value.slots and (0, 3) in exc.value.slots


def test_constructor_rejects_range_errors():
    with pytest.raises(GluingError, match="out of range"):
        Triangulation(1, {(0, 5): (0, 1, (1, 2, 3, 0))})
    with pytest.raises(GluingError, match="out of range"):
        Triangulation(1, {(0, 0): (2, 1, (1, 2, 3, 0))})
    with pytest.raises(GluingError, match="at least one"):
        Triangulation(0, {})


def test_constructor_rejects_edge_self_reversal():
    # identity-style fold through two faces sharing an edge reverses that
    # edge onto itself; the quotient has no consistent edge orientation
    g = {
        (0, 0): (0, 1, (1, 0, 2, 3)),
        (0, 1): (0, 0, (1, 0, 2, 3)),
        (0, 2): (0, 3, (0, 1, 3, 2)),
        (0, 3): (0, 2, (0, 1, 3, 2)),
    }
    try:
        Triangulation(1, g)
    except GluingError:
        return
    # some labelings of this shape survive; force one that cannot
    g = {
        (0, 0): (0, 1, (1, 0, 3, 2)),
        (0, 1): (0, 0, (1, 0, 3, 2)),
        (0, 2): (0, 3, (1, 0, 3, 2)),
        (0, 3): (0, 2, (1, 0, 3, 2)),
    }
    with pytest.raises(GluingError):
        Triangulation(1, g)


# ---- cell classes -------------------------------------------------------------------


@pytest.mark.parametrize(
    "name,counts",
    [
        ("T41", (1, 2, 2, 1)),
        ("T52", (1, 2, 2, 1)),
        ("S3_ONE_TET", (2, 3, 2, 1)),
        ("DOUBLE", (4, 6, 4, 2)),
        ("CUSPED", (1, 2, 4, 2)),
        ("RP2LINK", (2, 3, 4, 2)),
    ],
)
def test_cell_counts(name, counts):
    tri = load(ALL_FIXTURES[name])
    assert tri.counts() == counts


def test_euler_characteristic():
    assert load(T52).euler_characteristic() == 0
    assert load(DOUBLE).euler_characteristic() == 0
    assert load(CUSPED).euler_characteristic() == 1
    assert load(RP2LINK).euler_characteristic() == 1


def oracle_edge_partition(tri):
    """Independent closure of the edge-slot identifications."""
    slots = {(t, pair) for t in range(tri.n) for pair in EDGE_PAIRS}
    parent = {s: s for s in slots}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for t in range(tri.n):
        for u, v in EDGE_PAIRS:
            for f in range(4):
                if f in (u, v):
                    continue
                t2, _, perm = tri.gluing(t, f)
                a, b = sorted((perm[u], perm[v]))
                ra, rb = find((t, (u, v))), find((t2, (a, b)))
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for s in slots:
        groups.setdefault(find(s), set()).add(s)
    return {frozenset(g) for g in groups.values()}


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
def test_edge_classes_match_naive_closure(name):
    tri = load(ALL_FIXTURES[name])
    got = {
        frozenset((s // 6, EDGE_PAIRS[s % 6]) for s in ec.slots)
        for ec in tri.edge_classes
    }
    assert got == oracle_edge_partition(tri)
    assert sum(ec.degree for ec in tri.edge_classes) == 6 * tri.n


def oracle_vertex_partition(tri):
    slots = {(t, v) for t in range(tri.n) for v in range(4)}
    parent = {s: s for s in slots}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for t in range(tri.n):
        for f in range(4):
            t2, _, perm = tri.gluing(t, f)
            for v in FACE_VERTS[f]:
                ra, rb = find((t, v)), find((t2, perm[v]))
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for s in slots:
        groups.setdefault(find(s), set()).add(s)
    return {frozenset(g) for g in groups.values()}


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
def test_vertex_classes_match_naive_closure(name):
    tri = load(ALL_FIXTURES[name])
    got = {
        frozenset((s // 4, s % 4) for s in vc.slots) for vc in tri.vertex_classes
    }
    assert got == oracle_vertex_partition(tri)


def test_class_accessors_are_consistent():
    tri = load(T52)
    for t in range(tri.n):
        for u, v in EDGE_PAIRS:
            idx = tri.edge_class_of(t, u, v)
            assert edge_slot(t, u, v) in tri.edge_classes[idx].slots
            assert tri.edge_sign_of(t, u, v) in (-1, 1)
        for v in range(4):
            idx = tri.vertex_class_of(t, v)
            assert t * 4 + v in tri.vertex_classes[idx].slots
        for f in range(4):
            tc = tri.triangle_classes[tri.triangle_class_of(t, f)]
            assert (t, f) in (tc.rep, tc.other)
    assert len(tri.triangle_classes) == 2 * tri.n
    # sign flips across a class exactly when ascending orders disagree
    ec = tri.edge_classes[0]
    assert ec.signs[0] == 1


def test_edge_sign_of_rep_is_positive():
    for text in ALL_FIXTURES.values():
        tri = load(text)
        for ec in tri.edge_classes:
            rep = ec.rep
            t, pair = rep // 6, EDGE_PAIRS[rep % 6]
            assert tri.edge_sign_of(t, *pair) == 1


# ---- vertex links -------------------------------------------------------------------


def test_vertex_links_classifications():
    t52 = load(T52)
    assert [lk.classification for lk in t52.vertex_links] == ["sphere"]
    assert t52.is_closed and t52.kind == "closed"

    dbl = load(DOUBLE)
    assert [lk.classification for lk in dbl.vertex_links] == ["sphere"] * 4
    assert dbl.is_closed

    cusped = load(CUSPED)
    assert [lk.classification for lk in cusped.vertex_links] == ["torus"]
    assert not cusped.is_closed and cusped.kind == "ideal"

    rp2 = load(RP2LINK)
    assert [lk.classification for lk in rp2.vertex_links] == ["rp2", "rp2"]
    assert not rp2.is_closed

    for text in ALL_FIXTURES.values():
        tri = load(text)
        assert sum(lk.triangles for lk in tri.vertex_links) == 4 * tri.n


def test_link_chi_matches_triangle_count():
    # each vertex link is built from one triangle per incident corner
    for text in ALL_FIXTURES.values():
        tri = load(text)
        for lk in tri.vertex_links:
            assert lk.chi <= 2
            assert lk.triangles >= 1


# ---- isomorphism --------------------------------------------------------------------


def relabel(tri, tet_perm, vert_perms):
    """Rebuild tri with tetrahedra renamed by tet_perm and the vertices of
    old tet t renamed by vert_perms[t]."""
    out = {}
    for t in range(tri.n):
        for f in range(4):
            t2, f2, p = tri.gluing(t, f)
            s, s2 = vert_perms[t], vert_perms[t2]
            q = perm_compose(s2, perm_compose(p, perm_inverse(s)))
            out[(tet_perm[t], s[f])] = (tet_perm[t2], s2[f2], q)
    return Triangulation(tri.n, out)


def test_isomorphism_invariance_under_relabeling():
    dbl = load(DOUBLE)
    moved = relabel(dbl, (1, 0), ((2, 3, 1, 0), (0, 2, 3, 1)))
    assert moved.is_isomorphic_to(dbl)

    t52 = load(T52)
    turned = relabel(t52, (0,), ((3, 1, 0, 2),))
    assert turned.is_isomorphic_to(t52)

    assert not load(T41).is_isomorphic_to(t52)
    assert t52.is_isomorphic_to(t52)


def test_canonical_form_is_stable():
    tri = load(T52)
    assert tri.canonical_form == load(serialize_triangulation(tri)).canonical_form


# ---- homology -----------------------------------------------------------------------


def test_smith_diagonal_frozen_cases():
    # only the nonzero invariant factors are reported
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert smith_diagonal([[1, 0], [0, 1]]) == [1, 1]
    assert smith_diagonal([[0, 0], [0, 0]]) == []
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert smith_diagonal([[6]]) == [6]
    assert smith_diagonal([[1, 2, 3]]) == [1]
    assert smith_diagonal([]) == []


def test_smith_diagonal_against_sympy():
    import random

    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form

    rng = random.Random(31)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        got = smith_diagonal([row[:] for row in m])
        ref = smith_normal_form(Matrix(m))
        want = [abs(ref[i, i]) for i in range(min(rows, cols)) if ref[i, i]]
        assert [abs(x) for x in got] == want


@pytest.mark.parametrize(
    "name,expected",
    [
        ("T52", (0, [5])),
        ("T41", (0, [4])),
        ("S3_ONE_TET", (0, [])),
        ("DOUBLE", (0, [])),
    ],
)
def test_h1(name, expected):
    betti, torsion = h1(load(ALL_FIXTURES[name]))
    assert (betti, torsion) == expected
    assert isinstance(torsion, list)


def test_h1_requires_closed():
    with pytest.raises(NotClosedError):
        h1(load(CUSPED))
