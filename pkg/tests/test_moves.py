import pytest

from fixtures_data import DOUBLE, T41, T52
from tetspine.errors import MoveNotApplicableError
from tetspine.homology import h1
from tetspine.lens import build_Tpq
from tetspine.moves import (
    SplitMix64,
    applicable_moves,
    iter_pachner_walk,
    pachner_23,
    pachner_32,
    random_pachner_walk,
)
from tetspine.spine import t_manifold
from tetspine.triangulation import parse_triangulation, serialize_triangulation


def test_splitmix_reference_stream():
    rng = SplitMix64(0)
    assert rng.next() == 0xE220A8397B1DCDAF
    assert rng.next() == 0x6E789E6AA1B965F4
    assert rng.next() == 0x06C45D188009454F
    assert rng.next() == 0xF88BB8A8724C81EC
    rng = SplitMix64(1234567)
    first = [rng.next() for _ in range(5)]
    again = SplitMix64(1234567)
    assert [again.next() for _ in range(5)] == first
    assert all(0 <= x < 2**64 for x in first)


def test_splitmix_below():
    rng = SplitMix64(9)
    vals = [rng.below(7) for _ in range(200)]
    assert all(0 <= v < 7 for v in vals)
    assert len(set(vals)) == 7


def test_applicable_moves_on_one_tet():
    # all triangle classes of a 1-tet triangulation are same-tet, and no
    # edge class spreads over 3 distinct tets, so nothing is legal
    tri = parse_triangulation(T52)
    assert applicable_moves(tri) == []
    walked = random_pachner_walk(tri, 5, seed=3)
    assert walked == tri  # every step yields unchanged


def test_applicable_moves_on_double():
    tri = parse_triangulation(DOUBLE)
    moves = applicable_moves(tri)
    assert moves, "identity-glued double has cross-tet triangles"
    assert all(kind == "23" for kind, _ in moves)  # all edges have degree 2


def test_pachner_23_counts():
    tri = parse_triangulation(DOUBLE)
    kind, idx = applicable_moves(tri)[0]
    assert kind == "23"
    out = pachner_23(tri, idx)
    assert out.n == tri.n + 1
    assert len(out.vertex_classes) == len(tri.vertex_classes)
    assert out.is_closed == tri.is_closed


def test_pachner_23_rejects_same_tet_triangle():
    tri = parse_triangulation(T52)
    with pytest.raises(MoveNotApplicableError):
        pachner_23(tri, 0)


def test_pachner_32_rejects_wrong_degree():
    tri = parse_triangulation(T52)
    for ec in tri.edge_classes:
        with pytest.raises(MoveNotApplicableError):
            pachner_32(tri, ec.index)


def test_23_then_32_returns_original():
    for text_or_build in (parse_triangulation(DOUBLE), build_Tpq(7, 2), build_Tpq(9, 2)):
        tri = text_or_build
        move23 = [i for k, i in applicable_moves(tri) if k == "23"]
        assert move23
        bigger = pachner_23(tri, move23[0])
        assert bigger.n == tri.n + 1
        undone = []
        for kind, idx in applicable_moves(bigger):
            if kind != "32":
                continue
            shrunk = pachner_32(bigger, idx)
            if shrunk.is_isomorphic_to(tri):
                undone.append(idx)
        assert undone, "the inverse 3-2 move along the central edge must exist"


def test_moves_preserve_homology_and_vertices():
    tri = build_Tpq(7, 2)
    want_h1 = h1(tri)
    want_v = len(tri.vertex_classes)
    for cur in iter_pachner_walk(tri, 12, seed=11):
        assert h1(cur) == want_h1
        assert len(cur.vertex_classes) == want_v
        assert cur.is_closed


def test_moves_preserve_t_invariant():
    # T_4_1 has one tet and no legal moves, so it checks the idle path;
    # T_7_2 actually wanders
    for p, q, expect_motion in ((7, 2, True), (4, 1, False)):
        tri = build_Tpq(p, q)
        want = t_manifold(tri)
        seen_sizes = set()
        for cur in iter_pachner_walk(tri, 10, seed=5):
            assert t_manifold(cur) == want
            seen_sizes.add(cur.n)
        assert (len(seen_sizes) > 1) == expect_motion


def test_walk_determinism():
    tri = parse_triangulation(DOUBLE)
    a = [serialize_triangulation(t) for t in iter_pachner_walk(tri, 6, seed=42)]
    b = [serialize_triangulation(t) for t in iter_pachner_walk(tri, 6, seed=42)]
    assert a == b
    c = random_pachner_walk(tri, 6, seed=42)
    assert serialize_triangulation(c) == a[-1]
    d = [serialize_triangulation(t) for t in iter_pachner_walk(tri, 6, seed=43)]
    assert a != d


def test_walk_yields_each_step():
    tri = parse_triangulation(DOUBLE)
    states = list(iter_pachner_walk(tri, 4, seed=0))
    assert len(states) == 4
    for prev, cur in zip([tri] + states, states):
        assert abs(cur.n - prev.n) <= 1
