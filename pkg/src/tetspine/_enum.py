"""Backtracking enumeration kernel for simple subsets of spine faces.

The compiled extension `_enumcore` implements the same search; callers go
through `enumerate_masks`, which picks the fast kernel when it is importable
and the mask width fits in 64 bits.
"""

from __future__ import annotations

from typing import Sequence

try:
    from . import _enumcore

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on the build environment
    _enumcore = None
    HAVE_COMPILED = False


def enumerate_masks_pure(num_faces: int, edge_germs: Sequence[tuple[int, int, int]]) -> list[int]:
    """All face bitmasks whose per-edge germ counts avoid the value 1.

    Each entry of edge_germs lists the 3 faces incident to one spine edge,
    with multiplicity. Depth-first search over faces in index order; after
    every decision, constraint propagation forces the moves that are implied
    (a lone undecided germ on an otherwise-empty edge must stay out; if an
    edge already holds exactly one germ, its undecided germs must come in
    when they all belong to a single face) and prunes dead edges.
    """
    num_edges = len(edge_germs)
    germ_faces = [tuple(g) for g in edge_germs]
    edges_of_face: list[list[int]] = [[] for _ in range(num_faces)]
    for e, germs in enumerate(germ_faces):
        if len(germs) != 3:
            raise ValueError(f"edge {e} has {len(germs)} germs, expected 3")
        for f in germs:
            edges_of_face[f].append(e)

    status = [-1] * num_faces  # -1 undecided, 0 out, 1 in
    in_cnt = [0] * num_edges
    und_cnt = [3] * num_edges
    trail: list[int] = []

    def set_face(f: int, val: int, queue: list[int]) -> None:
        status[f] = val
        trail.append(f)
        for e in edges_of_face[f]:
            und_cnt[e] -= 1
            if val:
                in_cnt[e] += 1
            queue.append(e)

    def decide(f: int, val: int) -> bool:
        queue: list[int] = []
        set_face(f, val, queue)
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            ic = in_cnt[e]
            uc = und_cnt[e]
            if uc == 0:
                if ic == 1:
                    return False
                continue
            if ic == 1:
                pending = {g for g in germ_faces[e] if status[g] == -1}
                if len(pending) == 1:
                    set_face(pending.pop(), 1, queue)
            elif ic == 0 and uc == 1:
                g = next(gf for gf in germ_faces[e] if status[gf] == -1)
                set_face(g, 0, queue)
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            g = trail.pop()
            val = status[g]
            for e in edges_of_face[g]:
                und_cnt[e] += 1
                if val:
                    in_cnt[e] -= 1
            status[g] = -1

    out: list[int] = []

    def dfs(pos: int) -> None:
        while pos < num_faces and status[pos] != -1:
            pos += 1
        if pos == num_faces:
            mask = 0
            for f in range(num_faces):
                if status[f]:
                    mask |= 1 << f
            out.append(mask)
            return
        for val in (0, 1):
            mark = len(trail)
            if decide(pos, val):
                dfs(pos + 1)
            undo(mark)

    dfs(0)
    out.sort()
    return out


def enumerate_masks(num_faces: int, edge_germs: Sequence[tuple[int, int, int]]) -> list[int]:
    if HAVE_COMPILED and num_faces <= 62:
        return _enumcore.enumerate_masks(num_faces, [tuple(g) for g in edge_germs])
    return enumerate_masks_pure(num_faces, edge_germs)
