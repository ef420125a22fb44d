"""Bistellar 2-3 and 3-2 moves, and seeded random move walks.

Both moves rebuild the gluing table from scratch: the touched tetrahedra are
removed, survivors are shifted down, and the replacement tetrahedra are
appended at the end, so results are deterministic functions of the input.
"""

from __future__ import annotations

from typing import Iterator

from .errors import MoveNotApplicableError
from .triangulation import (
    EDGE_PAIRS,
    FACE_VERTS,
    Perm,
    Triangulation,
    perm_compose,
    perm_inverse,
)

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny deterministic PRNG (splitmix-style 64-bit state update)."""

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n


def _rebuild(
    n_old: int,
    tri: Triangulation,
    doomed: tuple[int, ...],
    boundary_map: dict[tuple[int, int], tuple[int, int, Perm]],
    extra_gluings: list[tuple[tuple[int, int], tuple[int, int, Perm]]],
    n_new: int,
) -> Triangulation:
    """Reglue survivors and replacement tets after removing `doomed`.

    boundary_map sends each old boundary slot of the removed region to its
    replacement slot, with a label correspondence old-tet -> new-tet.
    """
    doomed_set = set(doomed)
    shift = []
    k = 0
    for t in range(n_old):
        shift.append(k)
        if t not in doomed_set:
            k += 1

    def newtet(t: int) -> int:
        return shift[t]

    gluings: dict[tuple[int, int], tuple[int, int, Perm]] = {}

    def add(slot_a: tuple[int, int], slot_b: tuple[int, int], perm: Perm) -> None:
        gluings[slot_a] = (slot_b[0], slot_b[1], perm)
        gluings[slot_b] = (slot_a[0], slot_a[1], perm_inverse(perm))

    for t in range(n_old):
        if t in doomed_set:
            continue
        for f in range(4):
            t2, f2, psi = tri.gluing(t, f)
            if t2 in doomed_set:
                continue
            if (newtet(t), f) in gluings:
                continue
            add((newtet(t), f), (newtet(t2), f2), psi)
    for (t, f), (nt, nf, sigma) in boundary_map.items():
        t2, f2, psi = tri.gluing(t, f)
        if (nt, nf) in gluings:
            continue
        if t2 in doomed_set:
            nt2, nf2, sigma2 = boundary_map[(t2, f2)]
            add((nt, nf), (nt2, nf2), perm_compose(sigma2, perm_compose(psi, perm_inverse(sigma))))
        else:
            add((nt, nf), (newtet(t2), f2), perm_compose(psi, perm_inverse(sigma)))
    for slot_a, (t2, f2, perm) in extra_gluings:
        add(slot_a, (t2, f2), perm)
    return Triangulation(n_new, gluings)


def pachner_23(tri: Triangulation, triangle_index: int) -> Triangulation:
    """Replace the two tetrahedra around a triangle class by three.

    The shared triangle's vertices (a, b, c) span a bipyramid with the two
    opposite apexes; the replacement tetrahedra each join one triangle edge
    to the new central apex-apex edge.
    """
    tcs = tri.triangle_classes
    if not 0 <= triangle_index < len(tcs):
        raise MoveNotApplicableError(f"no triangle class {triangle_index}")
    tc = tcs[triangle_index]
    (t0, f0), (t1, f1) = tc.rep, tc.other
    phi = tc.perm
    if t0 == t1:
        raise MoveNotApplicableError(
            f"triangle class {triangle_index} has both sides in tetrahedron {t0}"
        )
    abc = FACE_VERTS[f0]
    k = tri.n - 2

    boundary_map: dict[tuple[int, int], tuple[int, int, Perm]] = {}
    lam: list[dict[int, int]] = []
    for zi, z in enumerate(abc):
        x, y = (w for w in abc if w != z)
        lam.append({x: 0, y: 1})
        sigma0 = [0, 0, 0, 0]
        sigma0[x], sigma0[y], sigma0[f0], sigma0[z] = 0, 1, 2, 3
        boundary_map[(t0, z)] = (k + zi, 3, tuple(sigma0))
        sigma1 = [0, 0, 0, 0]
        sigma1[phi[x]], sigma1[phi[y]], sigma1[f1], sigma1[phi[z]] = 0, 1, 3, 2
        boundary_map[(t1, phi[z])] = (k + zi, 2, tuple(sigma1))

    extra: list[tuple[tuple[int, int], tuple[int, int, Perm]]] = []
    for zi in range(3):
        for zj in range(zi + 1, 3):
            z, z2 = abc[zi], abc[zj]
            w = next(v for v in abc if v not in (z, z2))
            pi = [0, 0, 0, 0]
            pi[lam[zi][w]] = lam[zj][w]
            pi[lam[zi][z2]] = lam[zj][z]
            pi[2], pi[3] = 2, 3
            extra.append(((k + zi, lam[zi][z2]), (k + zj, lam[zj][z], tuple(pi))))

    return _rebuild(tri.n, tri, (t0, t1), boundary_map, extra, tri.n + 1)


def pachner_32(tri: Triangulation, edge_index: int) -> Triangulation:
    """Replace the three tetrahedra around a degree-3 edge class by two."""
    ecs = tri.edge_classes
    if not 0 <= edge_index < len(ecs):
        raise MoveNotApplicableError(f"no edge class {edge_index}")
    ec = ecs[edge_index]
    if ec.degree != 3:
        raise MoveNotApplicableError(
            f"edge class {edge_index} has degree {ec.degree}, need 3"
        )
    tets = tuple(s // 6 for s in ec.slots)
    if len(set(tets)) != 3:
        raise MoveNotApplicableError(
            f"edge class {edge_index} revisits a tetrahedron"
        )

    # walk around the edge starting from the representative slot, labelling
    # the three equatorial vertices 0, 1, 2 as they appear
    rep = ec.rep
    t_start = rep // 6
    tail0, head0 = EDGE_PAIRS[rep % 6]
    g, kv = (v for v in range(4) if v not in (tail0, head0))
    visits = [(t_start, tail0, head0, {g: 0, kv: 1})]
    exit_role = 1
    for step in range(3):
        t_cur, tail, head, roles = visits[-1]
        exit_label = next(l for l, r in roles.items() if r == exit_role)
        t2, f2, psi = tri.gluing(t_cur, exit_label)
        n_tail, n_head = psi[tail], psi[head]
        carried = {psi[l]: r for l, r in roles.items() if l != exit_label}
        if step < 2:
            new_role = 3 - sum(roles.values())  # the role the current tet omits
            carried[f2] = new_role
            visits.append((t2, n_tail, n_head, carried))
            exit_role = next(r for r in carried.values() if r != new_role)
        else:
            first_t, first_tail, first_head, first_roles = visits[0]
            ok = (t2, n_tail, n_head) == (first_t, first_tail, first_head)
            if ok:
                ok = all(first_roles.get(l) == r for l, r in carried.items())
            if not ok:
                raise MoveNotApplicableError(
                    f"edge class {edge_index} does not close up around three tetrahedra"
                )
    m_tets = [v[0] for v in visits]
    if sorted(m_tets) != sorted(tets):
        raise MoveNotApplicableError(
            f"edge class {edge_index} walk did not visit its three tetrahedra"
        )

    k = tri.n - 3
    boundary_map: dict[tuple[int, int], tuple[int, int, Perm]] = {}
    for t_m, tail_m, head_m, roles in visits:
        covered = set(roles.values())
        z = next(r for r in (0, 1, 2) if r not in covered)
        sigma_low = [0, 0, 0, 0]  # -> new tet 0 (tail apex), via face omitting head
        sigma_high = [0, 0, 0, 0]  # -> new tet 1 (head apex), via face omitting tail
        for l, r in roles.items():
            sigma_low[l] = r
            sigma_high[l] = r
        sigma_low[tail_m], sigma_low[head_m] = 3, z
        sigma_high[head_m], sigma_high[tail_m] = 3, z
        boundary_map[(t_m, head_m)] = (k, z, tuple(sigma_low))
        boundary_map[(t_m, tail_m)] = (k + 1, z, tuple(sigma_high))

    extra = [(((k, 3)), (k + 1, 3, (0, 1, 2, 3)))]
    return _rebuild(tri.n, tri, tuple(tets), boundary_map, extra, tri.n - 1)


def applicable_moves(tri: Triangulation) -> list[tuple[str, int]]:
    """All legal moves, as ("23", triangle index) or ("32", edge index)."""
    out: list[tuple[str, int]] = []
    for tc in tri.triangle_classes:
        if tc.rep[0] != tc.other[0]:
            out.append(("23", tc.index))
    for ec in tri.edge_classes:
        if ec.degree == 3 and len({s // 6 for s in ec.slots}) == 3:
            out.append(("32", ec.index))
    return out


def iter_pachner_walk(tri: Triangulation, steps: int, seed: int) -> Iterator[Triangulation]:
    """Yield the triangulation after each random applicable move.

    Steps with no applicable move leave the triangulation unchanged.
    """
    rng = SplitMix64(seed)
    cur = tri
    for _ in range(steps):
        moves = applicable_moves(cur)
        if moves:
            kind, idx = moves[rng.below(len(moves))]
            cur = pachner_23(cur, idx) if kind == "23" else pachner_32(cur, idx)
        yield cur


def random_pachner_walk(tri: Triangulation, steps: int, seed: int) -> Triangulation:
    cur = tri
    for cur in iter_pachner_walk(tri, steps, seed):
        pass
    return cur
