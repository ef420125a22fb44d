# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled backtracking kernel for simple-subset enumeration.

Mirrors enumerate_masks_pure in _enum.py: depth-first search over face
in/out decisions with constraint propagation on per-edge germ counts.
Masks are built in a 64-bit word, so callers must keep num_faces <= 62.
"""

from libc.stdint cimport int8_t, uint64_t
from libc.stdlib cimport free, malloc


cdef struct Ctx:
    int num_faces
    int num_edges
    int *germ          # 3 faces per edge, flattened
    int *face_edge     # incident edges per face, flattened with offsets
    int *face_off      # num_faces + 1 offsets into face_edge
    int8_t *status     # -1 undecided, 0 out, 1 in
    int *in_cnt
    int *und_cnt
    int *trail
    int trail_len
    int *queue


cdef void _set_face(Ctx *c, int f, int val, int *qlen) noexcept:
    cdef int k, e
    c.status[f] = <int8_t> val
    c.trail[c.trail_len] = f
    c.trail_len += 1
    for k in range(c.face_off[f], c.face_off[f + 1]):
        e = c.face_edge[k]
        c.und_cnt[e] -= 1
        if val:
            c.in_cnt[e] += 1
        c.queue[qlen[0]] = e
        qlen[0] += 1


cdef bint _decide(Ctx *c, int f, int val) noexcept:
    cdef int qlen = 0
    cdef int qi = 0
    cdef int e, ic, uc, k, g, forced, distinct
    _set_face(c, f, val, &qlen)
    while qi < qlen:
        e = c.queue[qi]
        qi += 1
        ic = c.in_cnt[e]
        uc = c.und_cnt[e]
        if uc == 0:
            if ic == 1:
                return False
            continue
        if ic == 1:
            # force the last undecided face in, but only when every
            # undecided germ on this edge belongs to that one face
            forced = -1
            distinct = 1
            for k in range(3):
                g = c.germ[3 * e + k]
                if c.status[g] == -1:
                    if forced == -1:
                        forced = g
                    elif forced != g:
                        distinct = 0
                        break
            if distinct and forced != -1:
                _set_face(c, forced, 1, &qlen)
        elif ic == 0 and uc == 1:
            for k in range(3):
                g = c.germ[3 * e + k]
                if c.status[g] == -1:
                    _set_face(c, g, 0, &qlen)
                    break
    return True


cdef void _undo(Ctx *c, int mark) noexcept:
    cdef int g, k, e
    cdef int val
    while c.trail_len > mark:
        c.trail_len -= 1
        g = c.trail[c.trail_len]
        val = c.status[g]
        for k in range(c.face_off[g], c.face_off[g + 1]):
            e = c.face_edge[k]
            c.und_cnt[e] += 1
            if val:
                c.in_cnt[e] -= 1
        c.status[g] = -1


cdef void _dfs(Ctx *c, int pos, list out):
    cdef int mark, f
    cdef int val
    cdef uint64_t mask
    while pos < c.num_faces and c.status[pos] != -1:
        pos += 1
    if pos == c.num_faces:
        mask = 0
        for f in range(c.num_faces):
            if c.status[f]:
                mask |= (<uint64_t> 1) << f
        out.append(mask)
        return
    for val in range(2):
        mark = c.trail_len
        if _decide(c, pos, val):
            _dfs(c, pos + 1, out)
        _undo(c, mark)


def enumerate_masks(int num_faces, list edge_germs):
    """Sorted bitmasks of face subsets with no edge carrying exactly 1 germ."""
    if num_faces < 0 or num_faces > 62:
        raise ValueError(f"num_faces {num_faces} outside the 64-bit kernel range")
    cdef int num_edges = len(edge_germs)
    cdef int slots = 3 * num_edges
    cdef Ctx c
    c.num_faces = num_faces
    c.num_edges = num_edges
    c.germ = <int *> malloc((slots + 1) * sizeof(int))
    c.face_edge = <int *> malloc((slots + 1) * sizeof(int))
    c.face_off = <int *> malloc((num_faces + 2) * sizeof(int))
    c.status = <int8_t *> malloc((num_faces + 1) * sizeof(int8_t))
    c.in_cnt = <int *> malloc((num_edges + 1) * sizeof(int))
    c.und_cnt = <int *> malloc((num_edges + 1) * sizeof(int))
    c.trail = <int *> malloc((num_faces + 1) * sizeof(int))
    c.queue = <int *> malloc((slots + 1) * sizeof(int))
    if (c.germ == NULL or c.face_edge == NULL or c.face_off == NULL
            or c.status == NULL or c.in_cnt == NULL or c.und_cnt == NULL
            or c.trail == NULL or c.queue == NULL):
        _release(&c)
        raise MemoryError()

    cdef int e, k, f, pos
    try:
        for e in range(num_edges):
            germs = edge_germs[e]
            if len(germs) != 3:
                raise ValueError(f"edge {e} has {len(germs)} germs, expected 3")
            for k in range(3):
                f = germs[k]
                if f < 0 or f >= num_faces:
                    raise ValueError(f"edge {e} references face {f} out of range")
                c.germ[3 * e + k] = f

        # counting sort of germ slots into per-face incidence lists
        for f in range(num_faces + 1):
            c.face_off[f] = 0
        for k in range(slots):
            c.face_off[c.germ[k] + 1] += 1
        for f in range(num_faces):
            c.face_off[f + 1] += c.face_off[f]
        for e in range(num_edges):
            for k in range(3):
                f = c.germ[3 * e + k]
                pos = c.face_off[f]
                c.face_edge[pos] = e
                c.face_off[f] += 1
        for f in range(num_faces, 0, -1):
            c.face_off[f] = c.face_off[f - 1]
        c.face_off[0] = 0

        for f in range(num_faces):
            c.status[f] = -1
        for e in range(num_edges):
            c.in_cnt[e] = 0
            c.und_cnt[e] = 3
        c.trail_len = 0

        out: list = []
        _dfs(&c, 0, out)
        out.sort()
        return out
    finally:
        _release(&c)


cdef void _release(Ctx *c) noexcept:
    free(c.germ)
    free(c.face_edge)
    free(c.face_off)
    free(c.status)
    free(c.in_cnt)
    free(c.und_cnt)
    free(c.trail)
    free(c.queue)
