# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cycle exact-cover kernel.  Mirrors ``_search.cycle_cover`` step for step."""

from libc.stdlib cimport calloc, free

cdef enum:
    FOUND = 0
    EXHAUSTED = 1
    LIMIT = 2


cdef struct State:
    int n_edges
    int k
    long long step_limit
    long long steps
    int *ptr
    int *to
    int *eid
    int *eu
    int *ev
    char *covered
    char *on_path
    int *path_v    # one row of k per level
    int *path_e
    int *it
    int *chosen_v  # one row of k per level
    int n_chosen


cdef int *_copy(seq, Py_ssize_t n) except NULL:
    cdef int *buf = <int *> calloc(n + 1, sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef int _solve(State *s, int pos, int level) noexcept nogil:
    cdef int k = s.k
    cdef int *pv
    cdef int *pe
    cdef int *it
    cdef int e, u, v, x, y, f, j, i, depth, status
    while pos < s.n_edges and s.covered[pos]:
        pos += 1
    if pos == s.n_edges:
        s.n_chosen = level
        return FOUND
    pv = s.path_v + level * k
    pe = s.path_e + level * k
    it = s.it + level * k
    e = pos
    u = s.eu[e]
    v = s.ev[e]
    s.on_path[u] = 1
    s.on_path[v] = 1
    pv[0] = v
    pe[0] = e
    it[0] = s.ptr[v]
    depth = 0
    while depth >= 0:
        x = pv[depth]
        j = it[depth]
        if j == s.ptr[x + 1]:
            if depth > 0:
                s.on_path[x] = 0
            depth -= 1
            continue
        it[depth] = j + 1
        y = s.to[j]
        f = s.eid[j]
        if s.covered[f] or f == e:
            continue
        if depth == k - 2:
            if y != u:
                continue
            s.steps += 1
            if s.steps > s.step_limit:
                return LIMIT
            for i in range(k - 1):
                s.covered[pe[i]] = 1
                s.on_path[pv[i]] = 0
                s.chosen_v[level * k + i] = pv[i]
            s.covered[f] = 1
            s.on_path[u] = 0
            s.chosen_v[level * k + k - 1] = u
            status = _solve(s, pos + 1, level + 1)
            if status != EXHAUSTED:
                return status
            for i in range(k - 1):
                s.on_path[pv[i]] = 1
                s.covered[pe[i]] = 0
            s.on_path[u] = 1
            s.covered[f] = 0
            continue
        if s.on_path[y]:
            continue
        s.steps += 1
        if s.steps > s.step_limit:
            return LIMIT
        s.on_path[y] = 1
        depth += 1
        pv[depth] = y
        pe[depth] = f
        it[depth] = s.ptr[y]
    s.on_path[u] = 0
    s.on_path[v] = 0
    return EXHAUSTED


def cycle_cover(adj_ptr, adj_to, adj_eid, edge_u, edge_v, int k, long long step_limit):
    """See ``hdecomp._search.cycle_cover``."""
    cdef State s
    cdef int status
    cdef Py_ssize_t i
    cdef Py_ssize_t n_vertices = len(adj_ptr) - 1
    cdef Py_ssize_t levels
    s.n_edges = len(edge_u)
    s.k = k
    s.step_limit = step_limit
    s.steps = 0
    s.n_chosen = 0
    s.ptr = s.to = s.eid = s.eu = s.ev = NULL
    s.path_v = s.path_e = s.it = s.chosen_v = NULL
    s.covered = s.on_path = NULL
    levels = s.n_edges // k + 1
    try:
        s.ptr = _copy(adj_ptr, len(adj_ptr))
        s.to = _copy(adj_to, len(adj_to))
        s.eid = _copy(adj_eid, len(adj_eid))
        s.eu = _copy(edge_u, s.n_edges)
        s.ev = _copy(edge_v, s.n_edges)
        s.covered = <char *> calloc(s.n_edges + 1, 1)
        s.on_path = <char *> calloc(n_vertices + 1, 1)
        s.path_v = <int *> calloc(levels * k, sizeof(int))
        s.path_e = <int *> calloc(levels * k, sizeof(int))
        s.it = <int *> calloc(levels * k, sizeof(int))
        s.chosen_v = <int *> calloc(levels * k, sizeof(int))
        if (s.covered == NULL or s.on_path == NULL or s.path_v == NULL
                or s.path_e == NULL or s.it == NULL or s.chosen_v == NULL):
            raise MemoryError()
        with nogil:
            status = _solve(&s, 0, 0)
        flat = []
        if status == FOUND:
            flat = [s.chosen_v[i] for i in range(s.n_chosen * k)]
        return status, flat, min(s.steps, step_limit)
    finally:
        free(s.ptr); free(s.to); free(s.eid); free(s.eu); free(s.ev)
        free(s.covered); free(s.on_path); free(s.path_v); free(s.path_e)
        free(s.it); free(s.chosen_v)
