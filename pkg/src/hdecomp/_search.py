"""Pure-Python cycle exact-cover kernel (fallback for ``_csearch``).

Both backends walk the search tree in the same order, charge the same steps
against the budget, and must return identical results for identical inputs.
"""

FOUND, EXHAUSTED, LIMIT = 0, 1, 2


class _OutOfSteps(Exception):
    pass


def cycle_cover(adj_ptr, adj_to, adj_eid, edge_u, edge_v, k, step_limit):
    """Partition all edges into k-cycles by backtracking.

    The graph is given in CSR form: the neighbours of ``x`` are
    ``adj_to[adj_ptr[x]:adj_ptr[x+1]]`` reached along edges ``adj_eid[...]``.
    The pivot is always the lowest-numbered uncovered edge ``(u, v)``; cycles
    through it are produced lazily by a depth-first path search from v back
    to u, in adjacency order.  Every path extension and every cycle placement
    costs one step.

    Returns ``(status, flat, steps)`` where ``flat`` concatenates the vertex
    sequences of the k-cycles found (empty unless status is FOUND).
    """
    n_edges = len(edge_u)
    covered = bytearray(n_edges)
    on_path = bytearray(len(adj_ptr) - 1)
    chosen: list[list[int]] = []
    steps = 0

    def solve(pos):
        nonlocal steps
        while pos < n_edges and covered[pos]:
            pos += 1
        if pos == n_edges:
            return FOUND
        e = pos
        u, v = edge_u[e], edge_v[e]
        on_path[u] = on_path[v] = 1
        path_v, path_e, it = [v], [e], [adj_ptr[v]]
        depth = 0
        while depth >= 0:
            x = path_v[depth]
            j = it[depth]
            if j == adj_ptr[x + 1]:
                if depth:
                    on_path[x] = 0
                    path_v.pop()
                    path_e.pop()
                    it.pop()
                depth -= 1
                continue
            it[depth] = j + 1
            y, f = adj_to[j], adj_eid[j]
            if covered[f] or f == e:
                continue
            if depth == k - 2:
                if y != u:
                    continue
                steps += 1
                if steps > step_limit:
                    raise _OutOfSteps
                eids = path_e + [f]
                for g in eids:
                    covered[g] = 1
                for w in path_v:
                    on_path[w] = 0
                on_path[u] = 0
                chosen.append(path_v + [u])
                status = solve(pos + 1)
                if status != EXHAUSTED:
                    return status
                chosen.pop()
                for w in path_v:
                    on_path[w] = 1
                on_path[u] = 1
                for g in eids:
                    covered[g] = 0
                continue
            if on_path[y]:
                continue
            steps += 1
            if steps > step_limit:
                raise _OutOfSteps
            on_path[y] = 1
            path_v.append(y)
            path_e.append(f)
            it.append(adj_ptr[y])
            depth += 1
        on_path[u] = on_path[v] = 0
        return EXHAUSTED

    try:
        status = solve(0)
    except _OutOfSteps:
        status = LIMIT
    flat = [x for verts in chosen for x in verts] if status == FOUND else []
    return status, flat, min(steps, step_limit)
