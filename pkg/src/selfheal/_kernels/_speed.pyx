# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled graph kernels.

Same contracts as _pure.py; adjacency (list of int sets) is flattened to CSR
once per call and all traversal runs on C arrays.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef _csr(object adj):
    cdef Py_ssize_t n = len(adj)
    cdef Py_ssize_t total = 0, pos = 0
    cdef Py_ssize_t v
    for v in range(n):
        total += len(adj[v])
    indptr_arr = np.empty(n + 1, dtype=np.int32)
    nbrs_arr = np.empty(max(total, 1), dtype=np.int32)
    cdef cnp.int32_t[::1] indptr = indptr_arr
    cdef cnp.int32_t[::1] nbrs = nbrs_arr
    cdef object u
    for v in range(n):
        indptr[v] = pos
        for u in adj[v]:
            nbrs[pos] = u
            pos += 1
    indptr[n] = pos
    return indptr_arr, nbrs_arr


def reach_count(adj, start):
    """Number of nodes reachable from `start` (including it)."""
    cdef Py_ssize_t n = len(adj)
    indptr_arr, nbrs_arr = _csr(adj)
    cdef cnp.int32_t[::1] indptr = indptr_arr
    cdef cnp.int32_t[::1] nbrs = nbrs_arr
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = seen_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef int head = 0, tail = 0, count = 0, v, u
    cdef Py_ssize_t i
    queue[0] = start
    tail = 1
    seen[<Py_ssize_t> start] = 1
    while head < tail:
        v = queue[head]
        head += 1
        count += 1
        for i in range(indptr[v], indptr[v + 1]):
            u = nbrs[i]
            if not seen[u]:
                seen[u] = 1
                queue[tail] = u
                tail += 1
    return count


cdef void _bfs_csr(cnp.int32_t[::1] indptr, cnp.int32_t[::1] nbrs, int source,
                   cnp.int32_t[::1] dist, cnp.int32_t[::1] queue) noexcept:
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t v
    cdef int head = 0, tail = 0, w, u
    cdef Py_ssize_t i
    for v in range(n):
        dist[v] = -1
    dist[source] = 0
    queue[0] = source
    tail = 1
    while head < tail:
        w = queue[head]
        head += 1
        for i in range(indptr[w], indptr[w + 1]):
            u = nbrs[i]
            if dist[u] < 0:
                dist[u] = dist[w] + 1
                queue[tail] = u
                tail += 1


def all_dists(adj, sources):
    """BFS distance matrix, one row per source; -1 marks unreachable."""
    cdef Py_ssize_t n = len(adj)
    indptr_arr, nbrs_arr = _csr(adj)
    cdef cnp.int32_t[::1] indptr = indptr_arr
    cdef cnp.int32_t[::1] nbrs = nbrs_arr
    src_arr = np.ascontiguousarray(sources, dtype=np.int32)
    cdef cnp.int32_t[::1] src = src_arr
    cdef Py_ssize_t k = src.shape[0]
    mat = np.empty((k, n), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] out = mat
    queue_arr = np.empty(max(n, 1), dtype=np.int32)
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t idx
    for idx in range(k):
        _bfs_csr(indptr, nbrs, src[idx], out[idx], queue)
    return mat


def max_stretch(adj, live, init_dists):
    """Max over ordered live pairs of current distance / initial distance.

    Returns -1.0 if some live pair is unreachable in the current graph.
    """
    cdef Py_ssize_t n = len(adj)
    indptr_arr, nbrs_arr = _csr(adj)
    cdef cnp.int32_t[::1] indptr = indptr_arr
    cdef cnp.int32_t[::1] nbrs = nbrs_arr
    live_arr = np.ascontiguousarray(live, dtype=np.int32)
    cdef cnp.int32_t[::1] live_mv = live_arr
    cdef cnp.int32_t[:, :] init = init_dists
    dist_arr = np.empty(max(n, 1), dtype=np.int32)
    queue_arr = np.empty(max(n, 1), dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t k = live_mv.shape[0]
    cdef Py_ssize_t a, b
    cdef int s, t, d
    cdef double best = 0.0, r
    for a in range(k):
        s = live_mv[a]
        _bfs_csr(indptr, nbrs, s, dist, queue)
        for b in range(k):
            t = live_mv[b]
            if t == s:
                continue
            d = dist[t]
            if d < 0:
                return -1.0
            r = (<double> d) / (<double> init[s, t])
            if r > best:
                best = r
    return best


def forest_stats(heal_adj, weight, alive):
    """Per-node potential data over the healing forest; see _pure.forest_stats."""
    cdef Py_ssize_t n = len(heal_adj)
    indptr_arr, nbrs_arr = _csr(heal_adj)
    cdef cnp.int32_t[::1] indptr = indptr_arr
    cdef cnp.int32_t[::1] nbrs = nbrs_arr
    cdef cnp.int64_t[::1] weight_mv = weight
    cdef cnp.uint8_t[::1] alive_mv = alive.view(np.uint8)
    comp_arr = np.full(n, -1, dtype=np.int32)
    parent_arr = np.full(n, -1, dtype=np.int32)
    comp_weight_arr = np.zeros(n, dtype=np.int64)
    rem_arr = np.zeros(n, dtype=np.int64)
    min_side_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.int32_t[::1] comp = comp_arr
    cdef cnp.int32_t[::1] parent = parent_arr
    cdef cnp.int64_t[::1] comp_weight = comp_weight_arr
    cdef cnp.int64_t[::1] rem = rem_arr
    cdef cnp.int64_t[::1] min_side = min_side_arr
    subtree_arr = np.zeros(n, dtype=np.int64)
    members_arr = np.empty(max(n, 1), dtype=np.int32)
    stack_arr = np.empty(max(n, 1), dtype=np.int32)
    cdef cnp.int64_t[::1] subtree = subtree_arr
    cdef cnp.int32_t[::1] members = members_arr
    cdef cnp.int32_t[::1] stack = stack_arr
    cdef bint is_forest = True
    cdef int cid = 0, v, u, pv
    cdef Py_ssize_t root, i, j, sp, mcount, half
    cdef cnp.int64_t total, piece, side, maxpiece, minside
    for root in range(n):
        if not alive_mv[root] or comp[root] >= 0:
            continue
        stack[0] = <int> root
        sp = 1
        comp[root] = cid
        mcount = 0
        half = 0
        while sp:
            sp -= 1
            v = stack[sp]
            members[mcount] = v
            mcount += 1
            for i in range(indptr[v], indptr[v + 1]):
                u = nbrs[i]
                half += 1
                if comp[u] < 0:
                    comp[u] = cid
                    parent[u] = v
                    stack[sp] = u
                    sp += 1
        cid += 1
        if half != 2 * (mcount - 1):
            is_forest = False
            continue
        for j in range(mcount):
            v = members[j]
            subtree[v] = weight_mv[v]
        for j in range(mcount - 1, -1, -1):  # children precede parents
            v = members[j]
            pv = parent[v]
            if pv >= 0:
                subtree[pv] += subtree[v]
        total = subtree[<Py_ssize_t> members[0]]
        for j in range(mcount):
            v = members[j]
            maxpiece = 0
            minside = -1
            pv = parent[v]
            for i in range(indptr[v], indptr[v + 1]):
                u = nbrs[i]
                if u == pv:
                    piece = total - subtree[v]
                else:
                    piece = subtree[u]
                if piece > maxpiece:
                    maxpiece = piece
                side = total - piece
                if minside < 0 or side < minside:
                    minside = side
            rem[v] = total - maxpiece
            min_side[v] = minside
            comp_weight[v] = total
    return bool(is_forest), comp_arr, comp_weight_arr, rem_arr, min_side_arr, parent_arr


def flood_adopt(heal_adj, adj, seeds, component_id, id_changes, msg_sent, msg_recv, deg):
    """Propagate the minimum stored id through one E' component; see _pure."""
    cdef Py_ssize_t n = len(heal_adj)
    indptr_arr, nbrs_arr = _csr(heal_adj)
    cdef cnp.int32_t[::1] indptr = indptr_arr
    cdef cnp.int32_t[::1] nbrs = nbrs_arr
    cdef cnp.float64_t[::1] cid = component_id
    cdef cnp.int32_t[::1] idc = id_changes
    cdef cnp.int64_t[::1] sent = msg_sent
    cdef cnp.int64_t[::1] recv = msg_recv
    cdef cnp.int32_t[::1] deg_mv = deg
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = seen_arr
    stack_arr = np.empty(max(n, 1), dtype=np.int32)
    members_arr = np.empty(max(n, 1), dtype=np.int32)
    cdef cnp.int32_t[::1] stack = stack_arr
    cdef cnp.int32_t[::1] members = members_arr
    cdef int start = seeds[0]
    cdef Py_ssize_t sp = 1, mcount = 0, i, j
    cdef int v, u
    seen[start] = 1
    stack[0] = start
    while sp:
        sp -= 1
        v = stack[sp]
        members[mcount] = v
        mcount += 1
        for i in range(indptr[v], indptr[v + 1]):
            u = nbrs[i]
            if not seen[u]:
                seen[u] = 1
                stack[sp] = u
                sp += 1
    cdef object s
    for s in seeds:
        if not seen[<Py_ssize_t> s]:
            return 0.0, [], False, 0
    cdef double min_id = cid[<Py_ssize_t> members[0]]
    for j in range(mcount):
        if cid[<Py_ssize_t> members[j]] < min_id:
            min_id = cid[<Py_ssize_t> members[j]]
    changed = []
    cdef long msgs = 0
    cdef int d
    cdef object w
    for j in range(mcount):
        v = members[j]
        if cid[v] > min_id:
            cid[v] = min_id
            idc[v] += 1
            d = deg_mv[v]
            sent[v] += d
            msgs += 2 * d
            for w in adj[v]:
                recv[<Py_ssize_t> w] += 1
            changed.append(v)
    changed.sort()
    return min_id, changed, True, msgs
