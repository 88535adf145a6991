"""Pure-Python graph kernels.

Reference implementations of the hot-loop primitives; the compiled backend
in ``_speed.pyx`` must match these bit for bit (``tests/test_kernels.py``
cross-checks them on random instances).  Adjacency is a list of int sets
indexed by node id; dead nodes simply have empty sets.
"""

from __future__ import annotations

import numpy as np


def reach_count(adj, start):
    """Number of nodes reachable from `start` (including it)."""
    seen = bytearray(len(adj))
    seen[start] = 1
    stack = [start]
    count = 0
    while stack:
        v = stack.pop()
        count += 1
        for u in adj[v]:
            if not seen[u]:
                seen[u] = 1
                stack.append(u)
    return count


def _bfs_dists(adj, source, out):
    out[:] = -1
    out[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if out[u] < 0:
                    out[u] = d
                    nxt.append(u)
        frontier = nxt


def all_dists(adj, sources):
    """BFS distance matrix, one row per source; -1 marks unreachable."""
    n = len(adj)
    mat = np.empty((len(sources), n), dtype=np.int32)
    for i, s in enumerate(sources):
        _bfs_dists(adj, int(s), mat[i])
    return mat


def max_stretch(adj, live, init_dists):
    """Max over ordered live pairs of current distance / initial distance.

    Returns -1.0 if some live pair is unreachable in the current graph.
    """
    n = len(adj)
    dist = np.empty(n, dtype=np.int32)
    best = 0.0
    for s in live:
        s = int(s)
        _bfs_dists(adj, s, dist)
        row = init_dists[s]
        for t in live:
            t = int(t)
            if t == s:
                continue
            d = int(dist[t])
            if d < 0:
                return -1.0
            r = d / int(row[t])
            if r > best:
                best = r
    return best


def forest_stats(heal_adj, weight, alive):
    """Per-node potential data over the healing-edge forest E'.

    Returns (is_forest, comp, comp_weight, rem, min_side, parent) where for
    each live node v in a tree T with weight total W:
      rem[v]      = W - max over neighbors q of the weight of q's side of v
      min_side[v] = min over neighbors q of the weight of v's side of q
                    (-1 when v has no E' neighbors)
    Components containing a cycle force is_forest False and get zeroed rem.
    """
    n = len(heal_adj)
    comp = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int32)
    comp_weight = np.zeros(n, dtype=np.int64)
    rem = np.zeros(n, dtype=np.int64)
    min_side = np.full(n, -1, dtype=np.int64)
    subtree = np.zeros(n, dtype=np.int64)
    is_forest = True
    cid = 0
    for root in range(n):
        if not alive[root] or comp[root] >= 0:
            continue
        members = []
        stack = [root]
        comp[root] = cid
        half_edges = 0
        while stack:
            v = stack.pop()
            members.append(v)
            for u in heal_adj[v]:
                half_edges += 1
                if comp[u] < 0:
                    comp[u] = cid
                    parent[u] = v
                    stack.append(u)
        cid += 1
        if half_edges != 2 * (len(members) - 1):
            is_forest = False
            continue
        for v in members:
            subtree[v] = weight[v]
        for v in reversed(members):  # children precede parents
            p = parent[v]
            if p >= 0:
                subtree[p] += subtree[v]
        total = subtree[root]
        for v in members:
            comp_weight[v] = total
            maxpiece = 0
            minside = -1
            pv = parent[v]
            for u in heal_adj[v]:
                piece = total - subtree[v] if u == pv else subtree[u]
                if piece > maxpiece:
                    maxpiece = piece
                side = total - piece
                if minside < 0 or side < minside:
                    minside = side
            rem[v] = total - maxpiece
            min_side[v] = minside
    return is_forest, comp, comp_weight, rem, min_side, parent


def flood_adopt(heal_adj, adj, seeds, component_id, id_changes, msg_sent, msg_recv, deg):
    """Propagate the minimum stored component id through one E' component.

    BFS from seeds[0]; every member whose id exceeds the component minimum
    adopts it, counts one id change, and exchanges one message with each of
    its current G-neighbors (counted at both endpoints).

    Returns (min_id, sorted changed nodes, all_seeds_in_component, messages).
    """
    n = len(heal_adj)
    seen = bytearray(n)
    start = int(seeds[0])
    seen[start] = 1
    stack = [start]
    members = []
    while stack:
        v = stack.pop()
        members.append(v)
        for u in heal_adj[v]:
            if not seen[u]:
                seen[u] = 1
                stack.append(u)
    for s in seeds:
        if not seen[int(s)]:
            return 0.0, [], False, 0
    min_id = min(float(component_id[v]) for v in members)
    changed = []
    msgs = 0
    for v in members:
        if float(component_id[v]) > min_id:
            component_id[v] = min_id
            id_changes[v] += 1
            d = int(deg[v])
            msg_sent[v] += d
            msgs += 2 * d
            for w in adj[v]:
                msg_recv[w] += 1
            changed.append(v)
    changed.sort()
    return min_id, changed, True, msgs
