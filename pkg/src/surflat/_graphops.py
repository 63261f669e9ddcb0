"""Graph kernels shared by the decoder, loss, and percolation code.

All functions here are nopython-compatible and compiled with numba unless
SURFLAT_NUMBA=0 (see _accel). Graph inputs are CSR adjacency arrays plus
per-edge torus-wrap vectors; union-find routines carry a wrap potential
per site so that closing a cycle reveals its winding number.
"""

import numpy as np

from ._accel import jit_kernel


@jit_kernel
def bfs_multi(indptr, nbr, eid, sources, n_vertices):
    """Unweighted BFS from every source; returns (dist, pred_edge).

    dist[s, v] is the hop count from sources[s] to v (-1 if unreachable);
    pred_edge[s, v] is the edge used to first reach v (-1 at the source).
    Neighbors are stored in ascending order, so ties resolve to the
    lowest-index neighbor and the trees are reproducible.
    """
    ns = len(sources)
    dist = np.full((ns, n_vertices), -1, dtype=np.int64)
    pred = np.full((ns, n_vertices), -1, dtype=np.int64)
    queue = np.empty(n_vertices, dtype=np.int64)
    for s in range(ns):
        src = sources[s]
        head, tail = 0, 0
        dist[s, src] = 0
        queue[tail] = src
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[s, v]
            for i in range(indptr[v], indptr[v + 1]):
                w = nbr[i]
                if dist[s, w] < 0:
                    dist[s, w] = dv + 1
                    pred[s, w] = eid[i]
                    queue[tail] = w
                    tail += 1
    return dist, pred


@jit_kernel
def bfs_potential(indptr, nbr, eid, edge_a, edge_b, wrap_x, wrap_y, start, n_vertices):
    """BFS recording, per reached vertex, the wrap offset along its tree path."""
    dist = np.full(n_vertices, -1, dtype=np.int64)
    pred = np.full(n_vertices, -1, dtype=np.int64)
    potx = np.zeros(n_vertices, dtype=np.int64)
    poty = np.zeros(n_vertices, dtype=np.int64)
    queue = np.empty(n_vertices, dtype=np.int64)
    head, tail = 0, 0
    dist[start] = 0
    queue[tail] = start
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        for i in range(indptr[v], indptr[v + 1]):
            w = nbr[i]
            if dist[w] < 0:
                k = eid[i]
                sign = 1 if edge_a[k] == v else -1
                dist[w] = dist[v] + 1
                pred[w] = k
                potx[w] = potx[v] + sign * wrap_x[k]
                poty[w] = poty[v] + sign * wrap_y[k]
                queue[tail] = w
                tail += 1
    return dist, pred, potx, poty


@jit_kernel
def _uf_find(parent, potx, poty, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    px, py = 0, 0
    node = x
    while parent[node] != node:
        px += potx[node]
        py += poty[node]
        node = parent[node]
    node = x
    while parent[node] != node:
        nxt = parent[node]
        opx, opy = potx[node], poty[node]
        parent[node] = root
        potx[node] = px
        poty[node] = py
        px -= opx
        py -= opy
        node = nxt
    return root


@jit_kernel
def uf_wrap_sweep(edge_a, edge_b, wrap_x, wrap_y, order, n_sites):
    """Add edges in the given order; return the position of the first edge
    that closes a cycle with nonzero winding, or -1 if none does.

    The potential of a site is its wrap offset to the component root, so a
    union within one component exposes the winding of the new cycle.
    """
    parent = np.arange(n_sites, dtype=np.int64)
    potx = np.zeros(n_sites, dtype=np.int64)
    poty = np.zeros(n_sites, dtype=np.int64)
    rank = np.zeros(n_sites, dtype=np.int64)
    for pos in range(len(order)):
        k = order[pos]
        a, b = edge_a[k], edge_b[k]
        wx, wy = wrap_x[k], wrap_y[k]
        ra = _uf_find(parent, potx, poty, a)
        rb = _uf_find(parent, potx, poty, b)
        pax = potx[a] if a != ra else 0
        pay = poty[a] if a != ra else 0
        pbx = potx[b] if b != rb else 0
        pby = poty[b] if b != rb else 0
        if ra == rb:
            if pax - wx - pbx != 0 or pay - wy - pby != 0:
                return pos
        elif rank[ra] >= rank[rb]:
            parent[rb] = ra
            potx[rb] = pax - wx - pbx
            poty[rb] = pay - wy - pby
            if rank[ra] == rank[rb]:
                rank[ra] += 1
        else:
            parent[ra] = rb
            potx[ra] = pbx + wx - pax
            poty[ra] = pby + wy - pay
    return -1


@jit_kernel
def contract_lost(edge_a, edge_b, wrap_x, wrap_y, lost, n_sites):
    """Union the endpoints of every lost edge, tracking wrap potentials.

    Returns (root, potx, poty, killed0, killed1): the representative site
    and wrap offset to it for every site, plus a GF(2) basis (bit 0 = x,
    bit 1 = y) of windings of noncontractible lost cycles. Such cycles
    make potentials multivalued, so downstream homology classes are only
    defined modulo the killed basis.
    """
    parent = np.arange(n_sites, dtype=np.int64)
    potx = np.zeros(n_sites, dtype=np.int64)
    poty = np.zeros(n_sites, dtype=np.int64)
    rank = np.zeros(n_sites, dtype=np.int64)
    killed0, killed1 = 0, 0
    for i in range(len(lost)):
        k = lost[i]
        a, b = edge_a[k], edge_b[k]
        wx, wy = wrap_x[k], wrap_y[k]
        ra = _uf_find(parent, potx, poty, a)
        rb = _uf_find(parent, potx, poty, b)
        pax = potx[a] if a != ra else 0
        pay = poty[a] if a != ra else 0
        pbx = potx[b] if b != rb else 0
        pby = poty[b] if b != rb else 0
        if ra == rb:
            mask = ((pax - wx - pbx) & 1) | (((pay - wy - pby) & 1) << 1)
            if mask != 0:
                if killed0 == 0:
                    killed0 = mask
                elif mask != killed0 and killed1 == 0:
                    killed1 = mask
        elif rank[ra] >= rank[rb]:
            parent[rb] = ra
            potx[rb] = pax - wx - pbx
            poty[rb] = pay - wy - pby
            if rank[ra] == rank[rb]:
                rank[ra] += 1
        else:
            parent[ra] = rb
            potx[ra] = pbx + wx - pax
            poty[ra] = pby + wy - pay
    root = np.empty(n_sites, dtype=np.int64)
    outx = np.empty(n_sites, dtype=np.int64)
    outy = np.empty(n_sites, dtype=np.int64)
    for v in range(n_sites):
        r = _uf_find(parent, potx, poty, v)
        root[v] = r
        outx[v] = potx[v] if v != r else 0
        outy[v] = poty[v] if v != r else 0
    return root, outx, outy, killed0, killed1


