"""Exact minimum-weight perfect matching on dense graphs.

Array-based O(n^3) blossom algorithm (dual-variable formulation) for
maximum-weight matching, specialized here to minimum-weight perfect
matching on a complete graph by the affine weight flip w -> BIG - w with
BIG large enough to force maximum cardinality. Integer weights only, so
all dual arithmetic is exact.

Internally 1-indexed: ids 1..n are vertices, ids above n are blossom
slots. GW[x][y] == 0 marks "no edge"; (GU, GV) keep the real endpoints of
the best edge between two surface nodes. Recursive blossom operations are
flattened onto explicit stacks for nopython compatibility.
"""

import numpy as np

from ._accel import jit_kernel

_INF = np.int64(1) << np.int64(62)


@jit_kernel
def _edge_delta(lab, GU, GV, GW, x, y):
    return lab[GU[x, y]] + lab[GV[x, y]] - 2 * GW[GU[x, y], GV[x, y]]


@jit_kernel
def _q_push(x, n, flower, flen, q, qtail, stack):
    sp = 0
    stack[sp] = x
    sp += 1
    while sp > 0:
        sp -= 1
        y = stack[sp]
        if y <= n:
            q[qtail] = y
            qtail += 1
        else:
            for i in range(flen[y]):
                stack[sp] = flower[y, i]
                sp += 1
    return qtail


@jit_kernel
def _set_st(x, b, n, st, flower, flen, stack):
    sp = 0
    stack[sp] = x
    sp += 1
    while sp > 0:
        sp -= 1
        y = stack[sp]
        st[y] = b
        if y > n:
            for i in range(flen[y]):
                stack[sp] = flower[y, i]
                sp += 1


@jit_kernel
def _update_slack(lab, GU, GV, GW, slack, u, x):
    if slack[x] == 0 or _edge_delta(lab, GU, GV, GW, u, x) < _edge_delta(
        lab, GU, GV, GW, slack[x], x
    ):
        slack[x] = u


@jit_kernel
def _set_slack(lab, GU, GV, GW, slack, st, S, n, x):
    slack[x] = 0
    for u in range(1, n + 1):
        if GW[u, x] > 0 and st[u] != x and S[st[u]] == 0:
            _update_slack(lab, GU, GV, GW, slack, u, x)


@jit_kernel
def _get_pr(flower, flen, b, xr):
    pr = 0
    for i in range(flen[b]):
        if flower[b, i] == xr:
            pr = i
            break
    if pr % 2 == 1:
        lo, hi = 1, flen[b] - 1
        while lo < hi:
            tmp = flower[b, lo]
            flower[b, lo] = flower[b, hi]
            flower[b, hi] = tmp
            lo += 1
            hi -= 1
        return flen[b] - pr
    return pr


@jit_kernel
def _set_match(u0, v0, n, GU, GV, match, flower, flen, flower_from, pair_stack, scratch):
    sp = 0
    pair_stack[sp, 0] = u0
    pair_stack[sp, 1] = v0
    sp += 1
    while sp > 0:
        sp -= 1
        u = pair_stack[sp, 0]
        v = pair_stack[sp, 1]
        match[u] = GV[u, v]
        if u > n:
            eu = GU[u, v]
            xr = flower_from[u, eu]
            pr = _get_pr(flower, flen, u, xr)
            for i in range(pr):
                pair_stack[sp, 0] = flower[u, i]
                pair_stack[sp, 1] = flower[u, i ^ 1]
                sp += 1
            pair_stack[sp, 0] = xr
            pair_stack[sp, 1] = v
            sp += 1
            m = flen[u]
            for i in range(m):
                scratch[i] = flower[u, (i + pr) % m]
            for i in range(m):
                flower[u, i] = scratch[i]


@jit_kernel
def _augment(u0, v0, n, GU, GV, match, st, pa, flower, flen, flower_from,
             pair_stack, scratch):
    u, v = u0, v0
    while True:
        xnv = st[match[u]]
        _set_match(u, v, n, GU, GV, match, flower, flen, flower_from, pair_stack, scratch)
        if xnv == 0:
            return
        _set_match(xnv, st[pa[xnv]], n, GU, GV, match, flower, flen, flower_from,
                   pair_stack, scratch)
        u = st[pa[xnv]]
        v = xnv


@jit_kernel
def _get_lca(u0, v0, st, match, pa, vis, tick):
    tick[0] += 1
    t = tick[0]
    u, v = u0, v0
    while u != 0 or v != 0:
        if u != 0:
            if vis[u] == t:
                return u
            vis[u] = t
            u = st[match[u]]
            if u != 0:
                u = st[pa[u]]
        tmp = u
        u = v
        v = tmp
    return 0


@jit_kernel
def _add_blossom(u, lca, v, n, nx_holder, lab, GU, GV, GW, match, slack, st, pa, S,
                 flower, flen, flower_from, q, qtail, stack):
    b = n + 1
    while b <= nx_holder[0] and st[b] != 0:
        b += 1
    if b > nx_holder[0]:
        nx_holder[0] = b
    lab[b] = 0
    S[b] = 0
    match[b] = match[lca]
    flen[b] = 0
    flower[b, 0] = lca
    flen[b] = 1
    x = u
    while x != lca:
        flower[b, flen[b]] = x
        flen[b] += 1
        y = st[match[x]]
        flower[b, flen[b]] = y
        flen[b] += 1
        qtail = _q_push(y, n, flower, flen, q, qtail, stack)
        x = st[pa[y]]
    lo, hi = 1, flen[b] - 1
    while lo < hi:
        tmp = flower[b, lo]
        flower[b, lo] = flower[b, hi]
        flower[b, hi] = tmp
        lo += 1
        hi -= 1
    x = v
    while x != lca:
        flower[b, flen[b]] = x
        flen[b] += 1
        y = st[match[x]]
        flower[b, flen[b]] = y
        flen[b] += 1
        qtail = _q_push(y, n, flower, flen, q, qtail, stack)
        x = st[pa[y]]
    _set_st(b, b, n, st, flower, flen, stack)
    nx = nx_holder[0]
    for x in range(1, nx + 1):
        GW[b, x] = 0
        GW[x, b] = 0
    for x in range(1, n + 1):
        flower_from[b, x] = 0
    for i in range(flen[b]):
        xs = flower[b, i]
        for x in range(1, nx + 1):
            if GW[xs, x] > 0 and (
                GW[b, x] == 0
                or _edge_delta(lab, GU, GV, GW, xs, x)
                < _edge_delta(lab, GU, GV, GW, b, x)
            ):
                GU[b, x] = GU[xs, x]
                GV[b, x] = GV[xs, x]
                GW[b, x] = GW[xs, x]
                GU[x, b] = GU[x, xs]
                GV[x, b] = GV[x, xs]
                GW[x, b] = GW[x, xs]
        for x in range(1, n + 1):
            if flower_from[xs, x] != 0:
                flower_from[b, x] = xs
    _set_slack(lab, GU, GV, GW, slack, st, S, n, b)
    return qtail


@jit_kernel
def _expand_blossom(b, n, lab, GU, GV, GW, match, slack, st, pa, S,
                    flower, flen, flower_from, q, qtail, stack):
    for i in range(flen[b]):
        _set_st(flower[b, i], flower[b, i], n, st, flower, flen, stack)
    xr = flower_from[b, GU[b, pa[b]]]
    pr = _get_pr(flower, flen, b, xr)
    i = 0
    while i < pr:
        xs = flower[b, i]
        xns = flower[b, i + 1]
        pa[xs] = GU[xns, xs]
        S[xs] = 1
        S[xns] = 0
        slack[xs] = 0
        _set_slack(lab, GU, GV, GW, slack, st, S, n, xns)
        qtail = _q_push(xns, n, flower, flen, q, qtail, stack)
        i += 2
    S[xr] = 1
    pa[xr] = pa[b]
    for i in range(pr + 1, flen[b]):
        xs = flower[b, i]
        S[xs] = -1
        _set_slack(lab, GU, GV, GW, slack, st, S, n, xs)
    st[b] = 0
    flen[b] = 0
    return qtail


@jit_kernel
def _mwpm_phase(n, nx_holder, lab, GU, GV, GW, match, slack, st, pa, S, vis, tick,
                flower, flen, flower_from, q, stack, pair_stack, scratch):
    """One augmentation phase; returns True if the matching grew."""
    nx = nx_holder[0]
    for x in range(nx + 1):
        S[x] = -1
        slack[x] = 0
    qhead = 0
    qtail = 0
    for x in range(1, nx + 1):
        if st[x] == x and match[x] == 0:
            pa[x] = 0
            S[x] = 0
            qtail = _q_push(x, n, flower, flen, q, qtail, stack)
    if qtail == 0:
        return False
    while True:
        while qhead < qtail:
            u = q[qhead]
            qhead += 1
            if S[st[u]] == 1:
                continue
            for v in range(1, n + 1):
                if GW[u, v] > 0 and st[u] != st[v]:
                    if _edge_delta(lab, GU, GV, GW, u, v) == 0:
                        # tight edge found: grow tree / blossom / augment
                        tu, tv = st[u], st[v]
                        if S[tv] == -1:
                            pa[tv] = u
                            S[tv] = 1
                            nu = st[match[tv]]
                            slack[tv] = 0
                            slack[nu] = 0
                            S[nu] = 0
                            qtail = _q_push(nu, n, flower, flen, q, qtail, stack)
                        elif S[tv] == 0:
                            l = _get_lca(tu, tv, st, match, pa, vis, tick)
                            if l == 0:
                                _augment(tu, tv, n, GU, GV, match, st, pa, flower,
                                         flen, flower_from, pair_stack, scratch)
                                _augment(tv, tu, n, GU, GV, match, st, pa, flower,
                                         flen, flower_from, pair_stack, scratch)
                                return True
                            qtail = _add_blossom(tu, l, tv, n, nx_holder, lab, GU, GV,
                                                 GW, match, slack, st, pa, S, flower,
                                                 flen, flower_from, q, qtail, stack)
                    else:
                        _update_slack(lab, GU, GV, GW, slack, u, st[v])
        nx = nx_holder[0]
        d = _INF
        for b in range(n + 1, nx + 1):
            if st[b] == b and S[b] == 1:
                dd = lab[b] // 2
                if dd < d:
                    d = dd
        for x in range(1, nx + 1):
            if st[x] == x and slack[x] != 0:
                delta = _edge_delta(lab, GU, GV, GW, slack[x], x)
                if S[x] == -1:
                    if delta < d:
                        d = delta
                elif S[x] == 0:
                    if delta // 2 < d:
                        d = delta // 2
        for u in range(1, n + 1):
            if S[st[u]] == 0:
                if lab[u] <= d:
                    return False  # dual exhausted: no augmenting path exists
                lab[u] -= d
            elif S[st[u]] == 1:
                lab[u] += d
        for b in range(n + 1, nx + 1):
            if st[b] == b:
                if S[b] == 0:
                    lab[b] += 2 * d
                elif S[b] == 1:
                    lab[b] -= 2 * d
        qhead = 0
        qtail = 0
        for x in range(1, nx + 1):
            if (
                st[x] == x
                and slack[x] != 0
                and st[slack[x]] != x
                and _edge_delta(lab, GU, GV, GW, slack[x], x) == 0
            ):
                eu = GU[slack[x], x]
                ev = GV[slack[x], x]
                tu, tv = st[eu], st[ev]
                if S[tv] == -1:
                    pa[tv] = eu
                    S[tv] = 1
                    nu = st[match[tv]]
                    slack[tv] = 0
                    slack[nu] = 0
                    S[nu] = 0
                    qtail = _q_push(nu, n, flower, flen, q, qtail, stack)
                elif S[tv] == 0:
                    l = _get_lca(tu, tv, st, match, pa, vis, tick)
                    if l == 0:
                        _augment(tu, tv, n, GU, GV, match, st, pa, flower, flen,
                                 flower_from, pair_stack, scratch)
                        _augment(tv, tu, n, GU, GV, match, st, pa, flower, flen,
                                 flower_from, pair_stack, scratch)
                        return True
                    qtail = _add_blossom(tu, l, tv, n, nx_holder, lab, GU, GV, GW,
                                         match, slack, st, pa, S, flower, flen,
                                         flower_from, q, qtail, stack)
        nx = nx_holder[0]
        for b in range(n + 1, nx + 1):
            if st[b] == b and S[b] == 1 and lab[b] == 0:
                qtail = _expand_blossom(b, n, lab, GU, GV, GW, match, slack, st, pa,
                                        S, flower, flen, flower_from, q, qtail, stack)


@jit_kernel
def _max_weight_matching_dense(W, n):
    """Maximum-weight matching for the 1-indexed weight matrix W (int64).

    W[u, v] == 0 means no edge. Returns the 1-indexed match array
    (match[u] == 0 for unmatched vertices).
    """
    cap = 2 * n + 2
    GU = np.zeros((cap, cap), dtype=np.int64)
    GV = np.zeros((cap, cap), dtype=np.int64)
    GW = np.zeros((cap, cap), dtype=np.int64)
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            GU[u, v] = u
            GV[u, v] = v
            GW[u, v] = W[u, v]
    lab = np.zeros(cap, dtype=np.int64)
    match = np.zeros(cap, dtype=np.int64)
    slack = np.zeros(cap, dtype=np.int64)
    st = np.zeros(cap, dtype=np.int64)
    pa = np.zeros(cap, dtype=np.int64)
    S = np.full(cap, -1, dtype=np.int64)
    vis = np.zeros(cap, dtype=np.int64)
    tick = np.zeros(1, dtype=np.int64)
    flower = np.zeros((cap, n + 2), dtype=np.int64)
    flen = np.zeros(cap, dtype=np.int64)
    flower_from = np.zeros((cap, n + 1), dtype=np.int64)
    q = np.zeros(32 * n + 64, dtype=np.int64)
    stack = np.zeros(8 * n + 64, dtype=np.int64)
    pair_stack = np.zeros((8 * n + 64, 2), dtype=np.int64)
    scratch = np.zeros(n + 2, dtype=np.int64)
    nx_holder = np.zeros(1, dtype=np.int64)
    nx_holder[0] = n

    for u in range(n + 1):
        st[u] = u
    w_max = np.int64(0)
    for u in range(1, n + 1):
        flower_from[u, u] = u
        for v in range(1, n + 1):
            if W[u, v] > w_max:
                w_max = W[u, v]
    for u in range(1, n + 1):
        lab[u] = w_max

    while _mwpm_phase(n, nx_holder, lab, GU, GV, GW, match, slack, st, pa, S, vis,
                      tick, flower, flen, flower_from, q, stack, pair_stack, scratch):
        pass
    return match[: n + 1]


def min_weight_perfect_matching(dist) -> list[tuple[int, int]]:
    """Exact minimum-weight perfect matching of a symmetric integer
    distance matrix over the complete graph; returns 0-indexed pairs.

    Deterministic for fixed input. Raises on an odd number of nodes.
    """
    D = np.asarray(dist, dtype=np.int64)
    n = D.shape[0]
    if n == 0:
        return []
    if n % 2 != 0:
        raise ValueError("perfect matching needs an even number of nodes")
    if D.shape != (n, n):
        raise ValueError("distance matrix must be square")
    big = (n // 2) * int(D.max()) + 1  # forces maximum cardinality
    W = np.zeros((n + 1, n + 1), dtype=np.int64)
    W[1:, 1:] = big - D
    for i in range(1, n + 1):
        W[i, i] = 0
    match = _max_weight_matching_dense(W, n)
    pairs = []
    for u in range(1, n + 1):
        m = int(match[u])
        if m == 0:
            raise AssertionError("matching is not perfect")
        if u < m:
            pairs.append((u - 1, m - 1))
    return pairs


def matching_weight(dist, pairs) -> int:
    D = np.asarray(dist)
    return int(sum(D[i, j] for i, j in pairs))
