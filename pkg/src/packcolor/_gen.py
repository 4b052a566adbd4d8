"""Compiled search for graphs with prescribed degrees 3 and 4.

Pairs (i, j), i < j, are decided in row-major order.  Vertices carry a
target degree (all 4s first, then all 3s); rows of consecutive vertices
with equal target are kept in non-increasing lexicographic order, which
removes most relabelings.  Two extra prunes are optional: no edge between
3-vertices, and no triangle through a 3-vertex.  A triangle mode may also
forbid patterns of triangles; every pattern used here survives adding
edges, so cutting a partial graph is safe.

Triangle modes: 1 = triangles share no edge and each meets at most one
other; 2 = no two triangles share exactly one vertex and each has at most
one edge lying on another triangle.
"""
import numba as nb
import numpy as np


@nb.njit(cache=True)
def _row_ok(adj, n, a, b):
    # row a >= row b lexicographically, ignoring columns a and b
    for c in range(n):
        if c == a or c == b:
            continue
        if adj[a, c] != adj[b, c]:
            return adj[a, c] > adj[b, c]
    return True


@nb.njit(cache=True)
def _prefix_less(adj, a, b, upto):
    """Row a < row b on columns 0..upto (skipping a and b), judged so far."""
    for c in range(upto + 1):
        if c == a or c == b:
            continue
        if adj[a, c] != adj[b, c]:
            return adj[b, c] > adj[a, c]
    return False


@nb.njit(cache=True)
def _connected(adj, n):
    seen = np.zeros(n, np.bool_)
    stack = np.zeros(n, np.int64)
    seen[0] = True
    stack[0] = 0
    top = 1
    cnt = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for w in range(n):
            if adj[u, w] and not seen[w]:
                seen[w] = True
                stack[top] = w
                top += 1
                cnt += 1
    return cnt == n


@nb.njit(cache=True)
def _tri_ok(adj, n, a, b, c, mode):
    """Triangle abc against the other triangles meeting it."""
    seen = np.zeros((n, n, n), np.bool_)
    meets = 0
    shared = 0
    tv = (a, b, c)
    for x in tv:
        for y in range(n):
            if not adj[x, y]:
                continue
            for z in range(y + 1, n):
                if not adj[x, z] or not adj[y, z]:
                    continue
                p, q, r = x, y, z
                if p > q:
                    p, q = q, p
                if q > r:
                    q, r = r, q
                if p > q:
                    p, q = q, p
                if seen[p, q, r]:
                    continue
                seen[p, q, r] = True
                common = 0
                for u in (p, q, r):
                    if u == a or u == b or u == c:
                        common += 1
                if common == 3:
                    continue
                if mode == 1:
                    if common == 2:
                        return False
                    meets += 1
                    if meets > 1:
                        return False
                else:
                    if common == 1:
                        return False
                    # mark which edge of abc is shared
                    for e in range(3):
                        s0, s1 = tv[e], tv[(e + 1) % 3]
                        h = 0
                        for u in (p, q, r):
                            if u == s0 or u == s1:
                                h += 1
                        if h == 2:
                            shared |= 1 << e
                    if shared & (shared - 1):
                        return False
    return True


@nb.njit(cache=True)
def _tri_edge_ok(adj, n, i, j, mode):
    """All triangles that can change status after adding edge ij."""
    for w in range(n):
        if not (adj[i, w] and adj[j, w]):
            continue
        if not _tri_ok(adj, n, i, j, w, mode):
            return False
        for x in (i, j, w):
            for y in range(n):
                if not adj[x, y]:
                    continue
                for z in range(y + 1, n):
                    if adj[x, z] and adj[y, z] and not _tri_ok(adj, n, x, y, z, mode):
                        return False
    return True


@nb.njit(cache=True)
def degree_graphs(tdeg, prune, out, cap, tri_mode=0):
    """Fill ``out`` with edge bitmasks (one row per graph, pair-indexed).

    Returns the number of graphs found; only the first ``cap`` are stored.
    """
    n = tdeg.shape[0]
    npairs = n * (n - 1) // 2
    pi = np.zeros(npairs, np.int64)
    pj = np.zeros(npairs, np.int64)
    t = 0
    for i in range(n):
        for j in range(i + 1, n):
            pi[t] = i
            pj[t] = j
            t += 1
    adj = np.zeros((n, n), np.bool_)
    deg = np.zeros(n, np.int64)
    choice = -np.ones(npairs + 1, np.int64)
    found = 0
    p = 0
    while p >= 0:
        if p == npairs:
            if _connected(adj, n):
                if found < cap:
                    for q in range(npairs):
                        out[found, q] = adj[pi[q], pj[q]]
                found += 1
            p -= 1
            continue
        i, j = pi[p], pj[p]
        # undo the previous choice at this pair
        if adj[i, j]:
            adj[i, j] = adj[j, i] = False
            deg[i] -= 1
            deg[j] -= 1
        choice[p] += 1
        if choice[p] > 1:
            choice[p] = -1
            p -= 1
            continue
        take = choice[p] == 1
        ok = True
        if take:
            if deg[i] >= tdeg[i] or deg[j] >= tdeg[j]:
                ok = False
            elif prune and tdeg[i] == 3 and tdeg[j] == 3:
                ok = False
            elif prune:
                for w in range(i):
                    if adj[w, i] and adj[w, j] and (tdeg[w] == 3 or tdeg[i] == 3 or tdeg[j] == 3):
                        ok = False
                        break
            if ok:
                adj[i, j] = adj[j, i] = True
                deg[i] += 1
                deg[j] += 1
                if tri_mode and not _tri_edge_ok(adj, n, i, j, tri_mode):
                    ok = False
        if ok and i > 0 and tdeg[i - 1] == tdeg[i] and _prefix_less(adj, i - 1, i, j):
            ok = False
        if ok and j - 1 > i and tdeg[j - 1] == tdeg[j] and _prefix_less(adj, j - 1, j, i):
            ok = False
        if ok:
            # row i must still reach its target with the pairs left in it
            if deg[i] + (n - 1 - j) < tdeg[i]:
                ok = False
            # j's own row starts after all rows < j; it can still gain n-1-j
            elif deg[j] + (n - 1 - j) + (j - 1 - i) < tdeg[j]:
                ok = False
        if ok and j == n - 1:
            if deg[i] != tdeg[i]:
                ok = False
            elif i > 0 and tdeg[i - 1] == tdeg[i] and not _row_ok(adj, n, i - 1, i):
                ok = False
            elif i == n - 2:
                # the last vertex's row is empty; check it now
                if deg[n - 1] != tdeg[n - 1]:
                    ok = False
                elif tdeg[n - 2] == tdeg[n - 1] and not _row_ok(adj, n, n - 2, n - 1):
                    ok = False
        if ok:
            p += 1
            if p < npairs:
                choice[p] = -1
        # on failure stay at p; the next pass tries the other choice or backtracks
    return found
