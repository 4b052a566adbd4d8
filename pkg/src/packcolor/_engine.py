"""Compiled kernels for the boundary enumeration.

Colors follow the package encoding (0 uncolored, -1 undetermined, 1..j,
j+1..j+k).  Neighbour lists are padded with -1.
"""
import numba as nb
import numpy as np

POOL = 8


@nb.njit(cache=True)
def extend_fixed(col, vars_, nv, j, ncol, adjg, sqg, out):
    """Backtracking over ``vars_`` in the given order.

    Vertices with col == 0 take any color, col == -1 only 1-colors.
    On success the total coloring is written to ``out``.
    """
    for i in range(col.shape[0]):
        out[i] = col[i]
    onlyone = np.zeros(nv, np.bool_)
    for i in range(nv):
        onlyone[i] = col[vars_[i]] == -1
        out[vars_[i]] = 0
    choice = np.zeros(nv, np.int64)
    i = 0
    while True:
        if i == nv:
            return True
        if i < 0:
            return False
        v = vars_[i]
        top = j if onlyone[i] else ncol
        found = False
        for c in range(choice[i] + 1, top + 1):
            ok = True
            if c <= j:
                for t in range(adjg.shape[1]):
                    w = adjg[v, t]
                    if w < 0:
                        break
                    if out[w] == c:
                        ok = False
                        break
            else:
                for t in range(sqg.shape[1]):
                    w = sqg[v, t]
                    if w < 0:
                        break
                    if out[w] == c:
                        ok = False
                        break
            if ok:
                choice[i] = c
                out[v] = c
                found = True
                break
        if found:
            i += 1
            if i < nv:
                choice[i] = 0
        else:
            choice[i] = 0
            out[v] = 0
            i -= 1


@nb.njit(cache=True)
def _extension_vars(col, S, vars_):
    nv = 0
    for s in S:
        vars_[nv] = s
        nv += 1
    for v in range(col.shape[0]):
        if col[v] == -1:
            vars_[nv] = v
            nv += 1
    return nv


@nb.njit(cache=True)
def _place_ok(v, x, j, col, adjp, sqp):
    """Consistency of color x at boundary vertex v against G' so far."""
    if x == -1:
        return True
    if x <= j:
        for t in range(adjp.shape[1]):
            w = adjp[v, t]
            if w < 0:
                break
            if col[w] == x:
                return False
        return True
    for t in range(sqp.shape[1]):
        w = sqp[v, t]
        if w < 0:
            break
        if col[w] == x:
            return False
    return True


@nb.njit(cache=True)
def _masks(sol, col, last, nlast, inlast, j, adjg, sqg, b1, b2):
    """Colors blocked at each last-claw position by everything outside the claw."""
    for t in range(nlast):
        v = last[t]
        m1 = 0
        for q in range(adjg.shape[1]):
            w = adjg[v, q]
            if w < 0:
                break
            if inlast[w]:
                continue
            c = sol[w] if col[w] <= 0 else col[w]
            if 1 <= c <= j:
                m1 |= 1 << c
        m2 = 0
        for q in range(sqg.shape[1]):
            w = sqg[v, q]
            if w < 0:
                break
            if inlast[w]:
                continue
            c = sol[w] if col[w] <= 0 else col[w]
            if c > j:
                m2 |= 1 << c
        b1[t] = m1
        b2[t] = m2


@nb.njit(cache=True)
def _compatible(e, nlast, b1, b2, ladj, j):
    for t in range(nlast):
        x = e[t]
        if x == -1:
            m = b1[t]
            for u in range(nlast):
                if ladj[t, u] and 1 <= e[u] <= j:
                    m |= 1 << e[u]
            free = False
            for y in range(1, j + 1):
                if not (m >> y) & 1:
                    free = True
                    break
            if not free:
                return False
        elif x <= j:
            if (b1[t] >> x) & 1:
                return False
        elif (b2[t] >> x) & 1:
            return False
    return True


@nb.njit(cache=True)
def _last_claw(col, fresh, e_all, ne, nlast, last, j, ncol, adjp, sqp, S, adjg, sqg, ladj, inlast,
               vars_, out, pool_b1, pool_b2, bad, nbad, use_pool, okpos, lpadj):
    """All entries of the last claw under a fixed prefix.

    Placement checks against the prefix are tabulated once per prefix;
    returns updated (consistent, nbad, full_checks).
    """
    for t in range(nlast):
        v = last[t]
        for x in range(1, ncol + 1):
            okpos[t, x] = _place_ok(v, x, j, col, adjp, sqp)
    n = col.shape[0]
    npool = 0
    pslot = 0
    ncons = 0
    nfull = 0
    for q in range(ne):
        e = e_all[q]
        mm = fresh
        good = True
        for t in range(nlast):
            x = e[t]
            if x > j:
                if x == j + 1 + mm:
                    mm += 1
                elif x > j + 1 + mm:
                    good = False
                    break
            if x > 0 and not okpos[t, x]:
                good = False
                break
        if good:
            # the catalog covers the star itself; extra G' edges inside the claw do not
            for t in range(nlast):
                for u in range(t + 1, nlast):
                    if lpadj[t, u] and e[t] == e[u] and 1 <= e[t] <= j:
                        good = False
        if not good:
            continue
        ncons += 1
        ok = False
        if use_pool:
            for p in range(npool):
                if _compatible(e, nlast, pool_b1[p], pool_b2[p], ladj, j):
                    ok = True
                    break
        if not ok:
            for t in range(nlast):
                col[last[t]] = e[t]
            nfull += 1
            nv = _extension_vars(col, S, vars_)
            if extend_fixed(col, vars_, nv, j, ncol, adjg, sqg, out):
                ok = True
                if use_pool:
                    _masks(out, col, last, nlast, inlast, j, adjg, sqg, pool_b1[pslot], pool_b2[pslot])
                    pslot = (pslot + 1) % POOL
                    if npool < POOL:
                        npool += 1
            if not ok:
                if nbad < bad.shape[0]:
                    for v in range(n):
                        bad[nbad, v] = col[v]
                nbad += 1
            for t in range(nlast):
                col[last[t]] = 0
    return ncons, nbad, nfull


@nb.njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@nb.njit(cache=True)
def _lowbit(x):
    b = 0
    while not (x >> np.uint64(b)) & np.uint64(1):
        b += 1
    return b


@nb.njit(cache=True)
def _allowed(E, M, nv, b1, b2, j, ncol, acc):
    """acc &= entries whose colors avoid the blocked masks b1/b2 (per position)."""
    W = acc.shape[0]
    for t in range(nv):
        for w in range(W):
            a = np.uint64(0)
            for x in range(1, ncol + 1):
                blocked = (b1[t] >> x) & 1 if x <= j else (b2[t] >> x) & 1
                if not blocked:
                    a |= E[t, x + 1, w]
            for u in range(M.shape[1]):
                m = b1[t] | u
                for y in range(1, j + 1):
                    if not (m >> y) & 1:
                        a |= M[t, u, w]
                        break
            acc[w] &= a


@nb.njit(cache=True)
def _last_two(col, f0, lo1, hi1, v1, nv1, v2, nv2, j, ncol, adjp, sqp, S, adjg, sqg,
              E1, M1, E2, M2, self1, self2, cplx1, cplx2, fo1, fo2, new1, pair, xm, cat1, cat2,
              inlast, vars_, out, rows, bad, nbad, use_pool):
    """Every consistent pair of entries for the last two claws under a fixed prefix.

    Valid pairs are bitset rows (one row per entry of the first claw).  A
    pair is settled either by a full extension or because an extension found
    for another pair fixes everything outside the two claws and leaves both
    of its entries compatible.  Returns updated (consistent, nbad, full_checks).
    """
    W1 = self1.shape[0]
    W2 = self2.shape[0]
    n = col.shape[0]
    b1 = np.zeros(4, np.int64)
    b2 = np.zeros(4, np.int64)
    # consistency of each (position, color) with the prefix
    for t in range(4):
        b1[t] = 0
        b2[t] = 0
    valid1 = self1 & fo1[f0]
    for t in range(nv1):
        for x in range(1, ncol + 1):
            if not _place_ok(v1[t], x, j, col, adjp, sqp):
                if x <= j:
                    b1[t] |= 1 << x
                else:
                    b2[t] |= 1 << x
    for t in range(nv1):
        for w in range(W1):
            a = E1[t, 0, w]
            for x in range(1, ncol + 1):
                blocked = (b1[t] >> x) & 1 if x <= j else (b2[t] >> x) & 1
                if not blocked:
                    a |= E1[t, x + 1, w]
            valid1[w] &= a
    for q in range(W1 * 64):
        if q < lo1 or q >= hi1:
            valid1[q >> 6] &= ~(np.uint64(1) << np.uint64(q & 63))
    valid2 = self2.copy()
    for t in range(nv2):
        m1 = 0
        m2 = 0
        for x in range(1, ncol + 1):
            if not _place_ok(v2[t], x, j, col, adjp, sqp):
                if x <= j:
                    m1 |= 1 << x
                else:
                    m2 |= 1 << x
        for w in range(W2):
            a = E2[t, 0, w]
            for x in range(1, ncol + 1):
                blocked = (m1 >> x) & 1 if x <= j else (m2 >> x) & 1
                if not blocked:
                    a |= E2[t, x + 1, w]
            valid2[w] &= a
    ncons = 0
    nfull = 0
    for w1 in range(W1):
        word = valid1[w1]
        while word:
            b = _lowbit(word)
            word &= ~(np.uint64(1) << np.uint64(b))
            e1 = w1 * 64 + b
            f1 = f0 + new1[f0, e1]
            for w in range(W2):
                rows[e1, w] = valid2[w] & pair[e1, w] & fo2[f1, w]
                ncons += _popcount(rows[e1, w])
    C1 = np.zeros(W1, np.uint64)
    C2 = np.zeros(W2, np.uint64)
    for w1 in range(W1):
        word = valid1[w1]
        while word:
            b = _lowbit(word)
            word &= ~(np.uint64(1) << np.uint64(b))
            e1 = w1 * 64 + b
            for w2 in range(W2):
                while rows[e1, w2]:
                    e2 = w2 * 64 + _lowbit(rows[e1, w2])
                    rows[e1, w2] &= ~(np.uint64(1) << np.uint64(e2 & 63))
                    for t in range(nv1):
                        col[v1[t]] = cat1[e1, t]
                    for t in range(nv2):
                        col[v2[t]] = cat2[e2, t]
                    nfull += 1
                    nv = _extension_vars(col, S, vars_)
                    if extend_fixed(col, vars_, nv, j, ncol, adjg, sqg, out):
                        if use_pool:
                            _masks(out, col, v1, nv1, inlast, j, adjg, sqg, b1, b2)
                            for w in range(W1):
                                C1[w] = ~cplx1[w]
                            _allowed(E1, M1, nv1, b1, b2, j, ncol, C1)
                            _masks(out, col, v2, nv2, inlast, j, adjg, sqg, b1, b2)
                            for w in range(W2):
                                C2[w] = ~cplx2[w]
                            _allowed(E2, M2, nv2, b1, b2, j, ncol, C2)
                            for w in range(W1):
                                word2 = C1[w] & valid1[w]
                                while word2:
                                    bb = _lowbit(word2)
                                    word2 &= ~(np.uint64(1) << np.uint64(bb))
                                    r = w * 64 + bb
                                    for u in range(W2):
                                        rows[r, u] &= ~(C2[u] & ~xm[r, u])
                    else:
                        if nbad < bad.shape[0]:
                            for v in range(n):
                                bad[nbad, v] = col[v]
                        nbad += 1
                    for t in range(nv1):
                        col[v1[t]] = 0
                    for t in range(nv2):
                        col[v2[t]] = 0
    return ncons, nbad, nfull


@nb.njit(cache=True)
def enumerate_claws(nclaw, cverts, cnv, cats, catlen, first_lo, first_hi, j, ncol,
                    adjp, sqp, S, adjg, sqg, ladj, bad, use_pool,
                    E1, M1, E2, M2, self1, self2, cplx1, cplx2, fo1, fo2, new1, pair, xm):
    """First-occurrence enumeration of claw-catalog products.

    The last two claws are handled together by ``_last_two``.  Returns
    (consistent, nbad, full_checks).  Bad colorings are written to ``bad``
    up to its capacity; nbad counts all of them.
    """
    n = adjg.shape[0]
    col = np.zeros(n, np.int64)
    idx = -np.ones(nclaw + 1, np.int64)
    fresh = np.zeros(nclaw + 1, np.int64)
    vars_ = np.zeros(n, np.int64)
    out = np.zeros(n, np.int64)
    ncons = 0
    nbad = 0
    nfull = 0
    if nclaw == 1:
        last = cverts[0]
        nlast = cnv[0]
        inlast = np.zeros(n, np.bool_)
        for t in range(nlast):
            inlast[last[t]] = True
        pool_b1 = np.zeros((POOL, 4), np.int64)
        pool_b2 = np.zeros((POOL, 4), np.int64)
        okpos = np.zeros((4, ncol + 1), np.bool_)
        lpadj = np.zeros((4, 4), np.bool_)
        for t in range(nlast):
            for q in range(adjp.shape[1]):
                w = adjp[last[t], q]
                if w < 0:
                    break
                for u in range(nlast):
                    if last[u] == w:
                        lpadj[t, u] = True
        if first_lo < first_hi:
            lo = max(first_lo, 0)
            hi = min(first_hi, catlen[0])
            c, nbad, f = _last_claw(col, 0, cats[0, lo:hi], hi - lo, nlast, last, j, ncol, adjp, sqp, S,
                                    adjg, sqg, ladj, inlast, vars_, out, pool_b1, pool_b2, bad, nbad,
                                    use_pool, okpos, lpadj)
            ncons += c
            nfull += f
        return ncons, nbad, nfull
    v1 = cverts[nclaw - 2]
    v2 = cverts[nclaw - 1]
    nv1 = cnv[nclaw - 2]
    nv2 = cnv[nclaw - 1]
    inlast = np.zeros(n, np.bool_)
    for t in range(nv1):
        inlast[v1[t]] = True
    for t in range(nv2):
        inlast[v2[t]] = True
    rows = np.zeros((self1.shape[0] * 64, self2.shape[0]), np.uint64)
    cat1 = cats[nclaw - 2]
    cat2 = cats[nclaw - 1]
    if nclaw == 2:
        c, nbad, f = _last_two(col, 0, first_lo, first_hi, v1, nv1, v2, nv2, j, ncol, adjp, sqp, S, adjg, sqg,
                               E1, M1, E2, M2, self1, self2, cplx1, cplx2, fo1, fo2, new1, pair, xm,
                               cat1, cat2, inlast, vars_, out, rows, bad, nbad, use_pool)
        return c, nbad, f
    k = 0
    idx[0] = first_lo - 1
    fresh[0] = 0
    while k >= 0:
        if k == nclaw - 2:
            c, nbad, f = _last_two(col, fresh[k], 0, catlen[k], v1, nv1, v2, nv2, j, ncol, adjp, sqp, S,
                                   adjg, sqg, E1, M1, E2, M2, self1, self2, cplx1, cplx2, fo1, fo2, new1,
                                   pair, xm, cat1, cat2, inlast, vars_, out, rows, bad, nbad, use_pool)
            ncons += c
            nfull += f
            k -= 1
            continue
        for t in range(cnv[k]):
            col[cverts[k, t]] = 0
        idx[k] += 1
        hi = catlen[k] if k > 0 else min(first_hi, catlen[0])
        advanced = False
        while idx[k] < hi:
            e = cats[k, idx[k]]
            mm = fresh[k]
            good = True
            for t in range(cnv[k]):
                x = e[t]
                if x > j:
                    if x == j + 1 + mm:
                        mm += 1
                    elif x > j + 1 + mm:
                        good = False
                        break
            if good:
                for t in range(cnv[k]):
                    v = cverts[k, t]
                    if not _place_ok(v, e[t], j, col, adjp, sqp):
                        good = False
                        break
                    col[v] = e[t]
            if good:
                fresh[k + 1] = mm
                idx[k + 1] = -1
                advanced = True
                break
            for t in range(cnv[k]):
                col[cverts[k, t]] = 0
            idx[k] += 1
        if advanced:
            k += 1
        else:
            idx[k] = -1
            k -= 1
    return ncons, nbad, nfull


@nb.njit(cache=True)
def extend_one(col, S, j, ncol, adjg, sqg, out):
    vars_ = np.zeros(col.shape[0], np.int64)
    nv = _extension_vars(col, S, vars_)
    return extend_fixed(col, vars_, nv, j, ncol, adjg, sqg, out)
