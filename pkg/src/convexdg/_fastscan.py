"""Compiled float kernels: bisector trace, domination scan and segment walk."""
from __future__ import annotations

import numba as nb
import numpy as np

DOMINATED, FREE, UNSURE, FUZZY = 0, 1, 2, 3


@nb.njit(cache=True)
def trace_f(rel, px, py, qx, qy):
    """Float bisector pieces for a pair whose direction is parallel to no edge.

    Returns (ok, X, D, bounded, lam0, dlam, cones, sigma). Piece 0 and the
    last piece are rays; the rest are segments.
    """
    m = rel.shape[0]
    ux, uy = qx - px, qy - py
    uu = ux * ux + uy * uy
    sig = np.empty(m)
    for i in range(m):
        sig[i] = -uy * rel[i, 0] + ux * rel[i, 1]
    smin, smax = sig.min(), sig.max()
    i0 = -1
    j0 = -1
    nmin = 0
    nmax = 0
    for i in range(m):
        if sig[i] == smin:
            nmin += 1
        if sig[i] == smax:
            nmax += 1
        if sig[i] == smin and sig[(i + 1) % m] > smin:
            i0 = i
        if sig[i] == smax and sig[(i + 1) % m] < smax:
            j0 = i
    empty2 = np.empty((0, 2))
    if nmin != 1 or nmax != 1 or i0 < 0 or j0 < 0:
        return False, empty2, empty2, np.empty(0, np.bool_), np.empty(0), np.empty(0), np.empty((0, 2), np.int64), empty2
    A = np.empty(m, np.int64)
    na = 0
    k = i0
    A[na] = k
    na += 1
    while sig[k] != smax:
        k = (k + 1) % m
        A[na] = k
        na += 1
    Bt = np.empty(m, np.int64)
    nb_ = 0
    k = j0
    Bt[nb_] = k
    nb_ += 1
    while sig[k] != smin:
        k = (k + 1) % m
        Bt[nb_] = k
        nb_ += 1
    B = Bt[:nb_][::-1].copy()
    A = A[:na]
    # merged interior events
    ev = np.empty(na + nb_)
    ne = 0
    a, b = 1, 1
    while a < na - 1 or b < nb_ - 1:
        if b >= nb_ - 1 or (a < na - 1 and sig[A[a]] <= sig[B[b]]):
            s = sig[A[a]]
            a += 1
        else:
            s = sig[B[b]]
            b += 1
        if ne == 0 or ev[ne - 1] != s:
            ev[ne] = s
            ne += 1
    if ne == 0:
        return False, empty2, empty2, np.empty(0, np.bool_), np.empty(0), np.empty(0), np.empty((0, 2), np.int64), empty2
    NX = np.empty((ne, 2))
    NL = np.empty(ne)
    ia = 0
    ib = 0
    for e in range(ne):
        s = ev[e]
        while sig[A[ia + 1]] < s:
            ia += 1
        while sig[B[ib + 1]] < s:
            ib += 1
        a0, a1 = A[ia], A[ia + 1]
        if sig[a1] == s:
            z2x, z2y = rel[a1, 0], rel[a1, 1]
        else:
            f = (s - sig[a0]) / (sig[a1] - sig[a0])
            z2x = rel[a0, 0] + f * (rel[a1, 0] - rel[a0, 0])
            z2y = rel[a0, 1] + f * (rel[a1, 1] - rel[a0, 1])
        b0, b1 = B[ib], B[ib + 1]
        if sig[b1] == s:
            z1x, z1y = rel[b1, 0], rel[b1, 1]
        else:
            f = (s - sig[b0]) / (sig[b1] - sig[b0])
            z1x = rel[b0, 0] + f * (rel[b1, 0] - rel[b0, 0])
            z1y = rel[b0, 1] + f * (rel[b1, 1] - rel[b0, 1])
        lam = uu / (ux * (z2x - z1x) + uy * (z2y - z1y))
        NX[e, 0] = px - lam * z1x
        NX[e, 1] = py - lam * z1y
        NL[e] = lam
    P = ne + 1
    X = np.empty((P, 2))
    D = np.empty((P, 2))
    bounded = np.zeros(P, np.bool_)
    lam0 = np.empty(P)
    dlam = np.empty(P)
    cones = np.empty((P, 2), np.int64)
    sigma = np.empty((P, 2))
    ia = 0
    ib = 0
    for g in range(P):
        lo = smin if g == 0 else ev[g - 1]
        hi = smax if g == P - 1 else ev[g]
        while sig[A[ia + 1]] <= lo:
            ia += 1
        while sig[B[ib + 1]] <= lo:
            ib += 1
        cones[g, 0] = B[ib + 1]
        cones[g, 1] = A[ia]
        sigma[g, 0] = lo
        sigma[g, 1] = hi
        if g == 0:
            X[g, 0], X[g, 1] = NX[0, 0], NX[0, 1]
            D[g, 0], D[g, 1] = -rel[A[0], 0], -rel[A[0], 1]
            lam0[g] = NL[0]
            dlam[g] = 1.0
        elif g == P - 1:
            X[g, 0], X[g, 1] = NX[ne - 1, 0], NX[ne - 1, 1]
            D[g, 0], D[g, 1] = -rel[A[na - 1], 0], -rel[A[na - 1], 1]
            lam0[g] = NL[ne - 1]
            dlam[g] = 1.0
        else:
            X[g, 0], X[g, 1] = NX[g - 1, 0], NX[g - 1, 1]
            D[g, 0] = NX[g, 0] - NX[g - 1, 0]
            D[g, 1] = NX[g, 1] - NX[g - 1, 1]
            bounded[g] = True
            lam0[g] = NL[g - 1]
            dlam[g] = NL[g] - NL[g - 1]
    return True, X, D, bounded, lam0, dlam, cones, sigma


@nb.njit(cache=True)
def _gaps(lo, hi, end, out):
    """Closed components of [0, end] not covered by open intervals (lo, hi)."""
    idx = np.argsort(lo)
    cnt = 0
    cur = 0.0
    cap = out.shape[0]
    for t in range(idx.shape[0]):
        a = lo[idx[t]]
        b = hi[idx[t]]
        if not a < b:
            continue
        if b <= cur:
            continue
        if a >= cur:
            if cnt < cap:
                out[cnt, 0] = cur
                out[cnt, 1] = min(a, end)
            cnt += 1
        cur = b
        if cur > end:
            break
    if cur <= end and cur != np.inf:
        if cnt < cap:
            out[cnt, 0] = cur
            out[cnt, 1] = end
        cnt += 1
    return cnt


@nb.njit(cache=True)
def scan(X, D, lam0, dlam, bounded, G, GR, margin, snap, maxf):
    """Float domination scan of pieces against competitors.

    GR[r, k] = g_k . r for each competitor. Per piece the result status is
    DOMINATED (robustly covered), FREE (undominated stretches with clear
    margin, recorded in ``free``), UNSURE (only near-ties) or FUZZY (both).
    ``relevant[p, r]`` marks competitors that come within the margin.
    """
    P = X.shape[0]
    R = GR.shape[0]
    m = G.shape[0]
    status = np.zeros(P, np.int64)
    nfree = np.zeros(P, np.int64)
    free = np.zeros((P, maxf, 2))
    width = np.zeros((P, maxf, 2))
    relevant = np.zeros((P, R), np.bool_)
    A = np.empty(m)
    gX = np.empty(m)
    loI = np.empty(R)
    hiI = np.empty(R)
    loJ = np.empty(R)
    hiJ = np.empty(R)
    lo0 = np.empty(R)
    hi0 = np.empty(R)
    comps = np.empty((R + 2, 2))
    cert = np.empty((R + 2, 2))
    zer = np.empty((R + 2, 2))
    grmax = 0.0
    for r in range(R):
        for k in range(m):
            grmax = max(grmax, abs(GR[r, k]))
    for p in range(P):
        end = 1.0 if bounded[p] else np.inf
        scaleA = abs(dlam[p])
        gxm = 0.0
        for k in range(m):
            gD = G[k, 0] * D[p, 0] + G[k, 1] * D[p, 1]
            A[k] = -gD - dlam[p]
            scaleA = max(scaleA, abs(gD))
            gX[k] = G[k, 0] * X[p, 0] + G[k, 1] * X[p, 1]
            gxm = max(gxm, abs(gX[k]))
        for k in range(m):
            if abs(A[k]) <= snap * scaleA:
                A[k] = 0.0
        delta = margin * (1.0 + grmax + gxm + abs(lam0[p]))
        covered = False
        for r in range(R):
            li, hi_, lj, hj, l0, h0 = -np.inf, np.inf, -np.inf, np.inf, -np.inf, np.inf
            badI = False
            badJ = False
            bad0 = False
            for k in range(m):
                a = A[k]
                b = GR[r, k] - gX[k] - lam0[p]
                if a > 0:
                    hi_ = min(hi_, (-delta - b) / a)
                    hj = min(hj, (delta - b) / a)
                    h0 = min(h0, -b / a)
                elif a < 0:
                    li = max(li, (-delta - b) / a)
                    lj = max(lj, (delta - b) / a)
                    l0 = max(l0, -b / a)
                else:
                    if b >= -delta:
                        badI = True
                    if b >= delta:
                        badJ = True
                    if b >= 0:
                        bad0 = True
            if badI:
                li, hi_ = np.inf, -np.inf
            if badJ:
                lj, hj = np.inf, -np.inf
            if bad0:
                l0, h0 = np.inf, -np.inf
            loI[r], hiI[r], loJ[r], hiJ[r], lo0[r], hi0[r] = li, hi_, lj, hj, l0, h0
            relevant[p, r] = lj < min(hj, end) and hj > 0
            if li < 0 and hi_ > end:
                covered = True
        if covered:
            status[p] = DOMINATED
            continue
        nc = _gaps(loI, hiI, end, comps)
        if nc == 0:
            status[p] = DOMINATED
            continue
        ncert = min(_gaps(loJ, hiJ, end, cert), cert.shape[0])
        nz = min(_gaps(lo0, hi0, end, zer), zer.shape[0])
        dlen = np.sqrt(D[p, 0] ** 2 + D[p, 1] ** 2)
        unsure = False
        nf = 0
        overflow = nc > comps.shape[0]
        for c in range(min(nc, comps.shape[0])):
            a, b = comps[c, 0], comps[c, 1]
            first = np.inf
            last = -np.inf
            for t in range(ncert):
                lo_ = max(a, cert[t, 0])
                hi2 = min(b, cert[t, 1])
                if hi2 - lo_ > 1e-9 * max(1.0, abs(a)):
                    first = min(first, lo_)
                    last = max(last, hi2)
            if first == np.inf:
                unsure = True
                continue
            lo_e = np.inf
            hi_e = -np.inf
            for t in range(nz):
                lo_ = max(a, zer[t, 0])
                hi2 = min(b, zer[t, 1])
                if hi2 > lo_:
                    lo_e = min(lo_e, lo_)
                    hi_e = max(hi_e, hi2)
            if lo_e == np.inf:
                lo_e, hi_e = a, b
            if nf < maxf:
                free[p, nf, 0] = lo_e
                free[p, nf, 1] = hi_e
                width[p, nf, 0] = (first - a) * dlen
                width[p, nf, 1] = (b - last) * dlen if b != np.inf else 0.0
                nf += 1
            else:
                overflow = True
        nfree[p] = nf
        if overflow:
            unsure = True
        if nf == 0:
            status[p] = UNSURE
        elif unsure:
            status[p] = FUZZY
        else:
            status[p] = FREE
    return status, nfree, free, width, relevant


WALK_OK, WALK_UNSURE, WALK_FAIL = 0, 1, 2


@nb.njit(cache=True)
def walk(G, S, i, j, tol):
    """Float walk along segment S[i] -> S[j] through the nearest-site cells.

    Returns (status, owners, params): the successive owners of the segment
    (a site may recur) and the parameters where ownership changes. Any decision closer than ``tol``
    yields WALK_UNSURE so the caller can redo the walk exactly.
    """
    n = S.shape[0]
    m = G.shape[0]
    ux = S[j, 0] - S[i, 0]
    uy = S[j, 1] - S[i, 1]
    a = np.empty((n, m))
    b = np.empty(m)
    amax = 0.0
    bmax = 0.0
    for k in range(m):
        b[k] = -(G[k, 0] * ux + G[k, 1] * uy)
        bmax = max(bmax, abs(b[k]))
        for r in range(n):
            a[r, k] = G[k, 0] * (S[r, 0] - S[i, 0]) + G[k, 1] * (S[r, 1] - S[i, 1])
            amax = max(amax, abs(a[r, k]))
    scale = 1.0 + amax + bmax
    tv = tol * scale
    cap = 8 * n + 8
    verts = np.empty(cap, np.int64)
    taus = np.empty(cap)
    empty_i = np.empty(0, np.int64)
    empty_f = np.empty(0)
    verts[0] = i
    nv = 1
    o = i
    prev = -1
    tc = 0.0
    switched = False
    for _ in range(4 * (n + 2) * (m + 2)):
        if o == j:
            return WALK_OK, verts[:nv].copy(), taus[:nv - 1].copy()
        vmax = -np.inf
        for k in range(m):
            vmax = max(vmax, a[o, k] + b[k] * tc)
        ks = -1
        bs = -np.inf
        for k in range(m):
            if a[o, k] + b[k] * tc >= vmax - tv and b[k] > bs:
                ks = k
                bs = b[k]
        As = a[o, ks]
        tend = np.inf
        for k in range(m):
            if b[k] > bs:
                rt = (As - a[o, k]) / (b[k] - bs)
                if rt < tend:
                    tend = rt
        if tend < tc:
            tend = tc
        best = np.inf
        second = np.inf
        br = -1
        for r in range(n):
            if r == o:
                continue
            lo = -np.inf
            hi = np.inf
            bad = False
            zero = False
            for k in range(m):
                c0 = a[r, k] - As
                c1 = b[k] - bs
                if abs(c1) <= 1e-13 * scale:
                    if c0 > tv:
                        bad = True
                        break
                    if c0 >= -tv:
                        zero = True
                elif c1 > 0:
                    hi = min(hi, -c0 / c1)
                else:
                    lo = max(lo, -c0 / c1)
            if bad or hi < lo - tol or hi < tc - tol or lo > tend + tol:
                continue
            if zero or hi - lo <= tol:
                return WALK_UNSURE, empty_i, empty_f
            if hi <= tc + tol:
                if r == prev:
                    continue
                return WALK_UNSURE, empty_i, empty_f
            if lo < tc - tol:
                return WALK_UNSURE, empty_i, empty_f
            t = max(lo, tc)
            if t < best:
                second = best
                best = t
                br = r
            elif t < second:
                second = t
        if br >= 0 and best < tend + tol:
            if best > tend - tol or second - best <= tol or (switched and best <= tc + tol):
                return WALK_UNSURE, empty_i, empty_f
            prev = o
            o = br
            tc = best
            verts[nv] = o
            taus[nv - 1] = tc
            nv += 1
            switched = True
            if nv >= cap:
                return WALK_FAIL, empty_i, empty_f
        else:
            if tend == np.inf:
                return WALK_FAIL, empty_i, empty_f
            tc = tend
            switched = False
    return WALK_FAIL, empty_i, empty_f
