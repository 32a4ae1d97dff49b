"""Numba kernel for list decoding over the polar factor tree.

State layout per path slot s:
  llr[s, d, :]  LLRs at depth d (0 = root/channel, n = leaves); the block
                of node j at depth d occupies columns [j*m, (j+1)*m) with
                m = N >> d.
  ps[s, d, :]   partial sums (decided sub-codewords), same layout.
  uhat[s, :]    leaf decisions.
Paths are pruned to the L lowest metrics at every information leaf; ties
break on the child key 2*rank + bit (lower wins), and survivor ranks are
reassigned in child-key order.  A duplicated parent is copied into a freed
slot; survivors keep their parent's slot when possible, so the common
high-SNR case does no copying at all.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def scl_core(chan_llr, frozen, L, alive_trace):
    N = chan_llr.shape[0]
    n = 0
    while (1 << n) < N:
        n += 1

    llr = np.zeros((L, n + 1, N), dtype=np.float64)
    ps = np.zeros((L, n + 1, N), dtype=np.uint8)
    uhat = np.zeros((L, N), dtype=np.uint8)
    pm = np.zeros(L, dtype=np.float64)
    rank = np.zeros(L, dtype=np.int64)
    alive = np.zeros(L, dtype=np.uint8)
    alive[0] = 1
    llr[0, 0, :] = chan_llr

    cand_metric = np.empty(2 * L, dtype=np.float64)
    cand_slot = np.empty(2 * L, dtype=np.int64)
    cand_bit = np.empty(2 * L, dtype=np.uint8)
    cand_key = np.empty(2 * L, dtype=np.int64)
    order = np.empty(2 * L, dtype=np.int64)
    surv_count = np.empty(L, dtype=np.int64)
    first_done = np.empty(L, dtype=np.uint8)
    free_slots = np.empty(L, dtype=np.int64)
    dest_of = np.empty(2 * L, dtype=np.int64)
    new_rank = np.empty(L, dtype=np.int64)

    for pos in range(N):
        # ---- LLR descent to leaf `pos` ----
        if pos == 0:
            d0 = 0
        else:
            k = 0
            while ((pos >> k) & 1) == 0:
                k += 1
            d0 = n - k
        for s in range(L):
            if alive[s] == 0:
                continue
            if pos != 0:
                m = N >> d0
                j = pos >> (n - d0)  # odd: right child, g-update
                bc = j * m
                bp = (j >> 1) * (m << 1)
                bl = (j - 1) * m
                for t in range(m):
                    a = llr[s, d0 - 1, bp + t]
                    b = llr[s, d0 - 1, bp + m + t]
                    if ps[s, d0, bl + t]:
                        llr[s, d0, bc + t] = b - a
                    else:
                        llr[s, d0, bc + t] = b + a
                dstart = d0 + 1
            else:
                dstart = 1
            for d in range(dstart, n + 1):
                m = N >> d
                j = pos >> (n - d)  # even: left child, f-update (min-sum)
                bc = j * m
                bp = (j >> 1) * (m << 1)
                for t in range(m):
                    a = llr[s, d - 1, bp + t]
                    b = llr[s, d - 1, bp + m + t]
                    aa = -a if a < 0.0 else a
                    ab = -b if b < 0.0 else b
                    mn = aa if aa < ab else ab
                    if (a < 0.0) != (b < 0.0):
                        llr[s, d, bc + t] = -mn
                    else:
                        llr[s, d, bc + t] = mn

        # ---- leaf decision ----
        if frozen[pos]:
            for s in range(L):
                if alive[s]:
                    lam = llr[s, n, pos]
                    if lam < 0.0:
                        pm[s] -= lam
                    ps[s, n, pos] = 0
                    uhat[s, pos] = 0
        else:
            nc = 0
            for s in range(L):
                if alive[s]:
                    lam = llr[s, n, pos]
                    p0 = -lam if lam < 0.0 else 0.0
                    p1 = lam if lam > 0.0 else 0.0
                    cand_metric[nc] = pm[s] + p0
                    cand_slot[nc] = s
                    cand_bit[nc] = 0
                    cand_key[nc] = 2 * rank[s]
                    nc += 1
                    cand_metric[nc] = pm[s] + p1
                    cand_slot[nc] = s
                    cand_bit[nc] = 1
                    cand_key[nc] = 2 * rank[s] + 1
                    nc += 1
            nsurv = nc if nc < L else L

            # argsort candidates by (metric, key); nc <= 2L so insertion sort
            for i in range(nc):
                order[i] = i
            for i in range(1, nc):
                oi = order[i]
                mi = cand_metric[oi]
                ki = cand_key[oi]
                jj = i - 1
                while jj >= 0:
                    oj = order[jj]
                    if cand_metric[oj] > mi or (
                        cand_metric[oj] == mi and cand_key[oj] > ki
                    ):
                        order[jj + 1] = oj
                        jj -= 1
                    else:
                        break
                order[jj + 1] = oi

            # survivors: order[:nsurv]; re-sort them by child key so rank
            # assignment (and slot assignment) is deterministic
            for i in range(1, nsurv):
                oi = order[i]
                ki = cand_key[oi]
                jj = i - 1
                while jj >= 0 and cand_key[order[jj]] > ki:
                    order[jj + 1] = order[jj]
                    jj -= 1
                order[jj + 1] = oi

            for s in range(L):
                surv_count[s] = 0
                first_done[s] = 0
            for r in range(nsurv):
                surv_count[cand_slot[order[r]]] += 1
            nfree = 0
            for s in range(L):
                if alive[s] == 0 or surv_count[s] == 0:
                    free_slots[nfree] = s
                    nfree += 1

            fptr = 0
            for r in range(nsurv):
                c = order[r]
                s = cand_slot[c]
                if first_done[s] == 0:
                    dest_of[c] = s
                    first_done[s] = 1
                else:
                    dest_of[c] = free_slots[fptr]
                    fptr += 1
            # copy duplicated parents before any state is overwritten
            for r in range(nsurv):
                c = order[r]
                s = cand_slot[c]
                dst = dest_of[c]
                if dst != s:
                    llr[dst] = llr[s]
                    ps[dst] = ps[s]
                    uhat[dst] = uhat[s]
            for r in range(nsurv):
                c = order[r]
                dst = dest_of[c]
                pm[dst] = cand_metric[c]
                ps[dst, n, pos] = cand_bit[c]
                uhat[dst, pos] = cand_bit[c]
                new_rank[dst] = r
            for s in range(L):
                alive[s] = 0
            for r in range(nsurv):
                alive[dest_of[order[r]]] = 1
            for s in range(L):
                if alive[s]:
                    rank[s] = new_rank[s]

        na = 0
        for s in range(L):
            na += alive[s]
        alive_trace[pos] = na

        # ---- partial-sum propagation up every completed right edge ----
        p = pos
        d = n
        while d > 0 and (p & 1) == 1:
            m = N >> d
            bl = (p - 1) * m
            br = p * m
            for s in range(L):
                if alive[s]:
                    for t in range(m):
                        lb = ps[s, d, bl + t]
                        rb = ps[s, d, br + t]
                        ps[s, d - 1, bl + t] = lb ^ rb
                        ps[s, d - 1, bl + m + t] = rb
            p >>= 1
            d -= 1

    return uhat, pm, rank, alive
