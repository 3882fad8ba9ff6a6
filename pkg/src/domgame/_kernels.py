"""Hot loops: the threshold game search and the brute-force graph canonizer.

Every kernel here is written once as scalar Python over numpy arrays and is
compiled by numba when the backend allows it (see ``_accel``). The graph
canonizer additionally has a vectorized numpy fallback, since the scalar loop
is far too slow uncompiled.
"""
from __future__ import annotations

from types import SimpleNamespace

import numpy as np

from ._accel import USE_NUMBA, njit

ALICE_WINS = 1
BOB_WINS = 0
OUT_OF_BUDGET = -1

# table entries pack the proven score interval as (lo << 8) | hi
SHIFT = 8
LOW = (1 << SHIFT) - 1


def build_kernels(jit, jitted=False):
    """Build the search kernels, decorating every function with ``jit``.

    Helpers are closed over rather than looked up as module globals, so the
    identity decorator yields a genuinely pure-Python variant.
    """

    def popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    popcount = jit(popcount)

    def bounds(seen, unc, rel, full):
        # Colors are only ever added to a closed neighborhood, so the current
        # count is a floor on the final score; a color absent from a fully
        # colored neighborhood is lost for good.
        got = full
        can = full
        for x in range(seen.shape[0]):
            if rel[x]:
                got &= seen[x]
                if unc[x] == 0:
                    can &= seen[x]
        return popcount(got), popcount(can)

    bounds = jit(bounds)

    def canon_key(colors, k, restricted, relabel):
        # base-(k+1) code after relabeling colors by first occurrence;
        # color 1 stays pinned when Bob is restricted to it
        for c in range(k + 1):
            relabel[c] = 0
        nxt = 1
        if restricted:
            relabel[1] = 1
            nxt = 2
        key = 0
        base = k + 1
        for v in range(colors.shape[0]):
            c = colors[v]
            if c != 0:
                if relabel[c] == 0:
                    relabel[c] = nxt
                    nxt += 1
                key = key * base + relabel[c]
            else:
                key = key * base
        return key

    canon_key = jit(canon_key)

    def place(v, c, colors, indptr, indices, cnt, seen, unc):
        colors[v] = c
        for i in range(indptr[v], indptr[v + 1]):
            x = indices[i]
            cnt[x, c] += 1
            if cnt[x, c] == 1:
                seen[x] |= 1 << c
            unc[x] -= 1

    place = jit(place)

    def unplace(v, c, colors, indptr, indices, cnt, seen, unc):
        colors[v] = 0
        for i in range(indptr[v], indptr[v + 1]):
            x = indices[i]
            cnt[x, c] -= 1
            if cnt[x, c] == 0:
                seen[x] &= ~(1 << c)
            unc[x] += 1

    unplace = jit(unplace)

    def store(table, key, won, thr, k):
        e = table.get(key, -1)
        if e < 0:
            lo = 0
            hi = k
        else:
            lo = e >> SHIFT
            hi = e & LOW
        if won:
            if thr > lo:
                lo = thr
        elif thr - 1 < hi:
            hi = thr - 1
        table[key] = (lo << SHIFT) | hi

    store = jit(store)

    def search(colors, indptr, indices, rel, k, alice_first, restricted, thr, table, stats):
        """Can Alice force at least ``thr`` colors dominating every vertex
        flagged in ``rel``, starting from ``colors``?

        AND/OR depth-first search over an explicit stack with a transposition
        table keyed on the color-canonical position. Unused colors are
        interchangeable, so only the lowest unused one is expanded.
        ``stats`` is ``[nodes, table_hits, node_budget]``; returns 1 (Alice),
        0 (Bob) or -1 (budget exhausted). ``colors`` is left as given.
        """
        n = colors.shape[0]
        full = (1 << (k + 1)) - 2
        cnt = np.zeros((n, k + 1), dtype=np.int64)
        seen = np.zeros(n, dtype=np.int64)
        unc = np.zeros(n, dtype=np.int64)
        for x in range(n):
            unc[x] = indptr[x + 1] - indptr[x]
        moved0 = 0
        for v in range(n):
            c = colors[v]
            if c != 0:
                moved0 += 1
                place(v, c, colors, indptr, indices, cnt, seen, unc)

        relabel = np.zeros(k + 1, dtype=np.int64)
        fv = np.zeros(n + 1, dtype=np.int64)
        fc = np.zeros(n + 1, dtype=np.int64)
        fkey = np.zeros(n + 1, dtype=np.int64)
        fallowed = np.zeros(n + 1, dtype=np.int64)
        falice = np.zeros(n + 1, dtype=np.bool_)

        # phases: 0 enter a node, 1 expand its next move, 2 return a value
        phase = 0
        d = 0
        res = 0
        while True:
            if phase == 0:
                stats[0] += 1
                if stats[0] > stats[2]:
                    for j in range(d - 1, -1, -1):
                        unplace(fv[j], fc[j], colors, indptr, indices, cnt, seen, unc)
                    return -1
                lo, hi = bounds(seen, unc, rel, full)
                used = 0
                for v in range(n):
                    used |= 1 << colors[v]
                used &= full
                # a color not yet on the board needs an uncolored vertex
                cap = popcount(used) + (n - moved0 - d)
                if cap < hi:
                    hi = cap
                if lo >= thr:
                    res = 1
                    phase = 2
                elif hi < thr:
                    res = 0
                    phase = 2
                else:
                    key = canon_key(colors, k, restricted, relabel)
                    e = table.get(key, -1)
                    if e >= 0 and (e >> SHIFT) >= thr:
                        stats[1] += 1
                        res = 1
                        phase = 2
                    elif e >= 0 and (e & LOW) < thr:
                        stats[1] += 1
                        res = 0
                        phase = 2
                    else:
                        alice = ((moved0 + d) % 2 == 0) == alice_first
                        fkey[d] = key
                        falice[d] = alice
                        if restricted and not alice:
                            allowed = 2
                        else:
                            if restricted:
                                used |= 2
                            for c in range(1, k + 1):
                                if not (used >> c) & 1:
                                    used |= 1 << c
                                    break
                            allowed = used
                        fallowed[d] = allowed
                        fv[d] = 0
                        fc[d] = 0
                        phase = 1
            elif phase == 1:
                found = False
                v = fv[d]
                c = fc[d] + 1
                allowed = fallowed[d]
                while v < n:
                    if colors[v] == 0:
                        while c <= k:
                            if (allowed >> c) & 1:
                                found = True
                                break
                            c += 1
                        if found:
                            break
                    v += 1
                    c = 1
                if found:
                    fv[d] = v
                    fc[d] = c
                    place(v, c, colors, indptr, indices, cnt, seen, unc)
                    d += 1
                    phase = 0
                else:
                    res = 0 if falice[d] else 1
                    store(table, fkey[d], res == 1, thr, k)
                    phase = 2
            else:
                if d == 0:
                    return res
                d -= 1
                unplace(fv[d], fc[d], colors, indptr, indices, cnt, seen, unc)
                if (falice[d] and res == 1) or (not falice[d] and res == 0):
                    store(table, fkey[d], res == 1, thr, k)
                else:
                    phase = 1

    search = jit(search)
    return SimpleNamespace(search=search, canon_key=canon_key, bounds=bounds, jitted=jitted)


def _identity(fn):
    return fn


PY_KERNELS = build_kernels(_identity)
KERNELS = build_kernels(njit, jitted=True) if USE_NUMBA else PY_KERNELS


def graph_code_loop(adj, perms, pair_i, pair_j):
    """Minimum adjacency bit-string code over all vertex permutations.

    Bit order: pairs (i, j), i < j, lexicographic, first pair most
    significant. Returns ``(code, index of a minimizing permutation)``.
    """
    best = -1
    best_p = 0
    m = pair_i.shape[0]
    for p in range(perms.shape[0]):
        code = 0
        pruned = False
        for t in range(m):
            code = (code << 1) | adj[perms[p, pair_i[t]], perms[p, pair_j[t]]]
            if best >= 0 and (code << (m - 1 - t)) > best:
                pruned = True
                break
        if not pruned and (best < 0 or code < best):
            best = code
            best_p = p
    return best, best_p


def graph_code_numpy(adj, perms, pair_i, pair_j):
    bits = adj[perms[:, pair_i], perms[:, pair_j]].astype(np.int64)
    weights = np.left_shift(np.int64(1), np.arange(bits.shape[1] - 1, -1, -1, dtype=np.int64))
    codes = bits @ weights
    p = int(np.argmin(codes))
    return int(codes[p]), p


graph_code = njit(graph_code_loop) if USE_NUMBA else graph_code_numpy
