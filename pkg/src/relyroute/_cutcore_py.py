"""Pure-Python cut-state enumeration kernel.

Reference implementation of the recursive source-set merge: grow a supersource
set from s, absorb dead-end nodes, account the event "every arc leaving the set
fails", and branch on each frontier arc conditioned operative.  Results are
returned as an event histogram {(failed, working): count} from which both the
exact cut-set counts and the fixed-p unreliability follow.

The compiled kernel in ``_cutcore`` implements the same recursion; this module
is the fallback selected at import when the extension is unavailable.
"""

from __future__ import annotations

import time


def reachability_grid(n: int, arcs, s: int, p_values,
                      deadline: float | None = None) -> list[list[float]]:
    """R_st at each p for every target t at once, by subset dynamic programming.

    h[S] = P(all of S reachable from s inside the induced subgraph G[S]),
    built over ascending subsets:
    h[S] = 1 - sum over proper submasks T holding s of
    h[T] * q^(arcs from T into S minus T).  The reach set equals S exactly
    when S is internally reachable and every arc leaving S fails, so
    R_st(p) = sum over S holding s and t of h[S] * q^(arcs leaving S).
    Cost grows as 3^n regardless of arc density.
    """
    m = len(arcs)
    out_mask = [0] * n
    for (u, v) in arcs:
        out_mask[u] |= 1 << v
    grid = list(p_values)
    qpow = [[(1.0 - p) ** e for e in range(m + 1)] for p in grid]
    np_ = len(grid)
    full = 1 << n
    sbit = 1 << s
    h = [None] * full
    out = [[0.0] * np_ for _ in range(n)]
    steps = 0
    for S in range(full):
        if not S & sbit:
            continue
        steps += 1
        if deadline is not None and steps % 1024 == 0 and time.monotonic() > deadline:
            raise TimeoutError("subset enumeration exceeded its time budget")
        acc = [0.0] * np_
        rest = S & ~sbit
        U = rest
        while U:
            T = S ^ U
            e = 0
            bits = T
            while bits:
                b = bits & -bits
                bits ^= b
                e += bin(out_mask[b.bit_length() - 1] & U).count("1")
            hT = h[T]
            for j in range(np_):
                acc[j] += hT[j] * qpow[j][e]
            U = (U - 1) & rest
        h[S] = [max(1.0 - a, 0.0) for a in acc]
        eout = 0
        bits = S
        while bits:
            b = bits & -bits
            bits ^= b
            eout += bin(out_mask[b.bit_length() - 1] & ~S & (full - 1)).count("1")
        hS = h[S]
        bits = S
        while bits:
            b = bits & -bits
            bits ^= b
            row = out[b.bit_length() - 1]
            for j in range(np_):
                row[j] += hS[j] * qpow[j][eout]
    return [[min(max(x, 0.0), 1.0) for x in row] for row in out]


def cut_event_histogram(n: int, arcs, s: int, t: int,
                        deadline: float | None = None) -> dict[tuple[int, int], int]:
    """Exact disconnection-event histogram for the ordered pair (s, t).

    Each entry (f, w) -> count records ``count`` disjoint events in which f
    specific arcs failed, w specific arcs work, the remaining arcs are free,
    and t is unreachable from s regardless of the free arcs.  Frontier arcs
    are branched in the order the caller supplies them; the histogram is
    order-independent.
    """
    arcs = list(arcs)
    m = len(arcs)
    order = range(m)
    out_mask = [0] * n
    in_mask = [0] * n
    head_of = [v for (_u, v) in arcs]
    tail_of = [u for (u, _v) in arcs]
    for (u, v) in arcs:
        out_mask[u] |= 1 << v
        in_mask[v] |= 1 << u
    head_bit = [1 << v for v in head_of]
    tbit = 1 << t
    full = (1 << n) - 1

    memo: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
    checked = [0]

    def absorb(ss: int) -> int:
        # Nodes that cannot reach t while avoiding ss are irrelevant to the
        # s-t cut structure; merging them marginalizes their arcs exactly.
        while True:
            reach = tbit
            frontier = tbit
            while frontier:
                grown = 0
                rem = frontier
                while rem:
                    b = rem & -rem
                    rem ^= b
                    grown |= in_mask[b.bit_length() - 1] & ~ss & ~reach
                reach |= grown
                frontier = grown
            dead = full & ~ss & ~reach
            if not dead:
                return ss
            ss |= dead

    def rec(ss: int, frel: int) -> dict[tuple[int, int], int]:
        key = (ss, frel)
        hit = memo.get(key)
        if hit is not None:
            return hit
        checked[0] += 1
        if deadline is not None and checked[0] % 1024 == 0 and time.monotonic() > deadline:
            raise TimeoutError("cut enumeration exceeded its time budget")
        cfree = [i for i in order
                 if (ss >> tail_of[i]) & 1
                 and not (ss >> head_of[i]) & 1
                 and not (frel >> i) & 1]
        hist: dict[tuple[int, int], int] = {(len(cfree), 0): 1}
        failed_mask = frel
        for j, a in enumerate(cfree):
            if head_bit[a] != tbit:
                ss2 = absorb(ss | head_bit[a])
                fr2 = 0
                rem = failed_mask
                while rem:
                    b = rem & -rem
                    rem ^= b
                    if not ss2 & head_bit[b.bit_length() - 1]:
                        fr2 |= b
                sub = rec(ss2, fr2)
                for (df, dw), c in sub.items():
                    cell = (df + j, dw + 1)
                    hist[cell] = hist.get(cell, 0) + c
            failed_mask |= 1 << a
        memo[key] = hist
        return hist

    ss0 = absorb(1 << s)
    if ss0 & tbit:
        raise ValueError("source set absorbed the target; s and t must differ")
    return dict(rec(ss0, 0))
