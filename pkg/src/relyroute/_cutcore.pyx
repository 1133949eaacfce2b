# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled cut-state enumeration kernel.

Same recursion as ``_cutcore_py`` (source-set merge with absorption, event
histogram over conditioned failed/working arcs, memoized on the merged set plus
the conditioned-failed frontier arcs), with bitset state and 128-bit counts.

Limits: n <= 64 vertices, m <= 120 arcs; the dispatcher falls back to the pure
kernel beyond that.
"""

import time

from cython.operator cimport dereference
from libc.stdint cimport int32_t, int64_t, uint16_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

cdef extern from *:
    """
    static inline int _bitpos_impl(unsigned long long b) {
        return __builtin_ctzll(b);
    }
    """
    ctypedef unsigned long long uint128 "unsigned __int128"
    int _bitpos_impl(unsigned long long b) nogil
    int __builtin_popcountll(unsigned long long x) nogil


cdef inline uint64_t _mix(uint64_t ss, uint64_t flo, uint64_t fhi) nogil:
    cdef uint64_t h = ss * <uint64_t>0x9E3779B97F4A7C15ULL
    h ^= (flo + <uint64_t>0xC2B2AE3D27D4EB4FULL) * <uint64_t>0x165667B19E3779F9ULL
    h ^= (fhi + <uint64_t>0x27D4EB2F165667C5ULL) * <uint64_t>0x9E3779B97F4A7C15ULL
    h ^= h >> 29
    h *= <uint64_t>0xBF58476D1CE4E5B9ULL
    h ^= h >> 32
    return h


cdef class _Engine:
    cdef int n, m, t, cells
    cdef uint64_t tbit
    cdef vector[int32_t] tail, head
    cdef vector[uint64_t] out_mask, in_mask, head_bit, head_arcs_lo, head_arcs_hi
    cdef unordered_map[uint64_t, vector[int32_t]] memo
    cdef vector[uint64_t] st_ss, st_flo, st_fhi
    cdef vector[int64_t] st_off
    cdef vector[int32_t] st_len
    cdef vector[uint16_t] h_f, h_w
    cdef vector[uint128] h_cnt
    cdef vector[uint128] tmp          # (n+1) frames of (m+1)*(n+1) cells
    cdef vector[int32_t] touched      # (n+1) frames of (m+1)*(n+1) slots
    cdef vector[int32_t] cfree        # (n+1) frames of m slots
    cdef object deadline
    cdef long long expansions

    def __init__(self, int n, arcs, int s, int t, object deadline):
        cdef int i, u, v
        self.n = n
        self.m = len(arcs)
        self.t = t
        self.tbit = (<uint64_t>1) << t
        self.deadline = deadline
        self.expansions = 0
        self.out_mask.assign(n, <uint64_t>0)
        self.in_mask.assign(n, <uint64_t>0)
        self.head_arcs_lo.assign(n, <uint64_t>0)
        self.head_arcs_hi.assign(n, <uint64_t>0)
        for i, (u, v) in enumerate(arcs):
            self.tail.push_back(u)
            self.head.push_back(v)
            self.head_bit.push_back((<uint64_t>1) << v)
            self.out_mask[u] |= (<uint64_t>1) << v
            self.in_mask[v] |= (<uint64_t>1) << u
            if i < 64:
                self.head_arcs_lo[v] |= (<uint64_t>1) << i
            else:
                self.head_arcs_hi[v] |= (<uint64_t>1) << (i - 64)
        self.cells = (self.m + 1) * (self.n + 1)
        self.tmp.assign((n + 1) * self.cells, <uint128>0)
        self.touched.resize((n + 1) * self.cells)
        self.cfree.resize((n + 1) * max(self.m, 1))

    cdef uint64_t absorb(self, uint64_t ss) nogil:
        # Merge every node that cannot reach t while avoiding ss; this
        # marginalizes its arcs exactly and subsumes the dead-end rule.
        cdef uint64_t full = ((<uint64_t>1) << self.n) - 1 if self.n < 64 \
            else <uint64_t>0xFFFFFFFFFFFFFFFFULL
        cdef uint64_t reach, frontier, grown, rem, b, dead
        while True:
            reach = self.tbit
            frontier = self.tbit
            while frontier:
                grown = 0
                rem = frontier
                while rem:
                    b = rem & (0 - rem)
                    rem ^= b
                    grown |= self.in_mask[_bitpos_impl(b)] & ~ss & ~reach
                reach |= grown
                frontier = grown
            dead = full & ~ss & ~reach
            if not dead:
                return ss
            ss |= dead

    cdef int32_t lookup(self, uint64_t ss, uint64_t flo, uint64_t fhi):
        cdef uint64_t h = _mix(ss, flo, fhi)
        cdef size_t i
        cdef int32_t sid
        it = self.memo.find(h)
        if it != self.memo.end():
            for i in range(dereference(it).second.size()):
                sid = dereference(it).second[i]
                if self.st_ss[sid] == ss and self.st_flo[sid] == flo \
                        and self.st_fhi[sid] == fhi:
                    return sid
        return -1

    cdef int32_t rec(self, uint64_t ss, uint64_t flo, uint64_t fhi, int depth) except -2:
        cdef int32_t sid = self.lookup(ss, flo, fhi)
        if sid >= 0:
            return sid
        self.expansions += 1
        if self.deadline is not None and (self.expansions & 4095) == 0:
            if time.monotonic() > <double>self.deadline:
                raise TimeoutError("cut enumeration exceeded its time budget")

        cdef int32_t* cf = &self.cfree[depth * max(self.m, 1)]
        cdef uint128* frame = &self.tmp[depth * self.cells]
        cdef int32_t* touch = &self.touched[depth * self.cells]
        cdef int ntouch = 0, ncf = 0
        cdef int i, j, k, cell

        for i in range(self.m):
            if (ss >> self.tail[i]) & 1 and not (ss >> self.head[i]) & 1:
                if i < 64:
                    if flo & ((<uint64_t>1) << i):
                        continue
                else:
                    if fhi & ((<uint64_t>1) << (i - 64)):
                        continue
                cf[ncf] = i
                ncf += 1

        # root event of this state: every frontier arc fails
        cell = ncf * (self.n + 1)
        frame[cell] = 1
        touch[0] = cell
        ntouch = 1

        cdef uint64_t fl_lo = flo, fl_hi = fhi
        cdef uint64_t ss2, into_lo, into_hi, added, b, fr2lo, fr2hi
        cdef int32_t child, ln
        cdef int64_t off
        cdef int v, a, f2, w2
        cdef uint128 c
        for j in range(ncf):
            a = cf[j]
            if self.head_bit[a] != self.tbit:
                ss2 = self.absorb(ss | self.head_bit[a])
                into_lo = 0
                into_hi = 0
                added = ss2 & ~ss
                while added:
                    b = added & (0 - added)
                    added ^= b
                    v = _bitpos_impl(b)
                    into_lo |= self.head_arcs_lo[v]
                    into_hi |= self.head_arcs_hi[v]
                fr2lo = fl_lo & ~into_lo
                fr2hi = fl_hi & ~into_hi
                child = self.rec(ss2, fr2lo, fr2hi, depth + 1)
                off = self.st_off[child]
                ln = self.st_len[child]
                for k in range(ln):
                    f2 = self.h_f[off + k] + j
                    w2 = self.h_w[off + k] + 1
                    cell = f2 * (self.n + 1) + w2
                    c = frame[cell]
                    if c == 0:
                        touch[ntouch] = cell
                        ntouch += 1
                    frame[cell] = c + self.h_cnt[off + k]
            if a < 64:
                fl_lo |= (<uint64_t>1) << a
            else:
                fl_hi |= (<uint64_t>1) << (a - 64)

        sid = <int32_t>self.st_ss.size()
        self.st_ss.push_back(ss)
        self.st_flo.push_back(flo)
        self.st_fhi.push_back(fhi)
        self.st_off.push_back(<int64_t>self.h_f.size())
        self.st_len.push_back(ntouch)
        for k in range(ntouch):
            cell = touch[k]
            self.h_f.push_back(<uint16_t>(cell // (self.n + 1)))
            self.h_w.push_back(<uint16_t>(cell % (self.n + 1)))
            self.h_cnt.push_back(frame[cell])
            frame[cell] = 0
        self.memo[_mix(ss, flo, fhi)].push_back(sid)
        return sid

    def run(self, int s):
        cdef uint64_t ss0 = self.absorb((<uint64_t>1) << s)
        if ss0 & self.tbit:
            raise ValueError("source set absorbed the target; s and t must differ")
        cdef int32_t root = self.rec(ss0, 0, 0, 0)
        cdef int64_t off = self.st_off[root]
        cdef int32_t ln = self.st_len[root]
        cdef int k
        cdef uint128 c
        out = {}
        for k in range(ln):
            c = self.h_cnt[off + k]
            out[(int(self.h_f[off + k]), int(self.h_w[off + k]))] = \
                (int(<uint64_t>(c >> 64)) << 64) | int(<uint64_t>c)
        return out


def reachability_grid(int n, arcs, int s, p_values, deadline=None):
    """R_st at each p for every t at once, by subset dynamic programming.

    h[S] = P(all of S reachable from s inside the induced subgraph G[S]);
    ascending-subset recurrence h[S] = 1 - sum over proper submasks T holding
    s of h[T] * q^(arcs from T into S minus T).  Then
    R_st(p) = sum over S holding s and t of h[S] * q^(arcs leaving S).
    Cost grows as 3^n regardless of arc density, so this is the fast path for
    dense graphs where per-pair cut enumeration blows up.

    Returns a list of n lists (one per target t, t == s slot all ones) of
    len(p_values) floats.
    """
    if n > 20:
        raise ValueError("subset grid supports at most 20 vertices")
    import time as _time

    cdef int m = len(arcs)
    cdef int np_ = len(p_values)
    cdef vector[uint64_t] out_mask
    out_mask.assign(n, <uint64_t>0)
    cdef int i, u, v, j
    for i, (u, v) in enumerate(arcs):
        out_mask[u] |= (<uint64_t>1) << v

    # q^e lookup per grid value, e = 0..m
    cdef vector[double] qpow
    qpow.assign(np_ * (m + 1), 1.0)
    cdef double q
    for j in range(np_):
        q = 1.0 - <double>p_values[j]
        for i in range(1, m + 1):
            qpow[j * (m + 1) + i] = qpow[j * (m + 1) + i - 1] * q

    cdef uint64_t full = (<uint64_t>1) << n
    cdef uint64_t sbit = (<uint64_t>1) << s
    cdef vector[double] h
    h.assign(<size_t>(full * np_), 0.0)
    cdef vector[double] out
    out.assign(n * np_, 0.0)
    cdef vector[double] acc
    acc.assign(np_, 0.0)

    cdef uint64_t S, T, U, rest, bits, b
    cdef int e, eout, steps = 0
    cdef double hv
    cdef double dl = -1.0
    if deadline is not None:
        dl = <double>deadline
    with nogil:
        for S in range(full):
            if not (S & sbit):
                continue
            steps += 1
            if dl >= 0.0 and (steps & 2047) == 0:
                with gil:
                    if _time.monotonic() > dl:
                        raise TimeoutError(
                            "subset enumeration exceeded its time budget")
            for j in range(np_):
                acc[j] = 0.0
            rest = S & ~sbit
            # proper submasks T of S containing s, via U = S \ T over
            # nonempty submasks of S \ {s}
            U = rest
            while U:
                T = S ^ U
                e = 0
                bits = T
                while bits:
                    b = bits & (0 - bits)
                    bits ^= b
                    e += __builtin_popcountll(out_mask[_bitpos_impl(b)] & U)
                for j in range(np_):
                    acc[j] += h[T * np_ + j] * qpow[j * (m + 1) + e]
                U = (U - 1) & rest
            for j in range(np_):
                hv = 1.0 - acc[j]
                if hv < 0.0:
                    hv = 0.0
                h[S * np_ + j] = hv
            # arcs leaving S in the full graph: the "reach set = S" leak
            eout = 0
            bits = S
            while bits:
                b = bits & (0 - bits)
                bits ^= b
                eout += __builtin_popcountll(out_mask[_bitpos_impl(b)] & ~S
                                             & (full - 1))
            bits = S
            while bits:
                b = bits & (0 - bits)
                bits ^= b
                v = _bitpos_impl(b)
                for j in range(np_):
                    out[v * np_ + j] += h[S * np_ + j] * qpow[j * (m + 1) + eout]
    result = []
    for v in range(n):
        result.append([min(max(out[v * np_ + j], 0.0), 1.0) for j in range(np_)])
    return result


def cut_event_histogram(int n, arcs, int s, int t, deadline=None):
    """Exact disconnection-event histogram {(failed, working): count}.

    Frontier arcs branch in the supplied order; the histogram is
    order-independent.
    """
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    if len(arcs) > 120:
        raise ValueError("compiled kernel supports at most 120 arcs")
    eng = _Engine(n, list(arcs), s, t, deadline)
    return eng.run(s)
