"""Exact terminal-pair routing reliability, symbolic polynomials and oracles.

The exact engine enumerates disconnection events by recursive source-set merge
(see the kernel modules) and converts them into cut-set counts: C_i is the
number of arc subsets of cardinality exactly i whose simultaneous failure
leaves t unreachable from s.  Undirected graphs are analyzed as symmetric
digraphs whose two arc orientations fail independently.
"""

from __future__ import annotations

import math
import os
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .graph import Graph, GraphError, is_connected

ARC_BOUND = 64
DEFAULT_BUDGET_MS = 60000


class ComputeBudgetError(RuntimeError):
    """Per-pair enumeration exceeded its time budget."""


def _budget_ms(time_budget_ms: int | None) -> int:
    if time_budget_ms is not None:
        return time_budget_ms
    return int(os.environ.get("RELYROUTE_TIME_BUDGET_MS", DEFAULT_BUDGET_MS))


@dataclass(frozen=True)
class CutSetCounts:
    """Exact cut-set counts C_0..C_m for one ordered pair.

    c is the minimum cut size (0 iff the pair is disconnected); counts[i] = C_i.
    """

    m: int
    c: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.m + 1:
            raise ValueError("counts must run from C_0 through C_m")


@dataclass(frozen=True)
class ReliabilityPolynomial:
    """R(p) as exact integer coefficients a_0..a_m, R(p) = sum a_j p^j."""

    coefficients: tuple[int, ...]

    def evaluate(self, p: float) -> float:
        acc = 0.0
        for a in reversed(self.coefficients):
            acc = acc * p + a
        return acc

    def to_text(self) -> str:
        terms = [f"{a}*p^{j}" for j, a in enumerate(self.coefficients) if a]
        terms.reverse()
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class FlowWeights:
    """Data-flow probabilities z_st per ordered pair; missing pairs default to 1."""

    z: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        for pair, w in self.z.items():
            if not (0.0 <= w <= 1.0):
                raise ValueError(f"flow weight {w} for pair {pair} outside [0,1]")

    def weight(self, s: int, t: int) -> float:
        return self.z.get((s, t), 1.0)


@dataclass(frozen=True)
class ReliabilityReport:
    """Per-pair and mean reliability over a probability grid."""

    p_values: tuple[float, ...]
    per_pair: dict[tuple[int, int], tuple[float, ...]]
    mean: tuple[float, ...]
    std: tuple[float, ...]
    pairs_connected: int
    pairs_total: int


def _counts_from_histogram(m: int, hist: dict[tuple[int, int], int]) -> list[int]:
    counts = [0] * (m + 1)
    for (f, w), cnt in hist.items():
        free = m - f - w
        for i in range(f, f + free + 1):
            counts[i] += cnt * math.comb(free, i - f)
    return counts


def _relevant_arcs(g: Graph, s: int, t: int) -> list[tuple[int, int]]:
    """Arcs on at least one directed s-t path; other arcs cannot affect the pair."""
    fwd = _reachable(g, s, forward=True)
    bwd = _reachable(g, t, forward=False)
    return [(u, v) for (u, v) in g.sorted_arcs() if u in fwd and v in bwd]


def _bfs_distance(n: int, arcs, s: int) -> dict[int, int]:
    adj: dict[int, list[int]] = {}
    for (u, v) in arcs:
        adj.setdefault(u, []).append(v)
    dist = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj.get(u, ()):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def _reachable(g: Graph, start: int, forward: bool) -> set[int]:
    adj: dict[int, list[int]] = {}
    for (u, v) in g.arcs:
        if forward:
            adj.setdefault(u, []).append(v)
        else:
            adj.setdefault(v, []).append(u)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def enumerate_cut_counts(g: Graph, s: int, t: int, *,
                         order: str = "ascending",
                         reduce_graph: bool = True,
                         time_budget_ms: int | None = None) -> CutSetCounts:
    """Exact C_i for every subset size i, by recursive source-set merge.

    Arcs off every s-t path are factored out exactly (they are free in all
    disconnection events).  ``order`` picks the frontier branch ordering
    ("ascending" or "descending" by head then tail); the result is
    order-independent.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise GraphError("cut enumeration undefined for s = t")
    m = g.m
    if m > ARC_BOUND:
        warnings.warn(f"graph has {m} arcs, above the advisory bound {ARC_BOUND}; "
                      "enumeration may be slow", RuntimeWarning, stacklevel=2)
    if order not in ("ascending", "descending"):
        raise ValueError(f"unknown frontier order {order!r}")

    if not is_connected(g, s, t):
        counts = [math.comb(m, i) for i in range(m + 1)]
        return CutSetCounts(m=m, c=0, counts=tuple(counts))

    arcs = _relevant_arcs(g, s, t) if reduce_graph else g.sorted_arcs()
    # Branch priority: heads nearer the source first (far fewer memo states
    # than plain id order on geometric graphs; the counts are unaffected).
    dist = _bfs_distance(g.n, arcs, s)
    rank = [dist.get(v, g.n + 1) for v in range(g.n)]
    deadline = time.monotonic() + _budget_ms(time_budget_ms) / 1000.0
    try:
        hist = _kernel.cut_event_histogram(g.n, arcs, s, t, rank=rank,
                                           descending=(order == "descending"),
                                           deadline=deadline)
    except TimeoutError as exc:
        raise ComputeBudgetError(
            f"pair ({s},{t}): {exc} (RELYROUTE_TIME_BUDGET_MS to raise it)") from exc

    inner = _counts_from_histogram(len(arcs), hist)
    extra = m - len(arcs)
    if extra:
        counts = [0] * (m + 1)
        for j, cj in enumerate(inner):
            if cj:
                for i in range(j, j + extra + 1):
                    counts[i] += cj * math.comb(extra, i - j)
    else:
        counts = inner
    c = next(i for i, ci in enumerate(counts) if ci)
    return CutSetCounts(m=m, c=c, counts=tuple(counts))


def terminal_pair_reliability(counts: CutSetCounts, p: float) -> float:
    """Evaluate R_st = 1 - sum_i C_i p^(m-i) (1-p)^i in floating point."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability {p} outside [0,1]")
    m = counts.m
    q = 1.0 - p
    total = 0.0
    for i in range(counts.c, m + 1):
        ci = counts.counts[i]
        if ci:
            total += ci * p ** (m - i) * q ** i
    return 1.0 - total


def symbolic_polynomial(counts: CutSetCounts) -> ReliabilityPolynomial:
    """Expand the cut-count form into exact integer monomial coefficients."""
    m = counts.m
    a = [0] * (m + 1)
    a[0] = 1
    for i in range(m + 1):
        ci = counts.counts[i]
        if ci:
            # C_i p^(m-i) (1-p)^i = sum_k C_i binom(i,k) (-1)^k p^(m-i+k)
            for k in range(i + 1):
                a[m - i + k] -= ci * math.comb(i, k) * (-1) ** k
    return ReliabilityPolynomial(coefficients=tuple(a))


def recursive_unreliability(g: Graph, s: int, t: int, p: float) -> float:
    """Numeric branch of the merge recursion: unreliability at one fixed p.

    Independent of the counts path; used to cross-check Eq-style evaluation.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise GraphError("unreliability undefined for s = t")
    hist = _kernel.cut_event_histogram(g.n, g.sorted_arcs(), s, t)
    q = 1.0 - p
    return float(sum(cnt * q ** f * p ** w for (f, w), cnt in hist.items()))


# Per-source subset DP ceilings: 3^n work and 2^n memory per source.  The
# compiled kernel keeps whole-graph sweeps cheap even on dense graphs; the
# pure fallback only pays off while 2^n stays tiny.
_GRID_MAX_N_COMPILED = 18
_GRID_MAX_N_PURE = 12


def _grid_per_pair(g: Graph, p_values, time_budget_ms):
    """All-pairs R_st grid via the per-source subset DP."""
    per_pair: dict[tuple[int, int], tuple[float, ...]] = {}
    arcs = g.sorted_arcs()
    for s in range(g.n):
        deadline = time.monotonic() + _budget_ms(time_budget_ms) / 1000.0
        try:
            rows = _kernel.reachability_grid(g.n, arcs, s, p_values,
                                             deadline=deadline)
        except TimeoutError as exc:
            raise ComputeBudgetError(
                f"source {s}: {exc} (RELYROUTE_TIME_BUDGET_MS to raise it)") from exc
        for t in range(g.n):
            if t != s:
                per_pair[(s, t)] = tuple(rows[t])
    return per_pair


def mean_reliability(g: Graph, p_values, weights: FlowWeights | None = None,
                     time_budget_ms: int | None = None) -> ReliabilityReport:
    """Mean and standard deviation of R_st over every ordered pair.

    Small-enough graphs go through the per-source subset DP (one enumeration
    per source covers every target and every p); larger ones fall back to
    per-pair cut enumeration with counts reused across all p values.
    Disconnected pairs contribute R_st = 0.
    """
    if g.n < 2:
        raise GraphError("mean reliability needs at least two nodes")
    weights = weights or FlowWeights()
    p_values = tuple(p_values)
    pairs = [(s, t) for s in range(g.n) for t in range(g.n) if s != t]
    grid_limit = (_GRID_MAX_N_COMPILED if _kernel.BACKEND == "compiled"
                  else _GRID_MAX_N_PURE)
    # Reversing every arc maps each arc-state bijectively onto an
    # equiprobable one and swaps the pair, so R_st = R_ts on
    # reversal-symmetric arc sets.
    mirror = all((v, u) in g.arcs for (u, v) in g.arcs)
    if g.n <= grid_limit:
        per_pair = _grid_per_pair(g, p_values, time_budget_ms)
        zero = tuple(0.0 for _ in p_values)
        for (s, t) in pairs:
            if not is_connected(g, s, t):
                per_pair[(s, t)] = zero
        if mirror:
            # both directions were computed independently; copying one over
            # the other removes last-bit noise between the equal values
            for (s, t) in pairs:
                if s < t:
                    per_pair[(t, s)] = per_pair[(s, t)]
    else:
        per_pair = {}
        for (s, t) in pairs:
            if (s, t) in per_pair:
                continue
            if is_connected(g, s, t):
                counts = enumerate_cut_counts(g, s, t,
                                              time_budget_ms=time_budget_ms)
                vals = tuple(terminal_pair_reliability(counts, p)
                             for p in p_values)
            else:
                vals = tuple(0.0 for _ in p_values)
            per_pair[(s, t)] = vals
            if mirror:
                per_pair[(t, s)] = vals
    connected = sum(1 for (s, t) in pairs if is_connected(g, s, t))
    npairs = len(pairs)
    mean = []
    std = []
    for idx, _p in enumerate(p_values):
        vals = [per_pair[pair][idx] for pair in pairs]
        weighted = sum(weights.weight(s, t) * per_pair[(s, t)][idx] for (s, t) in pairs)
        mu = weighted / npairs
        mean.append(mu)
        plain_mu = sum(vals) / npairs
        std.append(math.sqrt(sum((v - plain_mu) ** 2 for v in vals) / npairs))
    return ReliabilityReport(p_values=p_values, per_pair=per_pair,
                             mean=tuple(mean), std=tuple(std),
                             pairs_connected=connected, pairs_total=npairs)


def brute_force_reliability(g: Graph, s: int, t: int, p: float) -> float:
    """Oracle: sum state probabilities over all 2^m arc-state vectors."""
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise GraphError("reliability oracle undefined for s = t")
    arcs = g.sorted_arcs()
    m = len(arcs)
    if m > 20:
        raise GraphError(f"brute force limited to 20 arcs, got {m}")
    terms = []
    for state in range(1 << m):
        out = [0] * g.n
        for i in range(m):
            if (state >> i) & 1:
                u, v = arcs[i]
                out[u] |= 1 << v
        seen = 1 << s
        stack = [s]
        reached = s == t
        while stack and not reached:
            u = stack.pop()
            new = out[u] & ~seen
            while new:
                b = new & -new
                new ^= b
                v = b.bit_length() - 1
                if v == t:
                    reached = True
                seen |= b
                stack.append(v)
        if reached:
            up = bin(state).count("1")
            terms.append(p ** up * (1.0 - p) ** (m - up))
    # 2^m tiny terms accumulate rounding error under naive summation
    return math.fsum(terms)


def monte_carlo_reliability(g: Graph, s: int, t: int, p: float,
                            trials: int, seed: int) -> tuple[float, float]:
    """Sampled reachability frequency and its binomial standard error.

    Deterministic for a given seed (numpy PCG64 stream, frozen layout: one
    (trials, m) uniform block compared against p).
    """
    g.check_vertex(s)
    g.check_vertex(t)
    if trials < 1:
        raise GraphError("need at least one trial")
    if s == t:
        return 1.0, 0.0
    arcs = g.sorted_arcs()
    m = len(arcs)
    rng = np.random.default_rng(seed)
    up = rng.random((trials, m)) < p
    reach = np.zeros((trials, g.n), dtype=bool)
    reach[:, s] = True
    for _ in range(g.n):
        prev = reach.copy()
        for i, (u, v) in enumerate(arcs):
            np.logical_or(reach[:, v], prev[:, u] & up[:, i], out=reach[:, v])
        if np.array_equal(prev, reach):
            break
    hits = int(reach[:, t].sum())
    est = hits / trials
    stderr = math.sqrt(est * (1.0 - est) / trials)
    return est, stderr
