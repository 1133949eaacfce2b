"""Tree-routing table construction, path discovery and overlay-graph extraction.

Two table modes are supported: single-next-hop ("dart") keeps one best next hop
per sibling subtree, multi-path ("atr") keeps every admissible one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .addressing import AddressMap, level_of_divergence
from .graph import Graph, GraphError, graph_from_arcs

DART = "dart"
ATR = "atr"

PATH_CAP = 10 ** 6


@dataclass(frozen=True)
class RouteEntry:
    """Next hops toward the sibling subtree at one divergence level.

    Cost is hops to the nearest subtree member when forwarding through that
    neighbor.  Single-next-hop mode stores exactly one pair.
    """

    level: int
    next_hops: tuple[tuple[int, int], ...]  # (neighbor id, cost) sorted by id


@dataclass(frozen=True)
class RoutingTables:
    mode: str
    l: int
    per_node: dict[int, dict[int, RouteEntry]]  # node -> level -> entry

    def entry(self, node: int, level: int) -> RouteEntry | None:
        return self.per_node.get(node, {}).get(level)


@dataclass(frozen=True)
class PathSet:
    source: int
    target: int
    paths: tuple[tuple[int, ...], ...]
    truncated: bool = False


def _subtree_costs(g: Graph, addrs: AddressMap, prefix: str) -> dict[int, int]:
    """Hop distance to the nearest node whose address extends ``prefix``.

    Distance-vector information about a subtree only circulates inside the
    enclosing class (nodes sharing all but the last prefix bit): relaxation is
    restricted to that class, mirroring how table entries actually propagate.
    """
    k = len(prefix) - 1
    enclosing = prefix[:k]
    members = [v for v in addrs.nodes() if addrs.address(v).startswith(prefix)]
    allowed = {v for v in addrs.nodes() if addrs.address(v).startswith(enclosing)}
    dist = {v: 0 for v in members}
    queue = deque(members)
    while queue:
        u = queue.popleft()
        for w in g.out_neighbors(u):
            if w in allowed and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def build_tables(g: Graph, addrs: AddressMap, mode: str) -> RoutingTables:
    """Populate per-node, per-level routing tables on an addressed topology."""
    if mode not in (DART, ATR):
        raise GraphError(f"unknown routing mode {mode!r}")
    if set(addrs.nodes()) != set(range(g.n)):
        raise GraphError("address map does not cover all graph nodes")
    l = addrs.l
    cost_cache: dict[str, dict[int, int]] = {}
    per_node: dict[int, dict[int, RouteEntry]] = {u: {} for u in range(g.n)}

    for u in range(g.n):
        a_u = addrs.address(u)
        for k in range(l):
            # sibling subtree at level k: first k bits equal, bit k flipped
            prefix = a_u[:k] + ("1" if a_u[k] == "0" else "0")
            if prefix not in cost_cache:
                cost_cache[prefix] = _subtree_costs(g, addrs, prefix)
            dist = cost_cache[prefix]
            if u not in dist:
                continue  # subtree empty or unreachable within the class
            cost_u = dist[u]
            hops = []
            for w in g.out_neighbors(u):
                a_w = addrs.address(w)
                if a_w.startswith(prefix):
                    hops.append((w, 1))  # already inside the subtree
                elif a_w[:k] == a_u[:k] and a_w[k] == a_u[k]:
                    cw = dist.get(w)
                    if cw is not None and (cw, w) < (cost_u, u):
                        hops.append((w, 1 + cw))
            if not hops:
                continue
            if mode == DART:
                best = min(hops, key=lambda h: (h[1], h[0]))
                hops = [best]
            per_node[u][k] = RouteEntry(level=k, next_hops=tuple(sorted(hops)))
    return RoutingTables(mode=mode, l=l, per_node=per_node)


def destination_dag(tables: RoutingTables, addrs: AddressMap, t: int) -> dict[int, tuple[int, ...]]:
    """Admissible next hops toward destination t, per node.

    The hop relation is acyclic: each hop strictly increases the matched prefix
    with t or keeps it while strictly decreasing (cost, id).
    """
    a_t = addrs.address(t)
    out: dict[int, tuple[int, ...]] = {}
    for u in addrs.nodes():
        if u == t:
            continue
        k = level_of_divergence(addrs.address(u), a_t)
        entry = tables.entry(u, k)
        if entry is not None:
            out[u] = tuple(w for (w, _c) in entry.next_hops)
    return out


def _coreachable(dag: dict[int, tuple[int, ...]], t: int, n: int) -> set[int]:
    """Nodes from which t is reachable along admissible hops (t included)."""
    rev: dict[int, list[int]] = {}
    for u, hops in dag.items():
        for w in hops:
            rev.setdefault(w, []).append(u)
    seen = {t}
    stack = [t]
    while stack:
        v = stack.pop()
        for u in rev.get(v, ()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def discover_paths(tables: RoutingTables, g: Graph, addrs: AddressMap,
                   s: int, t: int, cap: int = PATH_CAP) -> PathSet:
    """Enumerate every forwarding path from s to t by branching over next hops.

    Unreachable destinations yield an empty path set.  Enumeration stops after
    ``cap`` paths and flags truncation.
    """
    if s == t:
        raise GraphError("path discovery needs distinct endpoints")
    dag = destination_dag(tables, addrs, t)
    good = _coreachable(dag, t, g.n)
    paths: list[tuple[int, ...]] = []
    truncated = False

    def walk(u: int, acc: list[int]) -> bool:
        nonlocal truncated
        if u == t:
            if len(paths) >= cap:
                truncated = True
                return False
            paths.append(tuple(acc))
            return True
        for w in dag.get(u, ()):
            if w in good:
                acc.append(w)
                ok = walk(w, acc)
                acc.pop()
                if not ok:
                    return False
        return True

    if s in good:
        walk(s, [s])
    return PathSet(source=s, target=t, paths=tuple(paths), truncated=truncated)


def pair_overlay_arcs(tables: RoutingTables, g: Graph, addrs: AddressMap,
                      s: int, t: int) -> frozenset[tuple[int, int]]:
    """Arcs lying on at least one admissible s-t path, without enumerating paths.

    An arc joins the pair overlay iff its tail is forward-reachable from s and
    its head still reaches t inside the per-destination hop DAG.
    """
    dag = destination_dag(tables, addrs, t)
    good = _coreachable(dag, t, g.n)
    if s not in good:
        return frozenset()
    fwd = {s}
    stack = [s]
    arcs = set()
    while stack:
        u = stack.pop()
        if u == t:
            continue
        for w in dag.get(u, ()):
            if w in good:
                arcs.add((u, w))
                if w not in fwd:
                    fwd.add(w)
                    stack.append(w)
    return frozenset(arcs)


def overlay_graph(tables: RoutingTables, g: Graph, addrs: AddressMap) -> Graph:
    """Directed union of the discovered path sets over every ordered pair."""
    arcs: set[tuple[int, int]] = set()
    for t in range(g.n):
        dag = destination_dag(tables, addrs, t)
        good = _coreachable(dag, t, g.n)
        for u, hops in dag.items():
            if u in good:
                # u itself is a valid source, so every surviving hop is used
                arcs.update((u, w) for w in hops if w in good)
    return graph_from_arcs(g.n, arcs, directed=True)
