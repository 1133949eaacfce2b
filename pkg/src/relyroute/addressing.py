"""Binary tree address space and deterministic centralized address allocation."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError, all_connected


class AllocationError(GraphError):
    """Address allocation cannot proceed (disconnected graph or exhausted space)."""


def level_of_divergence(a: str, b: str) -> int:
    """Index of the first differing bit (0 = most significant); len(a) when equal."""
    if len(a) != len(b):
        raise ValueError(f"address length mismatch: {len(a)} vs {len(b)}")
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return k
    return len(a)


def default_bits(n: int) -> int:
    """Default address width: ceil(log2 n) plus two bits of slack."""
    return max(1, math.ceil(math.log2(max(n, 1)))) + 2


@dataclass(frozen=True)
class AddressMap:
    """Bijection node id -> l-bit address string, rooted at the all-zeros address."""

    l: int
    root: int
    assignment: dict[int, str]

    def __post_init__(self):
        seen: set[str] = set()
        for node, addr in self.assignment.items():
            if len(addr) != self.l or set(addr) - {"0", "1"}:
                raise AllocationError(f"node {node}: malformed address {addr!r}")
            if addr in seen:
                raise AllocationError(f"duplicate address {addr}")
            seen.add(addr)

    def address(self, node: int) -> str:
        return self.assignment[node]

    def nodes(self) -> list[int]:
        return sorted(self.assignment)

    def to_text(self) -> str:
        out = [f"l={self.l} root={self.root}"]
        for node in self.nodes():
            out.append(f"{node} {self.assignment[node]}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "AddressMap":
        lines = [ln for ln in text.split("\n") if ln.strip()]
        header = dict(tok.split("=") for tok in lines[0].split())
        assignment = {}
        for ln in lines[1:]:
            node, addr = ln.split()
            assignment[int(node)] = addr
        return cls(l=int(header["l"]), root=int(header["root"]), assignment=assignment)


def allocate_addresses(g: Graph, root: int, l: int) -> AddressMap:
    """Deterministic BFS allocation over the binary address tree.

    The root takes the all-zeros address.  Each joining node scans, for its BFS
    parent first and then any other already-addressed neighbor (ascending id),
    candidate addresses formed by flipping bit k of the neighbor's address and
    zeroing everything deeper, for k from l-1 down to 0.  A candidate is feasible
    when no assigned address shares its length-(k+1) prefix, which keeps every
    address-prefix class connected in g.
    """
    g.check_vertex(root)
    if g.directed:
        raise AllocationError("addresses are allocated on undirected graphs")
    if (1 << l) < g.n:
        raise AllocationError(f"2^{l} addresses cannot cover {g.n} nodes")
    if not all_connected(g):
        raise AllocationError("graph is disconnected; allocation needs a connected graph")

    assignment = {root: "0" * l}
    prefixes: set[str] = {assignment[root][:k] for k in range(1, l + 1)}
    parent: dict[int, int] = {}
    order: list[int] = []
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.out_neighbors(u):  # ascending id: deterministic BFS tie-break
            if v not in seen:
                seen.add(v)
                parent[v] = u
                order.append(v)
                queue.append(v)

    for v in order:
        donors = [parent[v]] + [u for u in g.out_neighbors(v)
                                if u in assignment and u != parent[v]]
        addr = None
        for u in donors:
            base = assignment[u]
            for k in range(l - 1, -1, -1):
                candidate = base[:k] + ("1" if base[k] == "0" else "0") + "0" * (l - k - 1)
                if candidate[:k + 1] not in prefixes:
                    addr = candidate
                    break
            if addr is not None:
                break
        if addr is None:
            raise AllocationError(
                f"address space exhausted at node {v} (l={l}); no feasible "
                f"candidate from any addressed neighbor")
        assignment[v] = addr
        prefixes.update(addr[:k] for k in range(1, l + 1))

    return AddressMap(l=l, root=root, assignment=assignment)
