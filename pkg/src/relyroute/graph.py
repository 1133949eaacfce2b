"""Probabilistic graph representation, adjacency-matrix I/O and connectivity primitives."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class GraphError(ValueError):
    """Invalid graph construction or query."""


class MatrixParseError(GraphError):
    """Malformed adjacency-matrix text.  Carries the offending row/column when known."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 0..n-1.

    Arcs are ordered pairs; an undirected graph stores both orientations and the
    arc set is kept symmetric.  No self-loops, no parallel arcs.
    """

    n: int
    directed: bool
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        for (i, j) in self.arcs:
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"arc ({i},{j}) endpoint out of range [0,{self.n})")
            if not self.directed and (j, i) not in self.arcs:
                raise GraphError(f"undirected graph missing reverse arc ({j},{i})")

    @property
    def m(self) -> int:
        """Number of stored arcs (an undirected edge counts twice)."""
        return len(self.arcs)

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self.arcs

    def out_neighbors(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.arcs if a == i)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} out of range [0,{self.n})")


@dataclass(frozen=True)
class LinkModel:
    """Uniform link success probability shared by every arc."""

    p: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise GraphError(f"link success probability {self.p} outside [0,1]")

    @property
    def q(self) -> float:
        return 1.0 - self.p


def graph_from_arcs(n: int, arcs, directed: bool) -> Graph:
    """Build a Graph, symmetrizing the arc set when undirected."""
    arcset = set()
    for (i, j) in arcs:
        arcset.add((i, j))
        if not directed:
            arcset.add((j, i))
    return Graph(n=n, directed=directed, arcs=frozenset(arcset))


def parse_adjacency_matrix(text: str) -> Graph:
    """Parse the matrix file format.

    Line 1 is ``<n> <directed|undirected>``; lines 2..n+1 carry n space-separated
    0/1 entries each.  Lines starting with ``#`` are ignored.
    """
    lines = [ln for ln in text.split("\n") if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixParseError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2 or header[1] not in ("directed", "undirected"):
        raise MatrixParseError(f"malformed header line {lines[0]!r}: "
                               "expected '<n> <directed|undirected>'")
    try:
        n = int(header[0])
    except ValueError:
        raise MatrixParseError(f"malformed vertex count {header[0]!r}") from None
    if n < 0:
        raise MatrixParseError(f"negative vertex count {n}")
    directed = header[1] == "directed"

    rows = lines[1:]
    if len(rows) != n:
        raise MatrixParseError(f"expected {n} matrix rows, found {len(rows)}",
                               row=len(rows))
    matrix: list[list[int]] = []
    for r, line in enumerate(rows):
        entries = line.split()
        if len(entries) != n:
            raise MatrixParseError(
                f"row {r} has {len(entries)} entries, expected {n}", row=r)
        row_vals = []
        for c, tok in enumerate(entries):
            if tok not in ("0", "1"):
                raise MatrixParseError(
                    f"row {r} column {c}: entry {tok!r} is not 0 or 1", row=r, col=c)
            row_vals.append(int(tok))
        matrix.append(row_vals)

    arcs = set()
    for i in range(n):
        if matrix[i][i] != 0:
            raise MatrixParseError(f"nonzero diagonal at row {i} column {i}",
                                   row=i, col=i)
        for j in range(n):
            if matrix[i][j]:
                if not directed and matrix[j][i] != 1:
                    raise MatrixParseError(
                        f"asymmetric entry under undirected header: "
                        f"row {i} column {j} is 1 but row {j} column {i} is 0",
                        row=i, col=j)
                arcs.add((i, j))
    return Graph(n=n, directed=directed, arcs=frozenset(arcs))


def serialize_adjacency_matrix(g: Graph) -> str:
    """Canonical matrix text: header, then one row per line, single spaces, LF."""
    kind = "directed" if g.directed else "undirected"
    out = [f"{g.n} {kind}"]
    for i in range(g.n):
        out.append(" ".join("1" if (i, j) in g.arcs else "0" for j in range(g.n)))
    return "\n".join(out) + "\n"


def adjacency_masks(g: Graph) -> list[int]:
    """Per-vertex out-neighbor bitmasks."""
    masks = [0] * g.n
    for (i, j) in g.arcs:
        masks[i] |= 1 << j
    return masks


def is_connected(g: Graph, s: int, t: int) -> bool:
    """True iff a directed path s -> t exists; s is connected to itself."""
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        return True
    masks = adjacency_masks(g)
    seen = 1 << s
    stack = [s]
    while stack:
        u = stack.pop()
        new = masks[u] & ~seen
        while new:
            b = new & -new
            new ^= b
            v = b.bit_length() - 1
            if v == t:
                return True
            seen |= b
            stack.append(v)
    return False


def all_connected(g: Graph) -> bool:
    """True iff every ordered pair is connected (single BFS suffices when undirected)."""
    if g.n <= 1:
        return True
    if not g.directed:
        return _reach_count(g, 0) == g.n
    return all(_reach_count(g, s) == g.n for s in range(g.n))


def _reach_count(g: Graph, s: int) -> int:
    masks = adjacency_masks(g)
    seen = 1 << s
    stack = [s]
    while stack:
        u = stack.pop()
        new = masks[u] & ~seen
        while new:
            b = new & -new
            new ^= b
            seen |= b
            stack.append(b.bit_length() - 1)
    return bin(seen).count("1")


def min_cut_size(g: Graph, s: int, t: int) -> int:
    """Minimum number of arcs whose removal disconnects s from t (Menger).

    Unit-capacity max-flow with BFS augmenting paths; 0 iff already disconnected.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise GraphError("min cut undefined for s = t")
    # residual[u][v]: residual capacity (0 or more; reverse arcs appear with 0)
    residual: dict[int, dict[int, int]] = {u: {} for u in range(g.n)}
    for (i, j) in g.arcs:
        residual[i][j] = residual[i].get(j, 0) + 1
        residual[j].setdefault(i, 0)
    flow = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v, cap in residual[u].items():
                if cap > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        v = t
        while parent[v] is not None:
            u = parent[v]
            residual[u][v] -= 1
            residual[v][u] += 1
            v = u
        flow += 1
