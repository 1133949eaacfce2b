"""Topology generators: full meshes, unit-disk random geometric graphs, bundled fixture."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .graph import Graph, GraphError, all_connected, graph_from_arcs, parse_adjacency_matrix


@dataclass(frozen=True)
class GeometricScenario:
    """Deployment metadata for a generated unit-disk topology.

    Positions are in meters inside the square of side sqrt(n/density) km.
    """

    n: int
    density: float
    range_m: float
    seed: int
    positions: tuple[tuple[float, float], ...]

    @property
    def side_m(self) -> float:
        return math.sqrt(self.n / self.density) * 1000.0

    def sidecar_text(self) -> str:
        """One line per node 'id x_m y_m', with a header echoing the parameters."""
        out = [f"# n={self.n} density={self.density} range_m={self.range_m} seed={self.seed}"]
        for i, (x, y) in enumerate(self.positions):
            out.append(f"{i} {x:.6f} {y:.6f}")
        return "\n".join(out) + "\n"


def full_mesh(n: int) -> Graph:
    """Undirected complete graph on n vertices."""
    if n < 1:
        raise GraphError("full mesh needs at least one node")
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j]
    return graph_from_arcs(n, arcs, directed=False)


def random_geometric(n: int, density: float, range_m: float,
                     seed: int) -> tuple[Graph, GeometricScenario]:
    """Uniform i.i.d. positions in the density-matched square; unit-disk links.

    The seed-to-output mapping is frozen: positions come from
    ``random.Random(seed)``, x then y per node in node order.
    """
    if n < 1:
        raise GraphError("need at least one node")
    if density <= 0:
        raise GraphError("density must be positive")
    if range_m <= 0:
        raise GraphError("transmission range must be positive")
    side = math.sqrt(n / density) * 1000.0
    rng = random.Random(seed)
    positions = tuple((rng.uniform(0.0, side), rng.uniform(0.0, side)) for _ in range(n))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if math.dist(positions[i], positions[j]) <= range_m:
                arcs.append((i, j))
    g = graph_from_arcs(n, arcs, directed=False)
    return g, GeometricScenario(n=n, density=density, range_m=range_m, seed=seed,
                                positions=positions)


def connected_or_retry(n: int, density: float, range_m: float,
                       seed: int, max_attempts: int = 1000
                       ) -> tuple[Graph, GeometricScenario, int]:
    """Increment the seed until the generated topology is connected.

    Returns the attempt count; raises after max_attempts failures.
    """
    for attempt in range(1, max_attempts + 1):
        g, scen = random_geometric(n, density, range_m, seed + attempt - 1)
        if all_connected(g):
            return g, scen, attempt
    raise GraphError(
        f"no connected topology within {max_attempts} attempts "
        f"(n={n}, density={density}, range_m={range_m}, base seed={seed})")


# 8-node fixture: physical links, the single-next-hop overlay actually discovered
# by shortest-path tree routing, and the multi-path overlay (equal to physical).
_FIG_PHYSICAL = """\
8 undirected
0 1 0 0 0 0 1 0
1 0 0 0 1 1 1 1
0 0 0 1 1 0 1 0
0 0 1 0 1 0 1 0
0 1 1 1 0 1 1 1
0 1 0 0 1 0 1 1
1 1 1 1 1 1 0 1
0 1 0 0 1 1 1 0
"""

_FIG_DART = """\
8 directed
0 1 0 0 0 0 1 0
1 0 0 0 1 1 0 1
0 0 0 1 1 0 1 0
0 0 1 0 1 0 1 0
0 1 0 0 0 0 1 0
0 1 0 0 1 0 1 0
1 1 1 0 0 0 0 0
0 1 0 0 1 1 1 0
"""

_FIG_ATR = """\
8 undirected
0 1 0 0 0 0 1 0
1 0 0 0 1 1 1 1
0 0 0 1 1 0 1 0
0 0 1 0 1 0 1 0
0 1 1 1 0 1 1 1
0 1 0 0 1 0 1 1
1 1 1 1 1 1 0 1
0 1 0 0 1 1 1 0
"""


def fixture_fig2() -> tuple[Graph, Graph, Graph]:
    """The bundled 8-node (physical, single-path overlay, multi-path overlay) triple."""
    return (parse_adjacency_matrix(_FIG_PHYSICAL),
            parse_adjacency_matrix(_FIG_DART),
            parse_adjacency_matrix(_FIG_ATR))


def fixture_fig2_text() -> tuple[str, str, str]:
    """Canonical matrix text for the fixture triple."""
    return _FIG_PHYSICAL, _FIG_DART, _FIG_ATR


def mean_degree(g: Graph) -> float:
    """Mean undirected degree (stored arc count over n, i.e. 2|E|/n when undirected)."""
    return g.m / g.n if g.n else 0.0
