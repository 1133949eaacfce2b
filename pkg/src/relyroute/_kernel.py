"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set RELYROUTE_FORCE_PURE=1 to force the fallback (used by the benchmark and by
tests comparing both kernels).
"""

from __future__ import annotations

import os

from . import _cutcore_py

_COMPILED_MAX_N = 64
_COMPILED_MAX_M = 120

try:
    if os.environ.get("RELYROUTE_FORCE_PURE") == "1":
        _compiled = None
    else:
        from . import _cutcore as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"


def cut_event_histogram(n, arcs, s, t, descending=False, rank=None, deadline=None):
    """Dispatch to the fastest available kernel.

    ``rank`` optionally assigns a branch priority to each vertex; frontier arcs
    branch in ascending (rank[head], rank[tail], head, tail) order, reversed
    when ``descending``.  The result is independent of the ordering.
    """
    if rank is None:
        key = lambda a: (a[1], a[0])
    else:
        key = lambda a: (rank[a[1]], rank[a[0]], a[1], a[0])
    arcs = sorted(arcs, key=key, reverse=descending)
    if _compiled is not None and n <= _COMPILED_MAX_N and len(arcs) <= _COMPILED_MAX_M:
        return _compiled.cut_event_histogram(n, arcs, s, t, deadline=deadline)
    return _cutcore_py.cut_event_histogram(n, arcs, s, t, deadline=deadline)


def reachability_grid(n, arcs, s, p_values, deadline=None):
    """Per-source subset DP: R_st at each p for every target t at once."""
    arcs = sorted(arcs)
    if _compiled is not None:
        return _compiled.reachability_grid(n, arcs, s, p_values, deadline=deadline)
    return _cutcore_py.reachability_grid(n, arcs, s, p_values, deadline=deadline)
