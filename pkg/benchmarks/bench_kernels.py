"""Benchmark the compiled cut-enumeration kernel against the pure-Python one.

Runs the same terminal pairs through both kernels on graphs of growing size
and prints per-pair wall times plus the speedup.  Usage:

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from relyroute import _cutcore_py, allocate_addresses, build_tables, overlay_graph
from relyroute import connected_or_retry, full_mesh
from relyroute._kernel import BACKEND
from relyroute.reliability import _relevant_arcs

try:
    from relyroute import _cutcore
except ImportError:
    _cutcore = None


def cases():
    mesh = full_mesh(6)
    yield "mesh n=6", mesh, 0, 5

    for seed, (s, t) in ((3, (0, 9)), (5, (0, 15))):
        g, _, _ = connected_or_retry(16, 64, 250.0, seed)
        yield f"geometric n=16 seed={seed}", g, s, t

    g, _, _ = connected_or_retry(12, 64, 250.0, 1)
    addrs = allocate_addresses(g, 0, 6)
    overlay = overlay_graph(build_tables(g, addrs, "atr"), g, addrs)
    yield "multi-path overlay n=12", overlay, 0, 11


def run_kernel(kernel, n, arcs, s, t, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = kernel.cut_event_histogram(n, arcs, s, t)
        best = min(best, time.perf_counter() - start)
    return result, best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=1,
                        help="timing repetitions per case (best-of)")
    args = parser.parse_args()

    print(f"active backend: {BACKEND}")
    if _cutcore is None:
        print("compiled kernel unavailable; timing the pure kernel only")
    header = f"{'case':32} {'arcs':>5} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, g, s, t in cases():
        arcs = sorted(_relevant_arcs(g, s, t), key=lambda a: (a[1], a[0]))
        pure_hist, pure_t = run_kernel(_cutcore_py, g.n, arcs, s, t, args.repeat)
        if _cutcore is None:
            print(f"{name:32} {len(arcs):>5} {pure_t:>10.4f} {'-':>13} {'-':>8}")
            continue
        fast_hist, fast_t = run_kernel(_cutcore, g.n, arcs, s, t, args.repeat)
        if fast_hist != pure_hist:
            raise AssertionError(f"kernel mismatch on {name}")
        print(f"{name:32} {len(arcs):>5} {pure_t:>10.4f} {fast_t:>13.4f} "
              f"{pure_t / fast_t:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
