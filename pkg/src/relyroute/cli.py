"""Command-line front end: topology generation, overlay extraction, reliability CSVs.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 compute budget
exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import __version__
from ._kernel import BACKEND
from .addressing import AllocationError, allocate_addresses, default_bits
from .graph import (Graph, GraphError, MatrixParseError, all_connected,
                    parse_adjacency_matrix, serialize_adjacency_matrix)
from .reliability import (ComputeBudgetError, FlowWeights, enumerate_cut_counts,
                          mean_reliability, symbolic_polynomial)
from .routing import ATR, DART, build_tables, discover_paths, overlay_graph
from .topology import (connected_or_retry, fixture_fig2_text, full_mesh,
                       mean_degree)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_BUDGET = 3

DEFAULT_GRID = "0.05:0.95:0.05"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_grid(spec: str) -> list[float]:
    try:
        start, stop, step = (float(tok) for tok in spec.split(":"))
    except ValueError:
        raise _UsageError(f"bad p grid {spec!r}: expected start:stop:step") from None
    if not (0.0 <= start <= stop <= 1.0) or step <= 0:
        raise _UsageError(f"bad p grid {spec!r}: need 0 <= start <= stop <= 1, step > 0")
    count = int((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 10) for i in range(count)]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _load_graph(path: str) -> Graph:
    return parse_adjacency_matrix(Path(path).read_text())


def _pipeline(g: Graph, root: int, bits: int, mode: str):
    addrs = allocate_addresses(g, root, bits)
    tables = build_tables(g, addrs, mode)
    return addrs, tables, overlay_graph(tables, g, addrs)


def _addr_digest(addrs) -> str:
    return hashlib.sha256(addrs.to_text().encode()).hexdigest()[:16]


def cmd_gen(args) -> int:
    chosen = sum(x is not None for x in (args.mesh, args.fixture, args.nodes))
    if chosen != 1:
        raise _UsageError("choose exactly one of --mesh, --fixture, --nodes")
    if args.fixture is not None:
        if args.fixture != "fig2":
            raise _UsageError(f"unknown fixture {args.fixture!r}")
        if not args.out_dir:
            raise _UsageError("--fixture requires --out-dir")
        outdir = Path(args.out_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, text in zip(("physical.adj", "dart.adj", "atr.adj"),
                              fixture_fig2_text()):
            with open(outdir / name, "w", newline="\n") as fh:
                fh.write(text)
        print(f"wrote fixture matrices to {outdir}/")
        return EXIT_OK
    if args.mesh is not None:
        g = full_mesh(args.mesh)
        if not args.out:
            raise _UsageError("--out is required")
        _write_text(args.out, serialize_adjacency_matrix(g))
        print(f"full mesh n={g.n} edges={g.m // 2} mean_degree={mean_degree(g):.6g} "
              f"connected={all_connected(g)}")
        return EXIT_OK
    if args.density is None or args.range is None:
        raise _UsageError("--nodes needs --density and --range")
    if not args.out:
        raise _UsageError("--out is required")
    g, scen, attempts = connected_or_retry(args.nodes, args.density, args.range,
                                           args.seed)
    _write_text(args.out, serialize_adjacency_matrix(g))
    if args.scenario_out:
        _write_text(args.scenario_out, scen.sidecar_text())
    print(f"geometric n={g.n} density={args.density} range_m={args.range} "
          f"seed={args.seed} side_m={scen.side_m:.6g} attempts={attempts} "
          f"mean_degree={mean_degree(g):.6g} connected=True")
    return EXIT_OK


def cmd_overlay(args) -> int:
    g = _load_graph(args.topo)
    bits = args.bits if args.bits is not None else default_bits(g.n)
    addrs, tables, ov = _pipeline(g, args.root, bits, args.mode)
    _write_text(args.out, serialize_adjacency_matrix(ov))
    if args.dump_paths:
        lines = []
        for s in range(g.n):
            for t in range(g.n):
                if s != t:
                    ps = discover_paths(tables, g, addrs, s, t)
                    lines.extend("-".join(str(v) for v in path) for path in ps.paths)
        _write_text(args.dump_paths, "\n".join(lines) + "\n" if lines else "")
    print(f"mode={args.mode} root={args.root} bits={bits} "
          f"address_digest={_addr_digest(addrs)} overlay_arcs={ov.m}")
    return EXIT_OK


def _report_csv(meta: list[str], report) -> str:
    out = [f"# {line}" for line in meta]
    out.append("p,mean,std,pairs_connected,pairs_total")
    for i, p in enumerate(report.p_values):
        out.append(f"{_fmt(p)},{_fmt(report.mean[i])},{_fmt(report.std[i])},"
                   f"{report.pairs_connected},{report.pairs_total}")
    return "\n".join(out) + "\n"


def cmd_reliability(args) -> int:
    g = _load_graph(args.graph)
    grid = _parse_grid(args.p_grid)
    if args.symbolic:
        if not args.pair:
            raise _UsageError("--symbolic needs --pair s,t")
        try:
            s, t = (int(tok) for tok in args.pair.split(","))
        except ValueError:
            raise _UsageError(f"bad --pair {args.pair!r}") from None
        counts = enumerate_cut_counts(g, s, t)
        print(symbolic_polynomial(counts).to_text())
        return EXIT_OK
    meta = [f"relyroute {__version__} reliability backend={BACKEND}",
            f"graph={args.graph} n={g.n} arcs={g.m} "
            f"orientation={'directed' if g.directed else 'undirected-as-symmetric-digraph'}",
            f"p_grid={args.p_grid}",
            "reliability computed on the graph as given (directed overlays stay directed)"]
    report = mean_reliability(g, grid, FlowWeights())
    _write_text(args.out, _report_csv(meta, report))
    if args.per_pair:
        lines = ["s,t,p,R_st"]
        for (s, t) in sorted(report.per_pair):
            for i, p in enumerate(report.p_values):
                lines.append(f"{s},{t},{_fmt(p)},{_fmt(report.per_pair[(s, t)][i])}")
        _write_text(args.per_pair, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.mesh is not None:
        g = full_mesh(args.mesh)
        source = f"mesh={args.mesh}"
    elif args.topo is not None:
        g = _load_graph(args.topo)
        source = f"topo={args.topo}"
    elif args.nodes is not None:
        if args.density is None or args.range is None:
            raise _UsageError("--nodes needs --density and --range")
        g, _scen, _att = connected_or_retry(args.nodes, args.density, args.range,
                                            args.seed)
        source = (f"nodes={args.nodes} density={args.density} "
                  f"range_m={args.range} seed={args.seed}")
    else:
        raise _UsageError("choose a topology: --mesh, --topo or --nodes")
    bits = args.bits if args.bits is not None else default_bits(g.n)
    grid = _parse_grid(args.p_grid)
    addrs = allocate_addresses(g, args.root, bits)
    meta = [f"relyroute {__version__} compare backend={BACKEND}",
            f"{source} root={args.root} bits={bits} "
            f"address_digest={_addr_digest(addrs)}",
            f"p_grid={args.p_grid}",
            "reliability computed on the directed overlays as extracted"]
    reports = {}
    for mode in (DART, ATR):
        tables = build_tables(g, addrs, mode)
        ov = overlay_graph(tables, g, addrs)
        meta.append(f"overlay_arcs_{mode}={ov.m}")
        reports[mode] = mean_reliability(ov, grid, FlowWeights())
    out = [f"# {line}" for line in meta]
    out.append("p,mean_dart,std_dart,mean_atr,std_atr")
    rd, ra = reports[DART], reports[ATR]
    for i, p in enumerate(grid):
        out.append(f"{_fmt(p)},{_fmt(rd.mean[i])},{_fmt(rd.std[i])},"
                   f"{_fmt(ra.mean[i])},{_fmt(ra.std[i])}")
    _write_text(args.out, "\n".join(out) + "\n")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="relyroute",
                     description="Tree-routing overlays and exact routing reliability")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a topology matrix file")
    p_gen.add_argument("--mesh", type=int, help="full mesh with N nodes")
    p_gen.add_argument("--fixture", help="bundled fixture name (fig2)")
    p_gen.add_argument("--nodes", type=int, help="random geometric node count")
    p_gen.add_argument("--density", type=float, help="nodes per km^2")
    p_gen.add_argument("--range", type=float, default=250.0,
                       help="transmission radius in meters (default 250)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", help="matrix file path")
    p_gen.add_argument("--out-dir", help="output directory for --fixture")
    p_gen.add_argument("--scenario-out", help="write the position sidecar here")
    p_gen.set_defaults(func=cmd_gen)

    p_ov = sub.add_parser("overlay", help="extract a routing overlay graph")
    p_ov.add_argument("--topo", required=True, help="physical matrix file")
    p_ov.add_argument("--mode", required=True, choices=[DART, ATR])
    p_ov.add_argument("--root", type=int, default=0)
    p_ov.add_argument("--bits", type=int, help="address bits (default ceil(log2 n)+2)")
    p_ov.add_argument("--out", required=True, help="overlay matrix file")
    p_ov.add_argument("--dump-paths", help="write every discovered path here")
    p_ov.set_defaults(func=cmd_overlay)

    p_rel = sub.add_parser("reliability", help="mean/std reliability CSV")
    p_rel.add_argument("--graph", required=True, help="matrix file to analyze")
    p_rel.add_argument("--p-grid", default=DEFAULT_GRID, help="start:stop:step")
    p_rel.add_argument("--pair", help="s,t for --symbolic")
    p_rel.add_argument("--symbolic", action="store_true",
                       help="print the exact polynomial for --pair")
    p_rel.add_argument("--out", help="CSV path (default stdout)")
    p_rel.add_argument("--per-pair", help="write the per-pair detail CSV here")
    p_rel.set_defaults(func=cmd_reliability)

    p_cmp = sub.add_parser("compare", help="single- vs multi-path reliability CSV")
    p_cmp.add_argument("--mesh", type=int)
    p_cmp.add_argument("--topo")
    p_cmp.add_argument("--nodes", type=int)
    p_cmp.add_argument("--density", type=float)
    p_cmp.add_argument("--range", type=float, default=250.0)
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument("--root", type=int, default=0)
    p_cmp.add_argument("--bits", type=int)
    p_cmp.add_argument("--p-grid", default=DEFAULT_GRID)
    p_cmp.add_argument("--out", help="CSV path (default stdout)")
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AllocationError, GraphError) as exc:
        if isinstance(exc, MatrixParseError):
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputeBudgetError as exc:
        print(f"compute budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
