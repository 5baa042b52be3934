"""Command-line front end.

Exit codes: 0 success or all checks passed, 1 a verification found failures,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import closed_form, lab
from .energy import EnergyReport, energy_report
from .graph import GraphError, LoopGraph, generator, parse_generator, read_graph_file, with_loops
from .spectral import Spectrum, max_discrepancy, spectrum

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class GraphSpec:
    source: str
    loops: str | None = None
    sigma: int | None = None


@dataclass(frozen=True)
class ResolvedGraph:
    lg: LoopGraph
    kind: str | None
    sizes: tuple[int, ...]


def resolve(spec: GraphSpec) -> ResolvedGraph:
    """Build the loop graph named by ``-g`` plus ``--loops``/``--sigma``.

    ``--sigma k`` loops the first ``k`` vertices, which for ``bipartite:m,n``
    fills the left part first. Loops listed in a graph file apply unless
    overridden.
    """
    if spec.loops is not None and spec.sigma is not None:
        raise UsageError("give at most one of --loops and --sigma")
    kind, sizes = None, ()
    if spec.source.startswith("file:"):
        lg = read_graph_file(spec.source[len("file:"):])
    else:
        kind, sizes = parse_generator(spec.source)
        lg = with_loops(generator(kind, *sizes), ())
    g = lg.base
    if spec.sigma is not None:
        if not 0 <= spec.sigma <= g.n:
            raise UsageError(f"--sigma {spec.sigma} outside [0, {g.n}]")
        lg = with_loops(g, range(spec.sigma))
    elif spec.loops is not None:
        token = spec.loops.strip()
        if token == "all":
            lg = with_loops(g, range(g.n))
        elif token == "none":
            lg = with_loops(g, ())
        else:
            try:
                vs = [int(t) for t in token.split(",") if t.strip()]
            except ValueError:
                raise UsageError(f"bad --loops value {spec.loops!r}") from None
            lg = with_loops(g, vs)
    return ResolvedGraph(lg, kind, sizes)


def closed_form_spectrum(rg: ResolvedGraph) -> Spectrum:
    lg = rg.lg
    if rg.kind == "complete":
        return closed_form.spec_complete(lg.n, lg.sigma)
    if rg.kind == "bipartite":
        m, n = rg.sizes
        if lg.loops != closed_form.bipartite_layout_loops(m, n, lg.sigma):
            raise UsageError("closed form for bipartite graphs needs loops filling the left part "
                             "first (use --sigma)")
        return closed_form.spec_complete_bipartite(m, n, lg.sigma)
    raise UsageError(f"no closed form for {rg.kind or 'file'} graphs; "
                     "only complete and bipartite generators")


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def render_spectrum(pairs) -> str:
    return "\n".join(f"{_fmt(v):>10}  x{k}" for v, k in pairs)


def render_energy(data: dict) -> str:
    r = EnergyReport.from_json(data)
    flags = r.equality_flags
    lines = [
        f"energy          {_fmt(r.energy)}",
        f"sigma/n         {_fmt(r.sigma_over_n)}",
        f"upper bound     {_fmt(r.upper_bound)}{'  (attained)' if flags.get('upper_bound') else ''}",
        f"lambda_1        {_fmt(r.lambda1)}",
        f"lambda_1 lower  {_fmt(r.lambda1_lower)}{'  (attained)' if flags.get('lambda1_lower') else ''}"
        + ("" if r.connected else "  [graph disconnected]"),
        f"lambda_1 upper  {_fmt(r.lambda1_upper)}{'  (attained)' if flags.get('lambda1_upper') else ''}",
    ]
    if r.equality_degrees is not None:
        a, b = r.equality_degrees
        lines.append(f"bound-equality degrees  a={_fmt(a)} b={_fmt(b)}")
    return "\n".join(lines)


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_spectrum(args) -> int:
    rg = resolve(GraphSpec(args.graph, args.loops, args.sigma))
    if args.method == "numeric":
        s = spectrum(rg.lg)
        _emit(args, render_spectrum(s.pairs), s.to_json())
    elif args.method == "closed-form":
        s = closed_form_spectrum(rg)
        _emit(args, render_spectrum(s.pairs), s.to_json())
    else:
        cf = closed_form_spectrum(rg)
        num = spectrum(rg.lg)
        gap = max_discrepancy(num, cf)
        text = (f"numeric\n{render_spectrum(num.pairs)}\nclosed-form\n{render_spectrum(cf.pairs)}\n"
                f"max discrepancy {gap:.3e}")
        _emit(args, text, {"numeric": num.to_json(), "closed_form": cf.to_json(),
                           "max_discrepancy": gap})
    return EXIT_OK


def cmd_energy(args) -> int:
    rg = resolve(GraphSpec(args.graph, args.loops, args.sigma))
    data = energy_report(rg.lg).to_json()
    _emit(args, render_energy(data), data)
    return EXIT_OK


def cmd_verify(args) -> int:
    outcome = lab.run_theorem(args.theorem, args.max_n, workers=args.workers)
    payload = json.dumps(outcome.to_json(), indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        status = "PASS" if outcome.passed else "FAIL"
        print(f"{status} {outcome.theorem_id}: {outcome.instances_checked} instances, "
              f"{outcome.failure_count} failures -> {args.out}")
    else:
        print(payload)
    return EXIT_OK if outcome.passed else EXIT_FAIL


def cmd_table_k33(args) -> int:
    rows = lab.table_k33()
    payload = {"rows": [[s, e] for s, e in rows]}
    lines = ["sigma  energy"] + [f"{s:>5}  {_fmt(e)}" for s, e in rows]
    if args.placements:
        splits = lab.table_k33_placements()
        payload["placements"] = [[a, b, e] for a, b, e in splits]
        lines += ["", "left  right  energy"] + [f"{a:>4}  {b:>5}  {_fmt(e)}" for a, b, e in splits]
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_explore(args) -> int:
    rg = resolve(GraphSpec(args.graph))
    res = lab.explore_conjecture(rg.lg.base)
    lines = [f"best S      {sorted(res.best_loops)}",
             f"E(G)        {_fmt(res.energy_base)}",
             f"E(G_S)      {_fmt(res.energy_best)}",
             f"gain        {_fmt(res.gain)}"]
    payload = res.to_json()
    if res.gain <= lab.CONJECTURE_GAIN_TOL:
        note = ("boundary case: no loop set strictly raises the energy"
                + (" (K_1: E = 0 either way)" if rg.lg.n == 1 else ""))
        lines.append(f"note        {note}")
        payload["note"] = note
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def _graph_args(p, loops=True):
    p.add_argument("-g", "--graph", required=True,
                   help="generator kind(:args) [complete, bipartite, path, cycle, empty] or file:PATH")
    if loops:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--loops", help="comma-separated vertices, 'all' or 'none'")
        group.add_argument("--sigma", type=int, help="loop the first k vertices")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="selfloop",
                                     description="Spectra, energy and bounds of graphs with self-loops.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues with multiplicities")
    _graph_args(p)
    p.add_argument("--method", choices=["numeric", "closed-form", "both"], default="numeric")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("energy", help="energy, energy bound and lambda_1 bounds")
    _graph_args(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("verify", help="exhaustive theorem sweep")
    p.add_argument("theorem", choices=sorted(lab.THEOREMS))
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--workers", type=int, default=1, help="processes for the eigenvalue batch")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table-k33", help="energy of K_{3,3} for sigma = 0..6")
    p.add_argument("--placements", action="store_true", help="also list every left/right split")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table_k33)

    p = sub.add_parser("explore", help="best loop set for raising the energy")
    _graph_args(p, loops=False)
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"selfloop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
