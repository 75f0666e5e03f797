"""Command line front end.

Subcommands:

* ``enumerate``: list the maximal solutions of a set system built from
  a graph file, one per line, via the basic, refined or stateless
  engine.
* ``mccis``: build the pairwise-compatibility product of two graphs and
  list the maximal common connected induced subgraph isomorphisms.
* ``verify``: run classification, all engines, the brute-force oracle
  comparison and the invariant suites on one or more inputs.
* ``gadget``: compile a DIMACS CNF into the bi-colored gadget graph.
* ``report``: run a benchmark series and write a CSV plus figures.

Exit codes: 0 success, 1 I/O or parse failure, 2 usage, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import sys as _sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from .basic import enumerate_basic
from .canonical import Strategy, solution_attrs
from .graphio import (parse_bicolored, parse_dimacs, parse_graph,
                      write_bicolored, ParseError)
from .refined import enumerate_refined
from .report import EnumerationReport
from .setsystem import SetSystem, SetSystemError, SizeGuardError, mask_of
from .stateless import stateless_traverse
from .systems import (BiColoredGraph, bcclique_system, clique_system,
                      independent_set_system, map_back, mccis_oracle,
                      product_graph, required_variant, sat_gadget)
from .verify import verify_instance

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3

SYSTEM_KINDS = ("clique", "independent-set", "bcclique", "required-bcclique")
ALGORITHMS = ("basic", "refined", "stateless")


class UsageError(Exception):
    pass


def _parse_required(spec: Optional[str]) -> tuple[int, ...]:
    if not spec:
        raise UsageError("--required needs a comma separated list of node ids")
    try:
        ids = tuple(int(tok) for tok in spec.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"bad --required value {spec!r}") from None
    if not ids:
        raise UsageError("--required must name at least one node")
    return ids


def build_system(kind: str, path: str, required: Optional[str]) -> SetSystem:
    if kind not in SYSTEM_KINDS:
        raise UsageError(f"unknown system {kind!r}")
    if required is not None and kind != "required-bcclique":
        raise UsageError("--required applies to the required-bcclique system only")
    if kind == "clique":
        return clique_system(parse_graph(path))
    if kind == "independent-set":
        return independent_set_system(parse_graph(path))
    if kind == "bcclique":
        return bcclique_system(parse_bicolored(path))
    base = bcclique_system(parse_bicolored(path))
    return required_variant(base, _parse_required(required))


def run_engine(inst: SetSystem, algorithm: str, sink) -> EnumerationReport:
    if algorithm == "basic":
        return enumerate_basic(inst, Strategy.MIN_ELEMENT, sink=sink)
    if algorithm == "refined":
        return enumerate_refined(inst, sink=sink)
    if algorithm == "stateless":
        return stateless_traverse(inst, sink=sink)
    raise UsageError(f"unknown algorithm {algorithm!r}")


def _engine_strategy(algorithm: str) -> Strategy:
    return Strategy.MIN_ELEMENT if algorithm == "basic" else Strategy.LAYERED_MIN


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    inst = build_system(args.system, args.input, args.required)
    if args.algorithm in ("refined", "stateless") and not inst.commutable:
        raise UsageError(
            f"{args.algorithm} requires a commutable system; use --algorithm basic")
    strategy = _engine_strategy(args.algorithm)
    out = args.stdout

    def sink(sol, depth):
        line = " ".join(map(str, sol))
        if args.canonical:
            attrs = solution_attrs(inst, mask_of(sol), strategy)
            line += "\t" + " ".join(map(str, attrs.order))
        print(line, file=out)

    report = run_engine(inst, args.algorithm, sink)
    if args.stats:
        print(report.to_json(), file=args.stderr)
    return EXIT_OK


def cmd_mccis(args) -> int:
    ga, gb = parse_graph(args.graph_a), parse_graph(args.graph_b)
    product = product_graph(ga, gb)
    inst = bcclique_system(product)
    mappings: list[tuple[tuple[int, int], ...]] = []

    def sink(sol, depth):
        pairs = map_back(sol, ga, gb)
        mappings.append(pairs)
        print(" ".join(f"{u}:{x}" for u, x in pairs), file=args.stdout)

    report = run_engine(inst, args.algorithm, sink)
    if args.stats:
        print(report.to_json(), file=args.stderr)
    if args.verify:
        expected = mccis_oracle(ga, gb)
        got = {frozenset(m) for m in mappings}
        if len(got) != len(mappings):
            print("verification failed: engine emitted coinciding mappings",
                  file=args.stderr)
            return EXIT_VERIFY
        if got != expected:
            err = args.stderr
            for extra in sorted(map(sorted, got - expected)):
                print(f"only-engine: {extra}", file=err)
            for missing in sorted(map(sorted, expected - got)):
                print(f"only-oracle: {missing}", file=err)
            print(f"verification failed: {len(got)} enumerated, "
                  f"{len(expected)} expected", file=err)
            return EXIT_VERIFY
        print(f"# verified against {len(expected)} brute-force isomorphisms",
              file=args.stderr)
    return EXIT_OK


def _verify_one(kind: str, path: str, required: Optional[str]) -> tuple[str, list]:
    inst = build_system(kind, path, required)
    if inst.n > 16:
        raise SizeGuardError(f"verification is exhaustive; {inst.n} nodes exceed 16")
    return path, verify_instance(inst)


def _verify_task(task):
    kind, path, required = task
    return _verify_one(kind, path, required)


def cmd_verify(args) -> int:
    tasks = [(args.system, path, args.required) for path in args.inputs]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_task, tasks))
    else:
        results = [_verify_task(t) for t in tasks]

    failed = 0
    for path, checks in results:
        for chk in checks:
            status = "PASS" if chk.passed else "FAIL"
            detail = f"  ({chk.detail})" if chk.detail and not chk.passed else ""
            print(f"{status}  {path}  {chk.name}{detail}", file=args.stdout)
            failed += 0 if chk.passed else 1
    total = sum(len(c) for _, c in results)
    print(f"# {total - failed}/{total} checks passed", file=args.stdout)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_gadget(args) -> int:
    cnf = parse_dimacs(args.cnf)
    if not cnf.clauses:
        raise UsageError("the CNF has no clauses; nothing to encode")
    graph, labels = sat_gadget(cnf.num_vars, cnf.clauses)
    header = [f"gadget for {Path(args.cnf).name}: "
              f"{cnf.num_vars} vars, {len(cnf.clauses)} clauses"]
    header += [f"node {node} = {name}" for node, name in sorted(labels.items())]
    write_bicolored(graph, args.output, header=header)
    print(f"wrote {graph.n}-node gadget to {args.output}", file=args.stdout)
    return EXIT_OK


def cmd_report(args) -> int:
    import random

    from .figures import render_delay_figure, render_memory_figure

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    rng = random.Random(args.seed)
    rows: list[dict] = []
    for n in sizes:
        for rep_idx in range(args.per_size):
            seed = rng.randrange(1 << 30)
            graph = BiColoredGraph.random(n, 0.25, 0.35, random.Random(seed))
            inst = bcclique_system(graph)
            algos = [a for a in ALGORITHMS if a != "basic" or n <= 12]
            for algo in algos:
                report = run_engine(inst, algo, sink=None)
                row = report.as_dict()
                row.update(n=n, seed=seed)
                rows.append(row)

    csv_path = outdir / "runs.csv"
    fields = ["system", "algorithm", "n", "seed", "solution_count",
              "max_solution_size", "elapsed", "max_delay", "oracle_calls",
              "restricted_calls", "restricted_solutions", "peak_aux_elements"]
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
    figures = [render_delay_figure(rows, outdir / "delay_profile.png"),
               render_memory_figure(rows, outdir / "memory_scaling.png")]
    print(f"wrote {csv_path} and {', '.join(str(f) for f in figures)}",
          file=args.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="maxenum",
        description="Enumerate maximal solutions of strongly accessible set systems")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list maximal solutions of one system")
    p.add_argument("input", help="graph file (plain or bi-colored)")
    p.add_argument("--system", choices=SYSTEM_KINDS, default="bcclique")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="basic")
    p.add_argument("--canonical", action="store_true",
                   help="append the canonical order after a tab")
    p.add_argument("--stats", action="store_true",
                   help="write the run report as JSON on standard error")
    p.add_argument("--required", help="comma separated required node ids")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mccis", help="maximal common connected induced subgraphs")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="refined")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the brute-force isomorphism oracle")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_mccis)

    p = sub.add_parser("verify", help="classification, engines, oracle, invariants")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--system", choices=SYSTEM_KINDS, default="bcclique")
    p.add_argument("--required")
    p.add_argument("--jobs", type=int, default=1,
                   help="verify independent inputs in parallel")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gadget", help="compile a DIMACS CNF to a bi-colored graph")
    p.add_argument("cnf")
    p.add_argument("output")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("report", help="benchmark series with CSV and figures")
    p.add_argument("--outdir", required=True)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--sizes", default="8,12,16,20")
    p.add_argument("--per-size", type=int, default=3, dest="per_size")
    p.set_defaults(func=cmd_report)
    return top


def main(argv=None, stdout=None, stderr=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.stdout = stdout or _sys.stdout
    args.stderr = stderr or _sys.stderr
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=args.stderr)
        return EXIT_USAGE
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=args.stderr)
        return EXIT_IO
    except SetSystemError as exc:
        print(f"error: {exc}", file=args.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
