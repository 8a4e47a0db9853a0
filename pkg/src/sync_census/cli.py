"""Command line front end.

Subcommands: check, ratio, construct, enumerate, stats, gaps, random.
Exit codes: 0 success, 1 self-check failure, 2 usage or parse error,
3 budget exceeded. SYNC_CENSUS_WORKERS sets the default worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import experiments, families
from .analysis import (
    is_aperiodic,
    is_strongly_connected,
    scc_decomposition,
    sink_reduction,
)
from .census import DEFAULT_AUTOMATA_BUDGET, BudgetError, census
from .digraph import ParseError, format_digraph, parse_digraph, validate
from .experiments import RandomModelConfig, RunDir
from .isoenum import DEFAULT_DIRECT_BUDGET
from .pipeline import ScanOptions, run_scan

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _default_workers():
    try:
        return max(1, int(os.environ.get("SYNC_CENSUS_WORKERS", "1")))
    except ValueError:
        return 1


def _read_digraph(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    try:
        return parse_digraph(text)
    except ParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(sub, workers=False, budget=False, out=False, fmt=None):
    if workers:
        sub.add_argument("--workers", type=int, default=_default_workers(),
                         help="worker processes (default: SYNC_CENSUS_WORKERS or 1)")
    if budget:
        sub.add_argument("--budget-automata", type=int,
                         default=DEFAULT_AUTOMATA_BUDGET,
                         help="max automata to check per digraph census")
    if out:
        sub.add_argument("--out", help="output path")
    if fmt:
        sub.add_argument("--format", choices=fmt, default=fmt[0])


def build_parser():
    p = argparse.ArgumentParser(
        prog="sync-census",
        description="Census of synchronizing colorings of k-out-regular digraphs",
    )
    sp = p.add_subparsers(dest="command", required=True)

    c = sp.add_parser("check", help="structural report for a digraph file")
    c.add_argument("file")

    c = sp.add_parser("ratio", help="exact census of a digraph file")
    c.add_argument("file")
    c.add_argument("--mode", choices=["reduced", "full"], default="reduced")
    _add_common(c, budget=True, fmt=["json", "csv"])

    c = sp.add_parser("construct", help="emit a parametric family digraph")
    c.add_argument("family", choices=families.FAMILIES)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--self-check", action="store_true",
                   help="census the digraph and verify the closed-form ratio")
    _add_common(c, budget=True, out=True)

    c = sp.add_parser("enumerate",
                      help="stream nonisomorphic primitive digraphs with censuses")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--mode", choices=["seeded", "direct"], default="seeded")
    c.add_argument("--budget-candidates", type=int, default=DEFAULT_DIRECT_BUDGET,
                   help="max labeled tables a direct scan may visit")
    _add_common(c, workers=True, budget=True, out=True, fmt=["jsonl"])
    c.add_argument("--progress", action="store_true")

    for name, helptext in [("stats", "table1/table2 statistics for one (n, k)"),
                           ("gaps", "histogram and gap list for one (n, k)")]:
        c = sp.add_parser(name, help=helptext)
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--k", type=int, required=True)
        c.add_argument("--mode", choices=["seeded", "direct"], default="seeded")
        _add_common(c, workers=True, budget=True, out=True, fmt=["csv", "json"])
        c.add_argument("--progress", action="store_true")

    c = sp.add_parser("random", help="random digraph experiment")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--samples", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--filter", choices=["all", "sc-aperiodic"], default="all")
    c.add_argument("--rejection-cap", type=int,
                   default=experiments.DEFAULT_REJECTION_CAP)
    _add_common(c, workers=True, budget=True, out=True, fmt=["csv", "json"])
    c.add_argument("--progress", action="store_true")
    return p


def cmd_check(args):
    d = _read_digraph(args.file)
    msg = validate(d)
    print(f"n: {d.n}")
    print(f"k: {d.k}")
    print(f"valid: {'true' if msg is None else 'false'}")
    if msg is not None:
        print(f"violation: {msg}")
        return EXIT_CHECK_FAILED
    sc = is_strongly_connected(d)
    print(f"strongly_connected: {str(sc).lower()}")
    if sc:
        ap = is_aperiodic(d)
        print(f"aperiodic: {str(ap).lower()}")
        print(f"primitive: {str(ap).lower()}")
    else:
        print("aperiodic: n/a (not strongly connected)")
        print("primitive: false")
    scc = scc_decomposition(d)
    print(f"scc_count: {len(scc.components)}")
    print(f"sink_components: {len(scc.sink_components)}")
    red = sink_reduction(d)
    if red is None:
        print("sink_reduction: none (no unique sink component, ratio is 0)")
    elif red.induced is d:
        print("sink_reduction: identity (digraph is its own sink component)")
    else:
        verts = ",".join(str(v + 1) for v in red.vertices)
        print(f"sink_reduction: induced n={red.induced.n} on vertices [{verts}]")
    return EXIT_OK


def cmd_ratio(args):
    d = _read_digraph(args.file)
    res = census(d, args.mode, args.budget_automata)
    if args.format == "csv":
        print("n,k,sync_colorings,total_colorings,distinct_automata,weight,"
              "sync_automata,ratio")
        j = res.to_json_dict()
        print(",".join(str(j[f]) for f in (
            "n", "k", "sync_colorings", "total_colorings",
            "distinct_automata", "weight", "sync_automata", "ratio")))
    else:
        print(res.to_json())
    return EXIT_OK


def cmd_construct(args):
    spec = families.FamilySpec(family=args.family, n=args.n, k=args.k, d=args.d)
    try:
        d = families.build_family(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = format_digraph(d)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.self_check:
        res = census(d, "reduced", args.budget_automata)
        want = families.expected_ratio(spec)
        if res.ratio != want:
            print(f"self-check FAILED: census ratio {res.ratio} != expected {want}",
                  file=sys.stderr)
            return EXIT_CHECK_FAILED
        print(f"self-check ok: ratio {res.ratio}", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args):
    opts = ScanOptions(budget=args.budget_automata,
                       candidate_budget=args.budget_candidates,
                       collect_keys=True, collect_records=True)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        params = {"command": "enumerate", "n": args.n, "k": args.k,
                  "mode": args.mode, "budget": args.budget_automata}
        run_dir = RunDir(args.out, params)
        final = os.path.join(args.out, "digraphs.jsonl")
        outcome = run_scan(args.mode, args.n, args.k, opts,
                           workers=args.workers, run_dir=run_dir,
                           progress=args.progress)
        with open(final, "w") as fh:
            for idx in range(outcome.chunks_total):
                path = run_dir.chunk_path(idx, "jsonl")
                if not os.path.exists(path):
                    print(f"error: checkpoint {path} is missing; "
                          "delete the output directory and rerun", file=sys.stderr)
                    return EXIT_CHECK_FAILED
                with open(path) as cf:
                    fh.write(cf.read())
        run_dir.write_manifest(outputs={"digraphs": "digraphs.jsonl"})
    else:
        def emit(_idx, result):
            for rec in result["records"]:
                print(json.dumps(rec, separators=(",", ":")))

        outcome = run_scan(args.mode, args.n, args.k, opts,
                           workers=args.workers, on_chunk=emit,
                           progress=args.progress)
    print(f"classes: {outcome.count}", file=sys.stderr)
    return EXIT_OK


def _require_out(args):
    if not args.out:
        print("error: --out DIR is required for this command", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    os.makedirs(args.out, exist_ok=True)


def cmd_stats(args):
    _require_out(args)
    params = {"command": "stats", "n": args.n, "k": args.k,
              "mode": args.mode, "budget": args.budget_automata}
    run_dir = RunDir(args.out, params)
    scan = experiments.scan_class(
        args.n, args.k, mode=args.mode, workers=args.workers,
        budget=args.budget_automata, run_dir=run_dir, progress=args.progress)
    r = scan.stats
    t1 = experiments.table1_csv([r])
    t2 = experiments.table2_csv([r])
    with open(os.path.join(args.out, "table1.csv"), "w") as fh:
        fh.write(t1)
    with open(os.path.join(args.out, "table2.csv"), "w") as fh:
        fh.write(t2)
    if args.format == "json":
        print(json.dumps({
            "k": r.k, "n": r.n, "class_size": str(r.count),
            "min": str(r.min_sync), "sum": str(r.sum_sync),
            "sumsq": str(r.sumsq_sync), "totally_sync": str(r.totally_sync),
        }, indent=2))
    else:
        sys.stdout.write(t1)
        sys.stdout.write(t2)
    return EXIT_OK


def cmd_gaps(args):
    _require_out(args)
    params = {"command": "gaps", "n": args.n, "k": args.k,
              "mode": args.mode, "budget": args.budget_automata}
    run_dir = RunDir(args.out, params)
    scan = experiments.scan_class(
        args.n, args.k, mode=args.mode, workers=args.workers,
        budget=args.budget_automata, run_dir=run_dir, progress=args.progress)
    table = experiments.GapTable(k=args.k, n=args.n,
                                 histogram=dict(sorted(scan.histogram.items())))
    text = experiments.gaps_csv([table])
    with open(os.path.join(args.out, "gaps.csv"), "w") as fh:
        fh.write(text)
    gaps = [[str(lo), str(hi)] for lo, hi in table.gaps()]
    run_dir.write_manifest(gaps=gaps)
    if args.format == "json":
        print(json.dumps({"histogram": {str(key): c for key, c in
                                        sorted(table.histogram.items())},
                          "gaps": gaps}, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_random(args):
    _require_out(args)
    cfg = RandomModelConfig(n=args.n, k=args.k, samples=args.samples,
                            seed=args.seed, filter=args.filter,
                            rejection_cap=args.rejection_cap)
    params = {"command": "random", "n": args.n, "k": args.k,
              "samples": args.samples, "seed": args.seed,
              "filter": args.filter, "budget": args.budget_automata}
    run_dir = RunDir(args.out, params)
    res = experiments.random_experiment(cfg, workers=args.workers,
                                        budget=args.budget_automata,
                                        run_dir=run_dir, progress=args.progress)
    text = experiments.random_csv(cfg, res)
    with open(os.path.join(args.out, "random.csv"), "w") as fh:
        fh.write(text)
    if args.format == "json":
        print(json.dumps({
            "samples": cfg.samples, "attempts": str(res.attempts),
            "totally_sync": str(res.stats.totally_sync),
            "fraction": experiments.round6(res.fraction_totally),
            "conf_radius_3sigma": experiments.round6(res.conf_radius_3sigma),
        }, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "ratio": cmd_ratio,
    "construct": cmd_construct,
    "enumerate": cmd_enumerate,
    "stats": cmd_stats,
    "gaps": cmd_gaps,
    "random": cmd_random,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BudgetError as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
