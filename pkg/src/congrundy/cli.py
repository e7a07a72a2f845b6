"""Command line interface: ``congrundy <subcommand> ...``.

All vertex labels in input and output are 1-based.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ipgen
from .bench import run_bench
from .bounds import build_color_sets, compute_bounds
from .coloring import first_fit, is_connected_sequence
from .exact import BudgetExceeded, exact_gamma, exact_gamma_c
from .graph import (CLASS_ALIASES, GRAPH_CLASSES, ParseError, generate, instance_suite, read_dimacs,
                    spec_to_dict, write_dimacs, write_manifest)
from .heuristics import warm_start
from .localsearch import improve_sequence
from .runner import ALGORITHMS, prepare, solve

EXIT_REFUSED = 3


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    return cfg


def _parse_sequence(text: str, n: int) -> list[int]:
    seq = [int(tok) - 1 for tok in text.replace(",", " ").split()]
    if sorted(seq) != list(range(n)):
        raise ValueError(f"sequence must be a permutation of 1..{n}")
    return seq


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, spec in enumerate(instance_suite(args.cls, args.n, args.eta, args.count, args.seed)):
        g = generate(spec)
        fname = f"{spec.name}_{i + 1}.col"
        (out / fname).write_text(write_dimacs(g, comment=f"{spec.name} instance {i + 1} seed {spec.seed}"))
        entries.append({"file": fname, "group": spec.name, **spec_to_dict(spec)})
    write_manifest(out / "manifest.json", entries)
    print(f"wrote {len(entries)} instances to {out}", file=sys.stderr)
    return 0


def cmd_solve(args) -> int:
    cfg = _load_config(args.config)
    algorithm = args.algorithm or cfg.pop("algorithm", "brkga-rls")
    mode = args.mode or cfg.pop("mode", "connected")
    seed = args.seed if args.seed is not None else cfg.pop("seed", 0)
    time_limit = args.time_limit if args.time_limit is not None else cfg.pop("time_limit", 1.0)
    max_gen = args.max_generations if args.max_generations is not None else cfg.pop("max_generations", None)
    for key in ("algorithm", "mode", "seed", "time_limit", "max_generations"):
        cfg.pop(key, None)
    if max_gen is not None and args.time_limit is None:
        time_limit = None
    g = read_dimacs(args.instance)
    report = solve(g, algorithm, mode=mode, seed=seed, time_limit=time_limit, max_generations=max_gen,
                   timing=not args.deterministic, **cfg)
    report["instance"] = str(args.instance)
    _emit(report, args.out)
    return 0


def cmd_bounds(args) -> int:
    g = read_dimacs(args.instance)
    report = compute_bounds(g, stair_limit=args.stair_limit)
    _emit({"instance": str(args.instance), "n": g.n, "m": g.m, **report.to_dict()}, args.out)
    return 0


def cmd_exact(args) -> int:
    g, added = prepare(read_dimacs(args.instance), args.mode)
    if args.mode == "connected":
        value, seq = exact_gamma_c(g, **({"limit": args.limit} if args.limit else {}))
    else:
        value, seq = exact_gamma(g, **({"limit": args.limit} if args.limit else {}))
    _emit({"instance": str(args.instance), "mode": args.mode, "value": value,
           "witness": [v + 1 for v in seq], "connectify_edges_added": added}, args.out)
    return 0


def cmd_heuristic(args) -> int:
    g = read_dimacs(args.instance)
    if args.name == "best":
        h, added = prepare(g, args.mode)
        seq, col, name = warm_start(h, args.mode)
        _emit({"instance": str(args.instance), "heuristic": name, "mode": args.mode, "value": col.num_colors,
               "sequence": [v + 1 for v in seq], "colors": list(col.colors),
               "connectify_edges_added": added}, args.out)
        return 0
    report = solve(g, f"heuristic:{args.name}", mode=args.mode, timing=False)
    _emit({"instance": str(args.instance), "heuristic": args.name, "mode": args.mode,
           "value": report["best_value"], "sequence": report["best_sequence"], "colors": report["colors"],
           "connectify_edges_added": report["connectify_edges_added"]}, args.out)
    return 0


def cmd_ls(args) -> int:
    g, added = prepare(read_dimacs(args.instance), args.mode)
    text = Path(args.sequence_file).read_text() if args.sequence_file else args.sequence
    seq = _parse_sequence(text, g.n)
    if args.mode == "connected" and not is_connected_sequence(g, seq):
        raise ValueError("input sequence is not connected")
    before = first_fit(g, seq).num_colors
    res = improve_sequence(g, seq, mode=args.mode)
    _emit({"instance": str(args.instance), "mode": args.mode, "input_value": before, "value": res.value,
           "moves": res.moves, "sequence": [v + 1 for v in res.sequence], "colors": res.colors,
           "connectify_edges_added": added}, args.out)
    return 0


def cmd_export_ip(args) -> int:
    g, added = prepare(read_dimacs(args.instance), "connected")
    report = compute_bounds(g)
    cs = build_color_sets(g, report)
    model = ipgen.MODEL_BUILDERS[args.model](g, cs, name=Path(args.instance).stem)
    seq, col, _ = warm_start(g, "connected")
    model.warm_start = ipgen.warm_start_from(g, seq, col, cs, args.model)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{Path(args.instance).stem}.{args.model}"
    (out / f"{stem}.lp").write_text(ipgen.write_lp(model))
    (out / f"{stem}.mst").write_text(ipgen.write_mst(model))
    summary = {"instance": str(args.instance), "model": args.model, "variables": len(model.variables),
               "constraints": len(model.constraints), "warm_start_value": col.num_colors,
               "lp": str(out / f"{stem}.lp"), "mst": str(out / f"{stem}.mst"), "connectify_edges_added": added}
    if args.solve:
        res = ipgen.solve_external(model, args.solver, args.time_limit)
        summary.update(status=res.status, objective=res.objective)
    _emit(summary, None)
    return 0


def cmd_bench(args) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    res = run_bench(args.manifest, algorithms, runs=args.runs, time_limit=args.time_limit, seed=args.seed,
                    mode=args.mode, max_generations=args.max_generations)
    for path in res.missing:
        print(f"missing instance file: {path}", file=sys.stderr)
    text = res.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="congrundy", description="Connected Grundy coloring toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate an instance group")
    s.add_argument("--class", dest="cls", required=True, choices=sorted(set(GRAPH_CLASSES) | set(CLASS_ALIASES)))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eta", type=float, required=True)
    s.add_argument("--count", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=".")
    s.set_defaults(func=cmd_gen)

    def instance(sp):
        sp.add_argument("instance", help="DIMACS graph file")
        sp.add_argument("--out", help="write JSON here instead of stdout")

    def mode(sp, default="connected"):
        sp.add_argument("--mode", choices=("connected", "plain"), default=default)

    s = sub.add_parser("solve", help="run one algorithm on one instance")
    instance(s)
    s.add_argument("--algorithm", choices=ALGORITHMS)
    s.add_argument("--mode", choices=("connected", "plain"))
    s.add_argument("--seed", type=int)
    s.add_argument("--time-limit", type=float)
    s.add_argument("--max-generations", type=int)
    s.add_argument("--deterministic", action="store_true",
                   help="omit wall-clock fields (pair with --max-generations)")
    s.add_argument("--config", help="JSON file with run parameters")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("bounds", help="upper bounds report")
    instance(s)
    s.add_argument("--stair-limit", type=int, default=20)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("exact", help="exact value for small graphs")
    instance(s)
    mode(s)
    s.add_argument("--limit", type=int, help="vertex budget")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("heuristic", help="greedy sequence and coloring")
    instance(s)
    mode(s)
    s.add_argument("--name", default="best", help="heuristic name, or 'best' for the warm-start pick")
    s.set_defaults(func=cmd_heuristic)

    s = sub.add_parser("ls", help="local search from a given sequence")
    instance(s)
    mode(s)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--sequence", help="1-based vertices separated by spaces or commas")
    g.add_argument("--sequence-file")
    s.set_defaults(func=cmd_ls)

    s = sub.add_parser("export-ip", help="write an LP model and its warm start")
    s.add_argument("instance")
    s.add_argument("--model", choices=tuple(ipgen.MODEL_BUILDERS), default="representatives")
    s.add_argument("--out-dir", default=".")
    s.add_argument("--solve", action="store_true", help=f"run the solver from --solver or ${ipgen.SOLVER_ENV}")
    s.add_argument("--solver", help="command template using {model} {mst} {solution} {timeout}")
    s.add_argument("--time-limit", type=float, default=3600.0)
    s.set_defaults(func=cmd_export_ip)

    s = sub.add_parser("bench", help="batch runs over a manifest, CSV output")
    s.add_argument("manifest")
    s.add_argument("--algorithms", default="brkga-b,brkga-rls")
    s.add_argument("--runs", type=int, default=1)
    s.add_argument("--time-limit", type=float, default=1.0)
    s.add_argument("--max-generations", type=int)
    s.add_argument("--seed", type=int, default=0)
    mode(s)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ParseError, ValueError, OSError, ipgen.SolverError) as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
