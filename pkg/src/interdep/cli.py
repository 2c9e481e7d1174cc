"""Command-line surface.

Subcommands: simulate, vulnerable, aeap, export-lp, gen, experiment,
reduce-setcover.  Results print to stdout as JSON unless a file flag says
otherwise.  Exit codes: 0 success, 2 input error, 3 enumeration cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .allocation import reduce_setcover, solve_exact, solve_greedy, solve_unit_greedy
from .cascade import simulate_cascade, trace_csv
from .dsl import format_network, parse_network
from .experiment import DEFAULT_PRESET, instance_svg, records_csv, run_experiment
from .generator import GeneratorConfig, gen_network, parse_config_text
from .ilp import build_ilp, sidecar_data, write_lp
from .kernels import DEFAULT_ENUMERATION_CAP, EnumerationCapExceeded
from .model import ALWAYS_ALIVE, EntityId
from .vulnerability import most_vulnerable_exact, most_vulnerable_greedy

_SOLVERS = {"heuristic": solve_greedy, "exact": solve_exact, "alg1": solve_unit_greedy}


def _load_network(path: str):
    return parse_network(Path(path).read_text())


def _entity_list(arg: str):
    return [EntityId.parse(name.strip()) for name in arg.split(",") if name.strip()]


def _names(entities) -> list:
    return sorted(e.name for e in entities)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_simulate(args) -> int:
    net = _load_network(args.net)
    trace = simulate_cascade(net, _entity_list(args.fail))
    if args.trace_csv:
        Path(args.trace_csv).write_text(trace_csv(trace))
    _emit(
        {
            "initial": _names(trace.initial),
            "failed": _names(trace.failed_set()),
            "induced": _names(trace.induced_set()),
            "fail_time": {e.name: t for e, t in sorted(trace.fail_time.items())},
            "horizon": trace.horizon,
            "trace_csv": args.trace_csv,
        }
    )
    return 0


def _cmd_vulnerable(args) -> int:
    net = _load_network(args.net)
    if args.method == "exact":
        result = most_vulnerable_exact(net, args.k, max_evaluations=args.cap)
    else:
        result = most_vulnerable_greedy(net, args.k)
    _emit(
        {
            "k": result.k,
            "attacked": _names(result.attacked),
            "total_failed": result.total_failed,
            "failed_set": _names(result.failed_set),
        }
    )
    return 0


def _cmd_aeap(args) -> int:
    net = _load_network(args.net)
    attacked = _entity_list(args.attacked)
    solver = _SOLVERS[args.method]
    if args.method == "exact":
        solution = solver(net, attacked, args.s, max_evaluations=args.cap)
    else:
        solution = solver(net, attacked, args.s)
    _emit(
        {
            "method": solution.method,
            "s": solution.s,
            "modifications": [
                {
                    "idr_target": net.rule_by_label(m.idr_label).target.name,
                    "auxiliary": "ALWAYS_ALIVE" if m.auxiliary is ALWAYS_ALIVE else m.auxiliary.name,
                }
                for m in solution.modifications
            ],
            "protected": _names(solution.protected),
            "protected_count": solution.protected_count,
            "induced_before": solution.induced_before,
            "induced_after": solution.induced_after,
        }
    )
    return 0


def _cmd_export_lp(args) -> int:
    net = _load_network(args.net)
    model = build_ilp(net, _entity_list(args.attacked), args.s)
    out = Path(args.out)
    out.write_text(write_lp(model))
    sidecar = out.with_suffix(out.suffix + ".json")
    sidecar.write_text(json.dumps(sidecar_data(model), indent=2, sort_keys=True) + "\n")
    _emit(
        {
            "out": str(out),
            "sidecar": str(sidecar),
            "horizon": model.horizon,
            "variables": len(model.variables),
            "constraints": model.constraint_counts(),
        }
    )
    return 0


def _generator_config(raw: dict) -> GeneratorConfig:
    kwargs = {
        k: raw[k]
        for k in ("n_a", "n_b", "max_minterms", "max_minterm_size", "idr_probability", "seed")
        if k in raw
    }
    return GeneratorConfig(**kwargs)


def _cmd_gen(args) -> int:
    raw = parse_config_text(Path(args.config).read_text())
    net = gen_network(_generator_config(raw))
    document = format_network(net)
    if args.out:
        Path(args.out).write_text(document)
    _emit(
        {
            "n_a": len(net.entities_a),
            "n_b": len(net.entities_b),
            "idr_count": len(net.rules),
            "out": args.out,
            "dsl": None if args.out else document,
        }
    )
    return 0


def _sweep_from_config(raw: dict) -> list:
    k = int(raw.get("k", 8))
    s_list = tuple(int(v) for v in str(raw.get("s_list", "1,3,5,7")).split(",") if v.strip())
    seeds = [int(v) for v in str(raw.get("seeds", raw.get("seed", "0"))).split(",") if v.strip()]
    base = dict(raw)
    sweep = []
    for seed in seeds:
        base["seed"] = seed
        sweep.append((_generator_config(base), k, s_list))
    return sweep


def _cmd_experiment(args) -> int:
    if args.sweep:
        sweep = _sweep_from_config(parse_config_text(Path(args.sweep).read_text()))
    else:
        sweep = list(DEFAULT_PRESET)
    records = run_experiment(
        sweep, measure_time=not args.no_timings, max_evaluations=args.cap
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "records.csv"
    csv_path.write_text(records_csv(records))
    svg_paths = []
    for instance in sorted({r.instance for r in records}):
        svg_path = out_dir / f"{instance}.svg"
        svg_path.write_text(instance_svg([r for r in records if r.instance == instance]))
        svg_paths.append(str(svg_path))
    _emit({"records": len(records), "csv": str(csv_path), "svg": svg_paths})
    return 0


def _cmd_reduce_setcover(args) -> int:
    universe = [v.strip() for v in args.universe.split(",") if v.strip()]
    subsets = [
        [v.strip() for v in group.split(",") if v.strip()]
        for group in args.subsets.split(";")
        if group.strip()
    ]
    reduction = reduce_setcover(universe, subsets, args.x)
    document = format_network(reduction.network)
    if args.out:
        Path(args.out).write_text(document)
    _emit(
        {
            "attacked": _names(reduction.attacked),
            "s": reduction.s,
            "p_f_target": reduction.p_f_target,
            "out": args.out,
            "dsl": None if args.out else document,
        }
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interdep",
        description="Interdependent-network cascade simulation and rule hardening.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="propagate an initial failure to its fixed point")
    p.add_argument("--net", required=True, help="network file (.idr)")
    p.add_argument("--fail", required=True, help="comma-separated initially failed entities")
    p.add_argument("--trace-csv", help="also write the full 0/1 trace as CSV")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("vulnerable", help="find the k most damaging entities to attack")
    p.add_argument("--net", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("exact", "greedy"), default="exact")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.set_defaults(func=_cmd_vulnerable)

    p = sub.add_parser("aeap", help="allocate auxiliary entities under a hardening budget")
    p.add_argument("--net", required=True)
    p.add_argument("--attacked", required=True, help="comma-separated attacked entities")
    p.add_argument("--s", type=int, required=True, help="number of rules to harden")
    p.add_argument("--method", choices=sorted(_SOLVERS), default="heuristic")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.set_defaults(func=_cmd_aeap)

    p = sub.add_parser("export-lp", help="write the 0/1 program in LP format")
    p.add_argument("--net", required=True)
    p.add_argument("--attacked", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out", required=True, help="LP file path; sidecar JSON lands next to it")
    p.set_defaults(func=_cmd_export_lp)

    p = sub.add_parser("gen", help="generate a synthetic network")
    p.add_argument("--config", required=True, help="key=value config file")
    p.add_argument("--out", help="write the network here instead of embedding it in JSON")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("experiment", help="heuristic-vs-exact sweep with CSV and SVG output")
    p.add_argument("--sweep", help="key=value sweep file (defaults to the built-in preset)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-timings", action="store_true", help="zero ms columns for byte-identical output")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("reduce-setcover", help="encode a set-cover instance as a hardening problem")
    p.add_argument("--universe", required=True, help="comma-separated elements")
    p.add_argument("--subsets", required=True, help="semicolon-separated comma lists")
    p.add_argument("--x", type=int, required=True, help="cover size bound / hardening budget")
    p.add_argument("--out", help="write the network here instead of embedding it in JSON")
    p.set_defaults(func=_cmd_reduce_setcover)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
