"""Command-line entry points.

Subcommands: gen, exact, enumerate, run-gas, run-lk, bench, neighborhood,
circuit-check. Exit codes: 0 success, 2 configuration or input error,
3 problem size beyond exact-oracle capability.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bench import (
    DEFAULT_TERMINATIONS,
    ExperimentConfig,
    aggregate_records,
    make_instances,
    parse_strategy,
    parse_termination,
    run_grid,
    summary_csv_text,
)
from .circuits import (
    build_neighborhood_circuit,
    decode_support,
    gates_to_json,
    prepare_neighborhood_state,
)
from .errors import CapabilityError
from .gas import run_gas
from .exact import (
    enumerate_good_states,
    good_states_to_json,
    held_karp_optimum,
    instance_hash,
)
from .instances import ParseError, TspInstance, from_json, to_json
from .lk import LkConfig, run_lk
from .neighborhoods import ExchangeChainSpec, enumerate_neighborhood, estimated_size
from .records import write_jsonl
from .tours import Tour, cost, greedy_tour


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(p) for p in text.split(",") if p)
    except ValueError as exc:
        raise ValueError(f"bad size list {text!r}") from exc
    if not sizes:
        raise ValueError("empty size list")
    return sizes


def _parse_order(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p)
    except ValueError as exc:
        raise ValueError(f"bad tour {text!r}") from exc


def _load_instance(path: str) -> TspInstance:
    return from_json(Path(path).read_text())


def _reference_tour(args) -> Tour:
    if args.reference:
        return Tour(order=_parse_order(args.reference))
    return Tour(order=tuple(range(args.n)))


def cmd_gen(args) -> int:
    config = ExperimentConfig(
        sizes=_parse_sizes(args.sizes),
        per_size=args.per_size,
        root_seed=args.seed,
    )
    out = Path(args.out) / "instances"
    out.mkdir(parents=True, exist_ok=True)
    for inst in make_instances(config):
        (out / f"{inst.name}.json").write_text(to_json(inst) + "\n")
    print(f"wrote {len(config.sizes) * config.per_size} instances to {out}")
    return 0


def cmd_exact(args) -> int:
    for path in args.instance:
        inst = _load_instance(path)
        tour, optimum = held_karp_optimum(inst)
        doc = {"name": inst.name, "optimum": optimum, "order": list(tour.order)}
        line = json.dumps(doc, sort_keys=True)
        if args.out:
            out = Path(args.out) / "optima"
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{inst.name}.json").write_text(line + "\n")
        print(line)
    return 0


def cmd_enumerate(args) -> int:
    inst = _load_instance(args.instance)
    threshold = args.threshold if args.threshold is not None else cost(inst, greedy_tour(inst))
    gss = enumerate_good_states(inst, threshold)
    digest = instance_hash(inst)
    text = good_states_to_json(gss, digest)
    if args.out:
        out = Path(args.out) / "cache"
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{digest}.json").write_text(text + "\n")
    print(
        json.dumps(
            {
                "instance": inst.name,
                "threshold": gss.threshold,
                "classes": gss.entry_count,
                "marked": gss.marked_count(threshold),
                "space_size": gss.space_size,
            },
            sort_keys=True,
        )
    )
    return 0


def cmd_run_gas(args) -> int:
    inst = _load_instance(args.instance)
    strategy = parse_strategy(args.strategy, lam=args.lam)
    termination = parse_termination(args.termination, lam=args.lam)
    record = run_gas(inst, strategy, termination, seed=args.seed)
    text = record.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return 0


def cmd_run_lk(args) -> int:
    inst = _load_instance(args.instance)
    config = LkConfig(
        l_max=args.l_max,
        l_min=args.l_min,
        lam=args.lam,
        literal_mode=not args.cleaned,
        literal_starts=args.literal_starts,
        budget_factor=args.budget_factor,
        n_binding=args.n_binding,
    )
    initial = (
        Tour(order=_parse_order(args.initial)) if args.initial else greedy_tour(inst)
    )
    record = run_lk(inst, initial, config, seed=args.seed)
    text = record.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return 0


def cmd_bench(args) -> int:
    strategies = tuple(parse_strategy(s, lam=args.lam) for s in args.strategies.split(","))
    if args.terminations:
        terminations = tuple(
            parse_termination(t, lam=args.lam) for t in args.terminations.split(",")
        )
    else:
        terminations = DEFAULT_TERMINATIONS
    config = ExperimentConfig(
        sizes=_parse_sizes(args.sizes),
        per_size=args.per_size,
        trials=args.trials,
        root_seed=args.seed,
        strategies=strategies,
        terminations=terminations,
        workers=args.workers,
    )
    out = Path(args.out)
    (out / "instances").mkdir(parents=True, exist_ok=True)
    instances = make_instances(config)
    for inst in instances:
        (out / "instances" / f"{inst.name}.json").write_text(to_json(inst) + "\n")
    records = run_grid(config, instances)
    write_jsonl(out / "records.jsonl", records)
    rows = aggregate_records(records)
    (out / "summary_ratio.csv").write_text(summary_csv_text(rows, "ratio"))
    (out / "summary_iters.csv").write_text(summary_csv_text(rows, "iters"))
    print(
        json.dumps(
            {"records": len(records), "cells": len(rows), "out": str(out)}, sort_keys=True
        )
    )
    return 0


def cmd_neighborhood(args) -> int:
    reference = _reference_tour(args)
    spec = ExchangeChainSpec(
        reference=reference, start_index=args.start, length=args.length
    )
    nh = enumerate_neighborhood(spec)
    print(
        json.dumps(
            {
                "reference": list(reference.order),
                "start_index": args.start,
                "length": args.length,
                "size": nh.size,
                "estimate": estimated_size(reference.n, args.length),
                "members": [list(m.order) for m in nh.members],
            },
            sort_keys=True,
        )
    )
    return 0


def cmd_circuit_check(args) -> int:
    reference = _reference_tour(args)
    n = reference.n
    state = prepare_neighborhood_state(reference, args.start, args.length)
    support = decode_support(state, n)
    spec = ExchangeChainSpec(
        reference=reference, start_index=args.start, length=args.length
    )
    expected = set(enumerate_neighborhood(spec).members)
    got = set(support)
    mags = np.array([abs(a) for a in support.values()])
    uniform = 1.0 / np.sqrt(len(support)) if support else 0.0
    doc = {
        "qubits": n * n,
        "gates": len(build_neighborhood_circuit(reference, args.start, args.length)),
        "support_size": len(got),
        "expected_size": len(expected),
        "support_matches": got == expected,
        "norm_error": abs(state.norm() - 1.0),
        "max_amplitude_deviation": float(np.max(np.abs(mags - uniform))) if support else 0.0,
    }
    if args.dump_gates:
        print(gates_to_json(build_neighborhood_circuit(reference, args.start, args.length)))
    print(json.dumps(doc, sort_keys=True))
    return 0 if doc["support_matches"] and doc["norm_error"] < 1e-10 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gastsp",
        description="Classical workbench for threshold search over TSP tours",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate random instances")
    p.add_argument("--sizes", default="8,10,12")
    p.add_argument("--per-size", type=int, default=5)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", default="bench-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("exact", help="solve instances exactly")
    p.add_argument("instance", nargs="+")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("enumerate", help="enumerate below-threshold tour classes")
    p.add_argument("instance")
    p.add_argument("--threshold", type=float, default=None,
                   help="defaults to the greedy tour cost")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("run-gas", help="one threshold-search run")
    p.add_argument("instance")
    p.add_argument("--strategy", default="original",
                   choices=["original", "fixed", "incremental"])
    p.add_argument("--termination", default="rounds:logn4",
                   help="rounds:R | rounds:lognK | budget:B | failures:r")
    p.add_argument("--lambda", dest="lam", type=float, default=1.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_run_gas)

    p = sub.add_parser("run-lk", help="one chain-growth neighborhood run")
    p.add_argument("instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--l-max", type=int, default=None)
    p.add_argument("--l-min", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=float, default=1.25)
    p.add_argument("--cleaned", action="store_true",
                   help="count every draw and grow the draw set on failures")
    p.add_argument("--literal-starts", action="store_true",
                   help="scan chain starts 1..n-2 instead of 1..n-1")
    p.add_argument("--budget-factor", type=float, default=5.0)
    p.add_argument("--n-binding", default="cities", choices=["cities", "variables"])
    p.add_argument("--initial", default=None, help="comma-separated tour, default greedy")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_run_lk)

    p = sub.add_parser("bench", help="full sweep with CSV summaries")
    p.add_argument("--sizes", default="8,10,12")
    p.add_argument("--per-size", type=int, default=5)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--strategies", default="original,fixed,incremental")
    p.add_argument("--terminations", default=None,
                   help="comma-separated rules, default rounds:5,rounds:logn2,rounds:logn4")
    p.add_argument("--lambda", dest="lam", type=float, default=1.25)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("neighborhood", help="dump an exchange-chain neighborhood")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--reference", default=None, help="comma-separated tour")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--length", type=int, default=1)
    p.set_defaults(func=cmd_neighborhood)

    p = sub.add_parser("circuit-check", help="verify state preparation support")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--reference", default=None, help="comma-separated tour")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--length", type=int, default=1)
    p.add_argument("--dump-gates", action="store_true")
    p.set_defaults(func=cmd_circuit_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ParseError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
