"""Experiment orchestration: instance sets, sweep grids, and summaries.

Seed derivation is fixed so results reproduce across machines: the seed of
one run is the first 8 bytes (big endian) of
sha256("{root_seed}|{instance_name}|{strategy_kind}:{lam}|{trial}").
Termination is deliberately absent from the key: runs differing only in the
termination rule share their random stream, so a looser rule continues
exactly where a stricter one stopped instead of resampling a fresh
trajectory. Instance generation seeds come from
sha256("{root_seed}|instance|{size}|{index}") the same way.
"""
from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .exact import enumerate_good_states, held_karp_optimum
from .gas import approximation_ratio, run_gas
from .grover import StrategyConfig, TerminationRule
from .instances import TspInstance, generate_random
from .records import RunRecord
from .tours import cost, greedy_tour

SUMMARY_SCHEMA = "gastsp-summary/1"
SUMMARY_COLUMNS = ("size", "strategy", "termination", "mean", "stddev", "trials")

DEFAULT_STRATEGIES = (
    StrategyConfig(kind="original"),
    StrategyConfig(kind="fixed"),
    StrategyConfig(kind="incremental"),
)
DEFAULT_TERMINATIONS = (
    TerminationRule(kind="rounds", scaling="constant", value=5),
    TerminationRule(kind="rounds", scaling="log", value=1),
    TerminationRule(kind="rounds", scaling="log", value=2),
)


def _digest_seed(text: str) -> int:
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def child_seed(root_seed: int, instance_name: str, strategy: StrategyConfig, trial: int) -> int:
    return _digest_seed(f"{root_seed}|{instance_name}|{strategy.kind}:{strategy.lam:g}|{trial}")


def instance_seed(root_seed: int, size: int, index: int) -> int:
    return _digest_seed(f"{root_seed}|instance|{size}|{index}")


@dataclass(frozen=True)
class ExperimentConfig:
    sizes: tuple[int, ...] = (8, 10, 12)
    per_size: int = 5
    trials: int = 25
    root_seed: int = 7
    strategies: tuple[StrategyConfig, ...] = DEFAULT_STRATEGIES
    terminations: tuple[TerminationRule, ...] = DEFAULT_TERMINATIONS
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.per_size < 1:
            raise ValueError("per_size must be at least 1")
        if not self.sizes:
            raise ValueError("need at least one size")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


def make_instances(config: ExperimentConfig) -> list[TspInstance]:
    return [
        generate_random(
            n=size,
            seed=instance_seed(config.root_seed, size, idx),
            name=f"rand-n{size}-{idx}",
        )
        for size in config.sizes
        for idx in range(config.per_size)
    ]


def _run_instance_block(args) -> list[RunRecord]:
    """All runs for one instance; the enumeration happens once here."""
    instance, strategies, terminations, trials, root_seed = args
    _, optimum = held_karp_optimum(instance)
    y0 = cost(instance, greedy_tour(instance))
    gss = enumerate_good_states(instance, y0)
    out = []
    for strategy in strategies:
        for termination in terminations:
            for trial in range(trials):
                seed = child_seed(root_seed, instance.name, strategy, trial)
                rec = run_gas(instance, strategy, termination, seed, good_states=gss)
                ratio = approximation_ratio(rec, optimum)
                out.append(replace(rec, extra={"optimum": optimum, "ratio": ratio, "trial": trial}))
    return out


def run_grid(config: ExperimentConfig, instances: list[TspInstance] | None = None) -> list[RunRecord]:
    """Execute the whole grid; records come back canonically sorted.

    Parallelism is per instance; ordering is restored afterwards so output
    bytes do not depend on worker count.
    """
    if instances is None:
        instances = make_instances(config)
    blocks = [
        (inst, config.strategies, config.terminations, config.trials, config.root_seed)
        for inst in instances
    ]
    if config.workers == 1:
        results = [_run_instance_block(b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_instance_block, blocks))
    records = [rec for block in results for rec in block]
    records.sort(
        key=lambda r: (
            r.n,
            r.instance_name,
            r.strategy["kind"],
            r.termination["label"],
            r.extra.get("trial", 0),
        )
    )
    return records


@dataclass(frozen=True)
class SummaryRow:
    size: int
    strategy: str
    termination: str
    ratio_mean: float
    ratio_stddev: float
    iters_mean: float
    iters_stddev: float
    trials: int


def aggregate_records(records: list[RunRecord]) -> list[SummaryRow]:
    """Group (size, strategy, termination) cells into summary statistics.

    A pure function of the records: ratios are recomputed from each record's
    final cost and stored optimum, not read from a side channel.
    """
    groups: dict[tuple[int, str, str], list[RunRecord]] = {}
    for rec in records:
        key = (rec.n, rec.strategy["kind"], rec.termination["label"])
        groups.setdefault(key, []).append(rec)
    rows = []
    for (size, strategy, termination), recs in sorted(groups.items()):
        ratios = np.array([approximation_ratio(r, r.extra["optimum"]) for r in recs])
        iters = np.array([float(r.k_total) for r in recs])
        rows.append(
            SummaryRow(
                size=size,
                strategy=strategy,
                termination=termination,
                ratio_mean=float(ratios.mean()),
                ratio_stddev=float(ratios.std(ddof=1)) if len(recs) > 1 else 0.0,
                iters_mean=float(iters.mean()),
                iters_stddev=float(iters.std(ddof=1)) if len(recs) > 1 else 0.0,
                trials=len(recs),
            )
        )
    return rows


def summary_csv_text(rows: list[SummaryRow], metric: str) -> str:
    """Render one figure family's CSV; ``metric`` is "ratio" or "iters"."""
    if metric not in ("ratio", "iters"):
        raise ValueError(f"unknown metric {metric!r}")
    lines = [f"# schema: {SUMMARY_SCHEMA}", ",".join(SUMMARY_COLUMNS)]
    for row in rows:
        mean = row.ratio_mean if metric == "ratio" else row.iters_mean
        std = row.ratio_stddev if metric == "ratio" else row.iters_stddev
        lines.append(
            f"{row.size},{row.strategy},{row.termination},{mean!r},{std!r},{row.trials}"
        )
    return "\n".join(lines) + "\n"


def parse_strategy(text: str, lam: float = 1.25) -> StrategyConfig:
    return StrategyConfig(kind=text, lam=lam)


def parse_termination(text: str, lam: float = 1.25) -> TerminationRule:
    """Parse CLI forms: kind:number, kind:lognK, kind:linear:c, kind:quadratic:c."""
    parts = text.split(":")
    if len(parts) < 2:
        raise ValueError(f"termination {text!r} must look like kind:amount")
    kind, rest = parts[0], parts[1:]
    if rest[0] in ("linear", "quadratic"):
        if len(rest) != 2:
            raise ValueError(f"termination {text!r} needs a value after {rest[0]}")
        return TerminationRule(kind=kind, scaling=rest[0], value=float(rest[1]), lam=lam)
    if rest[0].startswith("logn"):
        power = float(rest[0][4:])
        if power <= 0 or not math.isfinite(power):
            raise ValueError(f"termination {text!r}: bad exponent")
        return TerminationRule(kind=kind, scaling="log", value=power / 2.0, lam=lam)
    return TerminationRule(kind=kind, scaling="constant", value=float(rest[0]), lam=lam)
