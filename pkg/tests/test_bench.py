"""Grid orchestration: seed derivation, determinism, aggregation, CSV."""
import math

import numpy as np
import pytest

from gastsp import (
    ExperimentConfig,
    StrategyConfig,
    TerminationRule,
    aggregate_records,
    approximation_ratio,
    child_seed,
    generate_random,
    held_karp_optimum,
    instance_seed,
    make_instances,
    parse_strategy,
    parse_termination,
    run_gas,
    run_grid,
    summary_csv_text,
)

TINY = ExperimentConfig(sizes=(5, 6), per_size=2, trials=3, root_seed=11)


def test_seed_derivation_is_stable_and_sensitive():
    strat = StrategyConfig(kind="original")
    s = child_seed(7, "rand-n8-0", strat, 0)
    assert s == child_seed(7, "rand-n8-0", strat, 0)
    assert s != child_seed(7, "rand-n8-0", strat, 1)
    assert s != child_seed(7, "rand-n8-1", strat, 0)
    assert s != child_seed(8, "rand-n8-0", strat, 0)
    assert s != child_seed(7, "rand-n8-0", StrategyConfig(kind="fixed"), 0)
    assert 0 <= s < 2 ** 64
    assert instance_seed(7, 8, 0) != instance_seed(7, 8, 1)


def test_termination_is_not_part_of_the_seed_key():
    # same trial under a stricter and a looser rule shares its entire random
    # stream, so the stricter run's events are a prefix of the looser run's
    inst = generate_random(6, seed=32)
    strat = StrategyConfig(kind="original")
    seed = child_seed(3, inst.name, strat, 0)
    strict = run_gas(inst, strat, TerminationRule(kind="rounds", value=5), seed)
    loose = run_gas(inst, strat, TerminationRule(kind="rounds", scaling="log", value=2), seed)
    assert len(loose.events) >= len(strict.events)
    assert loose.events[: len(strict.events)] == strict.events
    assert loose.final_cost <= strict.final_cost
    assert loose.k_total >= strict.k_total


def test_make_instances_names_and_determinism():
    insts = make_instances(TINY)
    assert [i.name for i in insts] == ["rand-n5-0", "rand-n5-1", "rand-n6-0", "rand-n6-1"]
    again = make_instances(TINY)
    assert all(a == b for a, b in zip(insts, again))
    other = make_instances(ExperimentConfig(sizes=(5, 6), per_size=2, trials=3, root_seed=12))
    assert insts[0] != other[0]


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(per_size=0)
    with pytest.raises(ValueError):
        ExperimentConfig(sizes=())
    with pytest.raises(ValueError):
        ExperimentConfig(workers=0)


def test_run_grid_deterministic_and_sorted():
    a = run_grid(TINY)
    b = run_grid(TINY)
    assert len(a) == 2 * 2 * 3 * 3 * 3
    assert [r.to_json() for r in a] == [r.to_json() for r in b]
    keys = [
        (r.n, r.instance_name, r.strategy["kind"], r.termination["label"], r.extra["trial"])
        for r in a
    ]
    assert keys == sorted(keys)
    for r in a:
        assert r.extra["ratio"] == approximation_ratio(r, r.extra["optimum"])
        assert r.extra["optimum"] > 0


def test_run_grid_worker_count_is_invisible():
    serial = run_grid(TINY)
    parallel = run_grid(ExperimentConfig(sizes=(5, 6), per_size=2, trials=3, root_seed=11, workers=2))
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]


def test_grid_seeds_follow_the_derivation():
    records = run_grid(TINY)
    for r in records:
        strat = StrategyConfig(kind=r.strategy["kind"], lam=r.strategy["lam"])
        assert r.seed == child_seed(TINY.root_seed, r.instance_name, strat, r.extra["trial"])


def test_aggregate_matches_manual_statistics():
    records = run_grid(TINY)
    rows = aggregate_records(records)
    assert len(rows) == 2 * 3 * 3  # sizes x strategies x terminations
    by_key = {(row.size, row.strategy, row.termination): row for row in rows}
    cell = [
        r for r in records
        if r.n == 5 and r.strategy["kind"] == "original" and r.termination["label"] == "rounds:5"
    ]
    assert len(cell) == 2 * 3  # per_size instances x trials
    ratios = [approximation_ratio(r, r.extra["optimum"]) for r in cell]
    iters = [float(r.k_total) for r in cell]
    row = by_key[(5, "original", "rounds:5")]
    assert row.trials == len(cell)
    assert row.ratio_mean == pytest.approx(np.mean(ratios), rel=1e-15)
    assert row.ratio_stddev == pytest.approx(np.std(ratios, ddof=1), rel=1e-15)
    assert row.iters_mean == pytest.approx(np.mean(iters), rel=1e-15)
    assert row.iters_stddev == pytest.approx(np.std(iters, ddof=1), rel=1e-15)


def test_summary_csv_shape():
    rows = aggregate_records(run_grid(TINY))
    text = summary_csv_text(rows, "ratio")
    lines = text.splitlines()
    assert lines[0] == "# schema: gastsp-summary/1"
    assert lines[1] == "size,strategy,termination,mean,stddev,trials"
    assert len(lines) == 2 + len(rows)
    first = lines[2].split(",")
    assert first[0] == "5"
    assert first[1] in ("original", "fixed", "incremental")
    float(first[3]), float(first[4])  # repr round-trips
    int(first[5])
    iters_text = summary_csv_text(rows, "iters")
    assert iters_text != text
    with pytest.raises(ValueError, match="metric"):
        summary_csv_text(rows, "speed")


def test_csv_floats_round_trip_exactly():
    rows = aggregate_records(run_grid(TINY))
    text = summary_csv_text(rows, "iters")
    for row, line in zip(rows, text.splitlines()[2:]):
        cells = line.split(",")
        assert float(cells[3]) == row.iters_mean
        assert float(cells[4]) == row.iters_stddev


def test_parse_strategy():
    assert parse_strategy("fixed").kind == "fixed"
    assert parse_strategy("original", lam=1.5).lam == 1.5
    with pytest.raises(ValueError):
        parse_strategy("bogus")


def test_parse_termination_round_trips():
    cases = ["rounds:5", "rounds:logn2", "rounds:logn4", "budget:linear:3",
             "failures:7", "budget:quadratic:2", "budget:1000"]
    for text in cases:
        rule = parse_termination(text)
        assert rule.label() == text
    rule = parse_termination("rounds:logn4")
    assert rule.scaling == "log" and rule.value == 2.0
    assert parse_termination("rounds:logn2").value == 1.0
    assert parse_termination("rounds:5", lam=2.0).lam == 2.0


def test_parse_termination_rejects_garbage():
    for bad in ["rounds", "rounds:linear", "rounds:logn0", "rounds:lognx", "bogus:5", "rounds:"]:
        with pytest.raises(ValueError):
            parse_termination(bad)


def test_log_bound_resolution_used_by_grid():
    rule = parse_termination("rounds:logn4")
    n = 8
    assert rule.resolve_bound(n) == math.ceil(2 * math.log(n * n) / math.log(1.25))
