"""Threshold search over the space of all feasible tours.

Starting from a greedy tour with cost y, each round draws an amplification
round count from the configured strategy, flips a coin with the closed-form
success probability for the current number of below-threshold states, and
on success adopts a uniformly sampled improving tour as the new incumbent.
The below-threshold states are enumerated once at the initial threshold;
later thresholds only shrink the marked prefix of that enumeration.
"""
from __future__ import annotations

import numpy as np

from .exact import GoodStateSet, enumerate_good_states
from .grover import (
    StrategyConfig,
    TerminationRule,
    check_termination,
    draw_iterations,
    success_probability,
)
from .instances import TspInstance
from .records import Incumbent, RoundEvent, RunRecord
from .tours import cost, greedy_tour


def strategy_to_dict(strategy: StrategyConfig) -> dict:
    return {"kind": strategy.kind, "lam": strategy.lam}


def termination_to_dict(rule: TerminationRule, n: int) -> dict:
    return {
        "kind": rule.kind,
        "scaling": rule.scaling,
        "value": rule.value,
        "lam": rule.lam,
        "label": rule.label(),
        "bound": rule.resolve_bound(n),
    }


def run_gas(
    instance: TspInstance,
    strategy: StrategyConfig,
    termination: TerminationRule,
    seed: int,
    good_states: GoodStateSet | None = None,
    start: int = 0,
) -> RunRecord:
    """One full threshold search; a deterministic function of its arguments.

    ``good_states`` may carry a pre-enumerated set (its threshold must cover
    the greedy cost); otherwise enumeration runs here.
    """
    rng = np.random.default_rng(seed)
    x0 = greedy_tour(instance, start=start)
    y0 = cost(instance, x0)
    gss = good_states if good_states is not None else enumerate_good_states(instance, y0)
    if y0 > gss.threshold:
        raise ValueError(
            f"good-state set enumerated below the initial cost ({gss.threshold} < {y0})"
        )
    space = gss.space_size

    x, y = x0, y0
    events: list[RoundEvent] = []
    incumbents = [Incumbent(cost=y0, order=x0.order, k_total=0)]
    k_total = 0
    rounds_in_step = 0

    while not check_termination(
        termination, n=instance.n, rounds_in_step=rounds_in_step, k_total=k_total
    ):
        r = rounds_in_step + 1
        j = draw_iterations(strategy, r, space, rng)
        marked = gss.marked_count(y)
        p = success_probability(space, marked, j)
        k_total += j
        if rng.random() < p:
            z = gss.sample_marked(y, rng)
            c = cost(instance, z)
            if not c < y:
                raise RuntimeError("sampled state does not beat the incumbent")
            events.append(RoundEvent(r=r, n_grover=j, cost=c, improved=True))
            x, y = z, c
            rounds_in_step = 0
            incumbents.append(Incumbent(cost=c, order=z.order, k_total=k_total))
        else:
            events.append(RoundEvent(r=r, n_grover=j, cost=None, improved=False))
            rounds_in_step += 1

    return RunRecord(
        engine="gas",
        instance_name=instance.name,
        n=instance.n,
        seed=int(seed),
        strategy=strategy_to_dict(strategy),
        termination=termination_to_dict(termination, instance.n),
        initial_cost=y0,
        initial_order=x0.order,
        events=tuple(events),
        incumbents=tuple(incumbents),
        k_total=k_total,
        final_cost=y,
        final_order=x.order,
        stop_reason=termination.kind,
    )


def approximation_ratio(record: RunRecord, optimum: float) -> float:
    """Relative excess of the final cost over the optimum; 0 means optimal."""
    if not optimum > 0:
        raise ValueError("optimum must be positive")
    return (record.final_cost - optimum) / optimum
