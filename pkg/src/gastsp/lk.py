"""Neighborhood local search with growing exchange chains.

The outer loop grows the chain length while improvements keep arriving; an
inner scan tries every chain start position; per (chain length, start) a
sampling loop draws amplification round counts and measures the neighborhood
superposition. Chain length resets to 1 on every improvement.

Two accounting modes exist for the per-pair counters. ``literal_mode``
reproduces the published control flow exactly: the per-pair counter ``k``
advances (by ``n_grover``) and the draw-set exponent ``l`` grows only on
improvement, so a pair with no improving neighbor keeps sampling until the
global budget runs out. The cleaned mode counts every draw in ``k`` (capping
a pair at K draws) and grows ``l`` on failure, resetting it on improvement.
Both are first-class; results are comparable only within one mode.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instances import TspInstance
from .neighborhoods import (
    ExchangeChainSpec,
    NeighborhoodSet,
    enumerate_neighborhood,
    sample_neighborhood_grover,
)
from .records import Incumbent, RoundEvent, RunRecord
from .tours import Tour, cost, route_costs

N_BINDINGS = ("cities", "variables")


@dataclass(frozen=True)
class LkConfig:
    """Knobs of the chain-growth search.

    ``l_max`` defaults to floor(n/2) at run time, the hard limit imposed by
    the state preparation (each swap fixes two route positions). ``l_min``
    is validated and recorded but adds nothing under the published loop
    condition: the loop already scans every length below ``l_max`` before
    it can stop, and ``l_min <= l_max`` is required.

    ``n_binding`` resolves the size symbol in the caps: "cities" uses the
    node count n (caps min(n^2, n^l), budget 5 n^3), "variables" uses n^2.
    """

    l_max: int | None = None
    l_min: int = 1
    lam: float = 1.25
    literal_mode: bool = True
    literal_starts: bool = False
    budget_factor: float = 5.0
    n_binding: str = "cities"

    def __post_init__(self):
        if self.l_max is not None and self.l_max < 1:
            raise ValueError("l_max must be at least 1")
        if self.l_min < 1:
            raise ValueError("l_min must be at least 1")
        if not self.lam > 1.0:
            raise ValueError("lam must exceed 1")
        if not self.budget_factor > 0:
            raise ValueError("budget_factor must be positive")
        if self.n_binding not in N_BINDINGS:
            raise ValueError(f"unknown n_binding {self.n_binding!r}")

    def resolve_l_max(self, n: int) -> int:
        l_max = n // 2 if self.l_max is None else self.l_max
        if not 1 <= self.l_min <= l_max <= n // 2:
            raise ValueError(
                f"need 1 <= l_min <= l_max <= {n // 2}, got l_min={self.l_min}, l_max={l_max}"
            )
        return l_max

    def to_dict(self, n: int) -> dict:
        return {
            "l_max": self.resolve_l_max(n),
            "l_min": self.l_min,
            "lam": self.lam,
            "literal_mode": self.literal_mode,
            "literal_starts": self.literal_starts,
            "budget_factor": self.budget_factor,
            "n_binding": self.n_binding,
        }


def improving_subset(
    instance: TspInstance, neighborhood: NeighborhoodSet, y: float
) -> frozenset[Tour]:
    """Members with cost strictly below y, by direct evaluation."""
    if neighborhood.size == 0:
        raise ValueError("empty neighborhood")
    orders = np.array([m.order for m in neighborhood.members])
    below = route_costs(instance.dist, orders) < y
    return frozenset(m for m, b in zip(neighborhood.members, below) if b)


def run_lk(
    instance: TspInstance,
    initial: Tour,
    config: LkConfig,
    seed: int,
) -> RunRecord:
    """One full chain-growth search; a deterministic function of its arguments."""
    n = instance.n
    if initial.n != n:
        raise ValueError(f"initial tour has {initial.n} nodes, instance has {n}")
    l_max = config.resolve_l_max(n)
    big_n = n if config.n_binding == "cities" else n * n
    budget = config.budget_factor * big_n**3
    rng = np.random.default_rng(seed)

    x = initial
    y = cost(instance, x)
    events: list[RoundEvent] = []
    incumbents = [Incumbent(cost=y, order=x.order, k_total=0)]
    k_total = 0
    improving_cache: dict[tuple[ExchangeChainSpec, float], frozenset[Tour]] = {}

    l_chain = 0
    improvement = False
    while improvement or l_chain < l_max:
        improvement = False
        l_chain += 1
        cap = min(big_n**2, big_n**l_chain)
        starts = range(1, n - 1) if config.literal_starts else range(1, n)
        for i in starts:
            k = 0
            l = 0
            while k < cap and k_total <= budget:
                hi = math.ceil(config.lam**l)
                j = int(rng.integers(0, hi + 1))
                spec = ExchangeChainSpec(reference=x, start_index=i, length=l_chain)
                nh = enumerate_neighborhood(spec)
                key = (spec, y)
                improving = improving_cache.get(key)
                if improving is None:
                    improving = improving_subset(instance, nh, y)
                    improving_cache[key] = improving
                z = sample_neighborhood_grover(spec, improving, j, rng, neighborhood=nh)
                c = cost(instance, z)
                improved = c < y
                k_total += j
                events.append(
                    RoundEvent(
                        r=l, n_grover=j, cost=c, improved=improved,
                        l_chain=l_chain, start_index=i,
                    )
                )
                if improved:
                    improvement = True
                    x, y = z, c
                    l_chain = 1
                    incumbents.append(Incumbent(cost=c, order=z.order, k_total=k_total))
                    if config.literal_mode:
                        k += j
                        l += 1
                    else:
                        l = 0
                elif not config.literal_mode:
                    l += 1
                if not config.literal_mode:
                    k += 1

    stop_reason = "budget" if k_total > budget else "chain_limit"
    return RunRecord(
        engine="lk",
        instance_name=instance.name,
        n=n,
        seed=int(seed),
        strategy={"kind": "lk", "lam": config.lam},
        termination=config.to_dict(n),
        initial_cost=incumbents[0].cost,
        initial_order=initial.order,
        events=tuple(events),
        incumbents=tuple(incumbents),
        k_total=k_total,
        final_cost=y,
        final_order=x.order,
        stop_reason=stop_reason,
    )
