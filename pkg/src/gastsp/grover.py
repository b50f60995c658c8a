"""Measurement statistics of amplitude amplification, iteration-count
strategies, and termination rules for the threshold search loop.

With ``M`` marked states in a uniform superposition over ``N_s`` feasible
states, applying ``j`` amplification rounds and measuring yields a marked
state with probability sin^2((2j+1) * theta) where sin^2(theta) = M / N_s.
The engines never build the operator; they draw a Bernoulli outcome from
this closed form and, on success, sample uniformly among the marked states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

STRATEGY_KINDS = ("original", "fixed", "incremental")
TERMINATION_KINDS = ("rounds", "budget", "failures")
SCALING_KINDS = ("constant", "linear", "quadratic", "log")


def grover_angle(space_size: int, marked: int) -> float:
    """theta with sin^2(theta) = marked / space_size, clamped for float safety."""
    if space_size < 1:
        raise ValueError("space_size must be positive")
    if not 0 <= marked <= space_size:
        raise ValueError(f"marked={marked} outside [0, {space_size}]")
    ratio = min(max(marked / space_size, 0.0), 1.0)
    return math.asin(math.sqrt(ratio))


def success_probability(space_size: int, marked: int, iterations: int) -> float:
    """Probability of measuring a marked state after ``iterations`` rounds."""
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    theta = grover_angle(space_size, marked)
    return math.sin((2 * iterations + 1) * theta) ** 2


def average_success_probability(space_size: int, marked: int, draws: int) -> float:
    """Mean success probability when the round count is uniform on {0..draws-1}.

    Closed form 1/2 - sin(4 m theta) / (4 m sin(2 theta)); once
    ``draws >= 1 / sin(2 theta)`` this mean is at least 1/4, which is what
    makes the randomized round counts of the search loop effective.
    """
    if draws < 1:
        raise ValueError("draws must be positive")
    if not 1 <= marked < space_size:
        raise ValueError("requires 1 <= marked < space_size")
    theta = grover_angle(space_size, marked)
    return 0.5 - math.sin(4 * draws * theta) / (4 * draws * math.sin(2 * theta))


def critical_draw_count(space_size: int, marked: int) -> int:
    """Smallest integer m with m >= 1 / sin(2 theta)."""
    theta = grover_angle(space_size, marked)
    return math.ceil(1.0 / math.sin(2 * theta))


@dataclass(frozen=True)
class StrategyConfig:
    """How many amplification rounds to apply at failure count ``r``.

    kinds:
      original    -- uniform draw from {0 .. ceil(lam**r)}; the ceiling grows
                     geometrically with every failed measurement.
      fixed       -- uniform draw from {0 .. m-1} with
                     m = ceil(pi / (4 * asin(sqrt(1 / space_size)))), the
                     worst case of a single marked state; independent of r.
      incremental -- deterministic floor(pi / (4 * asin(sqrt(2**(1 - r))))),
                     tracking an assumed halving of the marked fraction.
    """

    kind: str
    lam: float = 1.25

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if not self.lam > 1.0:
            raise ValueError("lam must exceed 1")


def draw_iterations(
    strategy: StrategyConfig, r: int, space_size: int, rng: np.random.Generator
) -> int:
    """Round count for the r-th consecutive failure (r starts at 1)."""
    if r < 1:
        raise ValueError("r starts at 1")
    if strategy.kind == "original":
        hi = math.ceil(strategy.lam ** r)
        return int(rng.integers(0, hi + 1))
    if strategy.kind == "fixed":
        theta_min = math.asin(math.sqrt(1.0 / space_size))
        hi = max(math.ceil(math.pi / (4.0 * theta_min)) - 1, 0)
        return int(rng.integers(0, hi + 1))
    theta_r = math.asin(math.sqrt(2.0 ** (1 - r)))
    x = math.pi / (4.0 * theta_r)
    # r=2 lands exactly on 1 (theta = pi/4); keep the floor from losing such
    # boundaries to the last bit of asin
    return int(math.floor(x + 4.0 * math.ulp(x)))


@dataclass(frozen=True)
class TerminationRule:
    """When to stop the threshold search.

    kinds:
      rounds   -- stop once the failure streak since the last improvement
                  reaches the bound.
      failures -- same trigger as ``rounds``; kept as a distinct name so run
                  records state which knob produced the bound.
      budget   -- stop once the cumulative amplification-round total reaches
                  the bound.

    The bound is ``value`` scaled by the binary-variable count N = n^2:
    constant -> value, linear -> value * N, quadratic -> value * N^2,
    log -> log base ``lam`` of N**value. Bounds round up and are clamped
    to at least 1.
    """

    kind: str
    scaling: str = "constant"
    value: float = 1.0
    lam: float = 1.25

    def __post_init__(self):
        if self.kind not in TERMINATION_KINDS:
            raise ValueError(f"unknown termination kind {self.kind!r}")
        if self.scaling not in SCALING_KINDS:
            raise ValueError(f"unknown scaling {self.scaling!r}")
        if not self.value > 0:
            raise ValueError("value must be positive")
        if not self.lam > 1.0:
            raise ValueError("lam must exceed 1")

    def resolve_bound(self, n: int) -> int:
        big_n = n * n
        if self.scaling == "constant":
            raw = self.value
        elif self.scaling == "linear":
            raw = self.value * big_n
        elif self.scaling == "quadratic":
            raw = self.value * big_n * big_n
        else:
            raw = self.value * math.log(big_n) / math.log(self.lam)
        return max(math.ceil(raw), 1)

    def label(self) -> str:
        """Stable textual form used in run records, bench tables, and the CLI.

        Examples: "rounds:5", "rounds:logn4" (log scaling, value 2 means
        log base lam of n^4), "budget:linear:3".
        """
        if self.scaling == "constant":
            return f"{self.kind}:{self.value:g}"
        if self.scaling == "log":
            return f"{self.kind}:logn{2 * self.value:g}"
        return f"{self.kind}:{self.scaling}:{self.value:g}"


def check_termination(
    rule: TerminationRule, *, n: int, rounds_in_step: int, k_total: int
) -> bool:
    """Evaluated before each round; a fresh search never terminates here."""
    bound = rule.resolve_bound(n)
    if rule.kind == "budget":
        return k_total >= bound
    return rounds_in_step >= bound
