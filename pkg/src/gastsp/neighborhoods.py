"""Exchange-chain neighborhoods of a reference tour.

A neighborhood is defined by a reference tour, a start timestep ``i0``, and
a chain length ``l``: the chain covers the ``l`` consecutive timesteps
``i0, i0+1, ..., i0+l-1`` (wrapping around). Members are the tours obtained
by applying a set of pairwise-disjoint position swaps such that

* every chain position takes part in some swap (a swap with both endpoints
  inside the chain accounts for two positions at once),
* every swap touches at least one chain position, and
* positions outside all swaps keep their reference node.

For ``l = 1`` this yields the n-1 single-swap neighbors. Each swap pins two
route positions, which is why chains longer than floor(n/2) are rejected.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .grover import success_probability
from .tours import Tour


@dataclass(frozen=True)
class ExchangeChainSpec:
    reference: Tour
    start_index: int
    length: int

    def __post_init__(self):
        n = self.reference.n
        if not 0 <= self.start_index < n:
            raise ValueError(f"start_index {self.start_index} outside [0, {n})")
        if not 1 <= self.length <= n // 2:
            raise ValueError(
                f"chain length {self.length} outside [1, {n // 2}]:"
                " each swap fixes two route positions"
            )

    @property
    def chain_positions(self) -> tuple[int, ...]:
        n = self.reference.n
        return tuple((self.start_index + k) % n for k in range(self.length))


@dataclass(frozen=True)
class NeighborhoodSet:
    spec: ExchangeChainSpec
    members: tuple[Tour, ...]

    def __post_init__(self):
        object.__setattr__(self, "_member_set", frozenset(self.members))

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, tour: Tour) -> bool:
        return tour in self._member_set


@lru_cache(maxsize=4096)
def enumerate_neighborhood(spec: ExchangeChainSpec) -> NeighborhoodSet:
    """All members of the exchange-chain neighborhood, lexicographically sorted.

    Swap sets are enumerated as matchings: the first not-yet-covered chain
    position pairs with any unused position, which visits every valid set
    exactly once. Results are deduplicated defensively even though distinct
    swap sets provably produce distinct tours.
    """
    ref = list(spec.reference.order)
    n = len(ref)
    chain = spec.chain_positions
    out: set[tuple[int, ...]] = set()

    def rec(used: frozenset[int], swaps: tuple[tuple[int, int], ...]):
        c = next((pos for pos in chain if pos not in used), None)
        if c is None:
            order = ref[:]
            for a, b in swaps:
                order[a], order[b] = order[b], order[a]
            out.add(tuple(order))
            return
        for p in range(n):
            if p != c and p not in used:
                rec(used | {c, p}, swaps + ((c, p),))

    rec(frozenset(), ())
    members = tuple(Tour(order=o) for o in sorted(out))
    return NeighborhoodSet(spec=spec, members=members)


def neighborhood_size(n: int, start_index: int, length: int) -> int:
    """Exact member count, measured by enumeration on a stand-in reference.

    The count depends only on (n, length); the reference permutation and the
    start index merely relabel members.
    """
    spec = ExchangeChainSpec(
        reference=Tour(order=tuple(range(n))), start_index=start_index, length=length
    )
    return enumerate_neighborhood(spec).size


def estimated_size(n: int, length: int) -> int:
    """Closed-form size estimate (n-1)!/(n-1-l)!.

    Kept only for comparison against the exact count; the engines never use
    it. It overcounts because it ignores swap-set collisions.
    """
    if not 1 <= length <= n - 1:
        raise ValueError("length outside [1, n-1]")
    return factorial(n - 1) // factorial(n - 1 - length)


def sample_neighborhood_grover(
    spec: ExchangeChainSpec,
    improving_set: frozenset[Tour] | set[Tour],
    n_grover: int,
    rng: np.random.Generator,
    neighborhood: NeighborhoodSet | None = None,
) -> Tour:
    """One simulated measurement of the amplified neighborhood superposition.

    The marked branch (probability from the closed form with N_s = size,
    M = |improving_set|) returns a uniform improving member; the unmarked
    branch returns a uniform non-improving member.
    """
    nh = neighborhood if neighborhood is not None else enumerate_neighborhood(spec)
    if nh.size == 0:
        raise ValueError("empty neighborhood")
    marked = [t for t in nh.members if t in improving_set]
    if len(marked) != len(improving_set):
        raise ValueError("improving_set contains non-members")
    p = success_probability(nh.size, len(marked), n_grover)
    if rng.random() < p:
        return marked[int(rng.integers(len(marked)))]
    unmarked = [t for t in nh.members if t not in improving_set]
    return unmarked[int(rng.integers(len(unmarked)))]
