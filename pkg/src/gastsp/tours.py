"""Time-indexed tours: cost, canonical form, and the greedy start heuristic.

A tour is a permutation of node indices; position ``t`` is the node visited
at timestep ``t`` and the route closes back to position 0. Rotating or
reversing a tour leaves the traversed edge set (and therefore the cost on a
symmetric instance) unchanged, so tours fall into equivalence classes of
``2n`` time-indexed permutations each.

Cost is evaluated by summing the edge weights in a representative-independent
order (sorted ascending). Equality comparisons between tour costs are used
without epsilon throughout the enumeration and engines, so two permutations
of the same cycle must produce bit-identical floats.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instances import TspInstance


@dataclass(frozen=True)
class Tour:
    """A permutation of {0..n-1}; ``order[t]`` is the node at timestep t."""

    order: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise ValueError(f"order {self.order} is not a permutation of 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.order)

    def to_json_dict(self) -> dict:
        return {"order": list(self.order)}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Tour":
        return cls(order=tuple(int(x) for x in doc["order"]))


def rotate(tour: Tour, k: int) -> Tour:
    """Shift the route start by k timesteps (same cycle, new time indexing)."""
    n = tour.n
    k %= n
    return Tour(order=tour.order[k:] + tour.order[:k])


def reverse(tour: Tour) -> Tour:
    """Traverse the route in the opposite direction."""
    return Tour(order=tuple(reversed(tour.order)))


def route_costs(dist: np.ndarray, orders: np.ndarray) -> np.ndarray:
    """Closed-loop lengths for a batch of routes, one per row of ``orders``.

    Per row, the edge weights are summed in sorted order, so every member of
    a rotation/reversal class returns the exact same float. Single-tour and
    batch callers share this one code path on purpose: costs are compared
    for equality without epsilon elsewhere.
    """
    w = dist[orders, np.roll(orders, -1, axis=1)]
    w.sort(axis=1)
    return w.sum(axis=1)


def cost(instance: TspInstance, tour: Tour) -> float:
    """Closed-loop route length, including the edge back to the start."""
    if tour.n != instance.n:
        raise ValueError(f"tour has {tour.n} nodes, instance has {instance.n}")
    order = np.asarray(tour.order)
    return float(route_costs(instance.dist, order[None, :])[0])


def greedy_tour(instance: TspInstance, start: int = 0) -> Tour:
    """Nearest-neighbor construction from ``start``.

    Each step follows the minimum-weight edge to an unvisited node, ties
    broken by smallest node index; the closing edge is implicit.
    """
    n = instance.n
    if not 0 <= start < n:
        raise ValueError(f"start node {start} out of range for n={n}")
    visited = [start]
    remaining = set(range(n)) - {start}
    while remaining:
        here = visited[-1]
        nxt = min(remaining, key=lambda j: (instance.dist[here, j], j))
        visited.append(nxt)
        remaining.remove(nxt)
    return Tour(order=tuple(visited))


def canonicalize(tour: Tour) -> Tour:
    """Lexicographically smallest of all rotations of the tour and its reversal."""
    best = min(class_members(tour))
    return Tour(order=best)


def class_members(tour: Tour) -> list[tuple[int, ...]]:
    """All distinct time-indexed permutations equivalent to ``tour``.

    Built by explicit generation of the n rotations of both directions and
    deduplication; the size is not assumed.
    """
    n = tour.n
    seqs = set()
    for base in (tour.order, tuple(reversed(tour.order))):
        for k in range(n):
            seqs.add(base[k:] + base[:k])
    return sorted(seqs)


def class_multiplicity(tour: Tour) -> int:
    """Number of time-indexed permutations in the tour's equivalence class."""
    return len(class_members(tour))
