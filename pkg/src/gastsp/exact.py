"""Exact TSP oracles: optimal tours and complete below-threshold enumeration.

Two facilities back the search engines:

* :func:`held_karp_optimum` computes an optimal tour by dynamic programming
  over node subsets.
* :func:`enumerate_good_states` lists every cycle class whose cost is
  strictly below a threshold, together with the exact number of time-indexed
  permutations in each class. The resulting :class:`GoodStateSet` answers
  "how many of the n! feasible assignments beat y" and samples uniformly
  among them, which is all the measurement simulation needs.

Enumeration walks the prefix tree of paths starting at node 0 level by
level as numpy arrays. A prefix is cut when its accumulated cost plus the
exact minimum completion cost (from the same subset DP) cannot stay below
the threshold; weights are non-negative, so the cut is sound. A small
slack is added to the cut so float ordering can never drop a qualifying
cycle; survivors are re-filtered strictly against the class-invariant cost.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError
from .instances import TspInstance, to_json
from .tours import Tour, class_members, route_costs

HELD_KARP_NODE_LIMIT = 16

__all__ = [
    "CapabilityError", "GoodStateSet", "HELD_KARP_NODE_LIMIT",
    "enumerate_good_states", "good_states_from_json", "good_states_to_json",
    "held_karp_optimum", "instance_hash",
]


def _completion_table(instance: TspInstance) -> np.ndarray:
    """Minimum completion costs g[rmask, v].

    ``g[rmask, v]`` is the cheapest cost of a path that starts at node ``v``,
    visits exactly the nodes encoded by ``rmask`` (bit ``u - 1`` stands for
    node ``u``), and ends with the edge back to node 0. Entries with
    ``v`` inside ``rmask`` are filled but meaningless and never queried.
    """
    n = instance.n
    d = instance.dist
    m = n - 1
    g = np.empty((1 << m, n))
    g[0] = d[:, 0]
    node_ids = np.arange(1, n)
    for mask in range(1, 1 << m):
        bits = np.flatnonzero((mask >> np.arange(m)) & 1)
        nodes = node_ids[bits]
        prev = g[mask ^ (1 << bits), nodes]
        g[mask] = (d[:, nodes] + prev).min(axis=1)
    return g


def held_karp_optimum(instance: TspInstance, limit: int = HELD_KARP_NODE_LIMIT) -> tuple[Tour, float]:
    """Optimal tour and cost via subset dynamic programming.

    Ties between optimal tours are broken toward the smallest node index at
    each reconstruction step, which keeps the result deterministic.
    """
    n = instance.n
    if n > limit:
        raise CapabilityError(f"n={n} exceeds the subset-DP limit of {limit}")
    d = instance.dist
    g = _completion_table(instance)
    order = [0]
    rmask = (1 << (n - 1)) - 1
    v = 0
    while rmask:
        bits = np.flatnonzero((rmask >> np.arange(n - 1)) & 1)
        nodes = bits + 1
        vals = d[v, nodes] + g[rmask ^ (1 << bits), nodes]
        u = int(nodes[int(np.argmin(vals))])
        order.append(u)
        rmask ^= 1 << (u - 1)
        v = u
    tour = Tour(order=tuple(order))
    return tour, float(route_costs(instance.dist, np.asarray(order)[None, :])[0])


@dataclass(frozen=True)
class GoodStateSet:
    """All cycle classes strictly below a threshold, with exact multiplicities.

    ``costs``/``orders``/``mults`` are parallel arrays sorted ascending by
    cost (ties by order sequence); ``mults[i]`` counts the time-indexed
    permutations in class i. ``space_size`` is n!, the number of feasible
    one-hot assignments the initial superposition spans.
    """

    n: int
    threshold: float
    costs: np.ndarray
    orders: np.ndarray
    mults: np.ndarray
    space_size: int

    def __post_init__(self):
        object.__setattr__(self, "_cum", self.mults.cumsum())

    @property
    def entry_count(self) -> int:
        return len(self.costs)

    def iter_entries(self):
        for c, o, m in zip(self.costs, self.orders, self.mults):
            yield float(c), Tour(order=tuple(int(x) for x in o)), int(m)

    def marked_count(self, y: float) -> int:
        """Number of time-indexed permutations with cost strictly below y."""
        if y > self.threshold:
            raise ValueError(
                f"y={y} above enumeration threshold {self.threshold}: counts would be incomplete"
            )
        idx = int(np.searchsorted(self.costs, y, side="left"))
        return int(self._cum[idx - 1]) if idx else 0

    def sample_marked(self, y: float, rng: np.random.Generator) -> Tour:
        """Uniform draw over the time-indexed permutations with cost < y.

        Classes are weighted by multiplicity and a concrete permutation is
        picked uniformly inside the chosen class.
        """
        total = self.marked_count(y)
        if total < 1:
            raise ValueError(f"no states below y={y} to sample")
        u = int(rng.integers(total))
        cls = int(np.searchsorted(self._cum, u, side="right"))
        offset = u - (int(self._cum[cls - 1]) if cls else 0)
        members = class_members(Tour(order=tuple(int(x) for x in self.orders[cls])))
        return Tour(order=members[offset])


def _class_multiplicities(orders: np.ndarray, chunk: int = 65536) -> np.ndarray:
    """Explicit per-class membership counts for rows of canonical tours.

    Generates every rotation of each row and of its reversal, packs them
    into integers, and counts the distinct ones. Nothing is assumed about
    degenerate classes; the count is always measured.
    """
    rows, n = orders.shape
    weights = (16 ** np.arange(n, dtype=np.uint64)).astype(np.uint64)
    out = np.empty(rows, dtype=np.int64)
    for lo in range(0, rows, chunk):
        block = orders[lo: lo + chunk].astype(np.uint64)
        codes = np.empty((len(block), 2 * n), dtype=np.uint64)
        for k in range(n):
            codes[:, k] = np.roll(block, -k, axis=1) @ weights
            codes[:, n + k] = np.roll(block[:, ::-1], -k, axis=1) @ weights
        codes.sort(axis=1)
        out[lo: lo + chunk] = (np.diff(codes, axis=1) != 0).sum(axis=1) + 1
    return out


def enumerate_good_states(
    instance: TspInstance,
    threshold: float,
    prune: bool = True,
    max_frontier: int = 20_000_000,
) -> GoodStateSet:
    """Enumerate every cycle class with cost strictly below ``threshold``.

    Complete by construction: the only cuts are justified by an exact lower
    bound on the cheapest completion (plus a float-safety slack), and every
    surviving cycle is re-checked strictly against its exact cost. With
    ``prune=False`` the full prefix tree is walked instead; the result is
    identical.
    """
    n = instance.n
    d = instance.dist
    if n > HELD_KARP_NODE_LIMIT:
        raise CapabilityError(f"n={n} exceeds the enumeration limit of {HELD_KARP_NODE_LIMIT}")
    if not math.isfinite(threshold):
        raise ValueError("threshold must be finite")
    space_size = math.factorial(n)
    full = (1 << n) - 1
    slack = 1e-9 * max(1.0, abs(threshold))
    g = _completion_table(instance) if prune else None

    paths = np.zeros((1, 1), dtype=np.uint8)
    visited = np.ones(1, dtype=np.int64)
    costs = np.zeros(1)
    final_rows: list[np.ndarray] = []

    for depth in range(1, n):
        keep_paths, keep_visited, keep_costs = [], [], []
        last = paths[:, -1].astype(np.intp)
        for u in range(1, n):
            open_mask = (visited & (1 << u)) == 0
            if not open_mask.any():
                continue
            newcost = costs + d[last, u]
            if depth == n - 1:
                closed = newcost + d[u, 0]
                keep = open_mask & (closed < threshold + slack) & (paths[:, 1] < u)
            elif prune:
                rem = (full ^ (visited | (1 << u))) >> 1
                keep = open_mask & (newcost + g[rem, u] < threshold + slack)
            else:
                keep = open_mask
            if not keep.any():
                continue
            kp = np.empty((int(keep.sum()), depth + 1), dtype=np.uint8)
            kp[:, :depth] = paths[keep]
            kp[:, depth] = u
            if depth == n - 1:
                final_rows.append(kp)
            else:
                keep_paths.append(kp)
                keep_visited.append(visited[keep] | (1 << u))
                keep_costs.append(newcost[keep])
        if depth == n - 1:
            break
        if not keep_paths:
            final_rows = []
            break
        paths = np.concatenate(keep_paths)
        visited = np.concatenate(keep_visited)
        costs = np.concatenate(keep_costs)
        if len(paths) > max_frontier:
            raise CapabilityError(
                f"threshold admits more than {max_frontier} search prefixes at n={n}"
            )

    if final_rows:
        orders = np.concatenate(final_rows)
        exact = route_costs(d, orders)
        below = exact < threshold
        orders, exact = orders[below], exact[below]
    else:
        orders = np.empty((0, n), dtype=np.uint8)
        exact = np.empty(0)

    if len(orders):
        sort_idx = np.lexsort(tuple(orders.T[::-1]) + (exact,))
        orders, exact = orders[sort_idx], exact[sort_idx]
        mults = _class_multiplicities(orders)
    else:
        mults = np.empty(0, dtype=np.int64)

    return GoodStateSet(
        n=n, threshold=float(threshold), costs=exact, orders=orders,
        mults=mults, space_size=space_size,
    )


# --- cache files, keyed by instance content hash ---

def instance_hash(instance: TspInstance) -> str:
    return hashlib.sha256(to_json(instance).encode()).hexdigest()[:16]


def good_states_to_json(gss: GoodStateSet, instance_digest: str) -> str:
    doc = {
        "schema": "good-states/1",
        "instance_hash": instance_digest,
        "n": gss.n,
        "threshold": gss.threshold,
        "space_size": gss.space_size,
        "entries": [
            [float(c), [int(x) for x in o], int(m)]
            for c, o, m in zip(gss.costs, gss.orders, gss.mults)
        ],
    }
    return json.dumps(doc, sort_keys=True)


def good_states_from_json(text: str) -> tuple[GoodStateSet, str]:
    doc = json.loads(text)
    if doc.get("schema") != "good-states/1":
        raise ValueError(f"unknown cache schema {doc.get('schema')!r}")
    entries = doc["entries"]
    n = int(doc["n"])
    orders = np.array([e[1] for e in entries], dtype=np.uint8).reshape(len(entries), n)
    gss = GoodStateSet(
        n=n,
        threshold=float(doc["threshold"]),
        costs=np.array([e[0] for e in entries]),
        orders=orders,
        mults=np.array([e[2] for e in entries], dtype=np.int64),
        space_size=int(doc["space_size"]),
    )
    return gss, str(doc["instance_hash"])
