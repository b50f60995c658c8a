"""Shared fixtures and independent oracles.

The oracles here intentionally re-derive behavior through different
algorithms than the package: a dense statevector simulator, an explicit
reflection-operator amplification, and a filter-all-matchings neighborhood
enumeration. Tests compare the production code against these.
"""
import math

import numpy as np
import pytest

from gastsp import TspInstance, Tour


def dense_zero_state(qubit_count: int) -> np.ndarray:
    vec = np.zeros(1 << qubit_count, dtype=complex)
    vec[0] = 1.0
    return vec


def dense_apply(vec: np.ndarray, gate, qubit_count: int) -> np.ndarray:
    """Dense oracle for gate application; mirrors nothing of the sparse code."""
    idx = np.arange(len(vec))
    ok = np.ones(len(vec), dtype=bool)
    for q, pol in gate.controls:
        ok &= ((idx >> q) & 1) == pol
    partner = idx ^ (1 << gate.target)
    new = vec.copy()
    if gate.kind == "x":
        new[ok] = vec[partner[ok]]
        return new
    c2 = math.cos(gate.angle / 2.0)
    s2 = math.sin(gate.angle / 2.0)
    bit1 = ((idx >> gate.target) & 1).astype(bool)
    m0 = ok & ~bit1
    m1 = ok & bit1
    new[m0] = c2 * vec[m0] - s2 * vec[partner[m0]]
    new[m1] = s2 * vec[partner[m1]] + c2 * vec[m1]
    return new


def dense_run(gates, qubit_count: int) -> np.ndarray:
    vec = dense_zero_state(qubit_count)
    for gate in gates:
        vec = dense_apply(vec, gate, qubit_count)
    return vec


def reflection_success_probabilities(space: int, marked: int, max_j: int) -> np.ndarray:
    """Measured-marked probability after j = 0..max_j amplification rounds.

    Builds the diffusion and sign-flip operators as explicit matrices and
    applies them to the uniform vector; the first ``marked`` entries are the
    marked states.
    """
    v = np.full(space, 1.0 / math.sqrt(space))
    sign = np.ones(space)
    sign[:marked] = -1.0
    uniform = np.full((space, space), 2.0 / space)
    diffusion = uniform - np.eye(space)
    out = np.empty(max_j + 1)
    out[0] = float(np.sum(v[:marked] ** 2))
    for j in range(1, max_j + 1):
        v = diffusion @ (sign * v)
        out[j] = float(np.sum(v[:marked] ** 2))
    return out


def all_matchings(avail: tuple[int, ...]):
    """Every set of pairwise-disjoint position pairs, including the empty one."""
    if not avail:
        yield ()
        return
    a, rest = avail[0], avail[1:]
    yield from all_matchings(rest)
    for i, b in enumerate(rest):
        shrunk = rest[:i] + rest[i + 1:]
        for tail in all_matchings(shrunk):
            yield ((a, b),) + tail


def brute_neighborhood(reference: Tour, start_index: int, length: int) -> set[tuple[int, ...]]:
    """Filter-based oracle: all matchings, keep the valid swap sets, apply."""
    n = reference.n
    chain = {(start_index + k) % n for k in range(length)}
    out = set()
    for matching in all_matchings(tuple(range(n))):
        covered = set()
        for a, b in matching:
            covered.update((a, b))
        if not chain <= covered:
            continue
        if any(a not in chain and b not in chain for a, b in matching):
            continue
        order = list(reference.order)
        for a, b in matching:
            order[a], order[b] = order[b], order[a]
        out.add(tuple(order))
    return out


def ring_instance(n: int = 4, weight: float = 3.0) -> TspInstance:
    """Every edge equal: every tour costs n * weight, greedy is optimal."""
    dist = np.full((n, n), weight)
    np.fill_diagonal(dist, 0.0)
    return TspInstance(n=n, dist=dist, name=f"ring-{n}")


def lopsided_square() -> TspInstance:
    """n=4 instance whose only tour class cheaper than (0,1,2,3) is (0,1,3,2).

    Class costs: (0,1,2,3) -> 9, (0,1,3,2) -> 5, (0,2,1,3) -> 8. The single
    improving member of the chain-2 neighborhood of (0,1,2,3) is (1,0,2,3);
    the other two members are rotations/reversals of the reference itself.
    """
    d = np.zeros((4, 4))
    pairs = {(0, 1): 1.0, (0, 2): 1.0, (0, 3): 1.0, (1, 2): 5.0, (1, 3): 1.0, (2, 3): 2.0}
    for (i, j), w in pairs.items():
        d[i, j] = d[j, i] = w
    return TspInstance(n=4, dist=d, name="lopsided-square")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
