"""Sparse statevector check of the neighborhood state-preparation circuit.

The route register uses n^2 qubits in a one-hot layout: qubit ``t*n + i``
means "timestep t holds node i". The preparation walks the same choice tree
as the neighborhood enumeration: for each branch, a Hamming-weight-1 Dicke
block (controlled on the branch's earlier choices) superposes the candidate
replacement nodes for the first open chain position, a controlled X then
parks the displaced reference node at the chosen partner position, and at
the end every untouched position is filled with its reference node by an X
that is negatively controlled on the rest of its row.

States are held as a map from basis integers to amplitudes, so circuits on
dozens of qubits stay cheap as long as the support is small — which it is:
the support never exceeds the neighborhood size.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import CapabilityError
from .neighborhoods import ExchangeChainSpec
from .tours import Tour

GATE_KINDS = ("x", "ry")

_PRUNE = 1e-14


@dataclass(frozen=True)
class GateOp:
    """X or Y-rotation with an arbitrary set of polarized controls.

    ``controls`` is a tuple of (qubit, polarity): polarity 1 fires on |1>,
    polarity 0 on |0>. ``angle`` is the full rotation angle of RY and must
    be None for X gates.
    """

    kind: str
    target: int
    controls: tuple[tuple[int, int], ...] = ()
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "ry" and self.angle is None:
            raise ValueError("ry gate needs an angle")
        if self.kind == "x" and self.angle is not None:
            raise ValueError("x gate takes no angle")
        if self.target < 0:
            raise ValueError("negative target index")
        seen = {self.target}
        for q, pol in self.controls:
            if q < 0:
                raise ValueError("negative control index")
            if pol not in (0, 1):
                raise ValueError(f"control polarity must be 0 or 1, got {pol}")
            if q in seen:
                raise ValueError("target and controls must be distinct qubits")
            seen.add(q)


@dataclass
class SparseState:
    qubit_count: int
    amps: dict[int, complex] = field(default_factory=dict)

    @classmethod
    def zero(cls, qubit_count: int) -> "SparseState":
        return cls(qubit_count=qubit_count, amps={0: 1.0 + 0.0j})

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amps.values()))

    def support(self) -> list[int]:
        return sorted(self.amps)


def _controls_pass(basis: int, controls: tuple[tuple[int, int], ...]) -> bool:
    return all((basis >> q) & 1 == pol for q, pol in controls)


def apply_gate(state: SparseState, gate: GateOp) -> SparseState:
    """Exact application to the sparse map; unitary, so norm is preserved."""
    width = state.qubit_count
    if gate.target >= width or any(q >= width for q, _ in gate.controls):
        raise ValueError("gate index out of range for state width")
    new: dict[int, complex] = {}

    def add(b: int, a: complex):
        v = new.get(b, 0j) + a
        if abs(v) > _PRUNE:
            new[b] = v
        elif b in new:
            del new[b]

    tbit = 1 << gate.target
    if gate.kind == "x":
        for b, a in state.amps.items():
            add(b ^ tbit if _controls_pass(b, gate.controls) else b, a)
    else:
        c2 = math.cos(gate.angle / 2.0)
        s2 = math.sin(gate.angle / 2.0)
        for b, a in state.amps.items():
            if not _controls_pass(b, gate.controls):
                add(b, a)
            elif b & tbit:
                add(b ^ tbit, -s2 * a)
                add(b, c2 * a)
            else:
                add(b, c2 * a)
                add(b ^ tbit, s2 * a)
    return SparseState(qubit_count=width, amps=new)


def dicke_weight1_gates(
    qubits: tuple[int, ...], extra_controls: tuple[tuple[int, int], ...] = ()
) -> list[GateOp]:
    """Gates putting the uniform one-hot superposition on ``qubits``.

    Cascade construction: X lights the first qubit, then each step splits
    off amplitude 1/sqrt(k) and shifts the remainder one qubit onward. Step
    m rotates by 2*arccos(sqrt(1/(k-m+1))). All gates carry
    ``extra_controls`` so whole blocks can be conditioned on a branch.
    """
    k = len(qubits)
    if k < 1:
        raise ValueError("need at least one qubit")
    gates = [GateOp(kind="x", target=qubits[0], controls=extra_controls)]
    for m in range(1, k):
        theta = 2.0 * math.acos(math.sqrt(1.0 / (k - m + 1)))
        gates.append(
            GateOp(
                kind="ry", target=qubits[m], angle=theta,
                controls=extra_controls + ((qubits[m - 1], 1),),
            )
        )
        gates.append(
            GateOp(
                kind="x", target=qubits[m - 1],
                controls=extra_controls + ((qubits[m], 1),),
            )
        )
    return gates


def prepare_dicke_weight1(state: SparseState, qubits: tuple[int, ...]) -> SparseState:
    """Apply the weight-1 Dicke block; listed qubits must be |0> throughout."""
    for b in state.amps:
        for q in qubits:
            if (b >> q) & 1:
                raise ValueError(f"qubit {q} not |0> in every support branch")
    for gate in dicke_weight1_gates(tuple(qubits)):
        state = apply_gate(state, gate)
    return state


def build_neighborhood_circuit(
    reference: Tour, start_index: int, length: int
) -> tuple[GateOp, ...]:
    """Gate list preparing the exchange-chain neighborhood superposition.

    Mirrors the enumeration recursion branch by branch; deeper blocks carry
    positive controls on every earlier choice qubit of their branch, which
    is what keeps sibling branches untouched.
    """
    n = reference.n
    if length > n // 2:
        raise CapabilityError(
            f"chain length {length} exceeds {n // 2} for n={n}:"
            " each swap fixes two route positions"
        )
    spec = ExchangeChainSpec(reference=reference, start_index=start_index, length=length)
    ref = reference.order
    chain = spec.chain_positions
    gates: list[GateOp] = []

    def rec(used: frozenset[int], sig: tuple[tuple[int, int], ...]):
        c = next((pos for pos in chain if pos not in used), None)
        if c is None:
            return
        partners = [p for p in range(n) if p != c and p not in used]
        choice_qubits = tuple(c * n + ref[p] for p in partners)
        gates.extend(dicke_weight1_gates(choice_qubits, extra_controls=sig))
        for p in partners:
            choice = (c * n + ref[p], 1)
            gates.append(
                GateOp(kind="x", target=p * n + ref[c], controls=sig + (choice,))
            )
            rec(used | {c, p}, sig + (choice,))

    rec(frozenset(), ())

    for p in range(n):
        if p in chain:
            continue
        row = tuple((p * n + i, 0) for i in range(n) if i != ref[p])
        gates.append(GateOp(kind="x", target=p * n + ref[p], controls=row))
    return tuple(gates)


def prepare_neighborhood_state(
    reference: Tour, start_index: int, length: int
) -> SparseState:
    state = SparseState.zero(reference.n ** 2)
    for gate in build_neighborhood_circuit(reference, start_index, length):
        state = apply_gate(state, gate)
    return state


def decode_basis(basis: int, n: int) -> Tour:
    """Read a one-hot route register back into a tour.

    Raises if any timestep row is not exactly one-hot.
    """
    row_mask = (1 << n) - 1
    order = []
    for t in range(n):
        row = (basis >> (t * n)) & row_mask
        if row == 0 or row & (row - 1):
            raise ValueError(f"timestep {t} is not one-hot: {row:b}")
        order.append(row.bit_length() - 1)
    return Tour(order=tuple(order))


def decode_support(state: SparseState, n: int) -> dict[Tour, complex]:
    return {decode_basis(b, n): a for b, a in sorted(state.amps.items())}


def gates_to_json(gates) -> str:
    return json.dumps(
        [
            {
                "kind": g.kind,
                "target": g.target,
                "controls": [[q, pol] for q, pol in g.controls],
                "angle": g.angle,
            }
            for g in gates
        ],
        sort_keys=True,
    )
