"""Run records: the full trace of one optimization run, JSON-serializable.

Records are the replay currency of the whole workbench: engines are
deterministic functions of (instance, configs, seed), and a record stores
everything needed to compare two runs byte for byte. Serialization is stable:
keys are emitted sorted and floats round-trip exactly through ``repr``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class RoundEvent:
    """One simulated measurement round.

    ``cost`` is None when the measurement came back unmarked: the engines
    only ever need the comparison "cost < incumbent", so an unmarked outcome
    carries no value. ``l_chain``/``start_index`` are set by the
    neighborhood engine only.
    """

    r: int
    n_grover: int
    cost: float | None
    improved: bool
    l_chain: int | None = None
    start_index: int | None = None


@dataclass(frozen=True)
class Incumbent:
    """A threshold adoption: cost and tour, with the k_total at adoption."""

    cost: float
    order: tuple[int, ...]
    k_total: int


@dataclass(frozen=True)
class RunRecord:
    engine: str
    instance_name: str
    n: int
    seed: int
    strategy: dict[str, Any]
    termination: dict[str, Any]
    initial_cost: float
    initial_order: tuple[int, ...]
    events: tuple[RoundEvent, ...]
    incumbents: tuple[Incumbent, ...]
    k_total: int
    final_cost: float
    final_order: tuple[int, ...]
    stop_reason: str
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "engine": self.engine,
            "instance_name": self.instance_name,
            "n": self.n,
            "seed": self.seed,
            "strategy": self.strategy,
            "termination": self.termination,
            "initial": {"cost": self.initial_cost, "order": list(self.initial_order)},
            "events": [
                {
                    "r": e.r,
                    "n_grover": e.n_grover,
                    "cost": e.cost,
                    "improved": e.improved,
                    **(
                        {"l_chain": e.l_chain, "start_index": e.start_index}
                        if e.l_chain is not None
                        else {}
                    ),
                }
                for e in self.events
            ],
            "incumbents": [
                {"cost": inc.cost, "order": list(inc.order), "k_total": inc.k_total}
                for inc in self.incumbents
            ],
            "k_total": self.k_total,
            "final": {"cost": self.final_cost, "order": list(self.final_order)},
            "stop_reason": self.stop_reason,
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def record_from_json_dict(doc: dict[str, Any]) -> RunRecord:
    events = tuple(
        RoundEvent(
            r=int(e["r"]),
            n_grover=int(e["n_grover"]),
            cost=e["cost"],
            improved=bool(e["improved"]),
            l_chain=e.get("l_chain"),
            start_index=e.get("start_index"),
        )
        for e in doc["events"]
    )
    incumbents = tuple(
        Incumbent(cost=float(i["cost"]), order=tuple(i["order"]), k_total=int(i["k_total"]))
        for i in doc["incumbents"]
    )
    return RunRecord(
        engine=doc["engine"],
        instance_name=doc["instance_name"],
        n=int(doc["n"]),
        seed=int(doc["seed"]),
        strategy=dict(doc["strategy"]),
        termination=dict(doc["termination"]),
        initial_cost=float(doc["initial"]["cost"]),
        initial_order=tuple(doc["initial"]["order"]),
        events=events,
        incumbents=incumbents,
        k_total=int(doc["k_total"]),
        final_cost=float(doc["final"]["cost"]),
        final_order=tuple(doc["final"]["order"]),
        stop_reason=doc["stop_reason"],
        extra=dict(doc.get("extra", {})),
    )


def record_from_json(text: str) -> RunRecord:
    return record_from_json_dict(json.loads(text))


def write_jsonl(path, records) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(rec.to_json())
            fh.write("\n")


def read_jsonl(path) -> list[RunRecord]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(record_from_json(line))
    return out
