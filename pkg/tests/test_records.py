"""Run-record serialization: exact float round-trips, stable key order."""
import json

from gastsp import Incumbent, RoundEvent, RunRecord, read_jsonl, record_from_json, write_jsonl


def sample_record(seed=3, with_chain=False):
    events = (
        RoundEvent(r=1, n_grover=2, cost=None, improved=False,
                   l_chain=1 if with_chain else None,
                   start_index=2 if with_chain else None),
        RoundEvent(r=2, n_grover=0, cost=0.1 + 0.2, improved=True,
                   l_chain=2 if with_chain else None,
                   start_index=0 if with_chain else None),
    )
    return RunRecord(
        engine="lk" if with_chain else "gas",
        instance_name="t",
        n=4,
        seed=seed,
        strategy={"kind": "original", "lam": 1.25},
        termination={"kind": "rounds", "bound": 5},
        initial_cost=1.0 / 3.0,
        initial_order=(0, 1, 2, 3),
        events=events,
        incumbents=(Incumbent(cost=1.0 / 3.0, order=(0, 1, 2, 3), k_total=0),),
        k_total=2,
        final_cost=0.30000000000000004,
        final_order=(0, 2, 1, 3),
        stop_reason="rounds",
        extra={"note": 1},
    )


def test_round_trip_preserves_everything():
    rec = sample_record(with_chain=True)
    back = record_from_json(rec.to_json())
    assert back == rec
    assert back.final_cost == rec.final_cost  # exact, not approximate
    assert back.events[1].cost == 0.30000000000000004


def test_chain_fields_only_emitted_when_set():
    doc = sample_record(with_chain=False).to_json_dict()
    assert "l_chain" not in doc["events"][0]
    doc2 = sample_record(with_chain=True).to_json_dict()
    assert doc2["events"][0]["l_chain"] == 1
    assert doc2["events"][0]["start_index"] == 2


def test_serialization_is_stable():
    rec = sample_record()
    assert rec.to_json() == rec.to_json()
    parsed = json.loads(rec.to_json())
    assert list(parsed) == sorted(parsed)


def test_jsonl_round_trip(tmp_path):
    recs = [sample_record(seed=s, with_chain=bool(s % 2)) for s in range(4)]
    path = tmp_path / "records.jsonl"
    write_jsonl(path, recs)
    assert read_jsonl(path) == recs
    assert len(path.read_text().splitlines()) == 4
