"""Classical workbench for threshold search over TSP tours.

Exact improving-state oracles, closed-form amplified-measurement
simulation, three iteration strategies, configurable termination rules, an
exchange-chain neighborhood search, and statevector verification of the
neighborhood state preparation.
"""
from .bench import (
    ExperimentConfig,
    SummaryRow,
    aggregate_records,
    child_seed,
    instance_seed,
    make_instances,
    parse_strategy,
    parse_termination,
    run_grid,
    summary_csv_text,
)
from .circuits import (
    GateOp,
    SparseState,
    apply_gate,
    build_neighborhood_circuit,
    decode_basis,
    decode_support,
    dicke_weight1_gates,
    gates_to_json,
    prepare_dicke_weight1,
    prepare_neighborhood_state,
)
from .errors import CapabilityError
from .exact import (
    GoodStateSet,
    enumerate_good_states,
    good_states_from_json,
    good_states_to_json,
    held_karp_optimum,
    instance_hash,
)
from .gas import approximation_ratio, run_gas
from .grover import (
    StrategyConfig,
    TerminationRule,
    average_success_probability,
    check_termination,
    critical_draw_count,
    draw_iterations,
    grover_angle,
    success_probability,
)
from .instances import (
    ParseError,
    TspInstance,
    from_json,
    generate_random,
    parse_tsplib,
    to_json,
    to_tsplib,
)
from .lk import LkConfig, improving_subset, run_lk
from .neighborhoods import (
    ExchangeChainSpec,
    NeighborhoodSet,
    enumerate_neighborhood,
    estimated_size,
    neighborhood_size,
    sample_neighborhood_grover,
)
from .records import (
    Incumbent,
    RoundEvent,
    RunRecord,
    read_jsonl,
    record_from_json,
    record_from_json_dict,
    write_jsonl,
)
from .tours import (
    Tour,
    canonicalize,
    class_members,
    class_multiplicity,
    cost,
    greedy_tour,
    reverse,
    rotate,
    route_costs,
)

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "ExchangeChainSpec",
    "ExperimentConfig",
    "GateOp",
    "GoodStateSet",
    "Incumbent",
    "LkConfig",
    "NeighborhoodSet",
    "ParseError",
    "RoundEvent",
    "RunRecord",
    "SparseState",
    "StrategyConfig",
    "SummaryRow",
    "TerminationRule",
    "Tour",
    "TspInstance",
    "aggregate_records",
    "apply_gate",
    "approximation_ratio",
    "average_success_probability",
    "build_neighborhood_circuit",
    "canonicalize",
    "check_termination",
    "child_seed",
    "class_members",
    "class_multiplicity",
    "cost",
    "critical_draw_count",
    "decode_basis",
    "decode_support",
    "dicke_weight1_gates",
    "draw_iterations",
    "enumerate_good_states",
    "enumerate_neighborhood",
    "estimated_size",
    "from_json",
    "gates_to_json",
    "generate_random",
    "good_states_from_json",
    "good_states_to_json",
    "greedy_tour",
    "grover_angle",
    "held_karp_optimum",
    "improving_subset",
    "instance_hash",
    "instance_seed",
    "make_instances",
    "neighborhood_size",
    "parse_strategy",
    "parse_termination",
    "parse_tsplib",
    "prepare_dicke_weight1",
    "prepare_neighborhood_state",
    "read_jsonl",
    "record_from_json",
    "record_from_json_dict",
    "reverse",
    "rotate",
    "route_costs",
    "run_gas",
    "run_grid",
    "run_lk",
    "sample_neighborhood_grover",
    "success_probability",
    "summary_csv_text",
    "to_json",
    "to_tsplib",
    "write_jsonl",
]
