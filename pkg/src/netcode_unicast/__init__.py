"""Linear network coding toolkit for multiple unicast on unit-capacity DAGs."""

from .constructors import assign_1m, assign_133, route_uniform
from .flows import (
    CutWitness,
    connectivity_level,
    cutset_infeasible,
    cutset_infeasible_exhaustive,
    edge_disjoint_paths,
    max_flow,
)
from .gf import FieldElement, PrimeField, in_span, rank, span_members
from .graph import (
    InstanceError,
    Path,
    Session,
    UnicastInstance,
    build_instance,
    expand_time,
    load_instance,
    normalize,
    parse_instance,
    save_instance,
    serialize_instance,
)
from .netcode import (
    CodeError,
    LocalRule,
    NetworkCode,
    TerminalReport,
    VerifyResult,
    code_from_plan,
    is_routing,
    load_code,
    parse_code,
    propagate,
    save_code,
    serialize_code,
    simulate,
    verify_code,
    zero_code,
)
from .oracle import (
    DEFAULT_BUDGET,
    SearchReport,
    Verdict,
    brute_force_routing,
    brute_force_scalar,
    classify_triple,
    gen_113,
    gen_222,
    gen_232,
    gen_23_rate21,
    gen_fig1,
)
from .sampling import sample_1m, sample_triple, sample_uniform
from .transform import (
    MinimizeResult,
    OverlapSegment,
    StructuredInstance,
    internal_degree_ok,
    isolate_sessions,
    lift_code,
    minimize,
    overlap_segments,
    prune_to_connectivity,
    structure,
)

__all__ = [
    "FieldElement",
    "PrimeField",
    "in_span",
    "rank",
    "span_members",
    "InstanceError",
    "Path",
    "Session",
    "UnicastInstance",
    "build_instance",
    "expand_time",
    "load_instance",
    "normalize",
    "parse_instance",
    "save_instance",
    "serialize_instance",
    "CutWitness",
    "connectivity_level",
    "cutset_infeasible",
    "cutset_infeasible_exhaustive",
    "edge_disjoint_paths",
    "max_flow",
    "CodeError",
    "LocalRule",
    "NetworkCode",
    "TerminalReport",
    "VerifyResult",
    "code_from_plan",
    "is_routing",
    "load_code",
    "parse_code",
    "propagate",
    "save_code",
    "serialize_code",
    "simulate",
    "verify_code",
    "zero_code",
    "MinimizeResult",
    "OverlapSegment",
    "StructuredInstance",
    "internal_degree_ok",
    "isolate_sessions",
    "lift_code",
    "minimize",
    "overlap_segments",
    "prune_to_connectivity",
    "structure",
    "assign_1m",
    "assign_133",
    "route_uniform",
    "sample_1m",
    "sample_triple",
    "sample_uniform",
    "DEFAULT_BUDGET",
    "SearchReport",
    "Verdict",
    "brute_force_routing",
    "brute_force_scalar",
    "classify_triple",
    "gen_113",
    "gen_222",
    "gen_232",
    "gen_23_rate21",
    "gen_fig1",
]
