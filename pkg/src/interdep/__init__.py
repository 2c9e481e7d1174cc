"""Interdependent infrastructure networks: boolean dependency rules,
cascading-failure simulation, vulnerability search, and budgeted rule
hardening with greedy, heuristic, and exact solvers plus an LP exporter.
"""

from .allocation import (
    AllocationSolution,
    ProtectionSet,
    RuleScore,
    SetCoverReduction,
    auxiliary_protection_set,
    cumulative_hit_value,
    eligible_auxiliaries,
    entity_hit_value,
    fractional_hit_value,
    reduce_setcover,
    score_rules,
    solve_exact,
    solve_greedy,
    solve_unit_greedy,
)
from .cascade import (
    CascadeTrace,
    CompiledNetwork,
    compile_network,
    induced_failure_set,
    simulate_cascade,
    trace_csv,
)
from .dsl import DslError, format_network, parse_network
from .experiment import (
    ExperimentRecord,
    experiment_records,
    instance_svg,
    records_csv,
    run_experiment,
)
from .generator import GeneratorConfig, gen_network
from .ilp import (
    CheckReport,
    IlpModel,
    build_ilp,
    check_assignment,
    sidecar_data,
    transcribe_cascade,
    write_lp,
)
from .kernels import DEFAULT_ENUMERATION_CAP, EnumerationCapExceeded, backend_info
from .model import (
    ALWAYS_ALIVE,
    DependencyRule,
    EntityId,
    Minterm,
    Modification,
    Network,
    ValidationError,
    apply_modification,
)
from .vulnerability import VulnerabilityResult, most_vulnerable_exact, most_vulnerable_greedy

__version__ = "0.1.0"
