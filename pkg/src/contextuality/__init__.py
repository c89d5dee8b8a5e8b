"""Contextuality of finite measurement scenarios: exact hierarchy decisions
(nondisturbing / noncontextual / logically / strongly contextual),
possibilistic paradox certificates, cycle correlator inequalities, and
quantum cycle constructions maximizing the paradox probability."""

from .behavior import (
    AnyBehavior,
    Behavior,
    DisturbanceReport,
    PossibilisticBehavior,
    Violation,
    behavior_from_json_dict,
    behavior_to_json_dict,
    check_nondisturbance,
    check_possibilistic_nd,
    collapse,
    joint_outcomes,
    load_behavior,
    save_behavior,
)
from .bundle import BundleDiagram, BundleEdge, build_bundle
from .classical import (
    GlobalAssignment,
    HierarchyReport,
    contextual_fraction,
    default_cap,
    enumeration_size,
    global_distribution,
    hierarchy,
    is_logically_contextual,
    is_noncontextual,
    is_strongly_contextual,
    logical_contextuality_witness,
    noncontextual_weight,
    support,
    support_size,
)
from .errors import (
    ContextualityError,
    DegenerateParams,
    EnumerationCapExceeded,
    InvalidBehavior,
    InvalidModel,
    InvalidScenario,
    NegativeProbability,
    NonDichotomic,
    NonSimpleScenario,
    NotCycle,
    NotNondisturbing,
    NotPossibilisticallyND,
    SubsetNotInContext,
    WrongScenarioShape,
)
from .fixtures import FIXTURES, fixture
from .generate import (
    deterministic_behavior,
    random_nd_coupling,
    random_nd_mixture,
    random_pnd,
    random_tree_scenario,
)
from .inequality import (
    NcycleInequality,
    ViolationReport,
    correlator,
    evaluate,
    evaluate_all,
    quantum_bound,
)
from .paradox import (
    BellParadox,
    ChainStep,
    ChenParadox,
    ParadoxCertificate,
    PrBoxForm,
    SimpleScenarioParadox,
    classify_strong_contextuality,
    detect_bell22_paradox,
    detect_chen_paradox,
    detect_cycle_paradox,
    detect_simple_scenario_paradox,
    pr_box_behavior,
    verify_certificate,
)
from .quantum import (
    EvenCycleParams,
    GammaResult,
    OddCycleParams,
    QuantumModel,
    behavior_from_model,
    build_even_cycle,
    build_odd_cycle,
    check_hardy_tsirelson,
    hardy_probability,
    optimize_gamma,
    trace_probability,
    validate_model,
)
from .scenario import (
    CycleDecomposition,
    Scenario,
    chordless_cycles,
    load_scenario,
    make_bipartite_bell,
    make_n_cycle,
    traverse_cycle,
)

__version__ = "0.1.0"

__all__ = [
    "AnyBehavior",
    "Behavior",
    "BellParadox",
    "BundleDiagram",
    "BundleEdge",
    "ChainStep",
    "ChenParadox",
    "ContextualityError",
    "CycleDecomposition",
    "DegenerateParams",
    "DisturbanceReport",
    "EnumerationCapExceeded",
    "EvenCycleParams",
    "FIXTURES",
    "GammaResult",
    "GlobalAssignment",
    "HierarchyReport",
    "InvalidBehavior",
    "InvalidModel",
    "InvalidScenario",
    "NcycleInequality",
    "NegativeProbability",
    "NonDichotomic",
    "NonSimpleScenario",
    "NotCycle",
    "NotNondisturbing",
    "NotPossibilisticallyND",
    "OddCycleParams",
    "ParadoxCertificate",
    "PossibilisticBehavior",
    "PrBoxForm",
    "QuantumModel",
    "Scenario",
    "SimpleScenarioParadox",
    "SubsetNotInContext",
    "Violation",
    "ViolationReport",
    "WrongScenarioShape",
    "behavior_from_json_dict",
    "behavior_from_model",
    "behavior_to_json_dict",
    "build_bundle",
    "build_even_cycle",
    "build_odd_cycle",
    "check_hardy_tsirelson",
    "check_nondisturbance",
    "check_possibilistic_nd",
    "chordless_cycles",
    "classify_strong_contextuality",
    "collapse",
    "contextual_fraction",
    "correlator",
    "default_cap",
    "detect_bell22_paradox",
    "detect_chen_paradox",
    "detect_cycle_paradox",
    "detect_simple_scenario_paradox",
    "deterministic_behavior",
    "enumeration_size",
    "evaluate",
    "evaluate_all",
    "fixture",
    "global_distribution",
    "hardy_probability",
    "hierarchy",
    "is_logically_contextual",
    "is_noncontextual",
    "is_strongly_contextual",
    "joint_outcomes",
    "load_behavior",
    "load_scenario",
    "logical_contextuality_witness",
    "make_bipartite_bell",
    "make_n_cycle",
    "noncontextual_weight",
    "optimize_gamma",
    "pr_box_behavior",
    "quantum_bound",
    "random_nd_coupling",
    "random_nd_mixture",
    "random_pnd",
    "random_tree_scenario",
    "save_behavior",
    "support",
    "support_size",
    "trace_probability",
    "validate_model",
    "verify_certificate",
]
