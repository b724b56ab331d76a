"""Laboratory for the lattice double sum and its transformation chain.

scenario: admissible parameter tuples, their invariants, and JSON files.
chain: direct evaluation, stationary-point solves, domain bookkeeping,
the exact reorder identity, bound reports, and the differencing diagnostic.
lemmas: checkers for Weyl differencing, the B-process transform, and the
second-derivative van der Corput bound.
"""

from .chain import (
    BoundReport,
    DomainSlice,
    DomainSplit,
    RawSumResult,
    ReorderCheck,
    StationaryData,
    WeylStepReport,
    WeylStepRow,
    WindowReport,
    WindowStat,
    asymptotic_window_report,
    bound_report,
    closed_g,
    domain_split,
    g_second_derivative,
    lower_edge,
    raw_double_sum,
    reorder_identity_check,
    stationary_solve,
    upper_edge,
    weyl_step_diagnostic,
)
from .lemmas import (
    BProcessCheck,
    BProcessSuiteReport,
    LemmaTrial,
    VdcBound,
    VdcSuiteReport,
    WeylCheck,
    WeylSuiteReport,
    b_process_transform,
    bprocess_standard_suite,
    vdc_second_derivative_bound,
    vdc_standard_suite,
    weyl_difference_check,
    weyl_random_suite,
)
from .scenario import (
    Comparability,
    DEFAULT_COMPARABILITY,
    ExpSumScenario,
    build_scenario,
    exact_offset,
    load_scenario,
    make_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    scenario_violations,
    validate_scenario,
)

__all__ = [
    "BProcessCheck",
    "BProcessSuiteReport",
    "BoundReport",
    "Comparability",
    "DEFAULT_COMPARABILITY",
    "DomainSlice",
    "DomainSplit",
    "ExpSumScenario",
    "LemmaTrial",
    "RawSumResult",
    "ReorderCheck",
    "StationaryData",
    "VdcBound",
    "VdcSuiteReport",
    "WeylCheck",
    "WeylStepReport",
    "WeylStepRow",
    "WeylSuiteReport",
    "WindowReport",
    "WindowStat",
    "asymptotic_window_report",
    "b_process_transform",
    "bound_report",
    "bprocess_standard_suite",
    "build_scenario",
    "closed_g",
    "domain_split",
    "exact_offset",
    "g_second_derivative",
    "load_scenario",
    "lower_edge",
    "make_scenario",
    "raw_double_sum",
    "reorder_identity_check",
    "save_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "scenario_violations",
    "stationary_solve",
    "upper_edge",
    "validate_scenario",
    "vdc_second_derivative_bound",
    "vdc_standard_suite",
    "weyl_difference_check",
    "weyl_random_suite",
    "weyl_step_diagnostic",
]
