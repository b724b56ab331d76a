"""Zeta functions of positive definite binary quadratic forms: evaluation,
critical-line zero scanning, and exponential-sum experiments.
"""

from . import expsum
from ._kernels import BACKEND
from .epstein import (
    ApproxParams,
    EvalResult,
    approx_eval,
    dirichlet_series_eval,
    functional_equation_residual,
    theta_continuation_eval,
)
from .errors import (
    CapacityExceeded,
    ContractError,
    DomainError,
    EpzetaError,
    HypothesisViolated,
    NoStationaryPoint,
    NotPositiveDefinite,
    PoleAt,
    PrecisionExceeded,
    QuadratureFailure,
    RootFindFailure,
    SingularPoint,
)
from .hardy import (
    GapReport,
    GaussianWindow,
    HardyConfig,
    LawCheck,
    WeightEta,
    ZeroRecord,
    gamma_factor,
    gap_report,
    gaussian_integral,
    hardy_config,
    hardy_w,
    sign_change_scan,
)
from .qform import (
    LatticePoint,
    QuadraticForm,
    RepCount,
    enumerate_annulus,
    representation_count,
    representation_counts_upto,
    validate_form,
)

__version__ = "0.1.0"
__all__ = [
    "ApproxParams",
    "BACKEND",
    "CapacityExceeded",
    "ContractError",
    "DomainError",
    "EpzetaError",
    "EvalResult",
    "GapReport",
    "GaussianWindow",
    "HardyConfig",
    "HypothesisViolated",
    "LatticePoint",
    "LawCheck",
    "NoStationaryPoint",
    "NotPositiveDefinite",
    "PoleAt",
    "PrecisionExceeded",
    "QuadraticForm",
    "QuadratureFailure",
    "RepCount",
    "RootFindFailure",
    "SingularPoint",
    "WeightEta",
    "ZeroRecord",
    "approx_eval",
    "dirichlet_series_eval",
    "enumerate_annulus",
    "expsum",
    "functional_equation_residual",
    "gamma_factor",
    "gap_report",
    "gaussian_integral",
    "hardy_config",
    "hardy_w",
    "representation_count",
    "representation_counts_upto",
    "sign_change_scan",
    "theta_continuation_eval",
    "validate_form",
    "__version__",
]
