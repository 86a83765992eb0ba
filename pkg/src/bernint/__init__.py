"""bernint: Bernstein operators with integer coefficients.

Exact-arithmetic models of the classical Bernstein operator and its two
integer-coefficient modifications (floor and nearest-integer rounding of
f(k/n) C(n,k)), plus the numerics used to study them: stable evaluation,
derivative models, moduli of smoothness, sup-norm estimation, rate fitting,
and the saturation / Voronovskaya / boundary-interpolation / converse
experiments.  The ``bernint`` CLI exposes the experiments as reproducible
JSON/CSV reports.
"""

__version__ = "0.1.0"

from bernint._kernels import BACKEND as KERNEL_BACKEND
from bernint.analysis import (
    DEFAULT_GRID,
    ErrorPoint,
    GridConfig,
    HypothesisReport,
    InsufficientData,
    ModulusEstimate,
    ModulusKind,
    RateFit,
    SaturationReport,
    SaturationVerdict,
    SupEstimate,
    boundary_interpolation_check,
    converse_experiment,
    error_curve,
    fit_rate,
    grid_points,
    hypothesis_check,
    omega1,
    omega1_sweep,
    omega_phi2,
    saturation_probe,
    sup_norm,
    voronovskaya_check,
)
from bernint.corpus import (
    CapabilityError,
    CorpusEntry,
    FunctionSpec,
    builtin,
    entries,
    validate,
)
from bernint.exact import (
    DEFAULT_TIE,
    PrecisionExhausted,
    PrecisionInsufficient,
    TiePolicy,
    binomial,
    binomial_row,
    floor_int,
    guarded_round,
    iroot,
    nearest_int,
    rational_pow_bounds,
    rational_pow_exact,
    round_with_escalation,
)
from bernint.operators import (
    BernsteinModel,
    DiffTable,
    HypothesisViolation,
    OperatorKind,
    build_model,
    derivative_model,
    evaluate,
    evaluate_exact,
    finite_difference,
    proximity_gap,
    proximity_gap_exact,
)

__all__ = [
    "__version__",
    "KERNEL_BACKEND",
    # exact
    "TiePolicy", "DEFAULT_TIE", "PrecisionInsufficient", "PrecisionExhausted",
    "binomial", "binomial_row", "floor_int", "nearest_int", "guarded_round",
    "round_with_escalation", "iroot", "rational_pow_exact", "rational_pow_bounds",
    # operators
    "OperatorKind", "BernsteinModel", "DiffTable", "HypothesisViolation",
    "build_model", "evaluate", "evaluate_exact", "finite_difference",
    "derivative_model", "proximity_gap", "proximity_gap_exact",
    # corpus
    "FunctionSpec", "CorpusEntry", "CapabilityError", "builtin", "entries",
    "validate",
    # analysis
    "GridConfig", "DEFAULT_GRID", "grid_points", "SupEstimate", "sup_norm",
    "ModulusKind", "ModulusEstimate", "omega1", "omega1_sweep", "omega_phi2",
    "InsufficientData", "RateFit", "fit_rate", "ErrorPoint", "error_curve",
    "voronovskaya_check", "SaturationVerdict", "SaturationReport",
    "saturation_probe", "boundary_interpolation_check", "converse_experiment",
    "HypothesisReport", "hypothesis_check",
]
