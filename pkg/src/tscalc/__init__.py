"""tscalc: dynamic calculus on finite time scales.

Core objects: :class:`TimeScale` (closed sets of intervals and isolated
points with exact jump operators), :class:`FunctionHandle` (evaluatable
functions parsed from text or wrapped from callables), the delta / nabla /
diamond-alpha derivatives and integrals, and inequality checks producing
:class:`InequalityReport` verdicts. The HTTP service lives in
``tscalc.service`` and the command-line client in ``tscalc.cli``.
"""

__version__ = "0.1.0"

from .calculus import (
    Alpha,
    CalcConfig,
    DEFAULT_CONFIG,
    DerivativeKind,
    IntegralResult,
    delta_derivative,
    delta_integral,
    diamond_derivative,
    diamond_integral,
    dynamic_derivative,
    dynamic_integral,
    nabla_derivative,
    nabla_integral,
    quadrature_dense,
    signed_integral,
)
from .errors import (
    DerivativeError,
    EvalDomainError,
    InvalidParameterError,
    ParseError,
    QuadratureError,
    ScaleError,
    TscalcError,
)
from .expr import Expr, FunctionHandle, eval_expr, parse, render
from .inequalities import (
    ConvexSpec,
    InequalityReport,
    VariationalResult,
    cauchy_schwarz_check,
    convexity_probe,
    find_convexity_violation,
    holder_check,
    jensen_check,
    minkowski_check,
    schwarz_variational_demo,
    weighted_amgm,
    young_scalar,
)
from .suite import SuiteSummary, run_property_suite
from .timescale import (
    Component,
    Interval,
    IsolatedPoint,
    PointClass,
    TimeScale,
    build,
    scale_from_document,
    scale_from_json,
    scale_to_document,
    scale_to_json,
)

__all__ = [
    "__version__",
    # timescale
    "Component",
    "Interval",
    "IsolatedPoint",
    "PointClass",
    "TimeScale",
    "build",
    "scale_from_document",
    "scale_from_json",
    "scale_to_document",
    "scale_to_json",
    # expressions
    "Expr",
    "FunctionHandle",
    "parse",
    "render",
    "eval_expr",
    # calculus
    "Alpha",
    "CalcConfig",
    "DEFAULT_CONFIG",
    "DerivativeKind",
    "IntegralResult",
    "quadrature_dense",
    "delta_derivative",
    "nabla_derivative",
    "diamond_derivative",
    "dynamic_derivative",
    "delta_integral",
    "nabla_integral",
    "diamond_integral",
    "dynamic_integral",
    "signed_integral",
    # inequalities
    "ConvexSpec",
    "InequalityReport",
    "VariationalResult",
    "young_scalar",
    "holder_check",
    "cauchy_schwarz_check",
    "minkowski_check",
    "jensen_check",
    "convexity_probe",
    "find_convexity_violation",
    "weighted_amgm",
    "schwarz_variational_demo",
    # suite
    "SuiteSummary",
    "run_property_suite",
    # errors
    "TscalcError",
    "ScaleError",
    "ParseError",
    "EvalDomainError",
    "QuadratureError",
    "DerivativeError",
    "InvalidParameterError",
]
