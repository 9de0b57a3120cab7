"""Two-sided evaluation of the classical diamond-alpha integral inequalities.

Each check computes both sides of one inequality instance on a time scale and
returns an :class:`InequalityReport` with the slack (rhs - lhs), a propagated
tolerance, and the verdict ``holds`` (slack >= -tolerance). Tolerances are
assembled from the quadrature error estimates by interval-style propagation
through the powers, products and sums of each side, plus a 1e-12 absolute
floor, so a verdict can never flip on quadrature noise alone.

Checks provided:

* ``young_scalar``        - the scalar inequality x^(1/p) y^(1/q) <= x/p + y/q
* ``holder_check``        - integral of |f g| vs the product of p- and q-norms
* ``cauchy_schwarz_check``- the p = q = 2 specialization
* ``minkowski_check``     - the p-norm triangle inequality
* ``jensen_check``        - convex image of the average vs average of the image
* ``weighted_amgm``       - the two-window arithmetic/geometric mean comparison
                            on an integer grid (exact sums, log-space products)
* ``schwarz_variational_demo`` - the quadratic action J[x] = int_0^1 x'(t)^2 dt
                            of a curve joining (0,0) to (1,1), which is
                            bounded below by 1 with the straight line attaining it

Pure computations over immutable inputs throughout.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .calculus import (
    Alpha,
    CalcConfig,
    DEFAULT_CONFIG,
    IntegralResult,
    delta_derivative,
    diamond_integral,
)
from .errors import InvalidParameterError
from .expr import FunctionHandle, _pow as checked_pow
from .timescale import Interval, TimeScale, build

__all__ = [
    "InequalityReport",
    "ConvexSpec",
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
]

_TOL_FLOOR = 1e-12


@dataclass(frozen=True)
class InequalityReport:
    """Both sides of one inequality instance plus the verdict.

    ``slack = rhs - lhs``; the inequality counts as holding when
    ``slack >= -tolerance``. ``params`` always carries the keys alpha, p, q,
    a, b (None where not applicable); ``decomposition`` records the integral
    results or exact sums behind each side.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    holds: bool
    params: dict = field(default_factory=dict)
    decomposition: dict = field(default_factory=dict)

    def as_document(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "holds": self.holds,
            "params": dict(self.params),
            "decomposition": dict(self.decomposition),
        }


def _report(name: str, lhs: float, rhs: float, tolerance: float,
            params: dict, decomposition: dict) -> InequalityReport:
    slack = rhs - lhs
    return InequalityReport(
        name=name,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        tolerance=tolerance,
        holds=slack >= -tolerance,
        params=params,
        decomposition=decomposition,
    )


def _params(alpha: Alpha | None = None, p: float | None = None,
            a: float | None = None, b: float | None = None) -> dict:
    return {
        "alpha": None if alpha is None else alpha.value,
        "p": p,
        "q": None if p is None else p / (p - 1.0),
        "a": a,
        "b": b,
    }


def _ir_doc(r: IntegralResult) -> dict:
    return {
        "value": r.value,
        "error_estimate": r.error_estimate,
        "dense_part": r.dense_part,
        "scattered_part": r.scattered_part,
        "evals": r.evals,
    }


# -- bounded values: a scalar plus a worst-case deviation ------------------------


def _root_bounded(value: float, bound: float, exponent: float) -> tuple[float, float]:
    """u**exponent for u >= 0 with deviation propagated exactly (monotone map)."""
    u = max(value, 0.0)
    v = u ** exponent
    hi = (u + bound) ** exponent
    lo = max(u - bound, 0.0) ** exponent
    return v, max(hi - v, v - lo)


def _product_bounded(x: float, bx: float, y: float, by: float) -> tuple[float, float]:
    """x*y for x, y >= 0 with deviations bx, by."""
    v = x * y
    hi = (x + bx) * (y + by)
    lo = max(x - bx, 0.0) * max(y - by, 0.0)
    return v, max(hi - v, v - lo)


def _require_p(p: float) -> float:
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 1.0):
        raise InvalidParameterError(f"exponent p must be a finite number > 1, got {p!r}")
    return float(p)


def _require_window(ts: TimeScale, a: float, b: float) -> None:
    if not ts.contains(a) or not ts.contains(b) or not a < b:
        raise InvalidParameterError(
            f"bounds a={a!r}, b={b!r} must be members of the scale with a < b"
        )


# -- scalar Young inequality -------------------------------------------------------


def young_scalar(x: float, y: float, p: float) -> tuple[float, float]:
    """Both sides of x^(1/p) * y^(1/q) <= x/p + y/q for x, y >= 0, q = p/(p-1)."""
    p = _require_p(p)
    if x < 0 or y < 0:
        raise InvalidParameterError(f"young_scalar needs nonnegative inputs, got {x!r}, {y!r}")
    q = p / (p - 1.0)
    lhs = x ** (1.0 / p) * y ** (1.0 / q)
    rhs = x / p + y / q
    assert lhs <= rhs + 1e-12 * max(1.0, lhs, rhs), \
        f"scalar inequality violated beyond rounding: {lhs} > {rhs}"
    return lhs, rhs


# -- Hoelder / Cauchy-Schwarz / Minkowski ------------------------------------------


def holder_check(
    ts: TimeScale,
    f: Callable[[float], float],
    g: Callable[[float], float],
    a: float,
    b: float,
    alpha: Alpha | float,
    p: float,
    cfg: CalcConfig = DEFAULT_CONFIG,
    _name: str = "holder",
) -> InequalityReport:
    """int |f g| <= (int |f|^p)^(1/p) * (int |g|^q)^(1/q), all diamond-alpha."""
    al = Alpha.coerce(alpha)
    p = _require_p(p)
    q = p / (p - 1.0)
    _require_window(ts, a, b)

    abs_fg = FunctionHandle(lambda t: abs(f(t) * g(t)), origin="composite:|f*g|")
    f_p = FunctionHandle(lambda t: checked_pow(abs(f(t)), p), origin="composite:|f|^p")
    g_q = FunctionHandle(lambda t: checked_pow(abs(g(t)), q), origin="composite:|g|^q")

    i_fg = diamond_integral(ts, abs_fg, a, b, al, cfg)
    i_f = diamond_integral(ts, f_p, a, b, al, cfg)
    i_g = diamond_integral(ts, g_q, a, b, al, cfg)

    lhs = max(i_fg.value, 0.0)
    lhs_bound = i_fg.error_estimate
    fn, fn_b = _root_bounded(i_f.value, i_f.error_estimate, 1.0 / p)
    gn, gn_b = _root_bounded(i_g.value, i_g.error_estimate, 1.0 / q)
    rhs, rhs_bound = _product_bounded(fn, fn_b, gn, gn_b)

    return _report(
        _name,
        lhs,
        rhs,
        lhs_bound + rhs_bound + _TOL_FLOOR,
        _params(al, p, a, b),
        {
            "abs_fg_integral": _ir_doc(i_fg),
            "f_norm_integral": _ir_doc(i_f),
            "g_norm_integral": _ir_doc(i_g),
        },
    )


def cauchy_schwarz_check(
    ts: TimeScale,
    f: Callable[[float], float],
    g: Callable[[float], float],
    a: float,
    b: float,
    alpha: Alpha | float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> InequalityReport:
    """The p = q = 2 case: int |f g| <= sqrt(int f^2 * int g^2)."""
    return holder_check(ts, f, g, a, b, alpha, 2.0, cfg, _name="cauchy_schwarz")


def minkowski_check(
    ts: TimeScale,
    f: Callable[[float], float],
    g: Callable[[float], float],
    a: float,
    b: float,
    alpha: Alpha | float,
    p: float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> InequalityReport:
    """(int |f+g|^p)^(1/p) <= (int |f|^p)^(1/p) + (int |g|^p)^(1/p)."""
    al = Alpha.coerce(alpha)
    p = _require_p(p)
    _require_window(ts, a, b)

    fg_p = FunctionHandle(lambda t: checked_pow(abs(f(t) + g(t)), p), origin="composite:|f+g|^p")
    f_p = FunctionHandle(lambda t: checked_pow(abs(f(t)), p), origin="composite:|f|^p")
    g_p = FunctionHandle(lambda t: checked_pow(abs(g(t)), p), origin="composite:|g|^p")

    i_fg = diamond_integral(ts, fg_p, a, b, al, cfg)
    i_f = diamond_integral(ts, f_p, a, b, al, cfg)
    i_g = diamond_integral(ts, g_p, a, b, al, cfg)

    # When int |f+g|^p is 0 the root is 0 and the inequality holds trivially;
    # no division is involved so the degenerate case needs no special path.
    lhs, lhs_bound = _root_bounded(i_fg.value, i_fg.error_estimate, 1.0 / p)
    fn, fn_b = _root_bounded(i_f.value, i_f.error_estimate, 1.0 / p)
    gn, gn_b = _root_bounded(i_g.value, i_g.error_estimate, 1.0 / p)

    return _report(
        "minkowski",
        lhs,
        fn + gn,
        lhs_bound + fn_b + gn_b + _TOL_FLOOR,
        _params(al, p, a, b),
        {
            "sum_norm_integral": _ir_doc(i_fg),
            "f_norm_integral": _ir_doc(i_f),
            "g_norm_integral": _ir_doc(i_g),
        },
    )


# -- Jensen -----------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexSpec:
    """A function declared convex on the open interval (lower, upper).

    Convexity is the caller's claim; :func:`convexity_probe` offers a sampling
    spot check, and ``subgradient``, when given, is only used to report the
    support-line diagnostics, never to decide the verdict.
    """

    fn: FunctionHandle
    lower: float = -math.inf
    upper: float = math.inf
    subgradient: FunctionHandle | None = None
    declared_convex: bool = True

    def __post_init__(self):
        if not self.lower < self.upper:
            raise InvalidParameterError(
                f"convex domain is empty: ({self.lower!r}, {self.upper!r})"
            )

    def __call__(self, x: float) -> float:
        return self.fn(x)

    def contains(self, x: float) -> bool:
        return self.lower < x < self.upper


def _sampling_grid(ts: TimeScale, a: float, b: float, per_segment: int = 64) -> list[float]:
    """All scattered points of [a, b] plus a uniform grid on each dense part."""
    pts: list[float] = []
    for c in ts.components:
        if isinstance(c, Interval):
            u, v = max(c.lo, a), min(c.hi, b)
            if u > v:
                continue
            if u == v:
                pts.append(u)
            else:
                pts.extend(u + (v - u) * j / per_segment for j in range(per_segment + 1))
        elif a <= c.p <= b:
            pts.append(c.p)
    return pts


def jensen_check(
    ts: TimeScale,
    g: Callable[[float], float],
    convex: ConvexSpec,
    a: float,
    b: float,
    alpha: Alpha | float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> InequalityReport:
    """F(average of g) <= average of F(g), averages taken diamond-alpha over [a, b].

    The range of g is spot-checked on a sampling grid and must stay strictly
    inside the declared convex domain.
    """
    al = Alpha.coerce(alpha)
    _require_window(ts, a, b)

    for x in _sampling_grid(ts, a, b):
        gx = g(x)
        if not convex.contains(gx):
            raise InvalidParameterError(
                f"g({x!r}) = {gx!r} escapes the declared convex domain "
                f"({convex.lower!r}, {convex.upper!r})"
            )

    width = b - a
    i_g = diamond_integral(ts, g, a, b, al, cfg)
    x0 = i_g.value / width
    if not convex.contains(x0):
        raise InvalidParameterError(
            f"average {x0!r} of g escapes the declared convex domain"
        )
    lhs = convex(x0)
    e0 = i_g.error_estimate / width
    lhs_bound = 0.0
    for probe in (x0 + e0, x0 - e0):
        if probe != x0 and convex.contains(probe):
            lhs_bound = max(lhs_bound, abs(convex(probe) - lhs))

    composed = FunctionHandle(lambda t: convex(g(t)), origin="composite:F(g)")
    i_fg = diamond_integral(ts, composed, a, b, al, cfg)
    rhs = i_fg.value / width
    rhs_bound = i_fg.error_estimate / width

    decomposition = {
        "g_integral": _ir_doc(i_g),
        "composed_integral": _ir_doc(i_fg),
        "average_of_g": x0,
    }
    if convex.subgradient is not None:
        slope = convex.subgradient(x0)
        decomposition["support_slope"] = slope
        decomposition["support_gap_integral"] = (rhs - lhs) * width

    return _report(
        "jensen",
        lhs,
        rhs,
        lhs_bound + rhs_bound + _TOL_FLOOR,
        _params(al, None, a, b),
        decomposition,
    )


def find_convexity_violation(
    convex: ConvexSpec, samples: int = 64, seed: int = 0
) -> tuple[float, float] | None:
    """Search sampled pairs for a midpoint-convexity violation; None if all pass."""
    if samples < 3:
        raise InvalidParameterError(f"need at least 3 samples, got {samples}")
    lo = max(convex.lower, -1e6)
    hi = min(convex.upper, 1e6)
    rng = random.Random(seed)

    def draw() -> float:
        while True:
            x = lo + (hi - lo) * rng.random()
            if convex.lower < x < convex.upper:
                return x

    for _ in range(samples):
        u, v = draw(), draw()
        mid = 0.5 * (u + v)
        if convex(mid) > 0.5 * (convex(u) + convex(v)) + 1e-12:
            return (u, v)
    return None


def convexity_probe(convex: ConvexSpec, samples: int = 64, seed: int = 0) -> bool:
    """Advisory sampling check of midpoint convexity (cannot prove convexity)."""
    return find_convexity_violation(convex, samples, seed) is None


# -- weighted arithmetic/geometric means on an integer grid ------------------------


def weighted_amgm(values: list[float], alpha: Alpha | float) -> InequalityReport:
    """Compare the alpha-weighted arithmetic mean against the matching
    geometric mean for positive samples g(1), ..., g(n+1) on an integer grid.

    The arithmetic side is (alpha * sum of the first n + (1-alpha) * sum of
    the last n) / n; the geometric side is the product of the first n to the
    alpha/n power times the product of the last n to the (1-alpha)/n power,
    computed in log space. The report is oriented geometric side as lhs,
    arithmetic side as rhs, so slack >= 0 means the inequality holds. All
    sums run left to right; there is no quadrature.
    """
    al = Alpha.coerce(alpha)
    if len(values) < 2:
        raise InvalidParameterError("need n >= 1, i.e. at least two values")
    for v in values:
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise InvalidParameterError(f"all values must be positive and finite, got {v!r}")
    n = len(values) - 1
    a = al.value

    sum_first = 0.0
    sum_last = 0.0
    log_first = 0.0
    log_last = 0.0
    for v in values[:n]:
        sum_first += v
        log_first += math.log(v)
    for v in values[1:]:
        sum_last += v
        log_last += math.log(v)

    arithmetic = (a * sum_first + (1.0 - a) * sum_last) / n
    geometric = math.exp((a / n) * log_first + ((1.0 - a) / n) * log_last)
    tolerance = _TOL_FLOOR * (1.0 + abs(arithmetic) + abs(geometric))

    return _report(
        "weighted_amgm",
        geometric,
        arithmetic,
        tolerance,
        _params(al, None, 1.0, float(n + 1)),
        {
            "n": n,
            "sum_first_window": sum_first,
            "sum_last_window": sum_last,
            "log_product_first_window": log_first,
            "log_product_last_window": log_last,
        },
    )


# -- the variational lower-bound demo ----------------------------------------------


@dataclass(frozen=True)
class VariationalResult:
    j_value: float
    lower_bound_holds: bool
    tolerance: float
    error_estimate: float
    evals: int


def schwarz_variational_demo(
    x: Callable[[float], float],
    grid_points: int = 64,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> VariationalResult:
    """Evaluate J[x] = int_0^1 x'(t)^2 dt for a curve with x(0)=0, x(1)=1.

    The derivative is taken numerically on the dense scale [0, 1] and its
    square is diamond-integrated panel by panel (``grid_points`` panels keep
    the sampling resolution honest; on a dense interval every alpha gives the
    same value). For any admissible curve J >= 1, with equality on the
    straight line, so the returned flag should always be true.
    """
    if not isinstance(grid_points, int) or grid_points < 8:
        raise InvalidParameterError(f"grid_points must be an integer >= 8, got {grid_points!r}")
    x0 = x(0.0)
    x1 = x(1.0)
    if abs(x0) > 1e-9 or abs(x1 - 1.0) > 1e-9:
        raise InvalidParameterError(
            f"curve is not admissible: x(0)={x0!r}, x(1)={x1!r} "
            "(need x(0)=0 and x(1)=1 within 1e-9)"
        )

    ts = build([(0.0, 1.0)])
    speed_sq = FunctionHandle(
        lambda t: delta_derivative(ts, x, t, cfg) ** 2,
        origin="composite:x'(t)^2",
    )

    total = 0.0
    err = 0.0
    evals = 0
    for k in range(grid_points):
        lo = k / grid_points
        hi = (k + 1) / grid_points
        part = diamond_integral(ts, speed_sq, lo, hi, 0.5, cfg)
        total += part.value
        err += part.error_estimate
        evals += part.evals

    tolerance = 1e-6
    return VariationalResult(
        j_value=total,
        lower_bound_holds=total >= 1.0 - tolerance,
        tolerance=tolerance,
        error_estimate=err,
        evals=evals,
    )
