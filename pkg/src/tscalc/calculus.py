"""Delta, nabla and diamond-alpha derivatives and integrals on a TimeScale.

Derivatives
    At a right-scattered point the delta derivative is the exact forward
    difference quotient ``(f(sigma(t)) - f(t)) / mu(t)``; at a right-dense
    point it is the one-sided limit of difference quotients taken inside the
    dense segment, computed with Richardson extrapolation over halving steps.
    The nabla derivative mirrors this on the left. The diamond-alpha
    derivative is the affine combination ``alpha * delta + (1-alpha) * nabla``.

Integrals
    ``int_a^b f dt`` decomposes into Riemann integrals over the dense
    sub-segments of ``[a, b]`` (adaptive Simpson quadrature) plus
    graininess-weighted jump terms: the delta integral collects
    ``f(t) * mu(t)`` over right-scattered ``t`` in ``[a, b)``, the nabla
    integral collects ``f(t) * nu(t)`` over left-scattered ``t`` in
    ``(a, b]``. On a window of the integers this reduces to the familiar
    one-sided sums; on a plain interval all three integrals coincide with the
    Riemann integral. The diamond-alpha integral is again the exact affine
    combination of the two, value and error estimate alike.

Jump terms are accumulated left to right in component order, so on an
all-isolated scale the integrals equal the brute-force sums bit for bit.
Everything here is pure and operates on immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DerivativeError, InvalidParameterError, QuadratureError, ScaleError
from .timescale import Interval, TimeScale

__all__ = [
    "Alpha",
    "CalcConfig",
    "DEFAULT_CONFIG",
    "IntegralResult",
    "DerivativeKind",
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
]


@dataclass(frozen=True)
class Alpha:
    """Mixing weight of the diamond combination, constrained to [0, 1]."""

    value: float

    def __post_init__(self):
        if not isinstance(self.value, (int, float)) or isinstance(self.value, bool):
            raise InvalidParameterError(f"alpha must be a number, got {self.value!r}")
        if not math.isfinite(self.value) or not 0.0 <= self.value <= 1.0:
            raise InvalidParameterError(f"alpha must lie in [0, 1], got {self.value!r}")
        object.__setattr__(self, "value", float(self.value))

    @classmethod
    def coerce(cls, a: "Alpha | float") -> "Alpha":
        return a if isinstance(a, Alpha) else cls(a)


@dataclass(frozen=True)
class CalcConfig:
    """Numerical knobs shared by quadrature and dense-point differentiation.

    ``fd_initial_step`` is a fraction of the dense segment's length; the
    actual first step is clipped so all samples stay inside the segment.
    ``max_evals`` caps integrand evaluations per integral.
    """

    quad_abs_tol: float = 1e-10
    quad_rel_tol: float = 1e-10
    quad_max_depth: int = 40
    fd_initial_step: float = 1e-3
    fd_richardson_levels: int = 4
    max_evals: int = 10_000_000

    def __post_init__(self):
        for name in ("quad_abs_tol", "quad_rel_tol", "fd_initial_step"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise InvalidParameterError(f"{name} must be a positive number, got {v!r}")
        for name in ("quad_max_depth", "fd_richardson_levels", "max_evals"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise InvalidParameterError(f"{name} must be an integer >= 1, got {v!r}")


DEFAULT_CONFIG = CalcConfig()


@dataclass(frozen=True)
class IntegralResult:
    """value = dense_part + scattered_part; the estimate bounds only the
    dense quadrature error (jump terms are exact sums)."""

    value: float
    error_estimate: float
    dense_part: float
    scattered_part: float
    evals: int

    def combined(self, other: "IntegralResult", alpha: Alpha) -> "IntegralResult":
        a = alpha.value
        c = 1.0 - a
        return IntegralResult(
            value=a * self.value + c * other.value,
            error_estimate=a * self.error_estimate + c * other.error_estimate,
            dense_part=a * self.dense_part + c * other.dense_part,
            scattered_part=a * self.scattered_part + c * other.scattered_part,
            evals=self.evals + other.evals,
        )


_ZERO_RESULT = IntegralResult(0.0, 0.0, 0.0, 0.0, 0)


@dataclass(frozen=True)
class DerivativeKind:
    """Selector: delta, nabla, or diamond(alpha)."""

    name: str
    alpha: Alpha | None = None

    def __post_init__(self):
        if self.name not in ("delta", "nabla", "diamond"):
            raise InvalidParameterError(f"unknown derivative kind {self.name!r}")
        if self.name == "diamond":
            if self.alpha is None:
                raise InvalidParameterError("diamond kind requires an alpha")
            object.__setattr__(self, "alpha", Alpha.coerce(self.alpha))
        elif self.alpha is not None:
            raise InvalidParameterError(f"{self.name} kind takes no alpha")

    @classmethod
    def delta(cls) -> "DerivativeKind":
        return cls("delta")

    @classmethod
    def nabla(cls) -> "DerivativeKind":
        return cls("nabla")

    @classmethod
    def diamond(cls, alpha: Alpha | float) -> "DerivativeKind":
        return cls("diamond", Alpha.coerce(alpha))


# -- adaptive Simpson quadrature ------------------------------------------------


class _CountedFunction:
    """Wraps an integrand with a hard evaluation budget."""

    __slots__ = ("fn", "limit", "count")

    def __init__(self, fn: Callable[[float], float], limit: int):
        self.fn = fn
        self.limit = limit
        self.count = 0

    def __call__(self, t: float) -> float:
        self.count += 1
        if self.count > self.limit:
            raise QuadratureError(
                f"evaluation budget of {self.limit} integrand calls exceeded"
            )
        return self.fn(t)


def _simpson(a: float, b: float, fa: float, fm: float, fb: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(a, m, fa, flm, fm)
    right = _simpson(m, b, fm, frm, fb)
    s2 = left + right
    err = (s2 - whole) / 15.0
    if abs(err) <= tol or lm <= a or rm >= b:  # converged, or at float resolution
        return s2 + err, abs(err)
    if depth <= 0:
        raise QuadratureError(
            f"quadrature failed to converge on [{a!r}, {b!r}] "
            f"(estimate {abs(err):.3e} > budget {tol:.3e} at the depth limit)"
        )
    half = 0.5 * tol
    lval, lerr = _adapt(f, a, m, fa, flm, fm, left, half, depth - 1)
    rval, rerr = _adapt(f, m, b, fm, frm, fb, right, half, depth - 1)
    return lval + rval, lerr + rerr


def _quad_counted(f: _CountedFunction, lo: float, hi: float, cfg: CalcConfig):
    if lo == hi:
        return 0.0, 0.0
    fa = f(lo)
    fm = f(0.5 * (lo + hi))
    fb = f(hi)
    whole = _simpson(lo, hi, fa, fm, fb)
    tol = max(cfg.quad_abs_tol, cfg.quad_rel_tol * abs(whole))
    return _adapt(f, lo, hi, fa, fm, fb, whole, tol, cfg.quad_max_depth)


def quadrature_dense(
    f: Callable[[float], float], lo: float, hi: float, cfg: CalcConfig = DEFAULT_CONFIG
) -> tuple[float, float, int]:
    """Adaptive-Simpson integral of a continuous f over [lo, hi].

    Returns ``(value, error_estimate, evals)`` with the estimate within
    ``max(quad_abs_tol, quad_rel_tol * |value|)`` on convergence; raises
    QuadratureError naming the worst sub-segment otherwise.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise InvalidParameterError("quadrature bounds must be finite")
    if lo > hi:
        raise InvalidParameterError(f"need lo <= hi, got [{lo!r}, {hi!r}]")
    counted = _CountedFunction(f, cfg.max_evals)
    value, err = _quad_counted(counted, lo, hi, cfg)
    return value, err, counted.count


# -- derivatives -------------------------------------------------------------------


def _dense_component(ts: TimeScale, t: float) -> Interval:
    for c in ts.components:
        if isinstance(c, Interval) and c.lo <= t <= c.hi:
            return c
    # Unreachable for correctly classified dense points.
    raise DerivativeError(f"internal: no dense segment contains t={t!r}")


def _one_sided_limit(
    f: Callable[[float], float],
    t: float,
    side: float,
    h0: float,
    cfg: CalcConfig,
) -> float:
    """Limit of (f(s) - f(t)) / (s - t) for s -> t from one side.

    Difference quotients at steps h0 / 2^i feed a Richardson tableau for the
    first-order one-sided stencil; the best diagonal entry wins. Convergence
    requires the extrapolation residual to beat the square root of the config
    quadrature tolerances: one-sided differences in double precision cannot
    certify more than about half the working digits, and demanding more would
    reject exact results on roundoff noise. Failure raises rather than
    returning a low-confidence number.
    """
    ft = f(t)
    prev_row: list[float] = []
    best_val = math.nan
    best_err = math.inf
    for i in range(cfg.fd_richardson_levels):
        h = h0 / (2.0 ** i)
        s = t + side * h
        if s == t:
            break  # step underflowed; no further refinement possible
        row = [(f(s) - ft) / (s - t)]
        for j in range(1, i + 1):
            factor = 2.0 ** j
            row.append(row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (factor - 1.0))
        if i > 0:
            est = max(abs(row[i] - row[i - 1]), abs(row[i] - prev_row[i - 1]))
            if est < best_err:
                best_err = est
                best_val = row[i]
        prev_row = row
    threshold = max(
        math.sqrt(cfg.quad_abs_tol), math.sqrt(cfg.quad_rel_tol) * abs(best_val)
    )
    if best_err <= threshold:
        return best_val
    raise DerivativeError(
        f"one-sided difference limit at t={t!r} did not converge within "
        f"{cfg.fd_richardson_levels} extrapolation levels "
        f"(best estimate {best_err:.3e})"
    )


def _upper_window(ts: TimeScale) -> float:
    if ts.min == ts.max:
        raise DerivativeError("a single-point scale has no derivative domain")
    return ts.truncate_upper(ts.min, ts.max)


def _lower_window(ts: TimeScale) -> float:
    if ts.min == ts.max:
        raise DerivativeError("a single-point scale has no derivative domain")
    return ts.truncate_lower(ts.min, ts.max)


def delta_derivative(
    ts: TimeScale,
    f: Callable[[float], float],
    t: float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> float:
    """Forward dynamic derivative of f at a member t.

    Exact quotient at right-scattered points; numeric one-sided limit inside
    the dense segment at right-dense points (falling back to the left side
    only at the scale's maximum, where that is the defining limit).
    """
    if not ts.contains(t):
        raise ScaleError(f"point {t!r} is not a member of the scale")
    hi = _upper_window(ts)
    if t > hi:
        raise DerivativeError(
            f"t={t!r} lies above the delta-derivative domain (upper bound {hi!r})"
        )
    mu = ts.mu(t)
    if mu > 0.0:
        return (f(ts.sigma(t)) - f(t)) / mu
    comp = _dense_component(ts, t)
    side = 1.0 if t < comp.hi else -1.0
    room = comp.hi - t if side > 0 else t - comp.lo
    h0 = min(cfg.fd_initial_step * (comp.hi - comp.lo), room)
    return _one_sided_limit(f, t, side, h0, cfg)


def nabla_derivative(
    ts: TimeScale,
    f: Callable[[float], float],
    t: float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> float:
    """Backward dynamic derivative; mirror of :func:`delta_derivative`."""
    if not ts.contains(t):
        raise ScaleError(f"point {t!r} is not a member of the scale")
    lo = _lower_window(ts)
    if t < lo:
        raise DerivativeError(
            f"t={t!r} lies below the nabla-derivative domain (lower bound {lo!r})"
        )
    nu = ts.nu(t)
    if nu > 0.0:
        return (f(t) - f(ts.rho(t))) / nu
    comp = _dense_component(ts, t)
    side = -1.0 if t > comp.lo else 1.0
    room = t - comp.lo if side < 0 else comp.hi - t
    h0 = min(cfg.fd_initial_step * (comp.hi - comp.lo), room)
    return _one_sided_limit(f, t, side, h0, cfg)


def diamond_derivative(
    ts: TimeScale,
    f: Callable[[float], float],
    t: float,
    alpha: Alpha | float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> float:
    """alpha-weighted combination of the delta and nabla derivatives at t."""
    a = Alpha.coerce(alpha).value
    d = delta_derivative(ts, f, t, cfg)
    n = nabla_derivative(ts, f, t, cfg)
    return a * d + (1.0 - a) * n


def dynamic_derivative(
    ts: TimeScale,
    f: Callable[[float], float],
    t: float,
    kind: DerivativeKind,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> float:
    if kind.name == "delta":
        return delta_derivative(ts, f, t, cfg)
    if kind.name == "nabla":
        return nabla_derivative(ts, f, t, cfg)
    return diamond_derivative(ts, f, t, kind.alpha, cfg)


# -- integrals ----------------------------------------------------------------------


def _check_endpoints(ts: TimeScale, a: float, b: float) -> None:
    if not ts.contains(a):
        raise ScaleError(f"lower endpoint {a!r} is not a member of the scale")
    if not ts.contains(b):
        raise ScaleError(f"upper endpoint {b!r} is not a member of the scale")
    if a > b:
        raise ScaleError(f"need a <= b, got a={a!r}, b={b!r} (use signed_integral)")


def delta_integral(
    ts: TimeScale,
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> IntegralResult:
    """Forward integral over [a, b]: dense quadrature plus f(t)*mu(t) jumps
    over right-scattered t in [a, b)."""
    _check_endpoints(ts, a, b)
    if a == b:
        return _ZERO_RESULT
    counted = _CountedFunction(f, cfg.max_evals)
    dense = 0.0
    scattered = 0.0
    err = 0.0
    comps = ts.components
    for i, c in enumerate(comps):
        if isinstance(c, Interval):
            u = max(c.lo, a)
            v = min(c.hi, b)
            if u < v:
                val, e = _quad_counted(counted, u, v, cfg)
                dense += val
                err += e
        last = c.hi if isinstance(c, Interval) else c.p
        if a <= last < b:
            nxt = comps[i + 1]
            nxt_start = nxt.lo if isinstance(nxt, Interval) else nxt.p
            scattered += counted(last) * (nxt_start - last)
    return IntegralResult(dense + scattered, err, dense, scattered, counted.count)


def nabla_integral(
    ts: TimeScale,
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> IntegralResult:
    """Backward integral over [a, b]: dense quadrature plus f(t)*nu(t) jumps
    over left-scattered t in (a, b]."""
    _check_endpoints(ts, a, b)
    if a == b:
        return _ZERO_RESULT
    counted = _CountedFunction(f, cfg.max_evals)
    dense = 0.0
    scattered = 0.0
    err = 0.0
    comps = ts.components
    for i, c in enumerate(comps):
        first = c.lo if isinstance(c, Interval) else c.p
        if a < first <= b:
            prev = comps[i - 1]
            prev_end = prev.hi if isinstance(prev, Interval) else prev.p
            scattered += counted(first) * (first - prev_end)
        if isinstance(c, Interval):
            u = max(c.lo, a)
            v = min(c.hi, b)
            if u < v:
                val, e = _quad_counted(counted, u, v, cfg)
                dense += val
                err += e
    return IntegralResult(dense + scattered, err, dense, scattered, counted.count)


def diamond_integral(
    ts: TimeScale,
    f: Callable[[float], float],
    a: float,
    b: float,
    alpha: Alpha | float,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> IntegralResult:
    """Diamond-alpha integral: the exact affine combination
    alpha * delta + (1 - alpha) * nabla of the two one-sided integrals."""
    al = Alpha.coerce(alpha)
    d = delta_integral(ts, f, a, b, cfg)
    n = nabla_integral(ts, f, a, b, cfg)
    return d.combined(n, al)


def dynamic_integral(
    ts: TimeScale,
    f: Callable[[float], float],
    a: float,
    b: float,
    kind: DerivativeKind,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> IntegralResult:
    if kind.name == "delta":
        return delta_integral(ts, f, a, b, cfg)
    if kind.name == "nabla":
        return nabla_integral(ts, f, a, b, cfg)
    return diamond_integral(ts, f, a, b, kind.alpha, cfg)


def signed_integral(
    ts: TimeScale,
    f: Callable[[float], float],
    a: float,
    b: float,
    kind: DerivativeKind,
    cfg: CalcConfig = DEFAULT_CONFIG,
) -> IntegralResult:
    """Orientation-aware wrapper: swapping the endpoints negates the value."""
    if a <= b:
        return dynamic_integral(ts, f, a, b, kind, cfg)
    r = dynamic_integral(ts, f, b, a, kind, cfg)
    return IntegralResult(-r.value, r.error_estimate, -r.dense_part, -r.scattered_part, r.evals)
