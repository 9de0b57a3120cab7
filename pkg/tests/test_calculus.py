"""Dynamic derivatives, integrals, and the adaptive quadrature behind them."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from tscalc import (
    Alpha,
    CalcConfig,
    DerivativeError,
    DerivativeKind,
    FunctionHandle,
    InvalidParameterError,
    QuadratureError,
    ScaleError,
    build,
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

SQ = FunctionHandle.from_expr("t^2")
IDENT = FunctionHandle.from_expr("t")


def brute_delta_sum(points, f, a, b):
    """Independent oracle: sum of f(t) * (next - t) over members in [a, b)."""
    total = 0.0
    for lo, hi in zip(points, points[1:]):
        if a <= lo < b:
            total += f(lo) * (hi - lo)
    return total


def brute_nabla_sum(points, f, a, b):
    """Independent oracle: sum of f(t) * (t - prev) over members in (a, b]."""
    total = 0.0
    for lo, hi in zip(points, points[1:]):
        if a < hi <= b:
            total += f(hi) * (hi - lo)
    return total


class TestParameterTypes:
    @pytest.mark.parametrize("bad", [-0.1, 1.1, math.nan, math.inf, "x"])
    def test_alpha_range(self, bad):
        with pytest.raises(InvalidParameterError):
            Alpha(bad)

    def test_alpha_coerce(self):
        assert Alpha.coerce(0.5).value == 0.5
        assert Alpha.coerce(Alpha(1.0)).value == 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"quad_abs_tol": 0.0},
            {"quad_rel_tol": -1e-3},
            {"quad_max_depth": 0},
            {"fd_richardson_levels": 0},
            {"max_evals": 0},
            {"fd_initial_step": math.inf},
        ],
    )
    def test_config_validation(self, kwargs):
        with pytest.raises(InvalidParameterError):
            CalcConfig(**kwargs)

    def test_kind_validation(self):
        with pytest.raises(InvalidParameterError):
            DerivativeKind("weird")
        with pytest.raises(InvalidParameterError):
            DerivativeKind("diamond")
        with pytest.raises(InvalidParameterError):
            DerivativeKind("delta", Alpha(0.5))
        assert DerivativeKind.diamond(0.25).alpha.value == 0.25


class TestQuadrature:
    def test_constant_exact_at_depth_zero(self):
        value, err, evals = quadrature_dense(lambda t: 1.0, 0.0, 2.0)
        assert value == 2.0
        assert err == 0.0
        assert evals == 5  # one Simpson estimate plus its first refinement

    def test_cubic_closed_form(self):
        value, err, _ = quadrature_dense(lambda t: t ** 3, 0.0, 1.0)
        assert abs(value - 0.25) <= 1e-10  # antiderivative t^4 / 4
        assert err <= 1e-10

    def test_sine_closed_form(self):
        value, err, _ = quadrature_dense(math.sin, 0.0, math.pi)
        assert abs(value - 2.0) <= 1e-9  # antiderivative -cos
        assert err <= 1e-9

    def test_empty_range(self):
        assert quadrature_dense(math.sin, 1.0, 1.0) == (0.0, 0.0, 0)

    def test_reversed_range_rejected(self):
        with pytest.raises(InvalidParameterError):
            quadrature_dense(math.sin, 1.0, 0.0)

    def test_estimate_within_requested_tolerance(self):
        cfg = CalcConfig(quad_abs_tol=1e-8, quad_rel_tol=1e-8)
        for f, lo, hi in [(math.exp, 0.0, 1.0), (math.cos, -1.0, 2.0)]:
            value, err, _ = quadrature_dense(f, lo, hi, cfg)
            assert err <= max(cfg.quad_abs_tol, cfg.quad_rel_tol * abs(value))

    def test_depth_exhaustion_reports_segment(self):
        cfg = CalcConfig(quad_abs_tol=1e-16, quad_rel_tol=1e-16, quad_max_depth=2)
        with pytest.raises(QuadratureError) as info:
            quadrature_dense(math.sin, 0.0, math.pi, cfg)
        assert "[" in str(info.value)  # names the worst sub-segment

    def test_eval_budget_enforced(self):
        cfg = CalcConfig(quad_abs_tol=1e-14, quad_rel_tol=1e-14, max_evals=10)
        with pytest.raises(QuadratureError) as info:
            quadrature_dense(math.sin, 0.0, math.pi, cfg)
        assert "budget" in str(info.value)


class TestDerivatives:
    def test_scattered_exact_quotient(self):
        z = build([0, 1, 2, 3, 4])
        # difference-quotient oracle: (f(4) - f(3)) / 1
        assert delta_derivative(z, SQ, 3.0) == (16.0 - 9.0) / 1.0 == 7.0
        assert nabla_derivative(z, SQ, 3.0) == (9.0 - 4.0) / 1.0 == 5.0

    def test_diamond_midpoint(self):
        z = build([0, 1, 2, 3, 4])
        assert diamond_derivative(z, SQ, 3.0, 0.5) == 6.0

    def test_diamond_reductions(self):
        z = build([0, 1, 2, 3, 4])
        assert diamond_derivative(z, SQ, 2.0, 1.0) == delta_derivative(z, SQ, 2.0)
        assert diamond_derivative(z, SQ, 2.0, 0.0) == nabla_derivative(z, SQ, 2.0)

    def test_dense_against_analytic(self):
        ts = build([(0, 1)])
        assert delta_derivative(ts, SQ, 0.5) == pytest.approx(1.0, abs=1e-6)
        assert nabla_derivative(ts, SQ, 0.5) == pytest.approx(1.0, abs=1e-6)

    def test_constant_derivative_zero(self):
        ts = build([(0, 1)])
        c = FunctionHandle.constant(3.25)
        assert delta_derivative(ts, c, 0.5) == 0.0
        assert nabla_derivative(ts, c, 0.25) == 0.0

    @pytest.mark.parametrize(
        "text,deriv",
        [
            ("t^2", lambda t: 2 * t),
            ("t^3", lambda t: 3 * t * t),
            ("exp(t)", math.exp),
            ("sin(t)", math.cos),
        ],
    )
    @pytest.mark.parametrize("t", [0.0, 0.3, 0.5, 0.77, 1.0])
    def test_dense_against_central_difference_oracle(self, text, deriv, t):
        ts = build([(0, 1)])
        f = FunctionHandle.from_expr(text)
        num = delta_derivative(ts, f, t)
        assert num == pytest.approx(deriv(t), abs=1e-6)
        # independent numeric oracle (central difference, O(h^2))
        h = 1e-5
        oracle = (f(min(t + h, 1.5)) - f(t - h)) / (min(t + h, 1.5) - (t - h))
        if 0 + h < t < 1 - h:
            assert num == pytest.approx(oracle, abs=1e-6)

    def test_boundary_uses_inward_side(self):
        ts = build([(0, 1)])
        assert delta_derivative(ts, SQ, 1.0) == pytest.approx(2.0, abs=1e-6)
        assert nabla_derivative(ts, SQ, 0.0) == pytest.approx(0.0, abs=1e-6)

    def test_window_enforced(self):
        z = build([0, 1, 2, 3])
        with pytest.raises(DerivativeError):
            delta_derivative(z, SQ, 3.0)  # above rho(max)
        with pytest.raises(DerivativeError):
            nabla_derivative(z, SQ, 0.0)  # below sigma(min)
        with pytest.raises(DerivativeError):
            diamond_derivative(z, SQ, 3.0, 0.5)

    def test_window_allows_mixed_boundary(self):
        ts = build([0, (1, 2)])
        # max is left-dense, so the delta window reaches it
        assert delta_derivative(ts, SQ, 2.0) == pytest.approx(4.0, abs=1e-6)

    def test_nonmember_rejected(self):
        with pytest.raises(ScaleError):
            delta_derivative(build([(0, 1)]), SQ, 2.0)

    def test_singleton_scale_has_no_domain(self):
        with pytest.raises(DerivativeError):
            delta_derivative(build([5]), SQ, 5.0)

    def test_nonconvergence_reported(self):
        ts = build([(0, 1)])
        cfg = CalcConfig(fd_richardson_levels=1)
        with pytest.raises(DerivativeError):
            delta_derivative(ts, SQ, 0.5, cfg)

    def test_dispatch(self):
        z = build([0, 1, 2, 3, 4])
        assert dynamic_derivative(z, SQ, 3.0, DerivativeKind.delta()) == 7.0
        assert dynamic_derivative(z, SQ, 3.0, DerivativeKind.nabla()) == 5.0
        assert dynamic_derivative(z, SQ, 3.0, DerivativeKind.diamond(0.5)) == 6.0


class TestIntegerWindowIntegrals:
    def test_frozen_example(self):
        z = build([0, 1, 2, 3])
        d = delta_integral(z, IDENT, 0.0, 3.0)
        n = nabla_integral(z, IDENT, 0.0, 3.0)
        assert d.value == 3.0 and d.dense_part == 0.0 and d.scattered_part == 3.0
        assert n.value == 6.0
        assert diamond_integral(z, IDENT, 0.0, 3.0, 0.5).value == 4.5
        assert d.error_estimate == 0.0  # no quadrature on an all-isolated scale

    @given(
        st.lists(st.floats(min_value=-50, max_value=50, allow_nan=False),
                 min_size=2, max_size=20),
        st.data(),
    )
    @settings(max_examples=60)
    def test_matches_brute_force_exactly(self, raw_points, data):
        points = sorted(set(raw_points))
        if len(points) < 2:
            points.append(points[0] + 1.0)
        ts = build(points)
        i = data.draw(st.integers(0, len(points) - 2))
        j = data.draw(st.integers(i + 1, len(points) - 1))
        a, b = points[i], points[j]
        f = FunctionHandle.from_expr("1 + t + 0.25*t^2")
        d = delta_integral(ts, f, a, b)
        n = nabla_integral(ts, f, a, b)
        assert d.value == brute_delta_sum(points, f, a, b)
        assert n.value == brute_nabla_sum(points, f, a, b)
        assert d.evals + n.evals == (j - i) * 2


class TestDenseIntegrals:
    def test_identity_on_unit_interval(self):
        ts = build([(0, 1)])
        for result in (
            delta_integral(ts, IDENT, 0.0, 1.0),
            nabla_integral(ts, IDENT, 0.0, 1.0),
        ):
            assert abs(result.value - 0.5) <= 1e-10
            assert result.scattered_part == 0.0

    def test_all_kinds_coincide_on_dense_interval(self):
        ts = build([(0, 2)])
        f = FunctionHandle.from_expr("sin(t) + t^2")
        d = delta_integral(ts, f, 0.0, 2.0)
        n = nabla_integral(ts, f, 0.0, 2.0)
        m = diamond_integral(ts, f, 0.0, 2.0, 0.5)
        tol = 2 * (d.error_estimate + n.error_estimate)
        assert abs(d.value - n.value) <= tol
        assert abs(d.value - m.value) <= tol

    def test_mixed_scale_decomposition(self):
        ts = build([0, (2, 5)])
        f = IDENT
        d = delta_integral(ts, f, 0.0, 5.0)
        # jump 0 -> 2 contributes f(0) * 2 = 0; dense part is t dt over [2, 5]
        assert d.scattered_part == 0.0
        assert abs(d.dense_part - (25 - 4) / 2) <= 1e-9
        n = nabla_integral(ts, f, 0.0, 5.0)
        # backward jump at 2 contributes f(2) * 2 = 4
        assert n.scattered_part == 4.0
        assert abs(n.value - (4.0 + 10.5)) <= 1e-9


class TestIntegralAlgebra:
    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
    @pytest.mark.parametrize("c", [-3.5, 0.0, 2.0])
    def test_constant_rule(self, alpha, c):
        for spec in ([0, 1, 2, 3], [(0, 1)], [0, (1, 2), 4, (5, 7.5)]):
            ts = build(spec)
            a, b = ts.min, ts.max
            r = diamond_integral(ts, FunctionHandle.constant(c), a, b, alpha)
            assert abs(r.value - c * (b - a)) <= 1e-9 * abs(c) * (b - a) + 1e-12

    def test_empty_window_is_exact_zero_without_evaluating(self):
        calls = []

        def spy(t):
            calls.append(t)
            return 1.0

        ts = build([0, (1, 2)])
        r = delta_integral(ts, spy, 1.5, 1.5)
        assert r.value == 0.0 and r.evals == 0 and calls == []

    @pytest.mark.parametrize("alpha", [0.0, 0.3, 1.0])
    def test_linearity(self, alpha):
        ts = build([0, (1, 2), 3])
        f = FunctionHandle.from_expr("sin(t)")
        g = FunctionHandle.from_expr("t^2")
        lam, kap = 2.5, -1.25
        combo = FunctionHandle.from_callable(lambda t: lam * f(t) + kap * g(t), "combo")
        lhs = diamond_integral(ts, combo, 0.0, 3.0, alpha)
        rf = diamond_integral(ts, f, 0.0, 3.0, alpha)
        rg = diamond_integral(ts, g, 0.0, 3.0, alpha)
        tol = lhs.error_estimate + abs(lam) * rf.error_estimate + abs(kap) * rg.error_estimate + 1e-12
        assert abs(lhs.value - (lam * rf.value + kap * rg.value)) <= tol

    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_alpha_affinity_bitwise(self, alpha):
        ts = build([0, (1, 2), 3])
        f = FunctionHandle.from_expr("exp(t) - t")
        d = delta_integral(ts, f, 0.0, 3.0)
        n = nabla_integral(ts, f, 0.0, 3.0)
        m = diamond_integral(ts, f, 0.0, 3.0, alpha)
        assert m.value == alpha * d.value + (1 - alpha) * n.value
        assert m.error_estimate == alpha * d.error_estimate + (1 - alpha) * n.error_estimate
        assert m.dense_part == alpha * d.dense_part + (1 - alpha) * n.dense_part
        assert m.scattered_part == alpha * d.scattered_part + (1 - alpha) * n.scattered_part

    def test_additivity_at_member_cut(self):
        ts = build([0, (1, 3), 5])
        f = FunctionHandle.from_expr("cos(t) + t")
        for integral in (delta_integral, nabla_integral):
            whole = integral(ts, f, 0.0, 5.0)
            left = integral(ts, f, 0.0, 2.0)
            right = integral(ts, f, 2.0, 5.0)
            tol = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-12
            assert abs(whole.value - (left.value + right.value)) <= tol

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
    def test_positivity(self, alpha):
        ts = build([0, (1, 2), 3])
        f = FunctionHandle.from_expr("t^2 + 0.1")
        r = diamond_integral(ts, f, 0.0, 3.0, alpha)
        assert r.value >= -r.error_estimate

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
    def test_monotonicity(self, alpha):
        ts = build([0, (1, 2), 3])
        f = FunctionHandle.from_expr("sin(t)")
        g = FunctionHandle.from_expr("sin(t) + 0.5")
        rf = diamond_integral(ts, f, 0.0, 3.0, alpha)
        rg = diamond_integral(ts, g, 0.0, 3.0, alpha)
        assert rf.value <= rg.value + rf.error_estimate + rg.error_estimate

    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_strict_positivity_at_interior_bump(self, alpha):
        # nonnegative f with f(t0) > 0 at an interior member forces a
        # strictly positive integral
        ts = build([0, 1, 2, 3])
        f = FunctionHandle.from_callable(lambda t: 1.0 if t == 2.0 else 0.0, "bump")
        assert diamond_integral(ts, f, 0.0, 3.0, alpha).value > 0.0
        ts2 = build([(0, 1)])
        g = FunctionHandle.from_expr("t * (1 - t)")  # positive on the interior
        assert diamond_integral(ts2, g, 0.0, 1.0, alpha).value > 0.0

    def test_value_is_sum_of_parts(self):
        ts = build([0, (1, 2), 3])
        f = FunctionHandle.from_expr("exp(t)")
        r = delta_integral(ts, f, 0.0, 3.0)
        assert r.value == pytest.approx(r.dense_part + r.scattered_part, rel=1e-15)

    def test_signed_wrapper(self):
        ts = build([0, 1, 2, 3])
        kind = DerivativeKind.diamond(0.5)
        fwd = signed_integral(ts, IDENT, 0.0, 3.0, kind)
        rev = signed_integral(ts, IDENT, 3.0, 0.0, kind)
        assert rev.value == -fwd.value
        assert rev.dense_part == -fwd.dense_part
        assert rev.scattered_part == -fwd.scattered_part
        assert dynamic_integral(ts, IDENT, 0.0, 3.0, kind).value == fwd.value

    def test_endpoint_errors(self):
        ts = build([0, 1, 2, 3])
        with pytest.raises(ScaleError):
            delta_integral(ts, IDENT, 0.0, 2.5)
        with pytest.raises(ScaleError):
            nabla_integral(ts, IDENT, -1.0, 2.0)
        with pytest.raises(ScaleError):
            delta_integral(ts, IDENT, 3.0, 0.0)
