"""Structural operators of finite time scales: construction, jumps, graininess."""

import math

import pytest
from hypothesis import given, strategies as st

from tscalc import (
    Interval,
    IsolatedPoint,
    ScaleError,
    build,
    scale_from_json,
    scale_to_json,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)

raw_component = st.one_of(
    finite,
    st.tuples(finite, finite).map(lambda ab: tuple(sorted(ab))),
)

raw_specs = st.lists(raw_component, min_size=1, max_size=8)

isolated_specs = st.lists(finite, min_size=1, max_size=12)


class TestBuild:
    def test_touching_intervals_merge(self):
        ts = build([(0, 1), (1, 2)])
        assert ts.components == (Interval(0.0, 2.0),)

    def test_singleton(self):
        ts = build([5])
        assert ts.components == (IsolatedPoint(5.0),)
        assert ts.min == ts.max == 5.0

    def test_sort_collapse_merge(self):
        # [3,3] collapses to the point 3, which the interval [2,3] absorbs
        ts = build([(2, 3), 1, (3, 3)])
        assert ts.components == (IsolatedPoint(1.0), Interval(2.0, 3.0))

    def test_overlapping_intervals_merge(self):
        ts = build([(0, 2), (1, 5), (4.5, 6)])
        assert ts.components == (Interval(0.0, 6.0),)

    def test_empty_spec_rejected(self):
        with pytest.raises(ScaleError):
            build([])

    @pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
    def test_nonfinite_rejected(self, bad):
        with pytest.raises(ScaleError):
            build([bad])
        with pytest.raises(ScaleError):
            build([(0, bad)])

    def test_reversed_interval_rejected(self):
        with pytest.raises(ScaleError):
            build([(2, 1)])

    @given(raw_specs)
    def test_idempotent(self, spec):
        ts = build(spec)
        assert build(ts.components) == ts

    @given(raw_specs, st.randoms(use_true_random=False))
    def test_order_insensitive(self, spec, rnd):
        shuffled = list(spec)
        rnd.shuffle(shuffled)
        assert build(shuffled) == build(spec)

    @given(raw_specs)
    def test_normal_form(self, spec):
        ts = build(spec)
        prev_end = None
        for c in ts.components:
            if isinstance(c, Interval):
                assert c.lo < c.hi
                start, end = c.lo, c.hi
            else:
                start = end = c.p
            if prev_end is not None:
                assert start > prev_end  # strictly positive gaps
            prev_end = end
        assert ts.min == (ts.components[0].lo if isinstance(ts.components[0], Interval)
                          else ts.components[0].p)


class TestMembership:
    def test_closed_endpoints(self):
        ts = build([(0, 1)])
        assert ts.contains(1.0)
        assert ts.contains(0.0)
        assert not ts.contains(1.5)

    def test_gap_point(self):
        ts = build([2, (3, 4)])
        assert not ts.contains(2.5)
        assert ts.contains(2.0)

    def test_nonfinite_query_rejected(self):
        with pytest.raises(ScaleError):
            build([0]).contains(math.nan)


class TestJumpOperators:
    def test_sigma_across_gap(self):
        ts = build([0, 1, (2, 3)])
        assert ts.sigma(1.0) == 2.0

    def test_sigma_dense_interior(self):
        assert build([(0, 1)]).sigma(0.5) == 0.5

    def test_sigma_at_max(self):
        assert build([(0, 1)]).sigma(1.0) == 1.0

    def test_rho_across_gap(self):
        ts = build([0, 1, (2, 3)])
        assert ts.rho(2.0) == 1.0

    def test_rho_dense_and_min(self):
        ts = build([(0, 1)])
        assert ts.rho(0.5) == 0.5
        assert ts.rho(0.0) == 0.0

    def test_graininess_integer_grid(self):
        z = build([0, 1, 2, 3])
        assert z.mu(1.0) == 1.0
        assert z.nu(1.0) == 1.0

    def test_graininess_dense(self):
        ts = build([(0, 1)])
        assert ts.mu(0.3) == 0.0
        assert ts.nu(0.3) == 0.0

    def test_graininess_point_to_interval(self):
        ts = build([0, (2, 5)])
        assert ts.mu(0.0) == 2.0
        assert ts.nu(2.0) == 2.0

    def test_nonmember_rejected(self):
        ts = build([(0, 1)])
        with pytest.raises(ScaleError):
            ts.sigma(2.0)
        with pytest.raises(ScaleError):
            ts.mu(0.5 + 1.5)

    @given(isolated_specs, st.data())
    def test_brute_force_equivalence(self, points, data):
        """On all-isolated scales the jump operators equal direct enumeration."""
        ts = build(points)
        members = sorted(set(float(p) for p in points))
        t = data.draw(st.sampled_from(members))
        above = [s for s in members if s > t]
        below = [s for s in members if s < t]
        assert ts.sigma(t) == (min(above) if above else t)
        assert ts.rho(t) == (max(below) if below else t)
        assert ts.mu(t) == (min(above) - t if above else 0.0)
        assert ts.nu(t) == (t - max(below) if below else 0.0)

    @given(raw_specs, st.data())
    def test_jump_order_and_membership(self, spec, data):
        ts = build(spec)
        candidates = []
        for c in ts.components:
            if isinstance(c, Interval):
                candidates.extend((c.lo, 0.5 * (c.lo + c.hi), c.hi))
            else:
                candidates.append(c.p)
        t = data.draw(st.sampled_from(candidates))
        assert ts.sigma(t) >= t
        assert ts.rho(t) <= t
        assert ts.contains(ts.sigma(t))
        assert ts.contains(ts.rho(t))
        assert ts.sigma(ts.max) == ts.max
        assert ts.rho(ts.min) == ts.min

    @given(isolated_specs, st.data())
    def test_rho_sigma_roundtrip_isolated(self, points, data):
        ts = build(points)
        members = sorted(set(float(p) for p in points))
        t = data.draw(st.sampled_from(members))
        if ts.sigma(t) > t:  # right-scattered
            assert ts.rho(ts.sigma(t)) == t


class TestClassify:
    def test_gap_then_interval(self):
        ts = build([0, 1, (2, 3)])
        pc = ts.classify(2.0)
        assert pc.left_scattered and pc.right_dense
        assert not pc.left_dense and not pc.right_scattered

    def test_dense_interior(self):
        pc = build([(0, 1)]).classify(0.5)
        assert pc.right_dense and pc.left_dense

    def test_singleton_is_dense_by_convention(self):
        pc = build([5]).classify(5.0)
        assert pc.right_dense and pc.left_dense

    @given(raw_specs, st.data())
    def test_flags_match_graininess(self, spec, data):
        ts = build(spec)
        candidates = []
        for c in ts.components:
            if isinstance(c, Interval):
                candidates.extend((c.lo, c.hi))
            else:
                candidates.append(c.p)
        t = data.draw(st.sampled_from(candidates))
        pc = ts.classify(t)
        assert pc.right_scattered == (ts.mu(t) > 0)
        assert pc.left_scattered == (ts.nu(t) > 0)
        assert pc.right_dense != pc.right_scattered
        assert pc.left_dense != pc.left_scattered


class TestTruncate:
    def test_integer_grid(self):
        z = build([0, 1, 2, 3])
        assert z.truncate_upper(0, 3) == 2.0
        assert z.truncate_lower(0, 3) == 1.0
        assert z.truncate_both(0, 3) == (1.0, 2.0)

    def test_dense_endpoints_unchanged(self):
        ts = build([(0, 1)])
        assert ts.truncate_upper(0, 1) == 1.0
        assert ts.truncate_lower(0, 1) == 0.0

    def test_mixed(self):
        ts = build([0, (1, 2)])
        assert ts.truncate_lower(0, 2) == 1.0
        assert ts.truncate_upper(0, 2) == 2.0

    def test_errors(self):
        z = build([0, 1, 2, 3])
        with pytest.raises(ScaleError):
            z.truncate_upper(0, 4)  # 4 not a member
        with pytest.raises(ScaleError):
            z.truncate_upper(3, 0)  # a >= b
        with pytest.raises(ScaleError):
            z.truncate_both(1, 1)


class TestDocumentFormat:
    def test_parse_example(self):
        ts = scale_from_json('{"components":[{"point":0},{"point":1},{"interval":[2,3]}]}')
        assert ts.components == (IsolatedPoint(0.0), IsolatedPoint(1.0), Interval(2.0, 3.0))

    @given(raw_specs)
    def test_round_trip(self, spec):
        ts = build(spec)
        assert scale_from_json(scale_to_json(ts)) == ts

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            "{}",
            '{"components": []}',
            '{"components": [{"interval": [1]}]}',
            '{"components": [{"what": 3}]}',
            '{"components": [{"interval": [2, 1]}]}',
            '{"components": [{"point": 0, "interval": [1, 2]}]}',
        ],
    )
    def test_bad_documents_rejected(self, text):
        with pytest.raises(ScaleError):
            scale_from_json(text)
