"""Finite time scales: closed subsets of the reals built from intervals and points.

A time scale here is a bounded, nonempty closed set stored in normal form as
an ordered tuple of pairwise-disjoint components (closed intervals with
``lo < hi``, and isolated points). On that set the structural operators of
time-scale calculus are exact:

* ``sigma(t)`` / ``rho(t)``     - forward/backward jump to the nearest member,
  fixed at the extremes (``sigma(max) = max``, ``rho(min) = min``),
* ``mu(t)`` / ``nu(t)``         - forward/backward graininess ``sigma(t)-t`` and
  ``t-rho(t)``,
* ``classify(t)``               - right/left dense-or-scattered flags,
* ``truncate_upper/lower/both`` - the derivative-domain window trims: the upper
  bound drops to ``rho(b)`` when ``b`` is left-scattered, the lower bound rises
  to ``sigma(a)`` when ``a`` is right-scattered.

All comparisons are exact on the stored floats; nothing is snapped to a
nearest member, so query points must be actual members (component endpoints
or interior interval points). TimeScale values are immutable and all
operations are pure, so instances can be shared freely across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import ScaleError

__all__ = [
    "Interval",
    "IsolatedPoint",
    "Component",
    "PointClass",
    "TimeScale",
    "build",
    "scale_from_document",
    "scale_from_json",
    "scale_to_document",
    "scale_to_json",
]


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with lo < hi strictly."""

    lo: float
    hi: float


@dataclass(frozen=True)
class IsolatedPoint:
    p: float


Component = Union[Interval, IsolatedPoint]


@dataclass(frozen=True)
class PointClass:
    """Density flags of a member point; exactly one flag holds per side."""

    right_dense: bool
    right_scattered: bool
    left_dense: bool
    left_scattered: bool


def _start(c: Component) -> float:
    return c.lo if isinstance(c, Interval) else c.p


def _end(c: Component) -> float:
    return c.hi if isinstance(c, Interval) else c.p


def _check_finite(x: float, what: str) -> float:
    if not isinstance(x, (int, float)) or isinstance(x, bool) or not math.isfinite(x):
        raise ScaleError(f"{what} must be a finite number, got {x!r}")
    return float(x)


class TimeScale:
    """Normalized finite time scale. Construct via :func:`build`."""

    __slots__ = ("components",)

    def __init__(self, components: tuple[Component, ...]):
        # Trusts the caller (build) to pass a normalized tuple.
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("TimeScale is immutable")

    @property
    def min(self) -> float:
        return _start(self.components[0])

    @property
    def max(self) -> float:
        return _end(self.components[-1])

    def __eq__(self, other) -> bool:
        return isinstance(other, TimeScale) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        parts = []
        for c in self.components:
            if isinstance(c, Interval):
                parts.append(f"[{c.lo}, {c.hi}]")
            else:
                parts.append(f"{{{c.p}}}")
        return "TimeScale(" + " ∪ ".join(parts) + ")"

    # -- membership and component lookup ------------------------------------

    def _component_index(self, t: float) -> int | None:
        for i, c in enumerate(self.components):
            if _start(c) <= t <= _end(c):
                return i
        return None

    def contains(self, t: float) -> bool:
        """True iff t is a member (interval endpoints inclusive, exact)."""
        _check_finite(t, "query point")
        return self._component_index(t) is not None

    def _require_member(self, t: float) -> int:
        idx = self._component_index(_check_finite(t, "query point"))
        if idx is None:
            raise ScaleError(f"point {t!r} is not a member of {self!r}")
        return idx

    # -- jump operators ------------------------------------------------------

    def sigma(self, t: float) -> float:
        """Forward jump: least member strictly above t, or t at the maximum."""
        idx = self._require_member(t)
        c = self.components[idx]
        if isinstance(c, Interval) and t < c.hi:
            return t
        if idx + 1 < len(self.components):
            return _start(self.components[idx + 1])
        return t

    def rho(self, t: float) -> float:
        """Backward jump: greatest member strictly below t, or t at the minimum."""
        idx = self._require_member(t)
        c = self.components[idx]
        if isinstance(c, Interval) and t > c.lo:
            return t
        if idx > 0:
            return _end(self.components[idx - 1])
        return t

    def mu(self, t: float) -> float:
        """Forward graininess sigma(t) - t; zero exactly at right-dense points."""
        return self.sigma(t) - t

    def nu(self, t: float) -> float:
        """Backward graininess t - rho(t); zero exactly at left-dense points."""
        return t - self.rho(t)

    def classify(self, t: float) -> PointClass:
        rs = self.sigma(t) > t
        ls = self.rho(t) < t
        return PointClass(
            right_dense=not rs,
            right_scattered=rs,
            left_dense=not ls,
            left_scattered=ls,
        )

    # -- truncated interval bounds -------------------------------------------

    def _check_pair(self, a: float, b: float) -> None:
        self._require_member(a)
        self._require_member(b)
        if a >= b:
            raise ScaleError(f"need a < b, got a={a!r}, b={b!r}")

    def truncate_upper(self, a: float, b: float) -> float:
        """Upper bound of the delta-derivative window: b, or rho(b) if b is left-scattered."""
        self._check_pair(a, b)
        r = self.rho(b)
        return b if r == b else r

    def truncate_lower(self, a: float, b: float) -> float:
        """Lower bound of the nabla-derivative window: a, or sigma(a) if a is right-scattered."""
        self._check_pair(a, b)
        s = self.sigma(a)
        return a if s == a else s

    def truncate_both(self, a: float, b: float) -> tuple[float, float]:
        return self.truncate_lower(a, b), self.truncate_upper(a, b)


def build(spec: Iterable[Component | Sequence[float] | float]) -> TimeScale:
    """Build a normalized TimeScale from raw components.

    Accepts ``Interval``/``IsolatedPoint`` instances, 2-sequences ``(lo, hi)``
    (an interval, ``lo == hi`` collapsing to a point) and bare numbers
    (isolated points). Components are sorted, touching or overlapping ones are
    merged, and degenerate intervals become isolated points, so equal sets
    always produce equal scales and rebuilding a scale's components is a
    no-op.
    """
    raw: list[tuple[float, float]] = []
    for item in spec:
        if isinstance(item, Interval):
            lo, hi = item.lo, item.hi
        elif isinstance(item, IsolatedPoint):
            lo = hi = item.p
        elif isinstance(item, (int, float)) and not isinstance(item, bool):
            lo = hi = item
        else:
            try:
                lo, hi = item  # type: ignore[misc]
            except (TypeError, ValueError):
                raise ScaleError(f"unrecognized component spec: {item!r}") from None
        lo = _check_finite(lo, "component endpoint")
        hi = _check_finite(hi, "component endpoint")
        if lo > hi:
            raise ScaleError(f"interval endpoints out of order: [{lo}, {hi}]")
        raw.append((lo, hi))
    if not raw:
        raise ScaleError("a time scale needs at least one component")

    raw.sort()
    merged: list[tuple[float, float]] = [raw[0]]
    for lo, hi in raw[1:]:
        mlo, mhi = merged[-1]
        if lo <= mhi:  # touching or overlapping closed sets form one component
            merged[-1] = (mlo, max(mhi, hi))
        else:
            merged.append((lo, hi))

    components: list[Component] = [
        Interval(lo, hi) if lo < hi else IsolatedPoint(lo) for lo, hi in merged
    ]
    return TimeScale(tuple(components))


# -- the on-disk / on-wire document format -----------------------------------
#
# {"components": [{"point": 0}, {"interval": [2, 3]}, ...]}


def scale_from_document(doc: object) -> TimeScale:
    if not isinstance(doc, dict) or "components" not in doc:
        raise ScaleError("scale document must be an object with a 'components' field")
    items = doc["components"]
    if not isinstance(items, list) or not items:
        raise ScaleError("'components' must be a nonempty list")
    comps: list[Component | Sequence[float]] = []
    for item in items:
        if not isinstance(item, dict) or len(item) != 1:
            raise ScaleError(
                "each component must be {'interval': [lo, hi]} or {'point': p},"
                f" got {item!r}"
            )
        if "interval" in item:
            pair = item["interval"]
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ScaleError(f"'interval' must be a [lo, hi] pair, got {pair!r}")
            comps.append(tuple(pair))
        elif "point" in item:
            comps.append(IsolatedPoint(_check_finite(item["point"], "point")))
        else:
            raise ScaleError(f"unknown component key in {item!r}")
    return build(comps)


def scale_from_json(text: str) -> TimeScale:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScaleError(f"invalid scale document: {exc}") from None
    return scale_from_document(doc)


def scale_to_document(ts: TimeScale) -> dict:
    items: list[dict] = []
    for c in ts.components:
        if isinstance(c, Interval):
            items.append({"interval": [c.lo, c.hi]})
        else:
            items.append({"point": c.p})
    return {"components": items}


def scale_to_json(ts: TimeScale) -> str:
    return json.dumps(scale_to_document(ts))
