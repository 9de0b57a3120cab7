"""Randomized verification suite for the four integral inequalities.

Each trial draws a random finite scale (up to six components), a random
window [a, b] of member points, random polynomial or trigonometric
integrands, a random alpha from {0, 1/4, 1/2, 3/4, 1} and, where applicable,
a random exponent p in (1, 5], then evaluates one inequality check and tallies
the verdict. A negative verdict is a violation witness: the trial's full
recipe (scale document, expression texts, parameters and the report) is
recorded so it can be replayed.

Trial generators are seeded from (base seed, inequality name, trial index)
through a string seed, so runs are deterministic and individual trials are
independent of each other; aggregation happens in trial order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .calculus import CalcConfig
from .errors import InvalidParameterError, TscalcError
from .expr import FunctionHandle
from .inequalities import (
    ConvexSpec,
    InequalityReport,
    cauchy_schwarz_check,
    holder_check,
    jensen_check,
    minkowski_check,
)
from .timescale import Interval, TimeScale, build, scale_to_document

__all__ = ["INEQUALITY_NAMES", "SuiteSummary", "run_property_suite", "SUITE_CONFIG"]

INEQUALITY_NAMES = ("holder", "cauchy_schwarz", "minkowski", "jensen")

# The suite runs thousands of integrals; a slightly relaxed quadrature budget
# keeps it quick while staying far tighter than the propagated verdict
# tolerances.
SUITE_CONFIG = CalcConfig(quad_abs_tol=1e-9, quad_rel_tol=1e-9)

_ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass
class SuiteSummary:
    trials: int
    seed: int
    counts: dict = field(default_factory=dict)  # name -> {holds, violations, skipped}
    witnesses: list = field(default_factory=list)

    @property
    def total_violations(self) -> int:
        return sum(c["violations"] for c in self.counts.values())

    def as_document(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "inequalities": {k: dict(v) for k, v in self.counts.items()},
            "total_violations": self.total_violations,
            "witnesses": list(self.witnesses),
        }


# -- random instances ---------------------------------------------------------------


def _random_scale(rng: random.Random) -> TimeScale:
    n = rng.randint(1, 6)
    comps: list = []
    cursor = rng.uniform(-3.0, 0.0)
    for _ in range(n):
        cursor += rng.uniform(0.1, 0.7)
        if rng.random() < 0.45:
            comps.append(cursor)
        else:
            length = rng.uniform(0.15, 0.9)
            comps.append((cursor, cursor + length))
            cursor += length
    return build(comps)


def _member_candidates(ts: TimeScale, rng: random.Random) -> list[float]:
    pts: list[float] = []
    for c in ts.components:
        if isinstance(c, Interval):
            pts.extend((c.lo, rng.uniform(c.lo, c.hi), c.hi))
        else:
            pts.append(c.p)
    return sorted(set(pts))


def _random_window(rng: random.Random) -> tuple[TimeScale, float, float]:
    while True:
        ts = _random_scale(rng)
        cands = _member_candidates(ts, rng)
        if len(cands) < 2:
            continue
        i = rng.randrange(len(cands) - 1)
        j = rng.randrange(i + 1, len(cands))
        return ts, cands[i], cands[j]


def _poly_text(rng: random.Random) -> str:
    degree = rng.randint(0, 3)
    terms = []
    for k in range(degree + 1):
        c = round(rng.uniform(-2.0, 2.0), 4)
        if k == 0:
            terms.append(repr(c))
        elif k == 1:
            terms.append(f"{c!r}*t")
        else:
            terms.append(f"{c!r}*t^{k}")
    return " + ".join(terms)


def _trig_text(rng: random.Random, offset_min: float = -1.5) -> str:
    amp = round(rng.uniform(-2.0, 2.0), 4)
    base = round(rng.uniform(offset_min, 1.5), 4)
    freq = round(rng.uniform(0.3, 2.0), 4)
    fn = rng.choice(("sin", "cos"))
    return f"{base!r} + {amp!r}*{fn}({freq!r}*t)"


def _random_function_text(rng: random.Random) -> str:
    return _poly_text(rng) if rng.random() < 0.5 else _trig_text(rng)


def _positive_trig_text(rng: random.Random) -> str:
    amp = round(rng.uniform(-1.0, 1.0), 4)
    base = round(abs(amp) + rng.uniform(0.3, 2.0), 4)
    freq = round(rng.uniform(0.3, 2.0), 4)
    return f"{base!r} + {amp!r}*sin({freq!r}*t)"


_CONVEX_CHOICES = ("square", "abs", "neg_log", "exp")


def _jensen_instance(rng: random.Random) -> tuple[str, ConvexSpec, str]:
    kind = rng.choice(_CONVEX_CHOICES)
    if kind == "square":
        return "t^2", ConvexSpec(FunctionHandle.from_expr("t^2")), _random_function_text(rng)
    if kind == "abs":
        return "abs(t)", ConvexSpec(FunctionHandle.from_expr("abs(t)")), _random_function_text(rng)
    if kind == "neg_log":
        spec = ConvexSpec(FunctionHandle.from_expr("-log(t)"), lower=0.0)
        return "-log(t)", spec, _positive_trig_text(rng)
    # exp composes safely only with bounded integrands
    return "exp(t)", ConvexSpec(FunctionHandle.from_expr("exp(t)")), _trig_text(rng)


# -- the suite -----------------------------------------------------------------------


def _run_trial(
    name: str, base_seed: int, index: int, cfg: CalcConfig
) -> tuple[InequalityReport | None, dict | None, str | None]:
    """Returns (report, witness, skip_reason); exactly one of report/skip set."""
    rng = random.Random(f"{base_seed}:{name}:{index}")
    ts, a, b = _random_window(rng)
    alpha = rng.choice(_ALPHAS)
    params: dict = {
        "inequality": name,
        "seed": base_seed,
        "index": index,
        "scale": scale_to_document(ts),
        "a": a,
        "b": b,
        "alpha": alpha,
    }
    try:
        if name == "jensen":
            f_text, convex, g_text = _jensen_instance(rng)
            params.update({"F": f_text, "g": g_text})
            report = jensen_check(ts, FunctionHandle.from_expr(g_text), convex, a, b, alpha, cfg)
        else:
            f_text = _random_function_text(rng)
            g_text = _random_function_text(rng)
            params.update({"f": f_text, "g": g_text})
            f = FunctionHandle.from_expr(f_text)
            g = FunctionHandle.from_expr(g_text)
            if name == "holder":
                p = rng.uniform(1.1, 5.0)
                params["p"] = p
                report = holder_check(ts, f, g, a, b, alpha, p, cfg)
            elif name == "cauchy_schwarz":
                report = cauchy_schwarz_check(ts, f, g, a, b, alpha, cfg)
            else:
                p = rng.uniform(1.1, 5.0)
                params["p"] = p
                report = minkowski_check(ts, f, g, a, b, alpha, p, cfg)
    except TscalcError as exc:
        return None, None, f"{type(exc).__name__}: {exc}"

    if report.holds:
        return report, None, None
    witness = dict(params)
    witness["report"] = report.as_document()
    return report, witness, None


def run_property_suite(
    trials: int, seed: int = 0, cfg: CalcConfig | None = None
) -> SuiteSummary:
    """Run ``trials`` randomized instances of each inequality check.

    Deterministic for a fixed seed. Violations carry replayable witnesses;
    degenerate trials (a generated instance its check rejects) are counted as
    skipped, not as violations.
    """
    if not isinstance(trials, int) or trials < 1:
        raise InvalidParameterError(f"trials must be an integer >= 1, got {trials!r}")
    cfg = cfg or SUITE_CONFIG
    summary = SuiteSummary(trials=trials, seed=seed)
    for name in INEQUALITY_NAMES:
        counts = {"holds": 0, "violations": 0, "skipped": 0}
        for index in range(trials):
            report, witness, skip = _run_trial(name, seed, index, cfg)
            if skip is not None:
                counts["skipped"] += 1
            elif witness is not None:
                counts["violations"] += 1
                summary.witnesses.append(witness)
            else:
                counts["holds"] += 1
        summary.counts[name] = counts
    return summary
