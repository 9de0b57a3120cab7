"""Pydantic request/response models for the HTTP service.

The scale payload mirrors the on-disk document format: an object with one
``components`` list whose items are ``{"interval": [lo, hi]}`` or
``{"point": p}``. Functions travel as expression text in the variable ``t``.
"""

from __future__ import annotations

import math
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..calculus import CalcConfig, DEFAULT_CONFIG, IntegralResult
from ..inequalities import InequalityReport


class ComponentModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    interval: Optional[tuple[float, float]] = None
    point: Optional[float] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.interval is None) == (self.point is None):
            raise ValueError("component needs exactly one of 'interval' or 'point'")
        return self


class ScaleModel(BaseModel):
    components: list[ComponentModel] = Field(min_length=1)


class ConfigModel(BaseModel):
    """Optional overrides of the numerical defaults."""

    model_config = ConfigDict(extra="forbid")

    quad_abs_tol: Optional[float] = None
    quad_rel_tol: Optional[float] = None
    quad_max_depth: Optional[int] = None
    fd_initial_step: Optional[float] = None
    fd_richardson_levels: Optional[int] = None
    max_evals: Optional[int] = None

    def to_config(self, base: CalcConfig = DEFAULT_CONFIG) -> CalcConfig:
        overrides = {k: v for k, v in self.model_dump().items() if v is not None}
        if not overrides:
            return base
        merged = {
            "quad_abs_tol": base.quad_abs_tol,
            "quad_rel_tol": base.quad_rel_tol,
            "quad_max_depth": base.quad_max_depth,
            "fd_initial_step": base.fd_initial_step,
            "fd_richardson_levels": base.fd_richardson_levels,
            "max_evals": base.max_evals,
        }
        merged.update(overrides)
        return CalcConfig(**merged)


class IntegralResultModel(BaseModel):
    value: float
    error_estimate: float
    dense_part: float
    scattered_part: float
    evals: int

    @classmethod
    def from_result(cls, r: IntegralResult) -> "IntegralResultModel":
        return cls(
            value=r.value,
            error_estimate=r.error_estimate,
            dense_part=r.dense_part,
            scattered_part=r.scattered_part,
            evals=r.evals,
        )


class IntegrateRequest(BaseModel):
    scale: ScaleModel
    f: str
    a: float
    b: float
    alpha: float
    config: Optional[ConfigModel] = None


class IntegrateResponse(BaseModel):
    alpha: float
    result: IntegralResultModel
    delta: IntegralResultModel
    nabla: IntegralResultModel


class DeriveRequest(BaseModel):
    scale: ScaleModel
    f: str
    t: float
    kind: Literal["delta", "nabla", "diamond"] = "diamond"
    alpha: Optional[float] = None
    config: Optional[ConfigModel] = None


class DeriveResponse(BaseModel):
    value: float
    kind: str
    alpha: Optional[float] = None


class ReportModel(BaseModel):
    name: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    holds: bool
    params: dict[str, Any]
    decomposition: dict[str, Any]

    @classmethod
    def from_report(cls, r: InequalityReport) -> "ReportModel":
        return cls(**r.as_document())


class HolderRequest(BaseModel):
    scale: ScaleModel
    f: str
    g: str
    a: float
    b: float
    alpha: float
    p: float
    config: Optional[ConfigModel] = None


class CauchySchwarzRequest(BaseModel):
    scale: ScaleModel
    f: str
    g: str
    a: float
    b: float
    alpha: float
    config: Optional[ConfigModel] = None


class MinkowskiRequest(HolderRequest):
    pass


class ConvexModel(BaseModel):
    """A convex function: expression text plus its open domain (None = unbounded)."""

    f: str
    lower: Optional[float] = None
    upper: Optional[float] = None
    subgradient: Optional[str] = None

    def bounds(self) -> tuple[float, float]:
        lo = -math.inf if self.lower is None else self.lower
        hi = math.inf if self.upper is None else self.upper
        return lo, hi


class JensenRequest(BaseModel):
    scale: ScaleModel
    g: str
    convex: ConvexModel
    a: float
    b: float
    alpha: float
    config: Optional[ConfigModel] = None


class AmgmRequest(BaseModel):
    values: list[float] = Field(min_length=2)
    alpha: float
    n: Optional[int] = None

    @model_validator(mode="after")
    def _n_consistent(self):
        if self.n is not None and self.n != len(self.values) - 1:
            raise ValueError(
                f"n={self.n} is inconsistent with {len(self.values)} values "
                f"(expected n = {len(self.values) - 1})"
            )
        return self


class VariationalRequest(BaseModel):
    x: str
    grid_points: int = 64
    config: Optional[ConfigModel] = None


class VariationalResponse(BaseModel):
    j_value: float
    lower_bound_holds: bool
    tolerance: float
    error_estimate: float
    evals: int


class SuiteRequest(BaseModel):
    trials: int
    seed: int = 0
    config: Optional[ConfigModel] = None


class SuiteResponse(BaseModel):
    trials: int
    seed: int
    inequalities: dict[str, dict[str, int]]
    total_violations: int
    witnesses: list[dict[str, Any]]


class HealthResponse(BaseModel):
    status: str
    version: str
