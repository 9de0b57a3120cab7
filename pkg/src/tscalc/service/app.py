"""FastAPI application wrapping the calculus and inequality operations.

Every endpoint is a stateless computation: scale documents and expression
texts come in, numbers and reports go out. Library errors (bad scale
documents, expression syntax or domain failures, parameters out of range,
quadrature non-convergence) surface as HTTP 400 with the error message in
``detail``; a negative inequality verdict is not an error, it is a regular
response with ``holds`` false.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..calculus import (
    Alpha,
    CalcConfig,
    DEFAULT_CONFIG,
    DerivativeKind,
    delta_integral,
    dynamic_derivative,
    nabla_integral,
)
from ..errors import TscalcError
from ..expr import FunctionHandle
from ..inequalities import (
    ConvexSpec,
    cauchy_schwarz_check,
    holder_check,
    jensen_check,
    minkowski_check,
    schwarz_variational_demo,
    weighted_amgm,
)
from ..suite import run_property_suite
from ..timescale import IsolatedPoint, TimeScale, build
from .schemas import (
    AmgmRequest,
    CauchySchwarzRequest,
    ConfigModel,
    DeriveRequest,
    DeriveResponse,
    HealthResponse,
    HolderRequest,
    IntegralResultModel,
    IntegrateRequest,
    IntegrateResponse,
    JensenRequest,
    MinkowskiRequest,
    ReportModel,
    ScaleModel,
    SuiteRequest,
    SuiteResponse,
    VariationalRequest,
    VariationalResponse,
)


def _to_scale(model: ScaleModel) -> TimeScale:
    comps = []
    for c in model.components:
        if c.interval is not None:
            comps.append(tuple(c.interval))
        else:
            comps.append(IsolatedPoint(c.point))
    return build(comps)


def _to_config(model: ConfigModel | None) -> CalcConfig:
    return DEFAULT_CONFIG if model is None else model.to_config()


def create_app() -> FastAPI:
    app = FastAPI(
        title="tscalc",
        version=__version__,
        description=(
            "Dynamic calculus on finite time scales: delta/nabla/diamond-alpha "
            "derivatives and integrals, and numerical verification of the "
            "classical integral inequalities."
        ),
    )

    @app.exception_handler(TscalcError)
    async def _tscalc_error(request: Request, exc: TscalcError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/integrate", response_model=IntegrateResponse)
    def integrate(req: IntegrateRequest) -> IntegrateResponse:
        ts = _to_scale(req.scale)
        cfg = _to_config(req.config)
        f = FunctionHandle.from_expr(req.f)
        alpha = Alpha.coerce(req.alpha)
        d = delta_integral(ts, f, req.a, req.b, cfg)
        n = nabla_integral(ts, f, req.a, req.b, cfg)
        combined = d.combined(n, alpha)
        return IntegrateResponse(
            alpha=alpha.value,
            result=IntegralResultModel.from_result(combined),
            delta=IntegralResultModel.from_result(d),
            nabla=IntegralResultModel.from_result(n),
        )

    @app.post("/derive", response_model=DeriveResponse)
    def derive(req: DeriveRequest) -> DeriveResponse:
        ts = _to_scale(req.scale)
        cfg = _to_config(req.config)
        f = FunctionHandle.from_expr(req.f)
        if req.kind == "diamond":
            if req.alpha is None:
                raise TscalcError("diamond derivative requires an alpha")
            kind = DerivativeKind.diamond(req.alpha)
        else:
            kind = DerivativeKind(req.kind)
        value = dynamic_derivative(ts, f, req.t, kind, cfg)
        alpha = req.alpha if req.kind == "diamond" else None
        return DeriveResponse(value=value, kind=req.kind, alpha=alpha)

    @app.post("/check/holder", response_model=ReportModel)
    def check_holder(req: HolderRequest) -> ReportModel:
        report = holder_check(
            _to_scale(req.scale),
            FunctionHandle.from_expr(req.f),
            FunctionHandle.from_expr(req.g),
            req.a,
            req.b,
            req.alpha,
            req.p,
            _to_config(req.config),
        )
        return ReportModel.from_report(report)

    @app.post("/check/cauchy-schwarz", response_model=ReportModel)
    def check_cauchy_schwarz(req: CauchySchwarzRequest) -> ReportModel:
        report = cauchy_schwarz_check(
            _to_scale(req.scale),
            FunctionHandle.from_expr(req.f),
            FunctionHandle.from_expr(req.g),
            req.a,
            req.b,
            req.alpha,
            _to_config(req.config),
        )
        return ReportModel.from_report(report)

    @app.post("/check/minkowski", response_model=ReportModel)
    def check_minkowski(req: MinkowskiRequest) -> ReportModel:
        report = minkowski_check(
            _to_scale(req.scale),
            FunctionHandle.from_expr(req.f),
            FunctionHandle.from_expr(req.g),
            req.a,
            req.b,
            req.alpha,
            req.p,
            _to_config(req.config),
        )
        return ReportModel.from_report(report)

    @app.post("/check/jensen", response_model=ReportModel)
    def check_jensen(req: JensenRequest) -> ReportModel:
        lo, hi = req.convex.bounds()
        convex = ConvexSpec(
            fn=FunctionHandle.from_expr(req.convex.f),
            lower=lo,
            upper=hi,
            subgradient=(
                None
                if req.convex.subgradient is None
                else FunctionHandle.from_expr(req.convex.subgradient)
            ),
        )
        report = jensen_check(
            _to_scale(req.scale),
            FunctionHandle.from_expr(req.g),
            convex,
            req.a,
            req.b,
            req.alpha,
            _to_config(req.config),
        )
        return ReportModel.from_report(report)

    @app.post("/amgm", response_model=ReportModel)
    def amgm(req: AmgmRequest) -> ReportModel:
        return ReportModel.from_report(weighted_amgm(req.values, req.alpha))

    @app.post("/variational-demo", response_model=VariationalResponse)
    def variational_demo(req: VariationalRequest) -> VariationalResponse:
        result = schwarz_variational_demo(
            FunctionHandle.from_expr(req.x), req.grid_points, _to_config(req.config)
        )
        return VariationalResponse(
            j_value=result.j_value,
            lower_bound_holds=result.lower_bound_holds,
            tolerance=result.tolerance,
            error_estimate=result.error_estimate,
            evals=result.evals,
        )

    @app.post("/property-suite", response_model=SuiteResponse)
    def property_suite(req: SuiteRequest) -> SuiteResponse:
        cfg = None if req.config is None else req.config.to_config()
        summary = run_property_suite(req.trials, req.seed, cfg)
        doc = summary.as_document()
        return SuiteResponse(**doc)

    return app


app = create_app()
