"""Command-line client for the tscalc service.

Every subcommand builds one HTTP request and renders the response. By default
the request is served by an in-process instance of the FastAPI app (no server
needed); pass ``--server http://host:port`` to talk to a running instance
instead, or use ``tscalc serve`` to start one.

Exit codes: 0 means the computation succeeded and every checked inequality
held; 1 means a check produced a negative verdict (the witness is printed
with its full decomposition, and property-suite witnesses are additionally
persisted to a plain-text file); 2 means a usage or input error.

Scales are read from files in the document format
``{"components": [{"point": 0}, {"interval": [2, 3]}]}``; functions are
expression strings in the variable ``t``. The environment variable
``TSCALE_MAX_EVALS`` overrides the integrand evaluation cap.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from typing import Any

import httpx

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

_REQUEST_TIMEOUT = 600.0


# -- transport -------------------------------------------------------------------


def _call(server: str | None, path: str, payload: dict) -> tuple[int, Any]:
    if server:
        resp = httpx.post(
            server.rstrip("/") + path, json=payload, timeout=_REQUEST_TIMEOUT
        )
        return resp.status_code, resp.json()

    from .service.app import app

    async def go() -> tuple[int, Any]:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://tscalc.local"
        ) as client:
            resp = await client.post(path, json=payload, timeout=_REQUEST_TIMEOUT)
            return resp.status_code, resp.json()

    return asyncio.run(go())


# -- request assembly ---------------------------------------------------------------


def _load_scale(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SystemExit(_usage_error(f"cannot read scale file {path!r}: {exc}"))
    except json.JSONDecodeError as exc:
        raise SystemExit(_usage_error(f"scale file {path!r} is not valid JSON: {exc}"))
    if not isinstance(doc, dict) or "components" not in doc:
        raise SystemExit(
            _usage_error(f"scale file {path!r} must contain a 'components' list")
        )
    return {"components": doc["components"]}


def _config_payload(args: argparse.Namespace) -> dict | None:
    cfg: dict[str, Any] = {}
    if getattr(args, "quad_abs_tol", None) is not None:
        cfg["quad_abs_tol"] = args.quad_abs_tol
    if getattr(args, "quad_rel_tol", None) is not None:
        cfg["quad_rel_tol"] = args.quad_rel_tol
    if getattr(args, "fd_levels", None) is not None:
        cfg["fd_richardson_levels"] = args.fd_levels
    env_cap = os.environ.get("TSCALE_MAX_EVALS")
    if env_cap is not None:
        try:
            cfg["max_evals"] = int(env_cap)
        except ValueError:
            raise SystemExit(
                _usage_error(f"TSCALE_MAX_EVALS must be an integer, got {env_cap!r}")
            )
    return cfg or None


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


# -- output ----------------------------------------------------------------------


def _emit_machine(data: Any) -> None:
    print(json.dumps(data, sort_keys=True))


def _format_float(x: Any) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def _emit_report(data: dict, out: str) -> int:
    if out == "machine":
        _emit_machine(data)
    else:
        verdict = "holds" if data["holds"] else "VIOLATED"
        print(
            f"{data['name']}: {verdict}  "
            f"lhs={_format_float(data['lhs'])}  rhs={_format_float(data['rhs'])}  "
            f"slack={_format_float(data['slack'])}  "
            f"tolerance={_format_float(data['tolerance'])}"
        )
        params = {k: v for k, v in data["params"].items() if v is not None}
        if params:
            print("  params: " + ", ".join(f"{k}={_format_float(v)}" for k, v in sorted(params.items())))
        if not data["holds"]:
            print("  decomposition:")
            print(json.dumps(data["decomposition"], sort_keys=True, indent=2))
    return EXIT_OK if data["holds"] else EXIT_VIOLATION


def _handle_http_error(status: int, body: Any) -> int:
    if isinstance(body, dict) and "detail" in body:
        detail = body["detail"]
    else:
        detail = body
    if isinstance(detail, list):  # request-validation errors
        detail = "; ".join(
            f"{'.'.join(str(p) for p in item.get('loc', []))}: {item.get('msg', '')}"
            for item in detail
        )
    return _usage_error(f"request rejected ({status}): {detail}")


# -- subcommand runners ---------------------------------------------------------------


def _run_integrate(args: argparse.Namespace) -> int:
    payload = {
        "scale": _load_scale(args.scale),
        "f": args.f,
        "a": args.a,
        "b": args.b,
        "alpha": args.alpha,
        "config": _config_payload(args),
    }
    status, body = _call(args.server, "/integrate", payload)
    if status != 200:
        return _handle_http_error(status, body)
    if args.out == "machine":
        _emit_machine(body)
    else:
        r = body["result"]
        print(
            f"value={_format_float(r['value'])}  "
            f"error_estimate={_format_float(r['error_estimate'])}  "
            f"dense={_format_float(r['dense_part'])}  "
            f"scattered={_format_float(r['scattered_part'])}  "
            f"evals={r['evals']}"
        )
        print(
            f"  delta={_format_float(body['delta']['value'])}  "
            f"nabla={_format_float(body['nabla']['value'])}  alpha={body['alpha']}"
        )
    return EXIT_OK


def _run_derive(args: argparse.Namespace) -> int:
    if args.kind == "diamond" and args.alpha is None:
        return _usage_error("--kind diamond requires --alpha")
    payload = {
        "scale": _load_scale(args.scale),
        "f": args.f,
        "t": args.t,
        "kind": args.kind,
        "alpha": args.alpha,
        "config": _config_payload(args),
    }
    status, body = _call(args.server, "/derive", payload)
    if status != 200:
        return _handle_http_error(status, body)
    if args.out == "machine":
        _emit_machine(body)
    else:
        print(f"value={_format_float(body['value'])}  kind={body['kind']}")
    return EXIT_OK


def _run_check(args: argparse.Namespace, path: str, payload: dict) -> int:
    status, body = _call(args.server, path, payload)
    if status != 200:
        return _handle_http_error(status, body)
    return _emit_report(body, args.out)


def _run_holder(args: argparse.Namespace) -> int:
    return _run_check(
        args,
        "/check/holder",
        {
            "scale": _load_scale(args.scale),
            "f": args.f,
            "g": args.g,
            "a": args.a,
            "b": args.b,
            "alpha": args.alpha,
            "p": args.p,
            "config": _config_payload(args),
        },
    )


def _run_cs(args: argparse.Namespace) -> int:
    return _run_check(
        args,
        "/check/cauchy-schwarz",
        {
            "scale": _load_scale(args.scale),
            "f": args.f,
            "g": args.g,
            "a": args.a,
            "b": args.b,
            "alpha": args.alpha,
            "config": _config_payload(args),
        },
    )


def _run_minkowski(args: argparse.Namespace) -> int:
    return _run_check(
        args,
        "/check/minkowski",
        {
            "scale": _load_scale(args.scale),
            "f": args.f,
            "g": args.g,
            "a": args.a,
            "b": args.b,
            "alpha": args.alpha,
            "p": args.p,
            "config": _config_payload(args),
        },
    )


def _run_jensen(args: argparse.Namespace) -> int:
    return _run_check(
        args,
        "/check/jensen",
        {
            "scale": _load_scale(args.scale),
            "g": args.g,
            "convex": {
                "f": args.F,
                "lower": args.c,
                "upper": args.d,
                "subgradient": args.subgradient,
            },
            "a": args.a,
            "b": args.b,
            "alpha": args.alpha,
            "config": _config_payload(args),
        },
    )


def _run_amgm(args: argparse.Namespace) -> int:
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        return _usage_error(f"--values must be comma-separated numbers, got {args.values!r}")
    payload = {"values": values, "alpha": args.alpha, "n": args.n}
    return _run_check(args, "/amgm", payload)


def _run_variational(args: argparse.Namespace) -> int:
    payload = {
        "x": args.x,
        "grid_points": args.grid_points,
        "config": _config_payload(args),
    }
    status, body = _call(args.server, "/variational-demo", payload)
    if status != 200:
        return _handle_http_error(status, body)
    if args.out == "machine":
        _emit_machine(body)
    else:
        verdict = "holds" if body["lower_bound_holds"] else "VIOLATED"
        print(
            f"J={_format_float(body['j_value'])}  lower bound J >= 1: {verdict}  "
            f"(error_estimate={_format_float(body['error_estimate'])}, evals={body['evals']})"
        )
    return EXIT_OK if body["lower_bound_holds"] else EXIT_VIOLATION


def _run_suite(args: argparse.Namespace) -> int:
    payload = {
        "trials": args.trials,
        "seed": args.seed,
        "config": _config_payload(args),
    }
    status, body = _call(args.server, "/property-suite", payload)
    if status != 200:
        return _handle_http_error(status, body)
    if args.out == "machine":
        _emit_machine(body)
    else:
        for name, counts in body["inequalities"].items():
            print(
                f"{name}: holds={counts['holds']} violations={counts['violations']} "
                f"skipped={counts['skipped']}"
            )
        print(f"total violations: {body['total_violations']}")
    if body["total_violations"] > 0:
        with open(args.witness_file, "w", encoding="utf-8") as fh:
            for witness in body["witnesses"]:
                fh.write(json.dumps(witness, sort_keys=True) + "\n")
        print(
            f"{body['total_violations']} violation witness(es) written to "
            f"{args.witness_file}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def _run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("tscalc.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", choices=("human", "machine"), default="human",
                   help="output mode (default: human)")
    p.add_argument("--server", default=None,
                   help="base URL of a running service; default runs in-process")
    p.add_argument("--quad-abs-tol", type=float, default=None,
                   help="absolute quadrature tolerance override")
    p.add_argument("--quad-rel-tol", type=float, default=None,
                   help="relative quadrature tolerance override")
    p.add_argument("--fd-levels", type=int, default=None,
                   help="Richardson extrapolation levels for dense-point derivatives")


def _add_window(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, required=True, help="lower endpoint (a member)")
    p.add_argument("--b", type=float, required=True, help="upper endpoint (a member)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tscalc",
        description="Dynamic calculus and integral-inequality checks on finite time scales.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("integrate", help="diamond-alpha integral of f over [a, b]")
    p.add_argument("--scale", required=True, help="path to a scale document file")
    p.add_argument("--f", required=True, help="integrand expression in t")
    _add_window(p)
    p.add_argument("--alpha", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=_run_integrate)

    p = sub.add_parser("derive", help="dynamic derivative of f at a point")
    p.add_argument("--scale", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--kind", choices=("delta", "nabla", "diamond"), default="diamond")
    p.add_argument("--alpha", type=float, default=None)
    _add_common(p)
    p.set_defaults(fn=_run_derive)

    p = sub.add_parser("check-holder", help="product-of-norms bound for |f g|")
    p.add_argument("--scale", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    _add_window(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=_run_holder)

    p = sub.add_parser("check-cs", help="Cauchy-Schwarz bound (p = q = 2)")
    p.add_argument("--scale", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    _add_window(p)
    p.add_argument("--alpha", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=_run_cs)

    p = sub.add_parser("check-minkowski", help="p-norm triangle inequality for f + g")
    p.add_argument("--scale", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    _add_window(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=_run_minkowski)

    p = sub.add_parser("check-jensen", help="convexity bound for averages of g")
    p.add_argument("--scale", required=True)
    p.add_argument("--g", required=True, help="inner function expression")
    p.add_argument("--F", required=True, help="convex function expression")
    p.add_argument("--c", type=float, default=None, help="lower end of the convex domain")
    p.add_argument("--d", type=float, default=None, help="upper end of the convex domain")
    p.add_argument("--subgradient", default=None,
                   help="optional subgradient expression for support-line diagnostics")
    _add_window(p)
    p.add_argument("--alpha", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=_run_jensen)

    p = sub.add_parser("amgm", help="weighted arithmetic/geometric mean comparison")
    p.add_argument("--values", required=True, help="comma-separated positive samples")
    p.add_argument("--n", type=int, default=None,
                   help="window length; must equal the number of values minus one")
    p.add_argument("--alpha", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=_run_amgm)

    p = sub.add_parser("variational-demo",
                       help="action J[x] = integral of x'(t)^2 over [0, 1] and its lower bound")
    p.add_argument("--x", required=True, help="curve expression with x(0)=0, x(1)=1")
    p.add_argument("--grid-points", type=int, default=64)
    _add_common(p)
    p.set_defaults(fn=_run_variational)

    p = sub.add_parser("property-suite", help="randomized inequality verification suite")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--witness-file", default="tscalc-violations.txt",
                   help="where to persist violation witnesses (default: %(default)s)")
    _add_common(p)
    p.set_defaults(fn=_run_suite)

    p = sub.add_parser("serve", help="run the HTTP service with uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=_run_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except httpx.HTTPError as exc:
        return _usage_error(f"request failed: {exc}")


if __name__ == "__main__":
    sys.exit(main())
