"""Command-line client for the basis service.

The CLI is a thin HTTP client: by default it mounts the service in-process
(no server needed), and --url points it at a running instance instead.
stdout carries results only (JSON for single values and reports, CSV for
grids); diagnostics go to stderr, controlled by GRACEFUL_LOG={error,info,debug}.

Exit codes: 0 success (for `verify`: every check passed), 1 verification
found failures, 2 input or usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import warnings

import httpx

log = logging.getLogger("graceful.cli")

_EXIT_VERIFY_FAILED = 1
_EXIT_INPUT = 2
_EXIT_NUMERICAL = 3


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a complex literal (examples: 1, -0.5, 1+2j)")


def _parse_complex_list(text: str) -> list[complex]:
    items = [piece for piece in text.split(",") if piece.strip()]
    return [_parse_complex(piece) for piece in items]


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated float list")


def _json_value(text: str):
    """Inline JSON, or @file to read it from a path."""
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise argparse.ArgumentTypeError(f"cannot read {text[1:]!r}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc}")


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graceful",
        description="Evaluate, tabulate, verify, sweep, and solve with a "
                    "collision-proof ODE solution basis.")
    sub = parser.add_subparsers(dest="command", required=True)

    problem = argparse.ArgumentParser(add_help=False)
    group = problem.add_mutually_exclusive_group(required=True)
    group.add_argument("--roots", type=_json_value,
                       help="JSON list of [re, im] pairs, inline or @file")
    group.add_argument("--coeffs", type=_json_value,
                       help="monic ascending coefficients as JSON [re, im] pairs, inline or @file")
    problem.add_argument("--tolerances", type=_json_value, default=None,
                         help="JSON object {sep_tol, quad_tol, series_tol, max_quad_nodes}, "
                              "inline or @file")
    problem.add_argument("--url", default=None,
                         help="base URL of a running service; default runs in-process")

    p_eval = sub.add_parser("eval", parents=[problem],
                            help="basis values at one point (JSON)")
    p_eval.add_argument("--x", type=_parse_complex, required=True,
                        help="evaluation point, complex literal like 0.5 or 1+2j")
    p_eval.add_argument("--backend", choices=["auto", "pf", "exp", "contour", "series"],
                        default="auto")

    p_table = sub.add_parser("table", parents=[problem],
                             help="CSV sample table over a real grid")
    p_table.add_argument("--x-min", type=float, required=True)
    p_table.add_argument("--x-max", type=float, required=True)
    p_table.add_argument("--n", type=int, required=True, dest="n_points",
                         help="number of grid points (>= 2)")
    p_table.add_argument("--backend", choices=["auto", "pf", "exp", "contour", "series"],
                         default="auto")

    p_verify = sub.add_parser("verify", parents=[problem],
                              help="run the basis health checks (JSON report)")
    p_verify.add_argument("--samples", type=int, default=20)
    p_verify.add_argument("--seed", type=int, default=0)

    p_sweep = sub.add_parser("sweep", parents=[problem],
                             help="collision sweep against the extended-precision oracle")
    p_sweep.add_argument("--eps", type=_parse_float_list, required=True,
                         help="comma list of separations, strictly decreasing")
    p_sweep.add_argument("--x", type=_parse_complex, default=complex(1.0))
    p_sweep.add_argument("--format", choices=["json", "csv"], default="json")

    p_ivp = sub.add_parser("ivp", parents=[problem],
                           help="solve an initial value problem")
    p_ivp.add_argument("--x0", type=_parse_complex, default=complex(0.0))
    p_ivp.add_argument("--derivs", type=_parse_complex_list, required=True,
                       help="comma list of f(x0), f'(x0), ... as complex literals")
    p_ivp.add_argument("--eval-points", type=_parse_complex_list, default=[],
                       help="comma list of points to evaluate the solution at")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8032)
    return parser


def _client(url: str | None) -> httpx.Client:
    if url:
        return httpx.Client(base_url=url, timeout=60.0)
    from .service import app
    with warnings.catch_warnings():
        # starlette tags its httpx-client deprecation as a UserWarning
        warnings.simplefilter("ignore", UserWarning)
        warnings.simplefilter("ignore", DeprecationWarning)
        from starlette.testclient import TestClient
        return TestClient(app, raise_server_exceptions=False)


def _problem_payload(args: argparse.Namespace) -> dict:
    payload: dict = {}
    if args.roots is not None:
        payload["roots"] = args.roots
    if args.coeffs is not None:
        payload["coeffs"] = args.coeffs
    if args.tolerances is not None:
        payload["tolerances"] = args.tolerances
    return payload


def _post(args: argparse.Namespace, path: str, body: dict) -> tuple[int, httpx.Response]:
    """POST and map HTTP status to the exit-code contract; 0 means success."""
    log.debug("POST %s %s", path, body)
    with _client(args.url) as client:
        response = client.post(path, json=body)
    if response.status_code < 400:
        return 0, response
    try:
        envelope = response.json()
    except ValueError:
        envelope = {"error": {"type": "HTTPError",
                              "message": response.text.strip() or f"HTTP {response.status_code}"}}
    print(json.dumps(envelope), file=sys.stderr)
    return (_EXIT_INPUT if response.status_code < 500 else _EXIT_NUMERICAL), response


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _run_eval(args) -> int:
    body = {"problem": _problem_payload(args), "x": _pair(args.x), "backend": args.backend}
    code, response = _post(args, "/eval", body)
    if code:
        return code
    record = response.json()
    log.info("backend=%s diagnostics=%s", record["backend_used"], record["diagnostics"])
    _emit_json(record)
    return 0


def _run_table(args) -> int:
    body = {"problem": _problem_payload(args), "x_min": args.x_min,
            "x_max": args.x_max, "n_points": args.n_points, "backend": args.backend}
    code, response = _post(args, "/table", body)
    if code:
        return code
    sys.stdout.write(response.text)
    return 0


def _run_verify(args) -> int:
    body = {"problem": _problem_payload(args), "samples": args.samples, "seed": args.seed}
    code, response = _post(args, "/verify", body)
    if code:
        return code
    report = response.json()
    _emit_json(report)
    return 0 if report["passed"] else _EXIT_VERIFY_FAILED


def _run_sweep(args) -> int:
    body = {"problem": _problem_payload(args), "eps": args.eps, "x": _pair(args.x)}
    code, response = _post(args, "/sweep", body)
    if code:
        return code
    report = response.json()
    if args.format == "json":
        _emit_json(report)
        return 0
    columns = report["columns"]
    names = ["eps", "partial_fraction_error", "companion_error", "contour_error"]
    sys.stdout.write(",".join(names) + "\n")
    for row in zip(*(columns[name] for name in names)):
        sys.stdout.write(",".join("" if v is None else f"{v:.17g}" for v in row) + "\n")
    return 0


def _run_ivp(args) -> int:
    body = {"problem": _problem_payload(args), "x0": _pair(args.x0),
            "derivs": [_pair(d) for d in args.derivs],
            "eval_points": [_pair(p) for p in args.eval_points]}
    code, response = _post(args, "/ivp", body)
    if code:
        return code
    _emit_json(response.json())
    return 0


def _run_serve(args) -> int:
    import uvicorn
    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_RUNNERS = {
    "eval": _run_eval,
    "table": _run_table,
    "verify": _run_verify,
    "sweep": _run_sweep,
    "ivp": _run_ivp,
    "serve": _run_serve,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("GRACEFUL_LOG", "error").lower()
    logging.basicConfig(
        stream=sys.stderr,
        level={"error": logging.ERROR, "info": logging.INFO,
               "debug": logging.DEBUG}.get(level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
        force=True)
    args = _build_parser().parse_args(argv)
    return _RUNNERS[args.command](args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
