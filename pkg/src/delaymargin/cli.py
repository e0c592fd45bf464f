"""Batch front end: read a JSON problem file, emit a JSON report.

Subcommands: margin, hinf, zen-verify, neutral-demo, unbounded-demo,
validate.  Reports are deterministic given identical inputs and carry a
config fingerprint; exit code 0 means success, 2 success with degenerate
warnings, 1 errors.  ``DELAY_MARGIN_THREADS`` caps per-lambda parallelism.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
from pathlib import Path

import jsonschema

from . import __version__
from .errors import DelayMarginError, SingularOnGridError
from .poly import Polynomial
from .schema import (
    PROBLEM_SCHEMA,
    decode_measure,
    decode_signal,
    decode_spectrum,
    decode_symbol,
    encode_complex,
    encode_real,
    encode_window,
)
from .stability import (
    DelaySystem,
    GridConfig,
    hinf_boundary_norm,
    neutral_demo,
    operator_margin,
    unbounded_a_demo,
)
from .walton_marshall import STATUS_DEGENERATE
from .zen import QuadConfig, doubling_constant, verify_isometry, verify_multiplier
from .errors import DivergentIntegralError, NotDoublingError

KINDS = ("margin", "hinf", "zen-verify", "neutral-demo", "unbounded-demo")


def _schema_diagnostics(problem) -> list[str]:
    validator = jsonschema.Draft202012Validator(PROBLEM_SCHEMA)
    out = []
    for err in sorted(validator.iter_errors(problem), key=lambda e: list(e.absolute_path)):
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path
        )
        out.append(f"{path}: {err.message}")
    return out


def _preflight_diagnostics(problem) -> list[str]:
    out = []
    kind = problem.get("kind")
    if kind in ("margin", "hinf"):
        system = problem.get("system")
        if system is None:
            out.append("$.system: required for margin/hinf problems")
            return out
        p = Polynomial(system["p"])
        q = Polynomial(system["q"])
        if p.is_zero or p.degree <= q.degree:
            out.append(
                "$.system: RetardedAssumptionViolated: deg P must exceed deg Q "
                f"(got {p.degree} <= {q.degree})"
            )
        if kind == "margin" and "h_max" not in system:
            out.append("$.system.h_max: required for margin problems")
        if kind == "hinf" and "h" not in system:
            out.append("$.system.h: required for hinf problems")
    if kind == "zen-verify" and "zen" not in problem:
        out.append("$.zen: required for zen-verify problems")
    if kind == "neutral-demo" and "n_max" not in problem:
        out.append("$.n_max: required for neutral-demo problems")
    if kind == "unbounded-demo" and "n_trunc" not in problem:
        out.append("$.n_trunc: required for unbounded-demo problems")
    return out


def _fingerprint(problem, tol, seed) -> str:
    payload = {
        "version": __version__,
        "tol": tol,
        "seed": seed,
        "grid": problem.get("grid", {}),
        "quad": problem.get("quad", {}),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _max_workers() -> int | None:
    raw = os.environ.get("DELAY_MARGIN_THREADS")
    if not raw:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        return None


def _encode_lambda_result(r) -> dict:
    return {
        "lambda": encode_complex(r.lam),
        "n0": r.n0,
        "margin": encode_real(r.margin),
        "status": r.status,
        "windows": [encode_window(w) for w in r.windows],
        "events": [
            {
                "omega": e.omega,
                "h": e.h,
                "direction": e.direction,
                "degenerate": e.degenerate,
            }
            for e in r.events
        ],
    }


def _run_margin(problem, tol, h_max_override, workers):
    system = problem["system"]
    sys_obj = DelaySystem(
        Polynomial(system["p"]),
        Polynomial(system["q"]),
        decode_spectrum(system["spectrum"]),
        norm_a=system.get("norm_a"),
        h=system.get("h"),
        subnormal=system.get("subnormal", False),
    )
    h_max = h_max_override if h_max_override is not None else system["h_max"]
    report = operator_margin(sys_obj, h_max, tol=tol, max_workers=workers)
    result = {
        "margin": encode_real(report.margin),
        "minimizer": encode_complex(report.minimizer) if report.minimizer is not None else None,
        "bounds": [encode_real(b) for b in report.bounds] if report.bounds else None,
        "aggregate_windows": [encode_window(w) for w in report.aggregate_windows],
        "per_lambda": [_encode_lambda_result(r) for r in report.per_lambda],
    }
    events = [
        (e.lam.real, e.lam.imag, e.omega, e.h, e.direction, e.degenerate)
        for r in report.per_lambda
        for e in r.events
    ]
    degenerate = any(r.status == STATUS_DEGENERATE for r in report.per_lambda)
    return result, list(report.warnings), events, None, degenerate


def _run_hinf(problem, tol):
    system = problem["system"]
    sys_obj = DelaySystem(
        Polynomial(system["p"]),
        Polynomial(system["q"]),
        decode_spectrum(system["spectrum"]),
        norm_a=system.get("norm_a"),
        subnormal=system.get("subnormal", False),
    )
    grid = problem.get("grid", {})
    cfg = GridConfig(
        n_points=grid.get("n_points", GridConfig.n_points),
        tol=grid.get("tol", GridConfig.tol),
        max_rounds=grid.get("max_rounds", GridConfig.max_rounds),
        singular_cap=grid.get("singular_cap", GridConfig.singular_cap),
    )
    h = system["h"]
    try:
        cert = hinf_boundary_norm(sys_obj, h, cfg)
    except SingularOnGridError as exc:
        result = {
            "singular": True,
            "h": h,
            "omega": exc.omega,
            "norm": encode_real(exc.norm),
            "verdict": "crossing detected: not invertible on the boundary at this delay",
        }
        return result, [], None, None, False
    result = {
        "singular": False,
        "h": cert.h,
        "sup_estimate": encode_real(cert.sup_estimate),
        "tail_radius": cert.tail_radius,
        "refined": cert.refined,
        "method": cert.method,
        "argmax_omega": cert.argmax_omega,
        "grid_size": len(cert.grid),
    }
    return result, [], None, cert.grid, False


def _run_zen(problem, seed):
    zen_in = problem["zen"]
    quad = problem.get("quad", {})
    cfg = QuadConfig(
        tol=quad.get("tol", QuadConfig.tol), limit=quad.get("limit", QuadConfig.limit)
    )
    measure = decode_measure(zen_in["measure"])
    warnings: list[str] = []
    try:
        doubling = doubling_constant(measure)
    except NotDoublingError as exc:
        doubling = None
        warnings.append(f"doubling check failed: {exc}")
    checks = []
    for sig_obj in zen_in["signals"]:
        sig = decode_signal(sig_obj)
        try:
            chk = verify_isometry(sig, measure, cfg)
            checks.append(
                {"divergent": False, "lhs": chk.lhs, "rhs": chk.rhs, "rel_err": chk.rel_err}
            )
        except DivergentIntegralError as exc:
            checks.append({"divergent": True, "reason": str(exc)})
    result = {"doubling_constant": doubling, "isometry": checks, "multiplier": None}
    if "symbol" in zen_in:
        symbol = decode_symbol(zen_in["symbol"])
        signal = decode_signal(zen_in["signals"][0])
        chk = verify_multiplier(
            symbol,
            signal,
            measure,
            cfg,
            n_samples=zen_in.get("adjoint_samples", 50),
            seed=seed,
        )
        result["multiplier"] = {
            "ratio": chk.ratio,
            "sup_g": chk.sup_g,
            "adjoint_residual": chk.adjoint_residual,
            "n_samples": chk.n_samples,
        }
    return result, warnings, None, None, False


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="delay-margin",
        description="Delay margins and boundary-norm certificates for retarded "
        "operator delay systems; weighted function-space verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in KINDS + ("validate",):
        sp = sub.add_parser(name)
        sp.add_argument("--in", dest="path", required=True, help="problem file (JSON)")
        sp.add_argument("--out", dest="out", help="write the report here instead of stdout")
        sp.add_argument("--csv", dest="csv", help="directory for CSV tables")
        sp.add_argument("--tol", dest="tol", type=float, help="override tolerance")
        sp.add_argument("--h-max", dest="h_max", type=float, help="override sweep bound")
        sp.add_argument("--seed", dest="seed", type=int, help="override sampling seed")
    args = parser.parse_args(argv)

    try:
        problem = json.loads(Path(args.path).read_text())
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"invalid JSON in {args.path}: {exc}", file=sys.stderr)
        return 1

    diagnostics = _schema_diagnostics(problem)
    if not diagnostics:
        diagnostics = _preflight_diagnostics(problem)

    if args.command == "validate":
        for d in diagnostics:
            print(d)
        if not diagnostics:
            print("ok")
        return 0 if not diagnostics else 1

    if diagnostics:
        for d in diagnostics:
            print(d, file=sys.stderr)
        return 1
    if problem["kind"] != args.command:
        print(
            f"problem kind {problem['kind']!r} does not match subcommand {args.command!r}",
            file=sys.stderr,
        )
        return 1

    tol = args.tol if args.tol is not None else problem.get("tol", 1e-9)
    seed = args.seed if args.seed is not None else problem.get("seed", 0)

    try:
        if args.command == "margin":
            result, warnings, events, grid, degenerate = _run_margin(
                problem, tol, args.h_max, _max_workers()
            )
        elif args.command == "hinf":
            result, warnings, events, grid, degenerate = _run_hinf(problem, tol)
        elif args.command == "zen-verify":
            result, warnings, events, grid, degenerate = _run_zen(problem, seed)
        elif args.command == "neutral-demo":
            samples = neutral_demo(problem["n_max"])
            result = {
                "samples": [
                    {"n": n + 1, "s": encode_complex(s), "abs_g": v}
                    for n, (s, v) in enumerate(samples)
                ]
            }
            warnings, events, grid, degenerate = [], None, None, False
        else:  # unbounded-demo
            samples = unbounded_a_demo(problem["n_trunc"])
            result = {"samples": [[n, sup] for n, sup in samples]}
            warnings, events, grid, degenerate = [], None, None, False
    except DelayMarginError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    report = {
        "version": __version__,
        "kind": problem["kind"],
        "config_fingerprint": _fingerprint(problem, tol, seed),
        "input": problem,
        "result": result,
        "warnings": warnings,
    }
    text = json.dumps(report, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)

    if args.csv:
        csv_dir = Path(args.csv)
        csv_dir.mkdir(parents=True, exist_ok=True)
        if events is not None:
            with open(csv_dir / "events.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(
                    ["lambda_re", "lambda_im", "omega", "h", "direction", "degenerate"]
                )
                writer.writerows(events)
        if grid is not None:
            with open(csv_dir / "norm_grid.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["omega", "norm"])
                writer.writerows(grid)

    degenerate = degenerate or any("degenerate" in w for w in warnings)
    return 2 if degenerate else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
