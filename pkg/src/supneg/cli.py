"""Command-line entry point: measure, bounds, sweep, verify.

Exit codes are a stable contract: 0 success, 1 verification violation,
2 usage or input error.  ``SUPNEG_THREADS`` caps worker threads for sweep
grids and verify ensembles; outputs are ordered by input index regardless
of scheduling, so identical (config, seed) gives byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import bounds as bounds_mod
from . import library, measures, oracle
from .states import (
    Bipartition,
    PureState,
    bipartitions,
    load_state,
    normalize,
    reduced_density,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

CLI_COEFF_TOL = 1e-6  # looser than the library check; CLI users type rounded values


class CliError(Exception):
    """Usage or input error; maps to exit code 2."""


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SUPNEG_THREADS", "1")))
    except ValueError:
        return 1


def _parallel_map(fn: Callable, items: Sequence) -> list:
    """Map preserving input order; threads only if SUPNEG_THREADS > 1."""
    workers = thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def parse_complex(text: str) -> complex:
    """Parse 're+imi' coefficient syntax, e.g. '0.6+0.8i' or '0.7071'."""
    cleaned = text.strip().replace("i", "j").replace("I", "j")
    try:
        value = complex(cleaned)
    except ValueError as exc:
        raise CliError(f"cannot parse complex number {text!r}") from exc
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise CliError(f"coefficient {text!r} is not finite")
    return value


def _parse_params(text: str) -> dict[str, str]:
    params: dict[str, str] = {}
    for chunk in text.split(","):
        if not chunk:
            continue
        if "=" not in chunk:
            raise CliError(f"malformed parameter {chunk!r} (expected key=value)")
        key, value = chunk.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def parse_named_state(spec_text: str) -> PureState:
    """Named-state syntax: ghz | ghz:d=3 | w | z:p=0.3,phi=0.0."""
    name, _, rest = spec_text.partition(":")
    params = _parse_params(rest)
    try:
        if name == "ghz":
            return library.ghz(int(params.pop("d", "2")))
        if name == "w":
            state = library.w_state()
        elif name == "z":
            zp = library.ZFamilyParams(
                p=float(params.pop("p")), phi=float(params.pop("phi", "0"))
            )
            state, _ = normalize(library.z_family(zp).superposed())
        else:
            raise CliError(f"unknown named state {name!r} (try ghz, w, z:p=...)")
    except KeyError as exc:
        raise CliError(f"named state {name!r} is missing parameter {exc}") from exc
    except ValueError as exc:
        raise CliError(f"bad named state {spec_text!r}: {exc}") from exc
    if params:
        raise CliError(f"unused parameters for {name!r}: {sorted(params)}")
    return state


def resolve_state_source(source: str) -> PureState:
    """A state from 'named:<spec>', 'file:<path>', or a bare file path."""
    if source.startswith("named:"):
        return parse_named_state(source[len("named:"):])
    path = source[len("file:"):] if source.startswith("file:") else source
    try:
        state = load_state(path)
    except OSError as exc:
        raise CliError(f"cannot read state file {path!r}: {exc}") from exc
    except (ValueError, json.JSONDecodeError) as exc:
        raise CliError(f"invalid state file {path!r}: {exc}") from exc
    return _ensure_normalized(state, path)


def _ensure_normalized(state: PureState, origin: str) -> PureState:
    if state.is_normalized:
        return state
    warnings.warn(
        f"state from {origin!r} has squared norm {state.norm_sq!r}; normalizing",
        stacklevel=2,
    )
    normalized, _ = normalize(state)
    return normalized


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(payload: dict) -> str:
    keys = [k for k, v in payload.items() if not isinstance(v, (dict, list))]
    header = ",".join(keys)
    row = ",".join(repr(payload[k]) for k in keys)
    return f"{header}\n{row}\n"


# ---------------------------------------------------------------- commands


def cmd_measure(args: argparse.Namespace) -> int:
    if args.named is not None:
        state = parse_named_state(args.named)
    else:
        state = resolve_state_source(args.file)
    report = measures.measure_report(state).to_dict()
    text = _csv_text(report) if args.format == "csv" else _json_text(report)
    _emit(text, args.out)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    psi1 = resolve_state_source(args.s1)
    psi2 = resolve_state_source(args.s2)
    if args.p is not None:
        # magnitudes-only shortcut: exactly unit coefficients, no quoting issues
        if not 0.0 <= args.p <= 1.0:
            raise CliError(f"--p must lie in [0, 1], got {args.p!r}")
        a1 = complex(math.sqrt(args.p))
        a2 = complex(math.sqrt(1.0 - args.p))
    elif args.a1 is not None and args.a2 is not None:
        a1 = parse_complex(args.a1)
        a2 = parse_complex(args.a2)
    else:
        raise CliError("bounds needs either --p or both --a1 and --a2")
    weight = abs(a1) ** 2 + abs(a2) ** 2
    if abs(weight - 1.0) > CLI_COEFF_TOL and not args.no_coeff_check:
        raise CliError(
            f"|a1|^2 + |a2|^2 = {weight!r} is off unit by more than {CLI_COEFF_TOL}; "
            "fix the coefficients or pass --no-coeff-check"
        )
    spec = bounds_mod.SuperpositionSpec(a1, a2, psi1, psi2, coeff_check=False)
    payload = bounds_mod.evaluate_bounds(spec).to_dict()
    payload["a1"] = [a1.real, a1.imag]
    payload["a2"] = [a2.real, a2.imag]
    if args.dump_terms:
        payload["cross_terms"] = bounds_mod.cross_terms(spec).to_dict()
    text = _csv_text(payload) if args.format == "csv" else _json_text(payload)
    _emit(text, args.out)
    return EXIT_OK


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise CliError(f"grid must be 'start,stop,steps', got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError as exc:
        raise CliError(f"bad grid {text!r}: {exc}") from exc
    if steps < 1:
        raise CliError("grid needs at least one step")
    return np.linspace(start, stop, steps)


def _fit_block(fit: "bounds_mod.GmeCurveFit", reported: tuple) -> dict:
    return {
        "fitted": {
            "c1": fit.c1,
            "c2": fit.c2,
            "c3": fit.c3,
            "max_residual": fit.max_residual,
        },
        "reported": {"c1": reported[0], "c2": reported[1], "c3": reported[2]},
        "ratio_reported_over_fitted": {
            "c1": reported[0] / fit.c1,
            "c2": reported[1] / fit.c2,
            "c3": reported[2] / fit.c3,
        },
    }


def sweep_sidecar(p_grid: Sequence[float], phi: float, reports) -> dict:
    """Closed-form fits of both exact curves, next to the reported constants."""
    fit_gme = bounds_mod.fit_gme_closed_form(p_grid, [r.ngme_exact for r in reports])
    fit_total = bounds_mod.fit_gme_closed_form(p_grid, [r.n_exact for r in reports])
    return {
        "grid": {"phi": float(phi), "points": [float(p) for p in p_grid]},
        "fit_ngme": {
            "c1": fit_gme.c1,
            "c2": fit_gme.c2,
            "c3": fit_gme.c3,
            "max_residual": fit_gme.max_residual,
        },
        "max_t2_gap": max(r.t2_gap for r in reports),
        "reported_constants_comparison": {
            "ngme": _fit_block(fit_gme, bounds_mod.REPORTED_GME_CONSTANTS),
            "n_total": _fit_block(fit_total, bounds_mod.REPORTED_TOTAL_CONSTANTS),
        },
    }


def cmd_sweep(args: argparse.Namespace) -> int:
    p_grid = _parse_grid(args.grid)
    if p_grid.min() < 0.0 or p_grid.max() > 1.0:
        raise CliError("sweep grid must stay inside [0, 1]")
    phi = float(args.phi)
    reports = _parallel_map(
        lambda p: bounds_mod.evaluate_bounds(
            library.z_family(library.ZFamilyParams(p=float(p), phi=phi))
        ),
        list(p_grid),
    )
    csv_text = bounds_mod.sweep_csv(p_grid, phi, reports)
    _emit(csv_text, args.out)
    if args.out is not None:
        sidecar_path = args.sidecar or f"{args.out}.fit.json"
        Path(sidecar_path).write_text(
            _json_text(sweep_sidecar(p_grid, phi, reports)), encoding="utf-8"
        )
    return EXIT_OK


# ----------------------------------------------------------------- verify


@dataclass
class CheckResult:
    name: str
    samples: int
    max_violation: float
    passed: bool
    worst: dict | None = None


def _sample_dims(index: int) -> list[int]:
    return [2, 2, 2] if index % 2 == 0 else [3, 3, 3]


def _check_dual_path(samples: int, seed: int, tol: float) -> CheckResult:
    def one(i: int) -> tuple[float, dict]:
        state = library.haar_random(_sample_dims(i), seed ^ i)
        worst = 0.0
        for cut in bipartitions(state):
            n_so = measures.negativity_so(state, cut)
            n_pt = oracle.negativity_pt_oracle(state, cut)
            n_sch = measures.negativity_schmidt(state, cut)
            worst = max(worst, abs(n_so - n_pt), abs(n_so - n_sch))
        return worst, {"sample": i, "state": state.to_dict()}

    results = _parallel_map(one, range(samples))
    return _finish("dual_path_negativity", results, tol)


def _check_concurrence_identity(samples: int, seed: int, tol: float) -> CheckResult:
    def one(i: int) -> tuple[float, dict]:
        state = library.haar_random(_sample_dims(i), seed ^ i)
        worst = 0.0
        for cut in bipartitions(state):
            # both paths evaluated directly so a broken convention shows up
            # as a measured violation instead of an exception
            rho = reduced_density(state, cut)
            density = 2.0 * (1.0 - float((np.abs(rho) ** 2).sum()))
            generator = float(
                (np.abs(measures.bilinear_matrix(state, state, cut)) ** 2).sum()
            )
            worst = max(worst, abs(generator - density))
        return worst, {"sample": i, "state": state.to_dict()}

    results = _parallel_map(one, range(samples))
    return _finish("concurrence_identity", results, tol)


def _degenerate_spec(seed: int) -> bounds_mod.SuperpositionSpec:
    # parallel components with cancelling coefficients: chi is (near) zero
    psi = library.haar_random([2, 2, 2], seed)
    theta = 0.7345
    psi2 = PureState(psi.dims, np.exp(1j * theta) * psi.amplitudes)
    a1 = complex(np.sqrt(0.5))
    a2 = -np.exp(-1j * theta) * np.sqrt(0.5)
    return bounds_mod.SuperpositionSpec(a1, a2, psi, psi2)


def _sandwich_violation(spec: bounds_mod.SuperpositionSpec) -> tuple[float, float]:
    if spec.superposed().norm_sq < 1e-12:
        warnings.warn(
            "superposition has near-zero norm; normalized-state values are "
            "undefined, checking bounds on the raw scaled values"
        )
    report = bounds_mod.evaluate_bounds(spec)
    v1 = max(report.t1_lower_raw - report.n_exact, report.n_exact - report.t1_upper)
    v2 = max(
        report.t2_lower_raw - report.ngme_exact, report.ngme_exact - report.t2_upper
    )
    return max(v1, 0.0), max(v2, 0.0)


def _spec_payload(spec: bounds_mod.SuperpositionSpec) -> dict:
    return {
        "a1": [spec.a1.real, spec.a1.imag],
        "a2": [spec.a2.real, spec.a2.imag],
        "psi1": spec.psi1.to_dict(),
        "psi2": spec.psi2.to_dict(),
    }


def _check_sandwiches(
    samples: int, seed: int, tol: float
) -> tuple[CheckResult, CheckResult]:
    def one(i: int) -> tuple[float, float, dict]:
        # sample 0 exercises the documented degenerate parallel superposition
        if i == 0:
            spec = _degenerate_spec(seed)
        else:
            spec = library.random_superposition_spec(_sample_dims(i), seed ^ i)
        v1, v2 = _sandwich_violation(spec)
        return v1, v2, {"sample": i, "spec": _spec_payload(spec)}

    rows = _parallel_map(one, range(samples))
    t1 = _finish("t1_sandwich", [(v1, w) for v1, _, w in rows], tol)
    t2 = _finish("t2_sandwich", [(v2, w) for _, v2, w in rows], tol)
    return t1, t2


def _check_lemma(samples: int, seed: int, tol: float) -> CheckResult:
    def one(i: int) -> tuple[float, dict]:
        rng = np.random.Generator(np.random.Philox(key=(seed ^ i) & (2**64 - 1)))
        b, c, d = rng.uniform(1e-6, 10.0, size=(3, 3))
        lhs_up = min(bk + ck + dk for bk, ck, dk in zip(b, c, d))
        rhs_up = min(b) + max(c) + max(d)
        lhs_lo = min(bk - ck - dk for bk, ck, dk in zip(b, c, d))
        rhs_lo = min(b) - max(c) - max(d)
        violation = max(lhs_up - rhs_up, rhs_lo - lhs_lo, 0.0)
        return violation, {"sample": i, "b": list(b), "c": list(c), "d": list(d)}

    results = _parallel_map(one, range(samples))
    return _finish("min_combine_lemma", results, tol)


def _check_biseparable(samples: int, seed: int, tol: float) -> CheckResult:
    def one(i: int) -> tuple[float, dict]:
        dims = _sample_dims(i)
        cut = Bipartition.of(dims, i % 3)
        state = library.random_biseparable(cut, dims, seed ^ i)
        return measures.gme_negativity(state), {"sample": i, "state": state.to_dict()}

    results = _parallel_map(one, range(samples))
    return _finish("biseparable_gme_zero", results, tol)


def _check_haar_gme_positive(samples: int, seed: int) -> CheckResult:
    floor = 1e-6

    def one(i: int) -> tuple[float, dict]:
        state = library.haar_random(_sample_dims(i), seed ^ i)
        gme = measures.gme_negativity(state)
        return max(0.0, floor - gme), {"sample": i, "state": state.to_dict()}

    results = _parallel_map(one, range(samples))
    return _finish("haar_gme_positive", results, 0.0)


def _finish(name: str, results: list[tuple[float, dict]], tol: float) -> CheckResult:
    worst_idx = max(range(len(results)), key=lambda k: results[k][0])
    max_violation = float(results[worst_idx][0])
    passed = max_violation <= tol
    return CheckResult(
        name=name,
        samples=len(results),
        max_violation=max_violation,
        passed=passed,
        worst=None if passed else results[worst_idx][1],
    )


def run_verify(samples: int, seed: int, tol: float) -> tuple[dict, list[CheckResult]]:
    """Run every property check; returns (summary dict, individual results)."""
    t1, t2 = _check_sandwiches(samples, seed, tol)
    checks = [
        _check_dual_path(samples, seed, tol),
        _check_concurrence_identity(samples, seed, tol),
        t1,
        t2,
        _check_lemma(samples, seed, tol),
        _check_biseparable(samples, seed, tol),
        _check_haar_gme_positive(samples, seed),
    ]
    summary = {
        c.name: {
            "samples": c.samples,
            "max_violation": c.max_violation,
            "pass": c.passed,
        }
        for c in checks
    }
    return summary, checks


def cmd_verify(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise CliError("verify needs at least one sample")
    summary, checks = run_verify(args.samples, args.seed, args.tol)
    _emit(_json_text(summary), args.out)
    failed = [c for c in checks if not c.passed]
    for check in failed:
        base = Path(args.out).parent if args.out else Path.cwd()
        replay = base / f"supneg_violation_{check.name}.json"
        replay.write_text(
            _json_text(
                {
                    "check": check.name,
                    "seed": args.seed,
                    "tol": args.tol,
                    "max_violation": check.max_violation,
                    "inputs": check.worst,
                }
            ),
            encoding="utf-8",
        )
        print(
            f"violation in {check.name}: max_violation={check.max_violation!r}, "
            f"offending inputs written to {replay}",
            file=sys.stderr,
        )
    return EXIT_VIOLATION if failed else EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supneg",
        description="Entanglement measures and superposition bounds for "
        "tripartite pure states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_measure = sub.add_parser("measure", help="evaluate all measures of one state")
    group = p_measure.add_mutually_exclusive_group(required=True)
    group.add_argument("--named", help="named state, e.g. ghz, ghz:d=3, w, z:p=0.3")
    group.add_argument("--file", help="state JSON file")
    p_measure.add_argument("--out", default=None)
    p_measure.add_argument("--format", choices=("json", "csv"), default="json")
    p_measure.set_defaults(fn=cmd_measure)

    p_bounds = sub.add_parser("bounds", help="superposition bounds for two states")
    p_bounds.add_argument("--s1", required=True, help="named:<spec> or file path")
    p_bounds.add_argument("--s2", required=True)
    p_bounds.add_argument("--a1", default=None, help="complex, e.g. 0.6+0.8i")
    p_bounds.add_argument("--a2", default=None)
    p_bounds.add_argument(
        "--p", type=float, default=None, help="shortcut: a1=sqrt(p), a2=sqrt(1-p)"
    )
    p_bounds.add_argument("--dump-terms", action="store_true")
    p_bounds.add_argument("--no-coeff-check", action="store_true")
    p_bounds.add_argument("--out", default=None)
    p_bounds.add_argument("--format", choices=("json", "csv"), default="json")
    p_bounds.set_defaults(fn=cmd_bounds)

    p_sweep = sub.add_parser("sweep", help="GHZ/W family sweep over mixing weights")
    p_sweep.add_argument("--grid", default="0,1,21", help="start,stop,steps")
    p_sweep.add_argument("--phi", default="0.0", type=float)
    p_sweep.add_argument("--out", default=None, help="CSV path; sidecar goes next to it")
    p_sweep.add_argument("--sidecar", default=None, help="fit JSON path override")
    p_sweep.set_defaults(fn=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the property-check harness")
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(fn=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
