"""Command-line front end.

Every subcommand validates its full parameter set before computing,
computes everything in memory, then writes: an interrupted or invalid
invocation never leaves a partial output file.  Output is deterministic
for identical argv; data files carry no timestamps, only a generated-by
comment naming the tool and version.  Floats are printed with 17
significant digits so files round-trip to the exact doubles.

Exit codes: 0 success, 1 computational failure, 2 argument errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .channels import chi_scan, magnetized_bloch_trace, recurrence_demo, singlet_witness
from .closed_forms import alpha_closed, classify_couplings
from .propagator import ChainSpec, SpectralAlpha, choose_chain_length, truncation_gap
from .series import alpha_z, build_series, evaluate_series
from .svg_plot import emit_plot
from .walks import WalkTable

GENERATED_BY = f"# generated-by: spinwire {__version__}"

DEFAULTS: dict[str, dict[str, object]] = {
    "walks": {"n_max": 12},
    "alpha": {
        "method": "matrix",
        "k0": 1.0,
        "k": 1.0,
        "tmax": 10.0,
        "steps": 1000,
        "order": 20,
        "n_sites": None,
        "tol": 1e-10,
    },
    "chi-scan": {"ratios": None, "order": 20, "quad_tol": 1e-10},
    "bloch": {"k0": math.sqrt(2.0), "k": 1.0, "tmax": 10.0, "steps": 1000, "tol": 1e-10},
    "witness": {
        "k0a": 1.0,
        "ka": 1.0,
        "k0b": 1.0,
        "kb": 1.0,
        "tmax": 10.0,
        "steps": 2000,
        "tol": 1e-10,
    },
    "recurrence": {
        "freqs": (1.0, math.pi),
        "threshold": 0.9,
        "tmax": 500.0,
        "steps": 500001,
    },
}


def fmt(x: float) -> str:
    return "%.17g" % float(x)


def _parse_float_list(text) -> tuple[float, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    return tuple(float(part) for part in str(text).split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwire",
        description="Qubit decoherence through a semi-infinite xx spin chain, "
        "by exact series, matrix propagator, and Bessel closed forms.",
    )
    parser.add_argument("--version", action="version", version=f"spinwire {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, plot: bool = True) -> None:
        p.add_argument("--out", help="output CSV path (default: stdout)")
        if plot:
            p.add_argument("--plot", help="also write an SVG line plot here")
        p.add_argument("--config", help="JSON file whose keys mirror flags; flags win")

    p = sub.add_parser("walks", help="table of origin-returning walk counts")
    p.add_argument("--n-max", dest="n_max", type=int, help="largest (even) step count")
    add_common(p, plot=False)

    p = sub.add_parser("alpha", help="auto-fidelity alpha0 on a time grid")
    p.add_argument("--method", choices=("series", "matrix", "closed"))
    p.add_argument("--k0", type=float, help="plug coupling")
    p.add_argument("--k", type=float, help="wire coupling")
    p.add_argument("--tmax", type=float)
    p.add_argument("--steps", type=int, help="number of samples, t=0 included")
    p.add_argument("--order", type=int, help="series truncation order (series method)")
    p.add_argument("--n-sites", dest="n_sites", type=int, help="chain length (matrix method)")
    p.add_argument("--tol", type=float, help="truncation certification tolerance (matrix)")
    add_common(p)

    p = sub.add_parser("chi-scan", help="exponentiality metric over coupling ratios")
    p.add_argument("--ratios", help="comma-separated K/K0 values")
    p.add_argument("--order", type=int)
    p.add_argument("--quad-tol", dest="quad_tol", type=float)
    add_common(p)

    p = sub.add_parser("bloch", help="Bloch length against a magnetized chain")
    for flag in ("--k0", "--k", "--tmax", "--tol"):
        p.add_argument(flag, type=float)
    p.add_argument("--steps", type=int)
    add_common(p)

    p = sub.add_parser("witness", help="two-qubit singlet witness trace")
    for flag in ("--k0a", "--ka", "--k0b", "--kb", "--tmax", "--tol"):
        p.add_argument(flag, type=float)
    p.add_argument("--steps", type=int)
    add_common(p)

    p = sub.add_parser("recurrence", help="finite-frequency survival probability")
    p.add_argument("--freqs", help="comma-separated angular frequencies (2 to 8)")
    p.add_argument("--threshold", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--steps", type=int)
    add_common(p)

    return parser


def resolve_params(parser: argparse.ArgumentParser, args: argparse.Namespace) -> dict:
    """Merge flag values over config-file values over built-in defaults."""
    defaults = DEFAULTS[args.command]
    io_keys = ("out",) if args.command == "walks" else ("out", "plot")
    config: dict[str, object] = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as handle:
                config = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        if not isinstance(config, dict):
            parser.error(f"config {args.config} must hold a JSON object")
        unknown = set(config) - set(defaults) - set(io_keys)
        if unknown:
            parser.error(f"unknown config keys for {args.command}: {sorted(unknown)}")

    params: dict[str, object] = {}
    for key, built_in in defaults.items():
        flag_value = getattr(args, key, None)
        params[key] = flag_value if flag_value is not None else config.get(key, built_in)
    for key in io_keys:
        flag_value = getattr(args, key, None)
        params[key] = flag_value if flag_value is not None else config.get(key)

    _validate(parser, args.command, params)
    return params


def _validate(parser: argparse.ArgumentParser, command: str, params: dict) -> None:
    def fail(message: str) -> None:
        parser.error(f"{command}: {message}")

    def check_float(name, *, lo=None, lo_strict=None, hi=None) -> float:
        try:
            value = float(params[name])
        except (TypeError, ValueError):
            fail(f"--{name.replace('_', '-')} must be a number")
        if not math.isfinite(value):
            fail(f"--{name.replace('_', '-')} must be finite")
        if lo is not None and value < lo:
            fail(f"--{name.replace('_', '-')} must be >= {lo}")
        if lo_strict is not None and value <= lo_strict:
            fail(f"--{name.replace('_', '-')} must be > {lo_strict}")
        if hi is not None and value > hi:
            fail(f"--{name.replace('_', '-')} must be <= {hi}")
        params[name] = value
        return value

    def check_int(name, lo) -> int:
        value = params[name]
        if not isinstance(value, int) or isinstance(value, bool) or value < lo:
            fail(f"--{name.replace('_', '-')} must be an integer >= {lo}")
        return value

    if command == "walks":
        n_max = check_int("n_max", 2)
        if n_max % 2:
            fail("--n-max must be even")
    elif command == "alpha":
        if params["method"] not in ("series", "matrix", "closed"):
            fail("--method must be series, matrix, or closed")
        check_float("k0", lo=0.0)
        check_float("k", lo=0.0)
        check_float("tmax", lo=0.0)
        check_int("steps", 1)
        check_int("order", 2)
        if params["n_sites"] is not None:
            check_int("n_sites", 2)
        check_float("tol", lo_strict=0.0, hi=0.999)
    elif command == "chi-scan":
        if params["ratios"] is None:
            fail("--ratios is required")
        try:
            ratios = _parse_float_list(params["ratios"])
        except ValueError:
            fail("--ratios must be comma-separated numbers")
        if not ratios or any(r <= 0 or not math.isfinite(r) for r in ratios):
            fail("--ratios must be positive numbers")
        params["ratios"] = ratios
        check_int("order", 2)
        check_float("quad_tol", lo_strict=0.0)
    elif command == "bloch":
        check_float("k0", lo=0.0)
        check_float("k", lo=0.0)
        check_float("tmax", lo=0.0)
        check_int("steps", 1)
        check_float("tol", lo_strict=0.0, hi=0.999)
    elif command == "witness":
        for name in ("k0a", "ka", "k0b", "kb"):
            check_float(name, lo=0.0)
        check_float("tmax", lo_strict=0.0)
        check_int("steps", 2)
        check_float("tol", lo_strict=0.0, hi=0.999)
    elif command == "recurrence":
        try:
            freqs = _parse_float_list(params["freqs"])
        except ValueError:
            fail("--freqs must be comma-separated numbers")
        if not 2 <= len(freqs) <= 8:
            fail("--freqs needs between 2 and 8 values")
        params["freqs"] = freqs
        check_float("threshold", lo_strict=0.0, hi=1.0)
        check_float("tmax", lo_strict=0.0)
        check_int("steps", 2)


# ---------------------------------------------------------------------------
# Subcommand runners: each returns (csv text, sidecar dict or None, plot spec)
# ---------------------------------------------------------------------------

def _grid(tmax: float, steps: int) -> np.ndarray:
    return np.linspace(0.0, tmax, steps)


def _run_walks(params):
    table = WalkTable.build(params["n_max"])
    lines = [GENERATED_BY, "n,k,count"]
    for (n, k), count in sorted(table.entries.items()):
        lines.append(f"{n},{k},{count}")
    return "\n".join(lines) + "\n", None, None


def _certified_matrix(k0, k, tmax, steps, tol, n_sites):
    """Spectral alpha trace plus an honest truncation gap for the CSV."""
    if tmax <= 0:
        spec = ChainSpec(k0, k, n_sites or 2)
        return spec, np.ones(steps), 0.0, n_sites is None
    auto = n_sites is None
    n = choose_chain_length(k, tmax, tol, k0=k0) if auto else n_sites
    spec = ChainSpec(k0, k, n)
    values = SpectralAlpha(spec)(_grid(tmax, steps))
    return spec, values, truncation_gap(spec, tmax), auto


def _run_alpha(params):
    method, k0, k = params["method"], params["k0"], params["k"]
    tmax, steps = params["tmax"], params["steps"]
    times = _grid(tmax, steps)
    lines = [GENERATED_BY]

    if method == "series":
        coeffs = build_series(Fraction(k0) ** 2, Fraction(k) ** 2, params["order"])
        rows = []
        for t in times:
            value, err = evaluate_series(coeffs, float(t))
            rows.append((t, value, alpha_z(value), err))
    elif method == "matrix":
        spec, values, gap, auto = _certified_matrix(
            k0, k, tmax, steps, params["tol"], params["n_sites"]
        )
        if auto:
            lines.append(f"# n_sites={spec.n_sites}")
        rows = [(t, v, alpha_z(v), gap) for t, v in zip(times, values)]
    else:
        case = classify_couplings(k0, k)
        rows = []
        for t in times:
            value = alpha_closed(case, float(t))
            rows.append((t, value, alpha_z(value), 0.0))

    lines.append("t,alpha0,alphaZ,error_estimate")
    lines.extend(",".join(fmt(x) for x in row) for row in rows)
    plot = (times, [row[1] for row in rows], "t", "alpha0", f"alpha0, method={method}")
    return "\n".join(lines) + "\n", None, plot


def _run_chi_scan(params):
    scan = chi_scan(params["ratios"], params["order"], params["quad_tol"])
    lines = [GENERATED_BY, "ratio,chi,log_chi"]
    log_chi = [math.log(c) if c > 0 else -math.inf for c in scan.chi]
    for r, c, lc in zip(scan.ratios, scan.chi, log_chi):
        lines.append(f"{fmt(r)},{fmt(c)},{fmt(lc)}")
    plot = (scan.ratios, log_chi, "K/K0", "log chi", "exponentiality metric")
    return "\n".join(lines) + "\n", None, plot


def _run_bloch(params):
    k0, k, tmax, steps = params["k0"], params["k"], params["tmax"], params["steps"]
    if tmax > 0:
        n = choose_chain_length(k, tmax, params["tol"], k0=k0)
    else:
        n = 2
    pairs = magnetized_bloch_trace(ChainSpec(k0, k, n), _grid(tmax, steps))
    lines = [GENERATED_BY, f"# n_sites={n}", "t,v_sq"]
    lines.extend(f"{fmt(t)},{fmt(v)}" for t, v in pairs)
    plot = ([t for t, _ in pairs], [v for _, v in pairs], "t", "v^2", "Bloch length, magnetized chain")
    return "\n".join(lines) + "\n", None, plot


def _run_witness(params):
    tmax, steps, tol = params["tmax"], params["steps"], params["tol"]
    spec_a = ChainSpec(
        params["k0a"], params["ka"], choose_chain_length(params["ka"], tmax, tol, k0=params["k0a"])
    )
    spec_b = ChainSpec(
        params["k0b"], params["kb"], choose_chain_length(params["kb"], tmax, tol, k0=params["k0b"])
    )
    trace = singlet_witness(spec_a, spec_b, _grid(tmax, steps))
    lines = [GENERATED_BY, "t,witness"]
    lines.extend(f"{fmt(t)},{fmt(w)}" for t, w in zip(trace.times, trace.witness))
    sidecar = {
        "death_time": trace.death_time,
        "rebirth_times": list(trace.rebirth_times),
        "intervals": [list(pair) for pair in trace.entangled_intervals],
    }
    plot = (trace.times, trace.witness, "t", "witness", "singlet correlation witness")
    return "\n".join(lines) + "\n", sidecar, plot


def _run_recurrence(params):
    times = _grid(params["tmax"], params["steps"])
    values, first = recurrence_demo(params["freqs"], times, params["threshold"])
    lines = [GENERATED_BY]
    if first is not None:
        lines.append(f"# first_exceedance={fmt(first)}")
    lines.append("t,p")
    lines.extend(f"{fmt(t)},{fmt(p)}" for t, p in zip(times, values))
    plot = (times, values, "t", "P", "finite-frequency survival probability")
    return "\n".join(lines) + "\n", None, plot


RUNNERS = {
    "walks": _run_walks,
    "alpha": _run_alpha,
    "chi-scan": _run_chi_scan,
    "bloch": _run_bloch,
    "witness": _run_witness,
    "recurrence": _run_recurrence,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = resolve_params(parser, args)

    try:
        csv_text, sidecar, plot_spec = RUNNERS[args.command](params)
        sidecar_text = (
            json.dumps(sidecar, sort_keys=True) if sidecar is not None else None
        )
        if params["out"]:
            with open(params["out"], "w", encoding="utf-8", newline="\n") as handle:
                handle.write(csv_text)
            if sidecar_text is not None:
                with open(
                    params["out"] + ".json", "w", encoding="utf-8", newline="\n"
                ) as handle:
                    handle.write(sidecar_text + "\n")
        else:
            if sidecar_text is not None:
                csv_text += f"# sidecar {sidecar_text}\n"
            sys.stdout.write(csv_text)
        if params.get("plot"):
            xs, ys, xlabel, ylabel, title = plot_spec
            emit_plot(xs, ys, xlabel=xlabel, ylabel=ylabel, title=title, path=params["plot"])
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"spinwire {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
