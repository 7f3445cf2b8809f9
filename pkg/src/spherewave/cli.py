"""Command-line surface: verification suites and plot-ready tables.

Every command writes one CSV or JSON artifact and is deterministic for a
fixed configuration (seed included), so reruns overwrite byte-identically.
Floats are serialized with 17 significant digits and re-parse bit-exactly;
complex columns split into `<name>_re` / `<name>_im`.

Exit codes: 0 success, 2 invalid arguments, 3 failed verification
tolerance, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .autocorr import QuadratureSpec, WaveSpec, convergence_study, radial_profile
from .diffraction import SphereMeasure, sphere_ft_closed, sphere_ft_mc
from .specfun import HalfIntOrder, bessel_j, bessel_normalized
from .taylor import compare_with_bessel_series, h_deriv_at_zero, taylor_coefficient
from .verify import verify_all

__all__ = ["RunConfig", "main", "entry", "read_csv_columns", "read_json"]

OUTDIR_ENV = "SPHEREWAVE_OUTDIR"

EXIT_OK = 0
EXIT_BAD_CONFIG = 2
EXIT_TOLERANCE = 3
EXIT_IO = 4

COMMANDS = ("bessel", "autocorr", "converge", "sphere-ft", "taylor", "verify-all")


class ConfigError(ValueError):
    def __init__(self, fieldname: str, message: str):
        super().__init__(f"invalid {fieldname}: {message}")
        self.fieldname = fieldname


@dataclass
class RunConfig:
    command: str
    d: int = 2
    k: float = 1.0
    s_min: float = 0.0
    s_max: float = 5.0
    s_count: int = 101
    grid: list[float] | None = None
    R_list: list[float] | None = None
    n_samples: int = 10**5
    seed: int = 42
    m_max: int = 20
    out: str | None = None
    fmt: str = "csv"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError("command", f"unknown command {self.command!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format", f"must be csv or json, got {self.fmt!r}")
        if not 1 <= self.d <= 12:
            raise ConfigError("d", f"dimension must be in [1, 12], got {self.d}")
        if not (math.isfinite(self.k) and self.k >= 0):
            raise ConfigError("k", f"must be finite and >= 0, got {self.k}")
        if self.s_count < 2:
            raise ConfigError("s-count", f"grid count must be >= 2, got {self.s_count}")
        if not self.s_min < self.s_max:
            raise ConfigError("s-min", f"s_min {self.s_min} must be < s_max {self.s_max}")
        if self.s_min < 0:
            raise ConfigError("s-min", f"must be >= 0, got {self.s_min}")
        if self.command == "converge":
            if not self.grid:
                raise ConfigError("grid", "converge requires --grid s1,s2,...")
            if any(s < 0 for s in self.grid):
                raise ConfigError("grid", "entries must be >= 0")
            if not self.R_list or len(self.R_list) < 2:
                raise ConfigError("R", "converge requires --R with at least two radii")
            if any(b <= a for a, b in zip(self.R_list, self.R_list[1:])):
                raise ConfigError("R", "radii must be strictly increasing")
        if self.R_list and any(R <= 0 for R in self.R_list):
            raise ConfigError("R", "radii must be > 0")
        if self.command == "sphere-ft" and self.n_samples < 100:
            raise ConfigError("n-samples", f"must be >= 100, got {self.n_samples}")
        if self.command == "bessel" and self.d == 1 and self.s_min <= 0:
            raise ConfigError("s-min", "order -1/2 (d = 1) diverges at z = 0; use s_min > 0")
        if not 0 <= self.m_max <= 40:
            raise ConfigError("m-max", f"must be in [0, 40], got {self.m_max}")
        if self.m_max % 2:
            raise ConfigError("m-max", f"must be even, got {self.m_max}")

    def output_path(self) -> str:
        if self.out:
            return self.out
        base = os.environ.get(OUTDIR_ENV, ".")
        return os.path.join(base, f"{self.command.replace('-', '_')}.{self.fmt}")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _write_csv(path: str, columns: dict[str, list]) -> None:
    names = list(columns)
    rows = zip(*(columns[n] for n in names)) if names else []
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_csv_columns(path: str) -> dict[str, list]:
    """Reload a CSV artifact; numeric cells come back as bit-exact floats,
    non-numeric cells as strings."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        names = next(reader)
        cols: dict[str, list] = {n: [] for n in names}
        for row in reader:
            for n, v in zip(names, row):
                try:
                    cols[n].append(float(v))
                except ValueError:
                    cols[n].append(v)
    return cols


def read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# Command implementations: each returns (columns, results, pass)
# ---------------------------------------------------------------------------


def _run_bessel(cfg: RunConfig) -> tuple[dict, dict, bool]:
    order = HalfIntOrder(cfg.d - 2)
    z = np.linspace(cfg.s_min, cfg.s_max, cfg.s_count)
    jv = [bessel_j(order, float(t)) for t in z]
    jn = [bessel_normalized(order, float(t)) for t in z]
    cols = {"z": [float(t) for t in z], "bessel_j": jv, "bessel_normalized": jn}
    return cols, {**cols, "twice_nu": order.twice_nu}, True


def _run_autocorr(cfg: RunConfig) -> tuple[dict, dict, bool]:
    wave = WaveSpec(cfg.d, cfg.k)
    s = np.linspace(cfg.s_min, cfg.s_max, cfg.s_count)
    R = cfg.R_list[0] if cfg.R_list else None
    prof = radial_profile(wave, s, R)
    cols = {"s": list(map(float, prof.s_values)), "eta_closed": list(map(float, prof.eta_closed))}
    results: dict = dict(cols)
    if prof.eta_numeric is not None:
        cols["eta_R_re"] = list(map(float, prof.eta_numeric.real))
        cols["eta_R_im"] = list(map(float, prof.eta_numeric.imag))
        results.update({"eta_R_re": cols["eta_R_re"], "eta_R_im": cols["eta_R_im"], "R": R})
    return cols, results, True


def _run_converge(cfg: RunConfig) -> tuple[dict, dict, bool]:
    rep = convergence_study(WaveSpec(cfg.d, cfg.k), cfg.grid, cfg.R_list)
    # the ratio column sits on the left R of each adjacent pair; nan pads the last row
    cols = {
        "R": rep.R_values,
        "max_abs_error": rep.max_abs_error,
        "max_imag_residual": rep.max_imag_residual,
        "decay_ratio_to_next": rep.decay_ratios + [math.nan],
    }
    results = {
        "R_values": rep.R_values,
        "max_abs_error": rep.max_abs_error,
        "max_imag_residual": rep.max_imag_residual,
        "decay_ratios": rep.decay_ratios,
        "degenerate_pairs": [list(p) for p in rep.degenerate_pairs],
    }
    return cols, results, True


def _run_sphere_ft(cfg: RunConfig) -> tuple[dict, dict, bool]:
    mu = SphereMeasure(cfg.d, cfg.k)
    norms = np.linspace(cfg.s_min, cfg.s_max, cfg.s_count)
    closed, mc_re, mc_im, stderr = [], [], [], []
    for x_norm in norms:
        x = np.zeros(cfg.d)
        x[0] = float(x_norm)
        est = sphere_ft_mc(mu, x, cfg.n_samples, cfg.seed)
        closed.append(sphere_ft_closed(mu, float(x_norm)))
        mc_re.append(est.value.real)
        mc_im.append(est.value.imag)
        stderr.append(est.stderr)
    cols = {
        "x_norm": list(map(float, norms)),
        "ft_closed": closed,
        "mc_re": mc_re,
        "mc_im": mc_im,
        "stderr": stderr,
    }
    return cols, {**cols, "n": cfg.n_samples, "seed": cfg.seed}, True


def _run_taylor(cfg: RunConfig) -> tuple[dict, dict, bool]:
    ms = list(range(0, cfg.m_max + 1))
    deriv = [h_deriv_at_zero(cfg.d, m) for m in ms]
    coeff = [taylor_coefficient(cfg.d, m).value for m in ms]
    via_fact = [h / math.factorial(m) for h, m in zip(deriv, ms)]
    cols = {"m": ms, "h_deriv": deriv, "coefficient": coeff, "coefficient_via_factorial": via_fact}
    results = {**cols, "max_series_residual": compare_with_bessel_series(cfg.d, cfg.m_max)}
    return cols, results, True


def _run_verify_all(cfg: RunConfig) -> tuple[dict, dict, bool]:
    report = verify_all(cfg.seed)
    cols = {
        "suite": list(report["suites"]),
        "passed": [int(report["suites"][n]["passed"]) for n in report["suites"]],
        "observed": [report["suites"][n]["observed"] for n in report["suites"]],
        "required": [report["suites"][n]["required"] for n in report["suites"]],
    }
    return cols, report, bool(report["pass"])


_RUNNERS = {
    "bessel": _run_bessel,
    "autocorr": _run_autocorr,
    "converge": _run_converge,
    "sphere-ft": _run_sphere_ft,
    "taylor": _run_taylor,
    "verify-all": _run_verify_all,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherewave",
        description="Radial-wave autocorrelation and sphere-measure transform toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, radius_flag: bool = False) -> None:
        p.add_argument("--d", type=int, default=2, help="ambient dimension (1..12)")
        if radius_flag:
            p.add_argument("--r", dest="k", type=float, default=1.0, help="sphere radius")
        else:
            p.add_argument("--k", type=float, default=1.0, help="wavenumber (>= 0)")
        p.add_argument("--out", help=f"output path (default: ${OUTDIR_ENV} or cwd)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)

    p = sub.add_parser("bessel", help="Bessel J and normalized profile for order d/2 - 1")
    common(p)
    p.add_argument("--s-min", type=float, default=0.0, help="grid start (argument z)")
    p.add_argument("--s-max", type=float, default=20.0, help="grid end")
    p.add_argument("--s-count", type=int, default=201, help="grid size (>= 2)")

    p = sub.add_parser("autocorr", help="closed-form autocorrelation profile")
    common(p)
    p.add_argument("--s-min", type=float, default=0.0)
    p.add_argument("--s-max", type=float, default=5.0)
    p.add_argument("--s-count", type=int, default=101)
    p.add_argument("--R", dest="R_list", type=_float_list, default=None,
                   help="optional ball radius: adds finite-R columns")

    p = sub.add_parser("converge", help="finite-R convergence report")
    common(p)
    p.add_argument("--grid", type=_float_list, required=True, help="s values, comma separated")
    p.add_argument("--R", dest="R_list", type=_float_list, default=None,
                   help="increasing ball radii, comma separated")

    p = sub.add_parser("sphere-ft", help="sphere-measure transform: closed form vs Monte Carlo")
    common(p, radius_flag=True)
    p.add_argument("--s-min", type=float, default=0.0, help="frequency grid start")
    p.add_argument("--s-max", type=float, default=2.0)
    p.add_argument("--s-count", type=int, default=21)
    p.add_argument("--n-samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("taylor", help="origin Taylor data of the autocorrelation")
    common(p)
    p.add_argument("--m-max", type=int, default=20, help="even derivative cap (<= 40)")

    p = sub.add_parser("verify-all", help="run every acceptance suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", help=f"output path (default: ${OUTDIR_ENV} or cwd)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if args.fmt is not None:
        cfg.fmt = args.fmt
    elif args.command in ("converge", "verify-all"):
        cfg.fmt = "json"
    for name in ("d", "k", "s_min", "s_max", "s_count", "grid", "R_list",
                 "n_samples", "seed", "m_max", "out"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG

    columns, results, passed = _RUNNERS[cfg.command](cfg)
    payload = {
        "command": cfg.command,
        "config": asdict(cfg),
        "results": results,
        "pass": passed,
    }
    path = cfg.output_path()
    try:
        if cfg.fmt == "csv":
            _write_csv(path, columns)
        else:
            _write_json(path, payload)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO

    if not passed:
        failing = [
            f"{name}: observed {r['observed']}, required {r['required']}"
            for name, r in results.get("suites", {}).items()
            if not r["passed"]
        ]
        print("verification failed:", file=sys.stderr)
        for line in failing:
            print(f"  {line}", file=sys.stderr)
        return EXIT_TOLERANCE
    print(path)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())
