"""Batch command-line front end.

Usage: gibbsbo <experiment> [--config FILE] [--seed S] [--samples K]
       [--out DIR]

Experiments: cauchy_g, cauchy_f, invariance, density_lp, convergence,
linfty_tail.  Config files are line-based `key = value` with `#` comments;
command-line flags override file values.  Exit codes: 0 all verdicts pass,
1 any verdict failure or inconclusive, 2 usage error.

Worker count is capped by the GIBBSBO_THREADS environment variable.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import experiments as ex
from .dynamics import IntegratorConfig
from .gaussmeasure import CutoffSpec

EXPERIMENTS = ("cauchy_g", "cauchy_f", "invariance", "density_lp",
               "convergence", "linfty_tail")


class ConfigError(ValueError):
    """Bad config file or flag; carries the offending line when known."""


@dataclass
class RunConfig:
    experiment: str = ""
    seed: int = 42
    samples: int = 100_000
    N: int = 8
    N_list: list[int] = field(default_factory=lambda: [16, 64, 256])
    R: float = 5.0
    taper: float = 5.0
    s: float = -0.5
    t: float = 0.5
    dt: float = 1e-3
    grid_factor: int = 3
    lambda_list: list[float] = field(default_factory=lambda: [2.0, 2.5, 3.0, 3.5])
    p_list: list[float] = field(default_factory=lambda: [1.0, 2.0, 4.0])
    eps_list: list[float] = field(default_factory=lambda: [0.05, 0.1, 0.2])
    output_dir: str = "."

    def __post_init__(self):
        self.validate()

    def validate(self):
        positives = ("samples", "N", "R", "taper", "dt", "grid_factor")
        for name in positives:
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.seed < 0 or self.seed >= 1 << 64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        if self.t < 0:
            raise ConfigError("t must be >= 0")
        for name in ("N_list", "lambda_list", "p_list", "eps_list"):
            vals = getattr(self, name)
            if not vals or any(v <= 0 for v in vals):
                raise ConfigError(f"{name} entries must be positive")


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _parse_value(key: str, raw: str):
    ftype = _FIELD_TYPES[key]
    if key == "experiment" or key == "output_dir":
        return raw
    if "list" in str(ftype):
        items = [x.strip() for x in raw.split(",") if x.strip()]
        if not items:
            raise ValueError("empty list")
        caster = int if key == "N_list" else float
        return [caster(x) for x in items]
    if ftype in ("int", int):
        return int(raw)
    return float(raw)


def parse_config(text: str, overrides: dict | None = None) -> RunConfig:
    """Line-based `key = value` parser with defaults and flag overrides."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = body.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = _parse_value(key, raw)
        except ValueError as exc:
            raise ConfigError(
                f"line {lineno}: malformed value for {key!r}: {exc}") from exc
    values.update(overrides or {})
    if not values.get("experiment"):
        raise ConfigError("missing required key 'experiment'")
    if values["experiment"] not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {values['experiment']!r}")
    try:
        return RunConfig(**values)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _dispatch(cfg: RunConfig) -> ex.ExperimentReport:
    cutoff = CutoffSpec(R=cfg.R, taper=cfg.taper)
    if cfg.experiment == "cauchy_g":
        return ex.cauchy_g_experiment(cfg.N_list, cfg.samples, cfg.seed)
    if cfg.experiment == "cauchy_f":
        return ex.cauchy_f_experiment(cfg.N_list, cfg.samples, cfg.seed)
    if cfg.experiment == "invariance":
        icfg = IntegratorConfig(dt=cfg.dt, grid_factor=cfg.grid_factor)
        names = ["exp_neg_hminus1", "cos_two_re_c1", "exp_neg_hminushalf"]
        return ex.invariance_experiment(cfg.N, cutoff, cfg.t, names,
                                        cfg.samples, icfg, cfg.seed)
    if cfg.experiment == "density_lp":
        return ex.density_lp_experiment(cfg.N_list, cfg.p_list, cutoff,
                                        cfg.samples, cfg.seed)
    if cfg.experiment == "convergence":
        return ex.convergence_in_measure_experiment(
            cfg.N_list, cfg.eps_list, cfg.samples, cfg.seed, cutoff)
    if cfg.experiment == "linfty_tail":
        return ex.linfty_tail_experiment(cfg.N, cfg.lambda_list,
                                         cfg.samples, cfg.seed)
    raise ConfigError(f"unknown experiment {cfg.experiment!r}")


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_report(report: ex.ExperimentReport, cfg: RunConfig) -> Path:
    out_dir = Path(cfg.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path = out_dir / f"{cfg.experiment}_{cfg.seed}.csv"
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(report.columns)
            for row in report.rows:
                writer.writerow([_fmt(row[c]) for c in report.columns])
        verdict_path = out_dir / f"{cfg.experiment}_{cfg.seed}.verdict.txt"
        verdict_path.write_text("\n".join(report.summary_lines()) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report under {out_dir}: {exc}") from exc
    return csv_path


def run(cfg: RunConfig) -> int:
    """Execute the configured experiment; 0 iff every verdict passes."""
    report = _dispatch(cfg)
    write_report(report, cfg)
    for line in report.summary_lines():
        print(line)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gibbsbo",
        description="Monte Carlo verification campaigns for the truncated "
                    "flow and its weighted Gaussian measure.")
    parser.add_argument("experiment", help="one of: " + ", ".join(EXPERIMENTS))
    parser.add_argument("--config", help="key = value config file")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--out", dest="output_dir")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    text = ""
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            print(f"error: cannot read config {args.config}: {exc}",
                  file=sys.stderr)
            return 2
    overrides = {"experiment": args.experiment}
    for key in ("seed", "samples", "output_dir"):
        val = getattr(args, key)
        if val is not None:
            overrides[key] = val
    try:
        cfg = parse_config(text, overrides)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
