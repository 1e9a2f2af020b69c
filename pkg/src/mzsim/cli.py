"""Command-line front end: parameter sweeps, ensemble runs, audit, sequences.

Subcommands
-----------
sweep     closed-form (optionally dephased) g2(phi) curve over a phi grid
ensemble  g2(phi) from a generated pulse sequence (closed-form or matrix engine)
audit     formula-consistency report as JSON
sequence  pulse-sequence CSV export

Configuration comes from flags and an optional TOML file (flags win).  Every
run echoes its fully-resolved config into ``<output>.meta.json`` so a run is
reproducible from its outputs alone; identical configs produce byte-identical
files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from . import correlation, modulation
from .audit import audit_consistency
from .correlation import (
    CLOSED_FORM,
    MATRIX,
    PAPER,
    SpectrumModel,
    dephase,
    g2_ensemble,
    write_curve_csv,
    write_curve_json,
)
from .modulation import ALTERNATE, DetuningConfig, make_sequence, write_sequence_csv, zeta_of


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class RunConfig:
    delta: float = math.pi
    period: float = 1.0
    phi_min: float = -math.pi
    phi_max: float = math.pi
    phi_steps: int = 1001
    normalization: str = PAPER
    policy: str = ALTERNATE
    segments: int = 1000
    seed: int = 42
    bandwidth_sigma: float = 0.0
    engine: str = CLOSED_FORM
    output_path: str = ""
    format: str = "csv"

    def validate(self) -> None:
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise ConfigError("delta", f"must be finite and >= 0, got {self.delta}")
        if not (math.isfinite(self.period) and self.period > 0.0):
            raise ConfigError("period", f"must be finite and > 0, got {self.period}")
        if not (self.phi_min < self.phi_max):
            raise ConfigError(
                "phi_min", f"phi_min ({self.phi_min}) must be < phi_max ({self.phi_max})"
            )
        if self.phi_steps < 2:
            raise ConfigError("phi_steps", f"must be >= 2, got {self.phi_steps}")
        if self.normalization not in correlation.MODES:
            raise ConfigError("normalization", f"must be one of {correlation.MODES}")
        if self.policy not in modulation.POLICIES:
            raise ConfigError("policy", f"must be one of {modulation.POLICIES}")
        if self.segments < 1:
            raise ConfigError("segments", f"must be >= 1, got {self.segments}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed", "must fit in an unsigned 64-bit integer")
        if not (math.isfinite(self.bandwidth_sigma) and self.bandwidth_sigma >= 0.0):
            raise ConfigError("bandwidth_sigma", "must be finite and >= 0")
        if self.engine not in correlation.ENGINES:
            raise ConfigError("engine", f"must be one of {correlation.ENGINES}")
        if self.format not in ("csv", "json"):
            raise ConfigError("format", "must be 'csv' or 'json'")
        if not self.output_path:
            raise ConfigError("output_path", "an output path is required")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown config key")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)

    def detuning(self) -> DetuningConfig:
        return DetuningConfig(self.delta, self.period)

    def phi_grid(self) -> np.ndarray:
        return np.linspace(self.phi_min, self.phi_max, self.phi_steps)

    def spectrum(self) -> SpectrumModel:
        return SpectrumModel.from_sigma(self.bandwidth_sigma)


_ENGINE_ALIASES = {"closed": CLOSED_FORM, "closed_form": CLOSED_FORM, "matrix": MATRIX}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzsim",
        description="Phase-basis-randomized MZI simulator: g2(phi) sweeps, "
        "ensemble runs, sequence export, and a formula-consistency audit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "write a g2(phi) curve from the closed form (with optional dephasing)"),
        ("ensemble", "write a g2(phi) curve averaged over a pulse sequence"),
        ("audit", "write the formula-consistency audit report (JSON)"),
        ("sequence", "write the pulse sequence as CSV"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, help="TOML config file; flags override it")
        p.add_argument("--delta", type=float, help="AOM detuning (rad/s)")
        p.add_argument("--period", type=float, help="full toggle cycle T (s)")
        p.add_argument("--phi-min", dest="phi_min", type=float, help="grid start (rad)")
        p.add_argument("--phi-max", dest="phi_max", type=float, help="grid end (rad)")
        p.add_argument("--phi-steps", dest="phi_steps", type=int, help="grid points")
        p.add_argument("--normalization", choices=list(correlation.MODES))
        p.add_argument("--policy", choices=list(modulation.POLICIES))
        p.add_argument("--segments", type=int, help="pulse segments in the sequence")
        p.add_argument("--seed", type=int, help="seed for the random policy")
        p.add_argument(
            "--bandwidth",
            dest="bandwidth_sigma",
            type=float,
            help="Gaussian source-bandwidth std sigma (rad/s); 0 = monochromatic",
        )
        p.add_argument(
            "--engine",
            type=lambda s: _ENGINE_ALIASES.get(s, s),
            help="ensemble intensity engine: closed | matrix",
        )
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--output", dest="output_path", type=Path, help="output file")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config is not None:
        try:
            with open(args.config, "rb") as fh:
                data.update(tomllib.load(fh))
        except FileNotFoundError:
            raise ConfigError("config", f"file not found: {args.config}")
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError("config", f"invalid TOML: {exc}")
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            data[f.name] = str(value) if f.name == "output_path" else value
    cfg = RunConfig.from_dict(data)
    cfg.validate()
    return cfg


def _write_metadata(cfg: RunConfig) -> None:
    meta_path = Path(cfg.output_path + ".meta.json")
    meta_path.write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")


def cmd_sweep(cfg: RunConfig) -> int:
    curve = dephase(
        zeta_of(cfg.detuning()),
        cfg.phi_grid(),
        cfg.spectrum(),
        mode=cfg.normalization,
        period=cfg.period,
    )
    if cfg.format == "csv":
        write_curve_csv(curve, cfg.output_path)
    else:
        write_curve_json(curve, cfg.output_path)
    _write_metadata(cfg)
    return 0


def cmd_ensemble(cfg: RunConfig) -> int:
    seq = make_sequence(cfg.detuning(), cfg.segments, cfg.policy, cfg.seed)
    curve = g2_ensemble(seq, cfg.phi_grid(), engine=cfg.engine, mode=cfg.normalization)
    if cfg.format == "csv":
        write_curve_csv(curve, cfg.output_path)
    else:
        write_curve_json(curve, cfg.output_path)
    _write_metadata(cfg)
    return 0


def cmd_audit(cfg: RunConfig) -> int:
    # Discrepancies are expected findings, not failures: always exit 0 on a
    # successful write.
    report = audit_consistency()
    report.write_json(cfg.output_path)
    _write_metadata(cfg)
    return 0


def cmd_sequence(cfg: RunConfig) -> int:
    seq = make_sequence(cfg.detuning(), cfg.segments, cfg.policy, cfg.seed)
    write_sequence_csv(seq, cfg.output_path)
    _write_metadata(cfg)
    return 0


_COMMANDS = {
    "sweep": cmd_sweep,
    "ensemble": cmd_ensemble,
    "audit": cmd_audit,
    "sequence": cmd_sequence,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
