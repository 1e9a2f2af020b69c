"""Detuning-derived phase bases and the alternating pulse sequence.

The acousto-optic modulator shifts the carrier f0 by +-Delta; combined with
the pulse duration T/2 this defines the basis phase pair

    zeta  = +Delta * T / 2   (segment carries the +Delta shifted field)
    zeta' = -Delta * T / 2   (segment carries the -Delta shifted field)

A pulse sequence toggles between the two branches, either strictly
alternating or by a seeded per-index coin flip.  Generation is a pure
function of its inputs, so identical configs reproduce bit-identical
sequences (and identical CSV exports).
"""

from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

HALF_PI = math.pi / 2.0

ZETA = "zeta"
ZETA_PRIME = "zeta_prime"

ALTERNATE = "alternate"
RANDOM = "random"
POLICIES = (ALTERNATE, RANDOM)


@dataclass(frozen=True)
class DetuningConfig:
    """AOM drive parameters: shift delta (rad/s), full cycle period T (s).

    The carrier f0 is bookkeeping only; every computed quantity depends on
    delta and period alone through zeta = delta * period / 2.
    """

    delta: float
    period: float
    f0: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise ValueError(f"delta must be finite and >= 0, got {self.delta!r}")
        if not (math.isfinite(self.period) and self.period > 0.0):
            raise ValueError(f"period must be finite and > 0, got {self.period!r}")

    @property
    def shifted_frequencies(self) -> tuple[float, float]:
        """(f, f') = (f0 + delta, f0 - delta), symmetric about the carrier."""
        return self.f0 + self.delta, self.f0 - self.delta


def zeta_of(cfg: DetuningConfig) -> float:
    """Basis phase magnitude zeta = delta * T / 2."""
    return cfg.delta * cfg.period / 2.0


@dataclass(frozen=True)
class QuadratureResult:
    is_quadrature: bool
    nearest_n: int
    deviation: float  # signed: zeta - (2n+1) pi/2


def quadrature_check(cfg: DetuningConfig, tol: float = 1e-9) -> QuadratureResult:
    """Check zeta against the uniform-output condition zeta = (2n+1) pi/2.

    Returns the non-negative integer n minimizing |zeta - (2n+1) pi/2| and
    the signed deviation from that odd multiple.
    """
    zeta = zeta_of(cfg)
    n_guess = round((zeta / HALF_PI - 1.0) / 2.0)
    best_n = 0
    best_dev = zeta - HALF_PI
    for n in {max(0, n_guess - 1), max(0, n_guess), max(0, n_guess + 1)}:
        dev = zeta - (2 * n + 1) * HALF_PI
        if abs(dev) < abs(best_dev):
            best_n, best_dev = n, dev
    return QuadratureResult(abs(best_dev) <= tol, best_n, best_dev)


@dataclass(frozen=True)
class BasisBranch:
    """One of the two phase bases: tag plus its signed phase."""

    tag: str
    phase: float

    def __post_init__(self) -> None:
        if self.tag not in (ZETA, ZETA_PRIME):
            raise ValueError(f"unknown branch tag: {self.tag!r}")
        if self.tag == ZETA and self.phase < 0.0:
            raise ValueError("zeta branch requires phase >= 0")
        if self.tag == ZETA_PRIME and self.phase > 0.0:
            raise ValueError("zeta_prime branch requires phase <= 0")


def branch_pair(cfg: DetuningConfig) -> tuple[BasisBranch, BasisBranch]:
    """(zeta, zeta') branches for a detuning config; zeta' = -zeta exactly."""
    z = zeta_of(cfg)
    return BasisBranch(ZETA, z), BasisBranch(ZETA_PRIME, -z)


@dataclass(frozen=True)
class PulseSegment:
    branch: BasisBranch
    duration: float
    freq_offset: float  # +delta for zeta, -delta for zeta'
    active_port: int  # which port carries the shifted field; the other holds E0


@dataclass(frozen=True)
class PulseSequence:
    segments: tuple[PulseSegment, ...]
    policy: str
    seed: int

    def __len__(self) -> int:
        return len(self.segments)

    def branch_counts(self) -> dict[str, int]:
        counts = {ZETA: 0, ZETA_PRIME: 0}
        for seg in self.segments:
            counts[seg.branch.tag] += 1
        return counts


def _coin(seed: int, index: int) -> int:
    """Pure per-index coin flip keyed by (seed, index).

    Counter-based so segments can be generated independently in any order;
    a keyed hash keeps the bit stream stable across platforms and runs.
    """
    h = hashlib.blake2b(
        index.to_bytes(8, "little"),
        key=(seed & 0xFFFFFFFFFFFFFFFF).to_bytes(8, "little"),
        digest_size=8,
    )
    return h.digest()[0] & 1


def make_sequence(
    cfg: DetuningConfig,
    n_segments: int,
    policy: str = ALTERNATE,
    seed: int = 0,
    flip_ports: bool = False,
) -> PulseSequence:
    """Build the toggled pulse sequence.

    ``alternate`` starts on the zeta branch and strictly alternates;
    ``random`` picks each segment's branch by the seeded coin.  The shifted
    field occupies port 1 on the zeta branch and port 2 on the zeta' branch
    (``flip_ports`` swaps that assignment).
    """
    if n_segments < 1:
        raise ValueError(f"n_segments must be >= 1, got {n_segments}")
    if policy not in POLICIES:
        raise ValueError(f"unknown policy: {policy!r}")
    zeta_b, zeta_p_b = branch_pair(cfg)
    duration = cfg.period / 2.0
    segments = []
    for i in range(n_segments):
        if policy == ALTERNATE:
            take_zeta = i % 2 == 0
        else:
            take_zeta = _coin(seed, i) == 0
        branch = zeta_b if take_zeta else zeta_p_b
        offset = cfg.delta if take_zeta else -cfg.delta
        port = (1 if take_zeta else 2) if not flip_ports else (2 if take_zeta else 1)
        segments.append(PulseSegment(branch, duration, offset, port))
    return PulseSequence(tuple(segments), policy, seed)


SEQUENCE_CSV_HEADER = (
    "index,branch,phase_rad,freq_offset_rad_per_s,duration_s,active_port"
)


def sequence_csv_rows(seq: PulseSequence) -> Iterable[list[str]]:
    for i, seg in enumerate(seq.segments):
        yield [
            str(i),
            seg.branch.tag,
            f"{seg.branch.phase:.17g}",
            f"{seg.freq_offset:.17g}",
            f"{seg.duration:.17g}",
            str(seg.active_port),
        ]


def write_sequence_csv(seq: PulseSequence, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SEQUENCE_CSV_HEADER.split(","))
        writer.writerows(sequence_csv_rows(seq))
