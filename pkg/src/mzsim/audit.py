"""Cross-validation of the formula layers against the matrix engine.

The published derivation chain has internal gaps; this module quantifies
them instead of hiding them.  Each check scans a (phi, zeta) grid and
records the worst-case discrepancy together with where it occurs:

* ``field_vs_intensity``   - |E_A|^2 from the closed-form fields (with
  zeta' = -zeta) against the closed-form intensity I_A.  The field layer is
  phi-independent under that substitution, so the discrepancy is large by
  construction; the expected maximum is I0/2.
* ``matrix_vs_intensity``  - hadamard matrix engine against the closed-form
  intensities; expected to vanish to rounding.
* ``stage1_energy_defect`` - |I1 + I2 - I0| of the stage-1 bunching pair,
  which equals I0 cos^2(zeta) as written; expected maximum I0.
* ``g2_normalization_ratio`` - deviation of (paper g2)/(derived g2) from
  the constant 1/2 wherever the derived curve is nonzero.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .correlation import (
    DERIVED,
    PAPER,
    engine_intensities,
    g2_closed,
    intensities_closed,
)
from .modulation import ZETA, ZETA_PRIME, BasisBranch
from .optics import eq_fields_closed, intensity, stage1_fields


@dataclass(frozen=True)
class AuditCheck:
    name: str
    max_abs_discrepancy: float
    at: dict  # {"phi": float | None, "zeta": float | None}


@dataclass(frozen=True)
class GridSpec:
    phi_points: int = 101
    zeta_points: int = 101
    phi_range: tuple[float, float] = (-math.pi, math.pi)
    zeta_range: tuple[float, float] = (0.0, math.pi)

    def phi_grid(self) -> np.ndarray:
        return np.linspace(*self.phi_range, self.phi_points)

    def zeta_grid(self) -> np.ndarray:
        return np.linspace(*self.zeta_range, self.zeta_points)


@dataclass(frozen=True)
class AuditReport:
    checks: tuple[AuditCheck, ...]

    def __getitem__(self, name: str) -> AuditCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(
            [
                {
                    "name": c.name,
                    "max_abs_discrepancy": c.max_abs_discrepancy,
                    "at": c.at,
                }
                for c in self.checks
            ],
            indent=indent,
        )

    def write_json(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n")


def _branch(zeta: float) -> BasisBranch:
    return BasisBranch(ZETA, zeta) if zeta >= 0 else BasisBranch(ZETA_PRIME, zeta)


def audit_consistency(grid: GridSpec | None = None) -> AuditReport:
    """Run every consistency check over the grid and collect worst cases."""
    grid = grid or GridSpec()
    phis = grid.phi_grid()
    zetas = grid.zeta_grid()

    max_a = -1.0
    at_a = {"phi": None, "zeta": None}
    max_b = -1.0
    at_b = {"phi": None, "zeta": None}
    for zeta in zetas:
        branch = _branch(zeta)
        for phi in phis:
            closed = intensities_closed(phi, branch)

            fields = eq_fields_closed(1.0, zeta, -zeta, phi)
            d = abs(intensity(fields.port1) - closed.i_a)
            if d > max_a:
                max_a, at_a = d, {"phi": float(phi), "zeta": float(zeta)}

            eng = engine_intensities(phi, zeta, active_port=1)
            d = max(abs(eng.i_a - closed.i_a), abs(eng.i_b - closed.i_b))
            if d > max_b:
                max_b, at_b = d, {"phi": float(phi), "zeta": float(zeta)}

    max_c = -1.0
    at_c = {"phi": None, "zeta": None}
    for zeta in zetas:
        pair = stage1_fields(1.0, zeta)
        d = abs(pair.total_intensity - 1.0)
        if d > max_c:
            max_c, at_c = d, {"phi": None, "zeta": float(zeta)}

    paper = g2_closed(phis, PAPER)
    derived = g2_closed(phis, DERIVED)
    nonzero = derived.g2 > 0.0
    ratio_dev = np.abs(paper.g2[nonzero] / derived.g2[nonzero] - 0.5)
    k = int(np.argmax(ratio_dev))
    max_d = float(ratio_dev[k])
    at_d = {"phi": float(phis[nonzero][k]), "zeta": None}

    return AuditReport(
        (
            AuditCheck("field_vs_intensity", max_a, at_a),
            AuditCheck("matrix_vs_intensity", max_b, at_b),
            AuditCheck("stage1_energy_defect", max_c, at_c),
            AuditCheck("g2_normalization_ratio", max_d, at_d),
        )
    )
