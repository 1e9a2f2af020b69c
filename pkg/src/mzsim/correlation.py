"""Output intensities, intensity product, and the correlation g2(phi).

Three evaluation routes are provided and cross-checked by the audit module:

* closed-form intensities I_A,B = (I0/2)[1 -+ sin(phi) sin(basis_phase)],
* a matrix engine that pushes the basis-phased input through the hadamard
  MZI transfer matrix,
* ensemble averages over a generated pulse sequence.

Two g2 normalizations are first-class:

* ``"derived"``: <I_A I_B> / (<I_A> <I_B>) over the equal-weight branch
  ensemble, which at quadrature equals 1 - sin^2(phi);
* ``"paper"``: the published curve (1/2)(1 - sin^2(phi)), i.e. the derived
  ratio times 1/2.  The constant factor between the two is an audit output,
  not something this module reconciles.

Finite source bandwidth dephases the basis phase; ``dephase`` averages the
sin(basis) modulation term over a Gaussian detuning spectrum by fixed-order
Gauss-Hermite quadrature.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .modulation import BasisBranch, PulseSequence
from .optics import HADAMARD, TwoPortField, apply, intensity, mzi_transfer

PAPER = "paper"
DERIVED = "derived"
MODES = (PAPER, DERIVED)

CLOSED_FORM = "closed_form"
MATRIX = "matrix"
ENGINES = (CLOSED_FORM, MATRIX)

_SQRT2 = math.sqrt(2.0)
# Mean intensities below this are reported as undefined g2 points.
_MEAN_FLOOR = 1e-300


@dataclass(frozen=True)
class IntensityPair:
    """Output intensities (I_A, I_B) in units of I0."""

    i_a: float
    i_b: float


@dataclass(frozen=True)
class SpectrumModel:
    """Source detuning spectrum: a delta function or a Gaussian of std sigma.

    ``quadrature_points`` sets the fixed Gauss-Hermite order used for the
    Gaussian average; it must be odd (so the nominal detuning is a node) and
    at least 11.
    """

    kind: str = "delta"
    sigma: float = 0.0
    quadrature_points: int = 41

    def __post_init__(self) -> None:
        if self.kind not in ("delta", "gaussian"):
            raise ValueError(f"unknown spectrum kind: {self.kind!r}")
        if self.kind == "delta" and self.sigma != 0.0:
            raise ValueError("delta spectrum requires sigma = 0")
        if self.kind == "gaussian" and not self.sigma > 0.0:
            raise ValueError("gaussian spectrum requires sigma > 0")
        if self.quadrature_points < 11 or self.quadrature_points % 2 == 0:
            raise ValueError(
                f"quadrature_points must be odd and >= 11, got {self.quadrature_points}"
            )

    @classmethod
    def from_sigma(cls, sigma: float, quadrature_points: int = 41) -> "SpectrumModel":
        if sigma == 0.0:
            return cls("delta", 0.0, quadrature_points)
        return cls("gaussian", sigma, quadrature_points)


@dataclass
class CorrelationCurve:
    """Sampled g2(phi) with the per-point ensemble means that produced it.

    ``g2`` holds NaN at points where the normalization is undefined (zero
    mean intensity); ``defined`` marks the valid points.  File writers emit
    explicit missing values at undefined points, never NaN.
    """

    phi: np.ndarray
    g2: np.ndarray
    mode: str
    provenance: str  # "closed", "ensemble", or "dephased"
    i_a_mean: np.ndarray = field(default=None)  # type: ignore[assignment]
    i_b_mean: np.ndarray = field(default=None)  # type: ignore[assignment]
    r_mean: np.ndarray = field(default=None)  # type: ignore[assignment]

    @property
    def defined(self) -> np.ndarray:
        return ~np.isnan(self.g2)

    def modulation_depth(self) -> float:
        vals = self.g2[self.defined]
        return float(np.max(vals) - np.min(vals))


def intensities_closed(
    phi: float, branch: BasisBranch, i0: float = 1.0
) -> IntensityPair:
    """Closed-form output intensities for one active branch:

        I_A = (I0/2)[1 - sin(phi) sin(branch.phase)]
        I_B = (I0/2)[1 + sin(phi) sin(branch.phase)]
    """
    m = math.sin(phi) * math.sin(branch.phase)
    return IntensityPair(0.5 * i0 * (1.0 - m), 0.5 * i0 * (1.0 + m))


def intensity_product(phi: float, branch: BasisBranch) -> float:
    """Normalized single-shot intensity product R = 1 - sin^2(phi) sin^2(phase).

    Identical for the zeta and zeta' branches (the square kills the sign);
    equal to 4 I_A I_B / I0^2 from the closed-form intensities.
    """
    m = math.sin(phi) * math.sin(branch.phase)
    return 1.0 - m * m


def engine_intensities(
    phi: float,
    basis_phase: float,
    active_port: int = 1,
    e0: complex = 1.0,
    convention: str = HADAMARD,
) -> IntensityPair:
    """Matrix-engine output intensities for one segment.

    The basis-phased field E0 e^{i basis_phase}/sqrt2 enters on
    ``active_port`` with E0/sqrt2 on the other port, and the pair is pushed
    through the full MZI transfer matrix.  With the hadamard convention the
    closed-form I_A appears on the output port opposite the active input
    port, so the pair is labeled (i_a, i_b) = (non-active output, active
    output); under that labeling the engine reproduces ``intensities_closed``
    exactly for either branch.
    """
    if active_port not in (1, 2):
        raise ValueError(f"active_port must be 1 or 2, got {active_port}")
    shifted = e0 * complex(math.cos(basis_phase), math.sin(basis_phase)) / _SQRT2
    plain = e0 / _SQRT2
    if active_port == 1:
        out = apply(mzi_transfer(phi, convention), TwoPortField(shifted, plain))
        return IntensityPair(intensity(out.port2), intensity(out.port1))
    out = apply(mzi_transfer(phi, convention), TwoPortField(plain, shifted))
    return IntensityPair(intensity(out.port1), intensity(out.port2))


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown normalization mode: {mode!r}")


def g2_closed(phi_grid: np.ndarray, mode: str = PAPER) -> CorrelationCurve:
    """Analytic g2(phi) at quadrature basis phase.

    Paper normalization gives (1/2)(1 - sin^2 phi); derived gives the
    branch-ensemble ratio 1 - sin^2 phi.
    """
    _check_mode(mode)
    phi = np.asarray(phi_grid, dtype=float)
    if phi.size == 0:
        raise ValueError("empty phi grid")
    s2 = np.sin(phi) ** 2
    r = 1.0 - s2
    g2 = 0.5 * r if mode == PAPER else r.copy()
    half = np.full_like(phi, 0.5)
    return CorrelationCurve(phi, g2, mode, "closed", half, half.copy(), r)


def g2_ensemble(
    seq: PulseSequence,
    phi_grid: np.ndarray,
    engine: str = CLOSED_FORM,
    mode: str = PAPER,
) -> CorrelationCurve:
    """g2(phi) from arithmetic means of I_A, I_B, and I_A I_B over a sequence.

    Segments sharing (basis phase, active port) are evaluated once and
    weighted by their count, which keeps the reduction bit-stable and exactly
    equal to the plain per-segment mean.  Points where a mean intensity
    vanishes are emitted as undefined (NaN in ``g2``, masked by ``defined``).
    """
    _check_mode(mode)
    if engine not in ENGINES:
        raise ValueError(f"unknown engine: {engine!r}")
    if len(seq) == 0:
        raise ValueError("empty pulse sequence")
    phi = np.asarray(phi_grid, dtype=float)
    if phi.size == 0:
        raise ValueError("empty phi grid")

    groups: dict[tuple[float, int], int] = {}
    branches: dict[tuple[float, int], BasisBranch] = {}
    for seg in seq.segments:
        key = (seg.branch.phase, seg.active_port)
        groups[key] = groups.get(key, 0) + 1
        branches[key] = seg.branch
    n = float(len(seq))

    ia_mean = np.zeros_like(phi)
    ib_mean = np.zeros_like(phi)
    prod_mean = np.zeros_like(phi)
    for key, count in sorted(groups.items()):
        basis_phase, active_port = key
        w = count / n
        for k, p in enumerate(phi):
            if engine == CLOSED_FORM:
                pair = intensities_closed(p, branches[key])
            else:
                pair = engine_intensities(p, basis_phase, active_port)
            ia_mean[k] += w * pair.i_a
            ib_mean[k] += w * pair.i_b
            prod_mean[k] += w * pair.i_a * pair.i_b

    g2 = np.full_like(phi, np.nan)
    ok = (ia_mean > _MEAN_FLOOR) & (ib_mean > _MEAN_FLOOR)
    g2[ok] = prod_mean[ok] / (ia_mean[ok] * ib_mean[ok])
    if mode == PAPER:
        g2 *= 0.5
    return CorrelationCurve(
        phi, g2, mode, "ensemble", ia_mean, ib_mean, 4.0 * prod_mean
    )


def _gauss_hermite_detunings(spectrum: SpectrumModel) -> tuple[np.ndarray, np.ndarray]:
    """Detuning samples and probability weights for the Gaussian spectrum."""
    nodes, weights = np.polynomial.hermite.hermgauss(spectrum.quadrature_points)
    return _SQRT2 * spectrum.sigma * nodes, weights / math.sqrt(math.pi)


def dephased_basis_sin(
    zeta_nominal: float, spectrum: SpectrumModel, period: float
) -> float:
    """<sin((Delta + delta) T / 2)> over the source detuning spectrum.

    The nominal basis phase is zeta_nominal = Delta T / 2; a detuning sample
    delta shifts it by delta * T / 2.
    """
    if spectrum.kind == "delta":
        return math.sin(zeta_nominal)
    deltas, weights = _gauss_hermite_detunings(spectrum)
    return float(np.sum(weights * np.sin(zeta_nominal + deltas * period / 2.0)))


def dephase(
    zeta_nominal: float,
    phi_grid: np.ndarray,
    spectrum: SpectrumModel,
    mode: str = PAPER,
    period: float = 1.0,
    path_imbalance: float = 0.0,
) -> CorrelationCurve:
    """g2(phi) with the sin(basis) modulation averaged over source bandwidth.

    The sin(phi) sin(zeta) modulation term is replaced by its spectral mean
    M(phi) = <sin(phi + delta * dL / c) sin(zeta_nominal + delta * T / 2)>,
    evaluated by Gauss-Hermite quadrature, and the curve becomes
    1 - M^2 (derived) or (1/2)(1 - M^2) (paper).  A delta spectrum
    reproduces the ideal closed-form curve exactly; ``path_imbalance`` is the
    optional arm-length mismatch dL/c in seconds (0 keeps phi sharp).
    """
    _check_mode(mode)
    phi = np.asarray(phi_grid, dtype=float)
    if phi.size == 0:
        raise ValueError("empty phi grid")
    if spectrum.kind == "delta":
        modulation = np.sin(phi) * math.sin(zeta_nominal)
    else:
        deltas, weights = _gauss_hermite_detunings(spectrum)
        sin_basis = np.sin(zeta_nominal + deltas * period / 2.0)
        # Outer product over (phi, detuning sample), then reduce the sample axis.
        sin_phi = np.sin(phi[:, None] + path_imbalance * deltas[None, :])
        modulation = np.sum(weights[None, :] * sin_phi * sin_basis[None, :], axis=1)
    r = 1.0 - modulation**2
    g2 = 0.5 * r if mode == PAPER else r.copy()
    half = np.full_like(phi, 0.5)
    return CorrelationCurve(phi, g2, mode, "dephased", half, half.copy(), r)


CURVE_CSV_HEADER = "phi,i_a_mean,i_b_mean,r_mean,g2"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_curve_csv(curve: CorrelationCurve, path: str | Path) -> None:
    """Write a curve as CSV; undefined g2 points get an empty field."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CURVE_CSV_HEADER.split(","))
        for k in range(curve.phi.size):
            g2 = "" if math.isnan(curve.g2[k]) else _fmt(curve.g2[k])
            writer.writerow(
                [
                    _fmt(curve.phi[k]),
                    _fmt(curve.i_a_mean[k]),
                    _fmt(curve.i_b_mean[k]),
                    _fmt(curve.r_mean[k]),
                    g2,
                ]
            )


def curve_to_json_dict(curve: CorrelationCurve) -> dict:
    """JSON-ready mapping; undefined g2 points become null."""
    return {
        "mode": curve.mode,
        "provenance": curve.provenance,
        "phi": [float(v) for v in curve.phi],
        "i_a_mean": [float(v) for v in curve.i_a_mean],
        "i_b_mean": [float(v) for v in curve.i_b_mean],
        "r_mean": [float(v) for v in curve.r_mean],
        "g2": [None if math.isnan(v) else float(v) for v in curve.g2],
    }


def write_curve_json(curve: CorrelationCurve, path: str | Path) -> None:
    Path(path).write_text(json.dumps(curve_to_json_dict(curve), indent=2) + "\n")
