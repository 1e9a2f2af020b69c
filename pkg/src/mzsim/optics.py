"""Two-port coherence optics.

Lossless 50/50 beam splitters, a single-arm phase element, their composition
into a Mach-Zehnder transfer matrix, and the closed-form output-field and
stage-1 bunching expressions used throughout the rest of the package.

Conventions
-----------
* Fields are dimensionless complex amplitudes normalized so that the source
  intensity is |E0|^2 = 1 by default (all published results are ratios of it).
* ``phase_arm(phi)`` places the interferometer phase on arm 1:
  diag(e^{i phi}, 1).
* Two beam-splitter conventions are supported:
  - ``"hadamard"``:  (1/sqrt2) [[1, 1], [1, -1]]
  - ``"symmetric"``: (1/sqrt2) [[1, i], [i, 1]]  (pi/2 reflection phase)
  The hadamard convention is the package default because it is the one that
  reproduces the closed-form intensity expressions exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

SYMMETRIC = "symmetric"
HADAMARD = "hadamard"
CONVENTIONS = (SYMMETRIC, HADAMARD)

_SQRT2 = math.sqrt(2.0)


def intensity(amplitude: complex) -> float:
    """|a|^2 of a single complex field amplitude."""
    return abs(amplitude) ** 2


@dataclass(frozen=True)
class TwoPortField:
    """Complex amplitude pair at the two ports of one optical stage."""

    port1: complex
    port2: complex

    def __post_init__(self) -> None:
        for name in ("port1", "port2"):
            a = complex(getattr(self, name))
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError(f"non-finite amplitude on {name}: {a!r}")

    @property
    def intensities(self) -> tuple[float, float]:
        return intensity(self.port1), intensity(self.port2)

    @property
    def total_intensity(self) -> float:
        return intensity(self.port1) + intensity(self.port2)

    def as_vector(self) -> np.ndarray:
        return np.array([self.port1, self.port2], dtype=complex)


def make_bs(convention: str = HADAMARD) -> np.ndarray:
    """50/50 beam-splitter matrix for the given convention.

    Both returned matrices are unitary; they differ by the phase between the
    transmitted and reflected fields (0 for hadamard, pi/2 for symmetric).
    """
    if convention == HADAMARD:
        return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / _SQRT2
    if convention == SYMMETRIC:
        return np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=complex) / _SQRT2
    raise ValueError(f"unknown beam-splitter convention: {convention!r}")


def phase_arm(phi: float) -> np.ndarray:
    """Phase element on arm 1: diag(e^{i phi}, 1)."""
    if not math.isfinite(phi):
        raise ValueError(f"non-finite phase: {phi!r}")
    return np.array([[cmath.exp(1j * phi), 0.0], [0.0, 1.0]], dtype=complex)


def mzi_transfer(phi: float, convention: str = HADAMARD) -> np.ndarray:
    """Full MZI transfer matrix: BS . phase_arm(phi) . BS."""
    bs = make_bs(convention)
    return bs @ phase_arm(phi) @ bs


def apply(matrix: np.ndarray, field: TwoPortField) -> TwoPortField:
    """Apply a two-port matrix to a field pair."""
    out = np.asarray(matrix, dtype=complex) @ field.as_vector()
    return TwoPortField(complex(out[0]), complex(out[1]))


def is_unitary(matrix: np.ndarray, tol: float = 1e-12) -> bool:
    m = np.asarray(matrix, dtype=complex)
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(2))) <= tol)


def eq_fields_closed(
    e0: complex, zeta: float, zeta_p: float, phi: float
) -> TwoPortField:
    """Closed-form MZI output fields for basis phases (zeta, zeta') and phase phi.

    Implemented verbatim, with no algebraic simplification:

        E_A = (E0 / (2 sqrt2)) [e^{i zeta} (1 - e^{i phi}) - e^{-i zeta'} (1 + e^{i phi})]
        E_B = (i E0 / (2 sqrt2)) [e^{i zeta} (1 + e^{i phi}) - e^{-i zeta'} (1 - e^{i phi})]

    The magnitudes conserve energy (|E_A|^2 + |E_B|^2 = |E0|^2) for every
    (zeta, zeta', phi); see the audit module for how this layer relates to the
    closed-form intensity expressions.
    """
    for name, v in (("zeta", zeta), ("zeta_p", zeta_p), ("phi", phi)):
        if not math.isfinite(v):
            raise ValueError(f"non-finite angle {name}: {v!r}")
    u = cmath.exp(1j * zeta)
    v = cmath.exp(-1j * zeta_p)
    p = cmath.exp(1j * phi)
    pref = e0 / (2.0 * _SQRT2)
    e_a = pref * (u * (1.0 - p) - v * (1.0 + p))
    e_b = 1j * pref * (u * (1.0 + p) - v * (1.0 - p))
    return TwoPortField(e_a, e_b)


def stage1_fields(e0: complex, basis_phase: float) -> TwoPortField:
    """Stage-1 bunched field pair for one basis phase, verbatim:

        E_1 = (E0 / sqrt2) [1 - cos(basis_phase)]
        E_2 = (E0 / sqrt2) [1 + cos(basis_phase)]

    As written these conserve energy only at quadrature basis phases; the
    defect |I1 + I2 - I0| = I0 cos^2(basis_phase) is an audited property,
    not a bug in this function.
    """
    if not math.isfinite(basis_phase):
        raise ValueError(f"non-finite basis phase: {basis_phase!r}")
    c = math.cos(basis_phase)
    pref = e0 / _SQRT2
    return TwoPortField(pref * (1.0 - c), pref * (1.0 + c))
