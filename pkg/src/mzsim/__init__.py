"""Phase-basis-randomized Mach-Zehnder interferometer simulator."""

from .audit import AuditCheck, AuditReport, GridSpec, audit_consistency
from .correlation import (
    CLOSED_FORM,
    DERIVED,
    MATRIX,
    PAPER,
    CorrelationCurve,
    IntensityPair,
    SpectrumModel,
    dephase,
    dephased_basis_sin,
    engine_intensities,
    g2_closed,
    g2_ensemble,
    intensities_closed,
    intensity_product,
    write_curve_csv,
    write_curve_json,
)
from .modulation import (
    ALTERNATE,
    RANDOM,
    ZETA,
    ZETA_PRIME,
    BasisBranch,
    DetuningConfig,
    PulseSegment,
    PulseSequence,
    QuadratureResult,
    branch_pair,
    make_sequence,
    quadrature_check,
    write_sequence_csv,
    zeta_of,
)
from .optics import (
    CONVENTIONS,
    HADAMARD,
    SYMMETRIC,
    TwoPortField,
    apply,
    eq_fields_closed,
    intensity,
    is_unitary,
    make_bs,
    mzi_transfer,
    phase_arm,
    stage1_fields,
)

__version__ = "0.1.0"
