import json
import math

import pytest

from mzsim import GridSpec, audit_consistency

EXPECTED_CHECKS = {
    "field_vs_intensity",
    "matrix_vs_intensity",
    "stage1_energy_defect",
    "g2_normalization_ratio",
}


@pytest.fixture(scope="module")
def report():
    return audit_consistency()


def test_every_check_present_exactly_once(report):
    names = [c.name for c in report.checks]
    assert sorted(names) == sorted(EXPECTED_CHECKS)


def test_field_layer_disagrees_by_half(report):
    # With zeta' = -zeta the closed-form field magnitude is constant at 1/2
    # while the intensity expression swings; worst case is |sin(phi) sin(zeta)| = 1.
    check = report["field_vs_intensity"]
    assert check.max_abs_discrepancy == pytest.approx(0.5, abs=1e-9)
    assert abs(math.sin(check.at["phi"]) * math.sin(check.at["zeta"])) == pytest.approx(
        1.0, abs=1e-9
    )


def test_matrix_engine_agrees(report):
    assert report["matrix_vs_intensity"].max_abs_discrepancy <= 1e-12


def test_stage1_energy_defect_peaks_at_zero_phase(report):
    check = report["stage1_energy_defect"]
    assert check.max_abs_discrepancy == pytest.approx(1.0, abs=1e-9)
    assert math.cos(check.at["zeta"]) ** 2 == pytest.approx(1.0, abs=1e-9)


def test_normalization_ratio_is_exactly_half(report):
    assert report["g2_normalization_ratio"].max_abs_discrepancy == 0.0


def test_json_export_schema(report, tmp_path):
    path = tmp_path / "audit.json"
    report.write_json(path)
    data = json.loads(path.read_text())
    assert isinstance(data, list) and len(data) == 4
    for entry in data:
        assert set(entry) == {"name", "max_abs_discrepancy", "at"}
        assert set(entry["at"]) == {"phi", "zeta"}


def test_custom_grid():
    report = audit_consistency(GridSpec(phi_points=21, zeta_points=21))
    assert report["matrix_vs_intensity"].max_abs_discrepancy <= 1e-12
    assert report["field_vs_intensity"].max_abs_discrepancy <= 0.5 + 1e-12


def test_unknown_check_name_raises(report):
    with pytest.raises(KeyError):
        report["energy_vs_vibes"]
