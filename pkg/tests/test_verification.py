import pytest

from bwlat.errors import InvalidParameter
from bwlat.verification import (
    INVARIANT_ANCHORS,
    VerificationReport,
    verify_bw,
    verify_washtenaw,
    verify_ypsilanti,
)
from bwlat.washtenaw import TwoSpecialLattice
from bwlat.ypsilanti import desk_scale_ypsilanti


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_quick_suite_passes(d):
    report = verify_bw(d)
    assert report.passed, report.render()


def test_quick_report_lines():
    text = verify_bw(3).render()
    lines = text.splitlines()
    assert lines[0] == "SUBJECT: BW_3"
    assert "COUNT: 240" in lines
    assert "DUALITY_LEVEL: 0" in lines
    assert "DISCRIMINANT: 2^0" in lines
    assert lines[-1] == "RESULT: verified"


def test_discriminant_of_bw4_is_reported_as_power_of_two():
    assert verify_bw(4).values["discriminant"] == "2^8"


@pytest.mark.parametrize("d", [2, 3])
def test_full_suite_passes(d):
    report = verify_bw(d, "full")
    assert report.passed, report.render()
    assert any(c.name == "svp_agreement" for c in report.checks)


@pytest.mark.slow
def test_full_suite_bw4():
    assert verify_bw(4, "full").passed


def test_unknown_suite():
    with pytest.raises(InvalidParameter):
        verify_bw(3, "exhaustive")


def test_failed_check_names_its_anchor():
    report = VerificationReport("toy", "quick")
    report.check("count", 240, 239)
    text = report.render()
    assert "CHECK count: FAIL expected 240 got 239" in text
    assert f"ANCHOR count: {INVARIANT_ANCHORS['count']}" in text
    assert text.endswith("RESULT: failed\n")
    assert not report.passed


def test_washtenaw_report(washtenaw_bw3):
    report = verify_washtenaw(washtenaw_bw3)
    assert report.passed, report.render()
    assert report.values["index"] == "2^16"
    assert report.values["washtenaw_ratio"] == "1/2"


def test_washtenaw_report_needs_history(bw):
    with pytest.raises(InvalidParameter):
        verify_washtenaw(TwoSpecialLattice.from_bw(bw(3)))


def test_ypsilanti_report(desk_ypsilanti):
    report = verify_ypsilanti(desk_ypsilanti)
    assert report.passed, report.render()
    assert report.values["separation"] == "pass"


def test_negative_control_report():
    report = verify_ypsilanti(desk_scale_ypsilanti(seed=42, negative_control=True))
    assert report.passed
    assert report.values["separation"] == "fail"


def test_verify_prebuilt_lattice(bw):
    assert verify_bw(3, lattice=bw(3)).passed
    with pytest.raises(InvalidParameter):
        verify_bw(3, lattice=bw(2))
