import pytest

from ordercalc import COUNTEREXAMPLES, run_all
from ordercalc.counterexamples import (
    disk_strict_inequality_not_open,
    finite_inversion_sigma_continuous,
    fkl_inverse_net_diverges,
    linf_inversion_not_sigma_continuous,
    shift_not_super_differentiable,
    swap_not_differentiable_c2,
)


def test_registry_names():
    assert list(COUNTEREXAMPLES) == [
        "shift", "swap", "fkl", "linf", "disk", "finite-contrast"]


def test_run_all_verdicts():
    reports = run_all()
    verdicts = {r.name: r.verdict for r in reports}
    assert verdicts == {
        "shift": "REPRODUCED",
        "swap": "REPRODUCED",
        "fkl": "REPRODUCED",
        "linf": "REPRODUCED",
        "disk": "REPRODUCED",
        "finite-contrast": "PASSED",
    }


def test_shift_witness_data():
    rep = shift_not_super_differentiable(witness_ns=(3, 10, 25))
    assert rep.verdict == "REPRODUCED"
    # the violating coordinate is always n - 1 and the residual is exact
    assert rep.data["violation_coordinates"] == (2, 9, 24)
    assert rep.data["residual_value"] == 2.0


def test_swap_witness_data():
    rep = swap_not_differentiable_c2()
    assert rep.verdict == "REPRODUCED"
    assert rep.data["violation_coordinate"] == 1
    assert rep.data["residual_value"] == 0.1


def test_fkl_escape_indices():
    rep = fkl_inverse_net_diverges()
    assert rep.verdict == "REPRODUCED"
    got = [(s["l"], s["index"]) for s in rep.data["samples"]]
    # l = ceil(tail) + l0 + 1 and the escape index clears both thresholds
    assert got == [(102, 3), (2, 2), (12, 5)]
    for s in rep.data["samples"]:
        assert s["value"] == s["l"]


def test_linf_escape_indices():
    rep = linf_inversion_not_sigma_continuous()
    assert rep.verdict == "REPRODUCED"
    for s in rep.data["samples"]:
        assert s["k"] >= s["after"]
        assert s["value"] == s["k"]
        assert s["index"] >= s["k"]


def test_finite_contrast_seeds():
    for seed in (7, 0, 123):
        rep = finite_inversion_sigma_continuous(seed=seed)
        assert rep.verdict == "PASSED"


def test_disk_samples():
    rep = disk_strict_inequality_not_open()
    assert rep.verdict == "REPRODUCED"
    for s in rep.data["samples"]:
        assert s["first_coordinate"] > 1.0


def test_report_text_shape():
    rep = disk_strict_inequality_not_open()
    text = rep.to_text()
    first, *rest = text.splitlines()
    assert first == "disk: REPRODUCED"
    assert all(line.startswith("  ") for line in rest)
    assert "FAILED" not in text
