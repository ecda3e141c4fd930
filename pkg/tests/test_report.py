import json

import numpy as np
import pytest

from polyshadow.report import VerificationReport, case_passes
from polyshadow.verify import run_suite


def test_case_checks():
    assert case_passes(1.0, 1.0 + 1e-10, 1e-9)
    assert not case_passes(1.0, 1.1, 1e-9)
    assert case_passes(0.9, 1.0, 0.0, "le") and not case_passes(1.1, 1.0, 0.0, "le")
    assert case_passes(1.1, 1.0, 0.0, "ge")
    with pytest.raises(ValueError):
        case_passes(1, 1, 0, "near")


def test_pass_fraction():
    rep = VerificationReport("x", min_pass_fraction=0.5)
    rep.add({"i": 0}, 1.0, 1.0, 0.0)
    rep.add({"i": 1}, 1.0, 2.0, 0.0)
    assert rep.n_passed == 1 and rep.passed
    rep.add({"i": 2}, 1.0, 2.0, 0.0)
    assert not rep.passed


def test_children_gate_parent():
    parent = VerificationReport("p")
    child = VerificationReport("c")
    child.add({}, 0.0, 1.0, 0.1)
    parent.children.append(child)
    assert not parent.passed and parent.own_passed


def test_round_trip_with_arrays():
    rep = VerificationReport("r", seed=3)
    rep.add({"a": np.array([0.5, -0.5]), "n": np.int64(2)}, np.float64(1.0), 1.0, 1e-9)
    text = rep.to_json()
    back = VerificationReport.from_json(text)
    assert back.to_json() == text
    assert json.loads(text)["cases"][0]["inputs"]["a"] == [0.5, -0.5]


def test_suite_report_round_trip():
    rep = run_suite("width", n_range=(2, 4), trials=20, seed=5)
    assert rep.passed
    assert VerificationReport.from_json(rep.to_json()).to_json() == rep.to_json()
    assert rep.wall_time_s is None
    timed = run_suite("width", n_range=(2, 3), trials=5, seed=5, timing=True)
    assert timed.wall_time_s >= 0


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("bogus")
