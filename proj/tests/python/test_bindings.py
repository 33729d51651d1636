import math

import pytest

import orthotopo as ot

ANCHOR = ot.Geometry(1.0, 2.0, 1.5, 1.0)


def test_geometry_rejects_bad_lengths():
    with pytest.raises(ValueError):
        ot.Geometry(1.0, 0.0, 1.0, 1.0)


def test_forward_kinematics_at_zero():
    x, y, z = ot.forward_kinematics(ANCHOR, 0.0, 0.0, 0.0)
    assert (x, y) == pytest.approx((4.5, 1.0))
    assert abs(z) < 1e-15


def test_inverse_kinematics_round_trip():
    q = (0.3, -0.7, 1.1)
    p = ot.forward_kinematics(ANCHOR, *q)
    sols = ot.inverse_kinematics(ANCHOR, *p)
    assert len(sols) in (2, 4)
    assert any(all(abs(math.remainder(a - b, 2 * math.pi)) < 1e-6 for a, b in zip(s, q)) for s in sols)
    assert ot.inverse_kinematics(ANCHOR, 100.0, 0.0, 0.0) == []


def test_classify_anchor_both_modes():
    c = ot.classify(ANCHOR, mode="both")
    assert (c.domain, c.wt, c.n_cusps, c.n_nodes) == (2, "WT3", 4, 0)
    assert c.agreement == "agree"
    assert not c.boundary
    with pytest.raises(ValueError):
        ot.classify(ANCHOR, mode="guess")


def test_classify_on_e2_sets_boundary():
    assert ot.classify(ot.Geometry(1.0, 2.0, 2.0, 1.0)).boundary


def test_surface_values():
    assert ot.surface_value("C1", 2.0, 1.0) == pytest.approx(0.200811, abs=1e-6)
    assert ot.surface_value("C2", 2.0, 1.0) == pytest.approx(2.10819, abs=1e-5)
    with pytest.raises(ValueError):
        ot.surface_value("C3", 0.5, 1.0)
    with pytest.raises(ValueError):
        ot.surface_value("X9", 0.5, 1.0)


def test_features_and_aspects():
    f = ot.count_features(ANCHOR)
    assert (f["n_cusps"], f["n_nodes"]) == (4, 0)
    assert len(f["cusps"]) == 4
    assert ot.aspect_count(ANCHOR) == 2


def test_sweep_shape_and_labels():
    s = ot.sweep(1.0, resolution=40)
    assert len(s["labels"]) == 40 and len(s["labels"][0]) == 40
    assert s["stats"]["total_cells"] == 1600
    assert set(s["stats"]["regions"]) == {f"WT{k}" for k in range(1, 10)}


def test_verify_small_run_passes():
    suites = ot.verify(n=20, seed=3)
    assert [s["suite"] for s in suites] == [
        "det_ratio",
        "round_trip",
        "branch_residuals",
        "oracle_agreement",
        "non_separation",
    ]
    assert all(s["passed"] for s in suites)
