import csv
import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from sigtau import verify
from sigtau.verify import round_tol, trunc_tol


def test_tolerance_rules():
    assert round_tol("2.597907") == mpf("5e-7")
    assert round_tol("3") == mpf("0.5")
    assert trunc_tol("3.65278") == mpf("1e-5")


def test_claims_status():
    c = verify._Claims("x")
    c.close("a", mpf("1.0000004"), "1", "5e-7")
    c.close("b", mpf("1.000001"), "1", "5e-7")
    c.equal("c", [1, 2], [1, 2])
    c.true("d", False)
    c.skip("e", 3)
    assert [r.status for r in c.items] == ["pass", "fail", "pass", "fail", "skipped"]
    assert not verify.all_passed(c.items)
    assert verify.all_passed(c.items[:1] + c.items[-1:])
    assert c.items[0].claim_id == "x.a"


@given(st.floats(0.01, 10), st.floats(0, 10), st.floats(0, 10), st.floats(1, 10), st.floats(math.e, 50))
def test_log_concave_sign_random_coefficients(a1, a2, a3, a4, a5):
    us = np.geomspace(1e-6, 1e9, 2000)
    assert verify.log_concave_sign(a1, a2, a3, a4, a5, us)


def test_log_concave_grid_detects_convexity():
    ok, _ = verify.log_concave_on_grid(lambda u: mp.exp(u * u), 0.1, 10, 50)
    assert not ok
    ok, worst = verify.log_concave_on_grid(verify._F1, 1e-3, 1e3, 200)
    assert ok and worst < 0


def test_theorem1_all_pass():
    claims = verify.verify_theorem1()
    failed = [c.claim_id for c in claims if c.status != "pass"]
    assert not failed
    ids = {c.claim_id for c in claims}
    assert {"theorem1.loglog3_exceptions", "theorem1.ratio_max_value", "theorem1.c6"} <= ids


def test_small_inequalities_reduced_range():
    claims = verify.verify_small_inequalities(10**5)
    assert all(c.status == "pass" for c in claims)


def test_interpolation_check(seq):
    assert verify._interpolation_check(seq, 20, 500, seed=7) == 0


def test_report_formats_deterministic():
    claims = verify.verify_small_inequalities(10**4)
    a = verify.report_json(claims, timing=False)
    b = verify.report_json(verify.verify_small_inequalities(10**4), timing=False)
    assert a == b and a.endswith("\n")
    doc = json.loads(a)
    assert set(doc["claims"][0]) == {"id", "status", "computed", "expected", "provenance", "tolerance", "note"}
    text = verify.report_text(claims)
    assert text.endswith("passed, 0 failed, 0 skipped\n")


def test_hull_export(tmp_path):
    res = verify.export_hull(55440, tmp_path)
    assert res.vertices == [1, 2, 6, 12, 60, 120, 360, 2520, 5040, 55440]
    assert res.max_excess <= 1e-12
    with open(res.points_path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "log_tau", "log_sigma_over_n"] and len(rows) == 55441
    assert res.points_path.read_text(encoding="utf-8").endswith("\n")
    with open(res.vertices_path, encoding="utf-8") as fh:
        verts = list(csv.DictReader(fh))
    assert verts[-1]["n"] == "55440"
    with pytest.raises(ValueError):
        verify.export_hull(10**8, tmp_path)


@pytest.mark.slow
def test_theorem3_without_census():
    claims = verify.verify_theorem3(census=False)
    assert all(c.status != "fail" for c in claims)
    assert sum(c.status == "skipped" for c in claims) == 8


@pytest.mark.slow
def test_theorem2_pipeline():
    claims = verify.verify_theorem2(heavy=True)
    assert [c.claim_id for c in claims if c.status != "pass"] == []
    assert any(c.claim_id == "theorem2.rho_k2" for c in claims)
