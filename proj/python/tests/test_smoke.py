import math

import pytest

import rateregions as rr


def test_symmetric_network():
    s = rr.symmetric_network(6, 2, 1)
    assert s.h31 == pytest.approx(0.5)
    assert s.P1 == 6


def test_private_corner():
    s = rr.symmetric_network(6, 2, 1)
    p = rr.Split()
    p.var_11n = 6
    assert rr.closed_form("d1.T", s, p) == pytest.approx(math.log2(2.5))
    assert rr.eval_bound("d1.T", s, p) == pytest.approx(math.log2(2.5))


def test_templates_and_fm():
    assert "SUP_REGION" in rr.templates()
    text = rr.dump_template("HK_REGION")
    assert "2*R1 + R2" in text
    out = rr.fm("a + x <= 3\n-x <= 0\n", ["x"], False)
    assert "a <= 3" in out


def test_region_and_sweep():
    s = rr.symmetric_network(6, 2, 1)
    assert rr.region_at(s, rr.Split(), "sup") == [(0.0, 0.0)]
    res = rr.sweep(s, template="hk", units=2, refinements=0)
    assert res["metrics"]["max_r1"] > 1.0


def test_verify():
    assert "reductions" in rr.check_ids()
    assert rr.verify("binning")[0]["pass"]


def test_binning_families():
    assert sorted(rr.binning_families()) == sorted([("0", "1"), ("1", "0"), ("1", "1"), ("1", "2"), ("2", "1")])
