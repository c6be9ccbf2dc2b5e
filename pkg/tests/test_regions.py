"""Region calculus: steps, splits, finite-model partition checks, and the
scripted derivations."""

import pytest

from heiszeta.exact import parse_ratfunc, rf_equal
from heiszeta.heisenberg import build_integral
from heiszeta.regions import (RegionIntegral, UnitCheckFailed, apply,
                              check_partition, leaf_value, run_script,
                              step_assert_unit, step_substitute)


def n1_region():
    return RegionIntegral.from_integral(build_integral(1))


def test_wn_split_partition_model():
    region = n1_region()
    step = {"kind": "wn-split", "vars": ["y"]}
    assert check_partition(step, region, p=2, N=3)
    assert check_partition(step, region, p=3, N=2)


def test_val_split_partition_model():
    region = n1_region()
    step = {"kind": "val-split", "a": "u", "b": "y"}
    assert check_partition(step, region, p=2, N=3)
    # applying the split needs both variables in the ideal: arm 2 of the
    # n=2 wn-split provides one
    r2 = RegionIntegral.from_integral(build_integral(2))
    _, arm2 = apply({"kind": "wn-split", "vars": ["y", "x"]}, r2)
    arms = apply(step, arm2)
    assert len(arms) == 2


def test_apply_substitute_changes_domain():
    region = n1_region()
    out, = apply({"kind": "substitute", "old": "y", "mult": "u",
                  "new": "y1", "domain": "ring"}, region)
    assert out.domain("y1") == "ring"
    assert "y" not in out.domains()


def test_assert_unit_guard():
    region = n1_region()
    # y is a ring variable: not provably a unit
    with pytest.raises(UnitCheckFailed):
        step_assert_unit(region, "y")


def test_n1_direct_value():
    # the n=1 domain is already W_1, so the wn-split has a single arm; its
    # value plus the assembly rule must give the n=1 zeta
    region = n1_region()
    unit_arm, = apply({"kind": "wn-split", "vars": ["y"]}, region)
    value = leaf_value(unit_arm)
    qi = parse_ratfunc("1/(1-q**-1)")
    zeta = parse_ratfunc("1") + qi * value
    assert rf_equal(zeta, parse_ratfunc("(1-t)/(1-q*t)"))


def test_run_script_lemma22():
    rep = run_script("lemma2.2")
    assert rep.ok()
    names = [r.name for r in rep.rows]
    assert "I" in names or any("I" in n for n in names)


def test_run_script_n2_with_partitions():
    rep = run_script("n2", check_partitions=True)
    assert rep.ok()
    assert rep.partitions_ok
    assert rep.zeta_match
    expect = parse_ratfunc("(1-t)*(1-q**2*t**2)/((1-q*t)*(1-q**3*t**2))")
    assert rf_equal(rep.zeta, expect)


def test_run_script_n2_reports_typo_rows():
    rep = run_script("n2")
    status = {r.name: r.status for r in rep.rows}
    assert status["Z_22"] == "typo-adjudicated"
    # rows without a stored expectation carry match=None, never False
    assert all(r.match is not False for r in rep.rows)
    assert any(r.match for r in rep.rows)


def test_report_json_shape():
    rep = run_script("n2")
    data = rep.to_json()
    assert data["ok"] is True
    assert {"name", "status", "match"} <= set(data["rows"][0])
