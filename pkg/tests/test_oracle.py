"""Residue-enumeration oracle: exact coefficient recovery, stability, and
determinism under parallelism."""

from fractions import Fraction

import pytest

from heiszeta.catalog import closed_local
from heiszeta.oracle import (EnumConfig, cross_check, evaluate, series_coeffs,
                             stability_check)


def test_n1_coefficients():
    res = evaluate(EnumConfig(1, 2, 3), use_cache=False)
    assert res.stable()
    assert [res.zeta_coeffs[b] for b in range(4)] == [1, 1, 2, 4]
    assert res.slack == {}


def test_cross_check_closed_forms():
    for n, p, D in ((1, 2, 3), (1, 3, 3), (2, 2, 3)):
        cfg = EnumConfig(n, p, D)
        assert cross_check(cfg, closed_local(n).ratfunc, use_cache=False)


def test_series_coeffs_specialization():
    got = series_coeffs(closed_local(2).ratfunc, 2, 3)
    assert got == [Fraction(1), Fraction(1), Fraction(6), Fraction(8)]


def test_determinism_across_workers():
    a = evaluate(EnumConfig(2, 2, 3, workers=0), use_cache=False)
    b = evaluate(EnumConfig(2, 2, 3, workers=3), use_cache=False)
    assert a.zeta_coeffs == b.zeta_coeffs
    assert a.slack == b.slack
    assert a.unstable == b.unstable


def test_stability_check():
    assert stability_check(EnumConfig(2, 3, 3), use_cache=False)


def test_higher_level_agrees():
    base = evaluate(EnumConfig(2, 2, 3), use_cache=False)
    deep = evaluate(EnumConfig(2, 2, 3, level=5), use_cache=False)
    assert base.zeta_coeffs == deep.zeta_coeffs


def test_config_validation():
    with pytest.raises(ValueError):
        EnumConfig(1, 4, 3).validate()        # composite p
    with pytest.raises(ValueError):
        EnumConfig(1, 2, 3, level=3).validate()  # level <= degree


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("HEISZETA_CACHE", str(tmp_path))
    first = evaluate(EnumConfig(1, 2, 3))
    cached = evaluate(EnumConfig(1, 2, 3))
    assert first.zeta_coeffs == cached.zeta_coeffs
    assert any(tmp_path.rglob("*.json"))
