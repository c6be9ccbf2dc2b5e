"""Closed-form catalog: conjectured product, expansion identity, abscissa,
topological limits, Dirichlet coefficients."""

import math
from fractions import Fraction

import pytest

from heiszeta.catalog import (GlobalZeta, OutOfRange, abscissa, closed_local,
                              closed_matches_conjecture, conjectured_local,
                              conjectured_product, dirichlet_coeffs,
                              expansion_identity, topological)
from heiszeta.exact import parse_ratfunc, rf_equal, rf_series


def test_closed_matches_conjecture():
    for n in (1, 2, 3):
        assert closed_matches_conjecture(n)
    with pytest.raises(OutOfRange):
        closed_local(4)


def test_conjectured_product_shape():
    cp = conjectured_product(3)
    assert sorted(cp.factors) == [(0, 1, 1), (1, 1, -1), (2, 2, 1),
                                  (3, 2, -1), (4, 3, 1), (5, 3, -1)]


def test_expansion_identity_small():
    for n in (1, 2, 3, 4):
        assert expansion_identity(n)


def test_abscissa():
    for n in (1, 3, 10):
        assert abscissa(n) == 2


def test_topological_known_forms():
    s = "s"
    expect = {1: f"{s}/({s}-1)",
              2: f"2*{s}/(2*{s}-3)",
              3: f"2*{s}*(3*{s}-4)/((2*{s}-3)*(3*{s}-5))"}
    for n, form in expect.items():
        assert rf_equal(topological(n), parse_ratfunc(form))


def test_totient_coefficients():
    got = dirichlet_coeffs(1, 12)
    expect = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    for m, e in enumerate(expect, start=1):
        assert got[m] == e


def test_multiplicativity():
    for n in (1, 2):
        r = dirichlet_coeffs(n, 100)
        for a in range(2, 11):
            for b in range(2, 101 // a + 1):
                if math.gcd(a, b) == 1:
                    assert r[a * b] == r[a] * r[b], (n, a, b)


def test_r1_normalization_and_n2_r2():
    for n in (1, 2, 3, 4):
        assert dirichlet_coeffs(n, 1)[1] == 1
    # r_2 for n=2 over Q: t-coefficient of the n=2 closed form at q=2
    assert dirichlet_coeffs(2, 2)[2] == 1


def test_explicit_residue_data():
    # a "field" where 2 splits into two degree-1 primes and 3 is inert of
    # degree 2: local factor at 2 squares, at 3 lives in q = 9
    g = GlobalZeta(1, field={2: (1, 1), 3: (2,)})
    plain = GlobalZeta(1).euler_factor(2, 3)
    split = g.euler_factor(2, 3)
    conv = [sum(plain[j] * plain[k - j] for j in range(k + 1))
            for k in range(4)]
    assert split == conv
    at3 = g.euler_factor(3, 4)
    assert at3[1] == 0 and at3[2] == 8  # phi(9) = 8 at m = 3^2


def test_conjectured_series_nonnegative_integers():
    ser = rf_series(conjectured_local(4).ratfunc, "t", 5)
    vals = [c.evaluate({"q": Fraction(3)}) for c in ser.coeffs]
    assert all(v.denominator == 1 and v >= 0 for v in vals)
