"""Exact-arithmetic kernel: polynomials, rational functions, series,
binomial products, and the q -> 1 limit."""

import random
from fractions import Fraction

from heiszeta.exact import (CycloProduct, MultiPoly, RatFunc, TSeries,
                            eps_expand, eps_topological, parse_poly,
                            parse_ratfunc, rf_equal, rf_series)

VARS = ["q", "t", "a"]


def random_poly(rng, nterms=4, maxexp=3):
    p = MultiPoly.zero()
    for _ in range(rng.randint(0, nterms)):
        mono = {v: rng.randint(0, maxexp) for v in VARS if rng.random() < 0.6}
        p = p + MultiPoly.monomial(mono, Fraction(rng.randint(-5, 5),
                                                  rng.randint(1, 4)))
    return p


def random_ratfunc(rng):
    num = random_poly(rng)
    den = MultiPoly.zero()
    while den.is_zero():
        den = random_poly(rng)
    return RatFunc(num, den)


def test_poly_ring_axioms():
    rng = random.Random(20260823)
    for _ in range(200):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + MultiPoly.zero() == a
        assert a * MultiPoly.const(1) == a
        assert (a - a).is_zero()


def test_ratfunc_field_axioms():
    rng = random.Random(97)
    for _ in range(200):
        f, g = random_ratfunc(rng), random_ratfunc(rng)
        assert rf_equal(f + g, g + f)
        assert rf_equal(f * g, g * f)
        assert rf_equal(f - f, RatFunc.const(0))
        if not g.is_zero():
            assert rf_equal((f / g) * g, f)
        h = random_ratfunc(rng)
        assert rf_equal(f * (g + h), f * g + f * h)


def test_poly_evaluate_matches_structure():
    rng = random.Random(5)
    pt = {v: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for v in VARS}
    for _ in range(50):
        a, b = random_poly(rng), random_poly(rng)
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
        assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


def test_parse_round_trip():
    f = parse_ratfunc("(1-t)*(1-q**2*t**2)/((1-q*t)*(1-q**3*t**2))")
    g = parse_ratfunc("(1 - t - q**2*t**2 + q**2*t**3)"
                      "/(1 - q*t - q**3*t**2 + q**4*t**3)")
    assert rf_equal(f, g)
    assert parse_poly("q**2 - 2*q + 1") == (MultiPoly.var("q")
                                            - MultiPoly.const(1)) ** 2


def test_rf_series_geometric():
    ser = rf_series(parse_ratfunc("1/(1-q*t)"), "t", 5)
    for i, c in enumerate(ser.coeffs):
        assert c == RatFunc.monomial({"q": i})


def test_rf_series_truncated_product_identity():
    # series(f) * den == num up to the truncation order
    rng = random.Random(11)
    for _ in range(20):
        num = random_poly(rng)
        den = MultiPoly.const(1) + MultiPoly.var("t") * random_poly(rng)
        f = RatFunc(num, den)
        ser = rf_series(f, "t", 6)
        back = rf_series(RatFunc.from_poly(num), "t", 6)
        dser = rf_series(RatFunc.from_poly(den), "t", 6)
        assert ser * dser == back


def test_tseries_arithmetic():
    one = TSeries("t", 1, (RatFunc.const(1), RatFunc.const(0)))
    s = TSeries("t", 1, (RatFunc.const(1), RatFunc.const(2)))
    assert (s + s)[1] == RatFunc.const(4)
    assert (s * s)[1] == RatFunc.const(4)
    assert s * one == s


def test_cyclo_product_expand_and_inverse():
    cp = CycloProduct(1, 0, 0, [(1, 1, 1), (2, 1, -1)])
    assert rf_equal(cp.expand(), parse_ratfunc("(1-q*t)/(1-q**2*t)"))
    assert rf_equal((cp * cp.inverse()).expand(), RatFunc.const(1))
    assert cp == CycloProduct.from_json(cp.to_json())


def test_cyclo_specialize_and_series():
    cp = CycloProduct(1, 0, 0, [(0, 1, 1), (1, 1, -1)])  # (1-t)/(1-q t)
    at2 = cp.specialize_q(Fraction(2))
    assert rf_equal(at2, parse_ratfunc("(1-t)/(1-2*t)"))
    ser = cp.series(3).coeffs
    q = RatFunc.var("q")
    assert ser[0] == RatFunc.const(1)
    assert rf_equal(ser[1], q - 1)
    assert rf_equal(ser[2], q * q - q)


def test_eps_topological_basic():
    # (1-t)/(1-q t) at q = 1 + eps, t = q^{-s}: limit s/(s-1)... times the
    # leading eps orders; known value for the n=1 local factor.
    cp = CycloProduct(1, 0, 0, [(0, 1, 1), (1, 1, -1)])
    top = eps_topological(cp)
    s = RatFunc.var("s")
    assert rf_equal(top, s / (s - 1))


def test_eps_expand_leading():
    # 1 - q = -eps exactly
    f = RatFunc.const(1) - RatFunc.var("q")
    e = eps_expand(f, order=2)
    assert e.start == 1
    assert rf_equal(e.leading(), RatFunc.const(-1))
