"""Catalog of representation zeta functions of the Heisenberg group scheme
over O[x]/(x^n): exact local closed forms for n <= 3, the conjectured local
product for general n, the subset-expansion identity, abscissa of
convergence, topological limits, and Dirichlet coefficients of the global
zeta function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import (CycloProduct, MultiPoly, RatFunc, eps_topological,
                    parse_ratfunc, rf_equal, rf_series)


class OutOfRange(ValueError):
    """Requested an exact closed form outside the computed range n <= 3."""


_CLOSED = {
    1: "(1-t)/(1-q*t)",
    2: "(1-t)*(1-q**2*t**2)/((1-q*t)*(1-q**3*t**2))",
    3: "(1-t)*(1-q**2*t**2)*(1-q**4*t**3)/"
       "((1-q*t)*(1-q**3*t**2)*(1-q**5*t**3))",
}


@dataclass(frozen=True)
class LocalZeta:
    """A local zeta function zeta_{H(o[x]/(x^n))}(s) in the variables q and
    t = q^{-s}; `source` records whether it is proven ('closed') or only
    conjectured."""

    n: int
    ratfunc: RatFunc
    source: str


def closed_local(n: int) -> LocalZeta:
    """The proven local zeta function; available for n <= 3 only."""
    if n not in _CLOSED:
        raise OutOfRange(f"no proven closed form for n = {n}")
    return LocalZeta(n, parse_ratfunc(_CLOSED[n]), "closed")


def conjectured_product(n: int) -> CycloProduct:
    """prod_{i=1..n} (1 - q^(2i-2) t^i) / (1 - q^(2i-1) t^i)."""
    if n < 1:
        raise ValueError("n must be positive")
    factors = []
    for i in range(1, n + 1):
        factors.append((2 * i - 2, i, 1))
        factors.append((2 * i - 1, i, -1))
    return CycloProduct(1, 0, 0, factors)


def conjectured_local(n: int) -> LocalZeta:
    return LocalZeta(n, conjectured_product(n).expand(), "conjectured")


def closed_matches_conjecture(n: int) -> bool:
    """For n <= 3 the proven closed form should equal the conjectured
    product exactly."""
    return rf_equal(closed_local(n).ratfunc, conjectured_local(n).ratfunc)


def expansion_identity(n: int) -> bool:
    """The subset expansion
    zeta_n = sum_{I subseteq {0..n-1}} (1-q^{-1})^{|I|}
             prod_{i in I} q^{2n-2i-1} t^{n-i} / (1 - q^{2n-2i-1} t^{n-i})
    against the conjectured product.

    The sum is accumulated as a polynomial numerator over the common
    denominator q^n prod_i (1 - m_i) — each subset contributes
    prod_{i in I} (q-1) m_i * prod_{i not in I} q (1 - m_i) — and the
    quotient is compared once at the end."""
    q = MultiPoly.var("q")
    one = MultiPoly.const(1)
    monos = [MultiPoly.monomial({"q": 2 * (n - i) - 1, "t": n - i})
             for i in range(n)]
    in_f = [(q - one) * m for m in monos]
    out_f = [q * (one - m) for m in monos]
    num = MultiPoly.zero()
    for r in range(n + 1):
        for subset in itertools.combinations(range(n), r):
            term = one
            for i in range(n):
                term = term * (in_f[i] if i in subset else out_f[i])
            num = num + term
    den = MultiPoly.var("q", n)
    for m in monos:
        den = den * (one - m)
    return rf_equal(RatFunc(num, den), conjectured_product(n).expand())


def abscissa(n: int) -> Fraction:
    """Abscissa of convergence of the (conjectured, proven for n <= 3) local
    zeta function: max (a+1)/b over denominator factors (1 - q^a t^b)."""
    best = None
    for a, b, e in conjectured_product(n).factors:
        if e < 0:
            cand = Fraction(a + 1, b)
            best = cand if best is None or cand > best else best
    assert best is not None
    return best


def topological(n: int) -> RatFunc:
    """Topological limit (constant term in q - 1): a rational function in s,
    prod_{i=1..n} (is - 2i + 2)/(is - 2i + 1)."""
    return eps_topological(conjectured_product(n))


# -- Dirichlet coefficients ----------------------------------------------


def _local_zeta(n: int) -> LocalZeta:
    return closed_local(n) if n in _CLOSED else conjectured_local(n)


def _series_at_q(rf: RatFunc, q: int, degree: int) -> list[Fraction]:
    ser = rf_series(rf, "t", degree)
    return [c.evaluate({"q": Fraction(q)}) for c in ser.coeffs]


def _primes_upto(m: int) -> list[int]:
    sieve = bytearray([1]) * (m + 1) if m >= 0 else bytearray()
    out = []
    for i in range(2, m + 1):
        if sieve[i]:
            out.append(i)
            for j in range(i * i, m + 1, i):
                sieve[j] = 0
    return out


@dataclass(frozen=True)
class GlobalZeta:
    """Global zeta function as an Euler product of local factors.

    field is None for the rationals; otherwise explicit residue data
    {rational prime: (f_1, f_2, ...)} listing the residue degrees of the
    primes above it (norms p^{f_i}).  Prime-splitting arithmetic is out of
    scope; the residue data must be supplied.
    """

    n: int
    field: dict | None = None

    def euler_factor(self, p: int, degree: int) -> list[Fraction]:
        """Coefficients a_{p,k} of the Euler factor at p as a series in
        p^{-s} up to p^{-degree*s}."""
        rf = _local_zeta(self.n).ratfunc
        if self.field is None:
            return _series_at_q(rf, p, degree)
        out = [Fraction(0)] * (degree + 1)
        out[0] = Fraction(1)
        for f in self.field.get(p, (1,)):
            loc = _series_at_q(rf, p ** f, degree // f if f <= degree else 0)
            new = [Fraction(0)] * (degree + 1)
            for k in range(degree + 1):
                for j, c in enumerate(loc):
                    if f * j > k:
                        break
                    new[k] += out[k - f * j] * c
            out = new
        return out

    def coefficients(self, count: int) -> dict[int, Fraction]:
        """Dirichlet coefficients r_m for 1 <= m <= count (multiplicative
        assembly over prime powers)."""
        import math
        factors = {}
        for p in _primes_upto(count):
            deg = int(math.log(count, p)) + 1
            factors[p] = self.euler_factor(p, deg)
        out = {1: Fraction(1)}
        for m in range(2, count + 1):
            r = Fraction(1)
            mm = m
            p = 2
            while mm > 1:
                if mm % p:
                    p += 1
                    continue
                k = 0
                while mm % p == 0:
                    mm //= p
                    k += 1
                r *= factors[p][k]
            out[m] = r
        return out


def dirichlet_coeffs(n: int, count: int,
                     field: dict | None = None) -> dict[int, Fraction]:
    return GlobalZeta(n, field).coefficients(count)
