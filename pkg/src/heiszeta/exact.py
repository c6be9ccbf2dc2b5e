"""Exact arithmetic kernel: sparse multivariate polynomials over Q, rational
functions, truncated power series, and cyclotomic-style factored products.

Everything here is immutable and exact.  Rational-function equality is decided
by cross-multiplication; no multivariate GCD is ever computed.  Display keeps
whatever factored structure the caller built.
"""

from __future__ import annotations

import ast
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


class NonUnitDenominator(ValueError):
    """Series expansion impossible: degree-0 part of the denominator vanishes."""


class OrderMismatch(ValueError):
    """Numerator and denominator epsilon-orders do not cancel."""


class InsufficientOrder(ValueError):
    """Requested epsilon truncation too small to determine the result."""


Monomial = tuple[tuple[str, int], ...]  # sorted, exponents > 0


def _mono(d: Mapping[str, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in d.items() if e != 0))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return _mono(d)


class MultiPoly:
    """Sparse multivariate polynomial with Fraction coefficients and
    non-negative integer exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    if any(e < 0 for _, e in m):
                        raise ValueError("negative exponent in MultiPoly")
                    t[m] = Fraction(c)
        self.terms: dict[Monomial, Fraction] = t

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def const(c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly({(): c} if c else {})

    @staticmethod
    def var(name: str, exp: int = 1) -> "MultiPoly":
        if exp == 0:
            return MultiPoly.const(1)
        return MultiPoly({((name, exp),): Fraction(1)})

    @staticmethod
    def monomial(d: Mapping[str, int], coeff=1) -> "MultiPoly":
        c = Fraction(coeff)
        return MultiPoly({_mono(d): c} if c else {})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def degree_in(self, var: str) -> int:
        d = 0
        for m in self.terms:
            d = max(d, dict(m).get(var, 0))
        return d

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = _as_poly(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            nc = t.get(m, Fraction(0)) + c
            if nc:
                t[m] = nc
            elif m in t:
                del t[m]
        out = MultiPoly.__new__(MultiPoly)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        other = _as_poly(other)
        t: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                nc = t.get(m, Fraction(0)) + c1 * c2
                if nc:
                    t[m] = nc
                elif m in t:
                    del t[m]
        out = MultiPoly.__new__(MultiPoly)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of MultiPoly; use RatFunc")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for var, e in m:
                v *= Fraction(values[var]) ** e
            total += v
        return total

    def subs(self, values: Mapping[str, "RatFunc | MultiPoly | int"]) -> "RatFunc":
        """Substitute rational functions for variables; exact."""
        result = RatFunc.const(0)
        for m, c in self.terms.items():
            term = RatFunc.const(c)
            for var, e in m:
                if var in values:
                    term = term * (_as_ratfunc(values[var]) ** e)
                else:
                    term = term * RatFunc.from_poly(MultiPoly.var(var, e))
            result = result + term
        return result

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term (zero poly: empty)."""
        if not self.terms:
            return ()
        content: dict[str, int] | None = None
        for m in self.terms:
            d = dict(m)
            if content is None:
                content = d
            else:
                content = {v: min(e, d.get(v, 0)) for v, e in content.items()}
            if not content:
                break
        return _mono(content or {})

    def div_monomial(self, m: Monomial) -> "MultiPoly":
        inv = {v: -e for v, e in m}
        t = {}
        for mm, c in self.terms.items():
            d = dict(mm)
            for v, e in inv.items():
                d[v] = d.get(v, 0) + e
                if d[v] < 0:
                    raise ValueError("monomial does not divide polynomial")
            t[_mono(d)] = c
        return MultiPoly(t)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Return self / divisor if the division is exact, else None."""
        if divisor.is_zero():
            return None
        if self.is_zero():
            return MultiPoly.zero()
        order = sorted(self.variables() | divisor.variables())

        def key(m: Monomial):
            d = dict(m)
            return tuple(d.get(v, 0) for v in order)

        lead_d = max(divisor.terms, key=key)
        lead_dc = divisor.terms[lead_d]
        rem = self
        quo = MultiPoly.zero()
        while not rem.is_zero():
            lead_r = max(rem.terms, key=key)
            diff = dict(lead_r)
            for v, e in lead_d:
                diff[v] = diff.get(v, 0) - e
                if diff[v] < 0:
                    return None
            qterm = MultiPoly.monomial(diff, rem.terms[lead_r] / lead_dc)
            quo = quo + qterm
            rem = rem - qterm * divisor
        return quo

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """View as polynomial in `var` with MultiPoly coefficients."""
        out: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(var, 0)
            out.setdefault(e, {})[_mono(d)] = c
        return {e: MultiPoly(t) for e, t in out.items()}

    # -- display / serialization -----------------------------------------

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            factors = []
            if c != 1 or not m:
                factors.append(str(c))
            for v, e in m:
                factors.append(v if e == 1 else f"{v}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [
            [dict(m), f"{c.numerator}/{c.denominator}"]
            for m, c in sorted(self.terms.items())
        ]

    @staticmethod
    def from_json(data: list) -> "MultiPoly":
        t = {}
        for m, c in data:
            t[_mono(m)] = Fraction(c)
        return MultiPoly(t)


def _as_poly(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.const(x)
    raise TypeError(f"cannot coerce {x!r} to MultiPoly")


class RatFunc:
    """Quotient of two MultiPoly.  Normalized only by rational content and a
    common monomial factor; equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in RatFunc")
        if num.is_zero():
            den = MultiPoly.const(1)
        else:
            # strip common monomial factor
            cn, cd = num.monomial_content(), den.monomial_content()
            common = _mono({v: min(dict(cn).get(v, 0), dict(cd).get(v, 0))
                            for v in dict(cn)})
            if common:
                num = num.div_monomial(common)
                den = den.div_monomial(common)
            # normalize rational content of den (make some coefficient 1)
            pivot = den.terms[min(den.terms)]
            if pivot != 1:
                inv = 1 / pivot
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(MultiPoly.const(c), MultiPoly.const(1))

    @staticmethod
    def from_poly(p: MultiPoly) -> "RatFunc":
        return RatFunc(p, MultiPoly.const(1))

    @staticmethod
    def var(name: str) -> "RatFunc":
        return RatFunc.from_poly(MultiPoly.var(name))

    @staticmethod
    def monomial(d: Mapping[str, int], coeff=1) -> "RatFunc":
        """Laurent monomial: negative exponents go to the denominator."""
        num = {v: e for v, e in d.items() if e > 0}
        den = {v: -e for v, e in d.items() if e < 0}
        return RatFunc(MultiPoly.monomial(num, coeff), MultiPoly.monomial(den))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other):
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = _as_ratfunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return rf_equal(self, other)

    def __hash__(self):
        raise TypeError("RatFunc is not hashable (equality is semantic)")

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(values) / d

    def subs(self, values: Mapping[str, "RatFunc | MultiPoly | int"]) -> "RatFunc":
        return self.num.subs(values) / self.den.subs(values)

    def constant_value(self) -> Fraction:
        if not (self.num.is_constant() and self.den.is_constant()):
            raise ValueError("RatFunc is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def __repr__(self):
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data: dict) -> "RatFunc":
        return RatFunc(MultiPoly.from_json(data["num"]),
                       MultiPoly.from_json(data["den"]))


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, MultiPoly):
        return RatFunc.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    raise TypeError(f"cannot coerce {x!r} to RatFunc")


def rf_equal(f: RatFunc, g: RatFunc) -> bool:
    """Cross-multiplication equality test; no GCDs."""
    return (f.num * g.den - g.num * f.den).is_zero()


@dataclass(frozen=True)
class TSeries:
    """Truncated power series in one distinguished variable with RatFunc
    coefficients in the remaining variables."""

    dist_var: str
    degree_cap: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree_cap + 1:
            raise ValueError("coefficient list must have degree_cap + 1 entries")

    def __getitem__(self, i: int) -> RatFunc:
        return self.coeffs[i]

    def __add__(self, other: "TSeries") -> "TSeries":
        cap = min(self.degree_cap, other.degree_cap)
        return TSeries(self.dist_var, cap,
                       tuple(self.coeffs[i] + other.coeffs[i] for i in range(cap + 1)))

    def __mul__(self, other: "TSeries") -> "TSeries":
        cap = min(self.degree_cap, other.degree_cap)
        out = []
        for k in range(cap + 1):
            acc = RatFunc.const(0)
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return TSeries(self.dist_var, cap, tuple(out))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return (self.dist_var == other.dist_var
                and self.degree_cap == other.degree_cap
                and all(rf_equal(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def constant_values(self) -> list[Fraction]:
        return [c.constant_value() for c in self.coeffs]


def rf_series(f: RatFunc, var: str = "t", degree_cap: int = 8) -> TSeries:
    """Expand f as a power series in `var` up to degree_cap.

    The denominator, viewed in `var`, must have an invertible degree-0 part
    after a pure power of `var` common to numerator and denominator is
    cancelled; otherwise NonUnitDenominator is raised.
    """
    den_c = f.den.coeffs_in(var)
    num_c = f.num.coeffs_in(var)
    kd = min(den_c) if den_c else 0
    kn = min(num_c) if num_c else kd
    if f.num.is_zero():
        return TSeries(var, degree_cap, tuple(RatFunc.const(0)
                                              for _ in range(degree_cap + 1)))
    if kd > kn:
        raise NonUnitDenominator(
            f"denominator divisible by {var}^{kd} but numerator only by {var}^{kn}")
    den_c = {e - kd: p for e, p in den_c.items()}
    num_c = {e - kd: p for e, p in num_c.items()}
    d0 = den_c.get(0, MultiPoly.zero())
    if d0.is_zero():
        raise NonUnitDenominator("degree-0 part of denominator vanishes")
    coeffs: list[RatFunc] = []
    for i in range(degree_cap + 1):
        acc = RatFunc.from_poly(num_c.get(i, MultiPoly.zero()))
        for j in range(1, i + 1):
            dj = den_c.get(j)
            if dj is not None:
                acc = acc - RatFunc.from_poly(dj) * coeffs[i - j]
        coeffs.append(acc / RatFunc.from_poly(d0))
    return TSeries(var, degree_cap, tuple(coeffs))


class CycloProduct:
    """Signed monomial unit in q, t times a product of factors (1 - q^a t^b)^e.

    q-exponents a may be negative; t-exponents b are >= 0; zero-power factors
    are dropped and identical (a, b) pairs merged.
    """

    __slots__ = ("coeff", "qexp", "texp", "factors")

    def __init__(self, coeff=1, qexp: int = 0, texp: int = 0,
                 factors: Iterable[tuple[int, int, int]] = ()):
        merged: dict[tuple[int, int], int] = {}
        for a, b, e in factors:
            if b < 0:
                raise ValueError("negative t-exponent in CycloProduct factor")
            merged[(a, b)] = merged.get((a, b), 0) + e
        self.coeff = Fraction(coeff)
        self.qexp = int(qexp)
        self.texp = int(texp)
        self.factors = tuple(sorted((a, b, e) for (a, b), e in merged.items() if e))

    @staticmethod
    def one() -> "CycloProduct":
        return CycloProduct()

    def __mul__(self, other: "CycloProduct") -> "CycloProduct":
        return CycloProduct(self.coeff * other.coeff,
                            self.qexp + other.qexp,
                            self.texp + other.texp,
                            self.factors + other.factors)

    def inverse(self) -> "CycloProduct":
        return CycloProduct(1 / self.coeff, -self.qexp, -self.texp,
                            tuple((a, b, -e) for a, b, e in self.factors))

    def expand(self) -> RatFunc:
        """Multiply everything out into a single RatFunc in q, t."""
        out = RatFunc.monomial({"q": self.qexp, "t": self.texp}, self.coeff)
        for a, b, e in self.factors:
            base = RatFunc.const(1) - RatFunc.monomial({"q": a, "t": b})
            out = out * base ** e
        return out

    def specialize_q(self, q: Fraction) -> RatFunc:
        """Substitute a numeric q, leaving a RatFunc in t."""
        out = RatFunc.monomial({"t": self.texp}, self.coeff * Fraction(q) ** self.qexp)
        for a, b, e in self.factors:
            base = RatFunc.const(1) - RatFunc.monomial({"t": b}, Fraction(q) ** a)
            out = out * base ** e
        return out

    def series(self, degree_cap: int) -> TSeries:
        return rf_series(self.expand(), "t", degree_cap)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloProduct):
            return NotImplemented
        return (self.coeff == other.coeff and self.qexp == other.qexp
                and self.texp == other.texp and self.factors == other.factors)

    def __repr__(self):
        head = []
        if self.coeff != 1:
            head.append(str(self.coeff))
        if self.qexp:
            head.append(f"q^{self.qexp}")
        if self.texp:
            head.append(f"t^{self.texp}")
        parts = ["*".join(head)] if head else []
        for a, b, e in self.factors:
            mono = "*".join(s for s in (f"q^{a}" if a else "",
                                        f"t^{b}" if b else "") if s) or "1"
            f = f"(1-{mono})"
            parts.append(f if e == 1 else f"{f}^{e}")
        return "*".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {"unit": {"coeff": f"{self.coeff.numerator}/{self.coeff.denominator}",
                         "q": self.qexp, "t": self.texp},
                "factors": [[a, b, e] for a, b, e in self.factors]}

    @staticmethod
    def from_json(data: dict) -> "CycloProduct":
        u = data["unit"]
        return CycloProduct(Fraction(u["coeff"]), u["q"], u["t"],
                            [tuple(f) for f in data["factors"]])


def eps_topological(cp: CycloProduct) -> RatFunc:
    """Leading coefficient ratio of cp under q = 1+eps, t = (1+eps)^(-s).

    Each factor (1 - q^a t^b)^e contributes (b*s - a)^e; the epsilon orders of
    numerator and denominator must cancel (sum of factor exponents is zero).
    """
    if sum(e for _, _, e in cp.factors) != 0:
        raise OrderMismatch("factor exponents do not sum to zero")
    if cp.coeff != 1:
        raise OrderMismatch("unit coefficient must evaluate to 1 at q=t=1")
    s = MultiPoly.var("s")
    out = RatFunc.const(1)
    for a, b, e in cp.factors:
        out = out * RatFunc.from_poly(s * b - MultiPoly.const(a)) ** e
    return out


@dataclass(frozen=True)
class EpsExpansion:
    """Truncated expansion c_start * eps^start + ... with RatFunc-in-s coeffs."""

    start: int
    coeffs: tuple  # RatFunc in s, index i is the eps^(start+i) coefficient

    def leading(self) -> RatFunc:
        return self.coeffs[0]


def _binom_poly(z: MultiPoly, k: int) -> MultiPoly:
    """Generalized binomial coefficient C(z, k) as a polynomial in s."""
    out = MultiPoly.const(Fraction(1, math.factorial(k)))
    for i in range(k):
        out = out * (z - MultiPoly.const(i))
    return out


def _eps_poly(p: MultiPoly, order: int) -> list[MultiPoly]:
    """Expand a polynomial in q, t under q = 1+eps, t = (1+eps)^(-s), as
    coefficients (polynomials in s) of eps^0..eps^order."""
    out = [MultiPoly.zero() for _ in range(order + 1)]
    s = MultiPoly.var("s")
    for m, c in p.terms.items():
        d = dict(m)
        extra = {v: e for v, e in d.items() if v not in ("q", "t")}
        if extra:
            raise ValueError(f"eps expansion limited to q,t; found {extra}")
        z = MultiPoly.const(d.get("q", 0)) - s * d.get("t", 0)
        for k in range(order + 1):
            out[k] = out[k] + _binom_poly(z, k) * c
    return out


def eps_expand(f: RatFunc, order: int = 3) -> EpsExpansion:
    """Expand a RatFunc in q, t as a truncated series in eps = q - 1 with
    t = q^(-s), coefficients rational in s."""
    work = order + f.num.total_degree() + f.den.total_degree() + 1
    num = _eps_poly(f.num, work)
    den = _eps_poly(f.den, work)

    def lowest(cs):
        for i, c in enumerate(cs):
            if not c.is_zero():
                return i
        return None

    kn, kd = lowest(num), lowest(den)
    if kn is None or kd is None or kn > work - order or kd > work - order:
        raise InsufficientOrder("expansion vanishes to the requested order")
    num = num[kn:kn + order + 1]
    den = den[kd:kd + order + 1]
    coeffs: list[RatFunc] = []
    d0 = RatFunc.from_poly(den[0])
    for i in range(order + 1):
        acc = RatFunc.from_poly(num[i]) if i < len(num) else RatFunc.const(0)
        for j in range(1, i + 1):
            if j < len(den):
                acc = acc - RatFunc.from_poly(den[j]) * coeffs[i - j]
        coeffs.append(acc / d0)
    return EpsExpansion(kn - kd, tuple(coeffs))


# -- expression parsing ---------------------------------------------------

_ALLOWED_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant,
                  ast.Name, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow,
                  ast.USub, ast.UAdd, ast.Load)


def parse_ratfunc(text: str) -> RatFunc:
    """Parse an arithmetic expression (Python syntax, `**` powers) into a
    RatFunc; bare names become variables."""
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ValueError(f"disallowed syntax in expression: {ast.dump(node)}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int):
                raise ValueError("only integer literals allowed")
            return RatFunc.const(node.value)
        if isinstance(node, ast.Name):
            return RatFunc.var(node.id)
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** (sign * exp.value)
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ValueError("unsupported expression node")

    return ev(tree)


def parse_poly(text: str) -> MultiPoly:
    rf = parse_ratfunc(text)
    if not rf.den.is_constant():
        raise ValueError(f"expression {text!r} is not polynomial")
    return rf.num * (1 / rf.den.constant_value())


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
