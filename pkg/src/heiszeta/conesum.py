"""Closed-form resolution of lattice sums with min-of-linear-form exponents.

A ConeSum is a formal sum over integer points of a product of half-open
orthants (lower bound 0 or 1 per index variable), of terms

    scalar * prod_v  base_v ^ (linear form)  *  prod  base_v ^ (mult * min(forms))

subject to linear constraints >= 0.  Resolution proceeds by

  1. splitting every min into regions where one argument is the unique
     minimum (first-listed argument wins ties), and
  2. eliminating index variables by geometric summation, case-splitting on
     which lower/upper bound is active.

The independent oracle `enumerate_series` sums lattice points directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import MultiPoly, RatFunc, _as_ratfunc


class UnsupportedCone(ValueError):
    """No unit-coefficient variable available for elimination."""


class Divergent(ValueError):
    """The formal sum does not converge as a Laurent series."""


class CapTooLarge(ValueError):
    """Enumeration would exceed the configured point budget."""


@dataclass(frozen=True)
class LinForm:
    """Integer linear form  sum_i c_i * X_i + const  in the index variables."""

    coeffs: tuple[tuple[str, int], ...] = ()
    const: int = 0

    @staticmethod
    def make(coeffs: Mapping[str, int] | None = None, const: int = 0) -> "LinForm":
        d = {v: int(c) for v, c in (coeffs or {}).items() if c}
        return LinForm(tuple(sorted(d.items())), int(const))

    @staticmethod
    def var(name: str) -> "LinForm":
        return LinForm(((name, 1),), 0)

    def as_dict(self) -> dict[str, int]:
        return dict(self.coeffs)

    def __add__(self, other: "LinForm") -> "LinForm":
        d = self.as_dict()
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) + c
        return LinForm.make(d, self.const + other.const)

    def __sub__(self, other: "LinForm") -> "LinForm":
        return self + other.scale(-1)

    def scale(self, k: int) -> "LinForm":
        return LinForm.make({v: k * c for v, c in self.coeffs}, k * self.const)

    def shift(self, k: int) -> "LinForm":
        return LinForm(self.coeffs, self.const + k)

    def coeff(self, var: str) -> int:
        return self.as_dict().get(var, 0)

    def variables(self) -> set[str]:
        return {v for v, _ in self.coeffs}

    def evaluate(self, point: Mapping[str, int]) -> int:
        return self.const + sum(c * point[v] for v, c in self.coeffs)

    def substitute(self, var: str, form: "LinForm") -> "LinForm":
        """Replace var by the given form."""
        k = self.coeff(var)
        if k == 0:
            return self
        d = self.as_dict()
        del d[var]
        base = LinForm.make(d, self.const)
        return base + form.scale(k)

    def is_zero(self) -> bool:
        return not self.coeffs and self.const == 0

    def __str__(self):
        parts = [f"{'' if c == 1 else '-' if c == -1 else c}{v}"
                 for v, c in self.coeffs]
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class MinExponent:
    base_var: str
    mult: int
    args: tuple[LinForm, ...]


@dataclass(frozen=True)
class ConeTerm:
    scalar: RatFunc = field(default_factory=lambda: RatFunc.const(1))
    mono: tuple[tuple[str, LinForm], ...] = ()       # base var -> exponent form
    mins: tuple[MinExponent, ...] = ()
    lower: tuple[tuple[str, int], ...] = ()          # index var -> 0 or 1
    constraints: tuple[LinForm, ...] = ()            # each required >= 0

    @staticmethod
    def make(scalar=1, mono: Mapping[str, LinForm] | None = None,
             mins: Iterable[MinExponent] = (),
             lower: Mapping[str, int] | None = None,
             constraints: Iterable[LinForm] = ()) -> "ConeTerm":
        term = ConeTerm(_as_ratfunc(scalar),
                        tuple(sorted((mono or {}).items())),
                        tuple(mins),
                        tuple(sorted((lower or {}).items())),
                        tuple(constraints))
        declared = set(dict(term.lower))
        for f in term.all_forms():
            if not f.variables() <= declared:
                raise ValueError(f"undeclared index variable in {f}")
        return term

    def mono_dict(self) -> dict[str, LinForm]:
        return dict(self.mono)

    def all_forms(self) -> list[LinForm]:
        forms = [f for _, f in self.mono]
        for m in self.mins:
            forms.extend(m.args)
        forms.extend(self.constraints)
        return forms

    def index_vars(self) -> list[str]:
        return [v for v, _ in self.lower]


@dataclass(frozen=True)
class ConeSum:
    terms: tuple[ConeTerm, ...]

    @staticmethod
    def make(terms: Iterable[ConeTerm]) -> "ConeSum":
        return ConeSum(tuple(terms))

    def base_vars(self) -> set[str]:
        out = set()
        for t in self.terms:
            out |= {v for v, _ in t.mono}
            out |= {m.base_var for m in t.mins}
        return out


@dataclass(frozen=True)
class FactoredTerm:
    """scalar * coeff * prod base^num_mono / prod (1 - mu_i), mu Laurent monomials."""

    scalar: RatFunc
    coeff: Fraction
    num_mono: tuple[tuple[str, int], ...]
    den_factors: tuple[tuple[tuple[str, int], ...], ...]


# -- feasibility helpers --------------------------------------------------


def _lower_value(form: LinForm, lower: Mapping[str, int]) -> int | None:
    """Minimum of the form over the orthant, or None if unbounded below."""
    total = form.const
    for v, c in form.coeffs:
        if c < 0:
            return None
        total += c * lower[v]
    return total


def _upper_value(form: LinForm, lower: Mapping[str, int]) -> int | None:
    total = form.const
    for v, c in form.coeffs:
        if c > 0:
            return None
        total += c * lower[v]
    return total


def _normalize_constraint(form: LinForm) -> LinForm:
    """Divide out the gcd of the coefficients, flooring the constant:
    g*(sum a_i v_i) + c >= 0  iff  sum a_i v_i + floor(c/g) >= 0."""
    g = 0
    for _, c in form.coeffs:
        g = math.gcd(g, abs(c))
    if g <= 1:
        return form
    return LinForm.make({v: c // g for v, c in form.coeffs},
                        form.const // g)


def _add_constraint(term: ConeTerm, form: LinForm) -> ConeTerm | None:
    """Add a constraint, dropping it if redundant; None if infeasible."""
    form = _normalize_constraint(form)
    lower = dict(term.lower)
    lo = _lower_value(form, lower)
    if lo is not None and lo >= 0:
        return term
    hi = _upper_value(form, lower)
    if hi is not None and hi < 0:
        return None
    return replace(term, constraints=term.constraints + (form,))


# -- min splitting --------------------------------------------------------


def split_min_regions(args: Sequence[LinForm]) -> list[tuple[int, list[LinForm]]]:
    """Partition constraints for each region where args[r] is the minimum.

    Ties are broken in favour of the first-listed argument: region r asserts
    args[r] < args[j] for j < r and args[r] <= args[j] for j > r.
    """
    out = []
    for r in range(len(args)):
        cons = []
        for j in range(len(args)):
            if j == r:
                continue
            diff = args[j] - args[r]
            if j < r:
                diff = diff.shift(-1)   # strict: args[j] - args[r] - 1 >= 0
            cons.append(diff)
        out.append((r, cons))
    return out


def _split_one_min(term: ConeTerm) -> list[ConeTerm] | None:
    if not term.mins:
        return None
    m, rest = term.mins[0], term.mins[1:]
    out = []
    for r, cons in split_min_regions(m.args):
        mono = term.mono_dict()
        prev = mono.get(m.base_var, LinForm())
        mono[m.base_var] = prev + m.args[r].scale(m.mult)
        new = replace(term, mono=tuple(sorted(mono.items())), mins=rest)
        for c in cons:
            if new is None:
                break
            new = _add_constraint(new, c)
        if new is not None:
            out.append(new)
    return out


# -- variable elimination -------------------------------------------------


def _eligible_var(term: ConeTerm) -> str | None:
    for v in term.index_vars():
        if all(abs(c.coeff(v)) <= 1 for c in term.constraints):
            return v
    return None


def _bound_case_split(term: ConeTerm, bounds: list[LinForm],
                      pick_max: bool) -> list[tuple[ConeTerm, LinForm]]:
    """Split on which bound is active (max of lower bounds / min of uppers)."""
    out = []
    for r in range(len(bounds)):
        new: ConeTerm | None = term
        for j in range(len(bounds)):
            if j == r:
                continue
            diff = bounds[r] - bounds[j] if pick_max else bounds[j] - bounds[r]
            if j < r:
                diff = diff.shift(-1)
            if new is None:
                break
            new = _add_constraint(new, diff)
        if new is not None:
            out.append((new, bounds[r]))
    return out


def _eliminate(term: ConeTerm, acc: list[FactoredTerm],
               coeff: Fraction, den: tuple) -> None:
    if not term.lower:
        mono = tuple(sorted((v, f.const) for v, f in term.mono if f.const))
        acc.append(FactoredTerm(term.scalar, coeff, mono, den))
        return

    v = _eligible_var(term)
    if v is None:
        raise UnsupportedCone(
            f"no unit-coefficient variable among {term.index_vars()}")

    lower = dict(term.lower)
    lowers = [LinForm.make(const=lower[v])]
    uppers: list[LinForm] = []
    remaining = []
    for c in term.constraints:
        k = c.coeff(v)
        if k == 0:
            remaining.append(c)
            continue
        d = c.as_dict()
        del d[v]
        rest = LinForm.make(d, c.const)
        if k == 1:
            lowers.append(rest.scale(-1))     # v >= -rest
        else:
            uppers.append(rest)               # v <= rest

    del lower[v]
    base = replace(term, lower=tuple(sorted(lower.items())),
                   constraints=tuple(remaining))

    for t1, lo in (_bound_case_split(base, lowers, pick_max=True)
                   if len(lowers) > 1 else [(base, lowers[0])]):
        for t2, hi in (_bound_case_split(t1, uppers, pick_max=False)
                       if len(uppers) > 1 else [(t1, uppers[0] if uppers else None)]):
            ratio = _mono({bv: f.coeff(v) for bv, f in t2.mono})
            if hi is not None:
                t2 = _add_constraint(t2, (hi - lo).shift(1))  # sum nonempty
                if t2 is None:
                    continue
            if not ratio:
                raise Divergent(f"trivial ratio while eliminating {v}")

            def emit(t: ConeTerm, at: LinForm, sign: int):
                mono = {bv: f.substitute(v, at) for bv, f in t.mono}
                nt = replace(t, mono=tuple(sorted(mono.items())),
                             constraints=tuple(c.substitute(v, at)
                                               for c in t.constraints))
                # substituted constraints may need re-checking
                ok: ConeTerm | None = replace(nt, constraints=())
                for c in nt.constraints:
                    if ok is None:
                        break
                    ok = _add_constraint(ok, c)
                if ok is not None:
                    _eliminate(ok, acc, coeff * sign, den + (ratio,))

            emit(t2, lo, +1)
            if hi is not None:
                emit(t2, hi.shift(1), -1)


def _mono(d: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted((v, c) for v, c in d.items() if c))


# -- convergence ----------------------------------------------------------


def check_convergence(s: ConeSum) -> None:
    """Structural guard: every index variable must actually move some base
    exponent; otherwise the formal sum cannot converge as a Laurent series.
    (Genuinely divergent geometric directions are also caught at elimination
    time, when the ratio monomial degenerates to 1.)
    """
    for term in s.terms:
        for v in term.index_vars():
            moves = any(f.coeff(v) for _, f in term.mono)
            moves = moves or any(a.coeff(v) for m in term.mins for a in m.args)
            if not moves:
                raise Divergent(f"index variable {v} does not affect any exponent")


def positive_weight_vars(s: ConeSum) -> set[str]:
    """A set W of base variables, weighted 1, such that in every min-choice
    region every index variable has total weighted degree >= 1.  Used to bound
    enumeration boxes.  Raises Divergent if no such set exists."""
    base = sorted(s.base_vars())
    for size in range(len(base), 0, -1):
        for ws in itertools.combinations(base, size):
            wset = set(ws)
            if _weights_ok(s, wset):
                return wset
    raise Divergent("no positive grading found for the cone sum")


def _weights_ok(s: ConeSum, wset: set[str]) -> bool:
    return _weights_dict_ok(s, {v: 1 for v in wset})


def _weights_dict_ok(s: ConeSum, w: Mapping[str, int]) -> bool:
    for term in s.terms:
        for v in term.index_vars():
            total = sum(w.get(bv, 0) * f.coeff(v) for bv, f in term.mono)
            for m in term.mins:
                wv = w.get(m.base_var, 0)
                if wv:
                    total += wv * min(m.mult * a.coeff(v) for a in m.args)
            if total < 1:
                return False
    return True


def find_weights(s: ConeSum, factors: Iterable[tuple] = (),
                 max_weight: int = 3) -> dict[str, int]:
    """Nonnegative integer weights on the base variables under which every
    index variable has weighted degree >= 1 in every min-choice region and
    every given ratio monomial has weighted degree >= 1.  Some resolved
    sums need unequal weights (a ratio factor like a^-1 c forces
    w(c) > w(a)), so the search ranges over small integers, preferring the
    smallest total weight (tightest enumeration box)."""
    base = sorted(s.base_vars())
    factors = tuple(factors)
    best: dict[str, int] | None = None
    for combo in itertools.product(range(max_weight + 1), repeat=len(base)):
        if best is not None and sum(combo) >= sum(best.values()):
            continue
        w = dict(zip(base, combo))
        if not all(sum(w.get(v, 0) * e for v, e in mu) >= 1
                   for mu in factors):
            continue
        if _weights_dict_ok(s, w):
            best = w
    if best is None:
        raise Divergent("no positive grading found for the cone sum")
    return best


# -- public API -----------------------------------------------------------


def resolve_terms(s: ConeSum) -> list[FactoredTerm]:
    check_convergence(s)
    queue = list(s.terms)
    flat: list[ConeTerm] = []
    while queue:
        t = queue.pop()
        split = _split_one_min(t)
        if split is None:
            flat.append(t)
        else:
            queue.extend(split)
    acc: list[FactoredTerm] = []
    for t in flat:
        _eliminate(t, acc, Fraction(1), ())
    return acc


def sum_factored(terms: Sequence[FactoredTerm]) -> RatFunc:
    """Combine factored terms over a common denominator built from the
    multiset union of their binomial factors."""
    if not terms:
        return RatFunc.const(0)
    common: dict[tuple, int] = {}
    for t in terms:
        counts: dict[tuple, int] = {}
        for f in t.den_factors:
            counts[f] = counts.get(f, 0) + 1
        for f, c in counts.items():
            common[f] = max(common.get(f, 0), c)

    def binom(mu: tuple) -> RatFunc:
        return RatFunc.const(1) - RatFunc.monomial(dict(mu))

    total = RatFunc.const(0)
    for t in terms:
        counts: dict[tuple, int] = {}
        for f in t.den_factors:
            counts[f] = counts.get(f, 0) + 1
        part = t.scalar * RatFunc.monomial(dict(t.num_mono), t.coeff)
        for f, c in common.items():
            missing = c - counts.get(f, 0)
            if missing:
                part = part * binom(f) ** missing
        total = total + part

    den = RatFunc.const(1)
    for f, c in common.items():
        den = den * binom(f) ** c
    return total / den


def specialize_factored(terms: Sequence[FactoredTerm],
                        subs: Mapping[str, Mapping[str, int]],
                        ) -> list[FactoredTerm]:
    """Rewrite factored terms under a substitution sending each base variable
    to a Laurent monomial (given as an exponent mapping).  Denominator
    binomials stay binomials, so recombination via `sum_factored` remains
    factor-aware — much cheaper than substituting into the combined rational
    function."""

    def image(mono: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
        exps: dict[str, int] = {}
        for v, e in mono:
            for w, f in subs.get(v, {v: 1}).items():
                exps[w] = exps.get(w, 0) + e * f
        return _mono(exps)

    rf_subs = {v: RatFunc.monomial(dict(e)) for v, e in subs.items()}
    out: list[FactoredTerm] = []
    for t in terms:
        den: list[tuple[tuple[str, int], ...]] = []
        for f in t.den_factors:
            g = image(f)
            if not g:
                raise Divergent("denominator factor specializes to 1")
            den.append(g)
        scalar = t.scalar
        if not (scalar.num.is_constant() and scalar.den.is_constant()):
            scalar = scalar.subs(rf_subs)
        out.append(FactoredTerm(scalar, t.coeff, image(t.num_mono),
                                tuple(sorted(den))))
    return out


def resolve(s: ConeSum) -> RatFunc:
    """Closed form of the cone sum as a rational function."""
    return sum_factored(resolve_terms(s))


def enumerate_series(s: ConeSum, caps: Mapping[str, int],
                     point_budget: int = 2_000_000) -> dict[tuple, Fraction]:
    """Independent oracle: direct lattice-point enumeration.

    Returns a map from base-variable exponent vectors (ordered by sorted
    variable name over `caps`) to coefficients, keeping only monomials with
    every exponent in [-cap, cap].  Term scalars must be constants.
    """
    base = sorted(caps)
    weights = find_weights(s) if s.terms else {}
    bound = sum(w * caps[v] for v, w in weights.items())
    out: dict[tuple, Fraction] = {}
    for term in s.terms:
        scalar = term.scalar.constant_value()
        ivars = term.index_vars()
        lower = dict(term.lower)
        ranges = [range(lower[v], bound + 1) for v in ivars]
        size = 1
        for r in ranges:
            size *= len(r)
        if size > point_budget:
            raise CapTooLarge(f"enumeration needs {size} points")
        mono = term.mono_dict()
        for point_vals in itertools.product(*ranges):
            point = dict(zip(ivars, point_vals))
            if any(c.evaluate(point) < 0 for c in term.constraints):
                continue
            expo = {bv: f.evaluate(point) for bv, f in mono.items()}
            for m in term.mins:
                val = m.mult * min(a.evaluate(point) for a in m.args)
                expo[m.base_var] = expo.get(m.base_var, 0) + val
            if any(not -caps.get(v, 0) <= e <= caps.get(v, 0)
                   for v, e in expo.items() if e):
                continue
            key = tuple(expo.get(v, 0) for v in base)
            out[key] = out.get(key, Fraction(0)) + scalar
    return {k: v for k, v in out.items() if v}


def expand_to_box(terms: Sequence[FactoredTerm], caps: Mapping[str, int],
                  weights: "set[str] | Mapping[str, int]",
                  ) -> dict[tuple, Fraction]:
    """Expand factored terms as a multivariate series truncated to the same
    box used by enumerate_series.  Comparison currency for the oracle.
    `weights` is either a set of weight-1 variables or an integer weight
    map."""
    if isinstance(weights, (set, frozenset)):
        weights = {v: 1 for v in weights}
    base = sorted(caps)
    bound = sum(w * caps[v] for v, w in weights.items())

    def wdeg(expo: Mapping[str, int]) -> int:
        return sum(weights.get(v, 0) * e for v, e in expo.items())

    out: dict[tuple, Fraction] = {}
    for t in terms:
        scalar = t.scalar.constant_value() * t.coeff
        poly: dict[tuple, Fraction] = {_key(dict(t.num_mono), base): scalar}
        for mu in t.den_factors:
            mud = dict(mu)
            step = wdeg(mud)
            if step < 1:
                raise Divergent(f"factor {mu} has nonpositive weighted degree")
            powers = []
            k = 0
            while k * step <= 2 * bound:
                powers.append({v: k * e for v, e in mud.items()})
                k += 1
            new: dict[tuple, Fraction] = {}
            for key, c in poly.items():
                for pw in powers:
                    expo = {v: key[i] for i, v in enumerate(base)}
                    for v, e in pw.items():
                        expo[v] = expo.get(v, 0) + e
                    if wdeg(expo) > 2 * bound:
                        continue
                    nk = _key(expo, base)
                    nc = new.get(nk, Fraction(0)) + c
                    if nc:
                        new[nk] = nc
                    elif nk in new:
                        del new[nk]
            poly = new
        for key, c in poly.items():
            if any(not -caps[v] <= key[i] <= caps[v] for i, v in enumerate(base)):
                continue
            nc = out.get(key, Fraction(0)) + c
            if nc:
                out[key] = nc
            elif key in out:
                del out[key]
    return out


def _key(expo: Mapping[str, int], base: list[str]) -> tuple:
    return tuple(expo.get(v, 0) for v in base)


def series_matches_enumeration(s: ConeSum, caps: Mapping[str, int],
                               point_budget: int = 2_000_000) -> bool:
    """Dual-route check: resolved closed form vs direct enumeration."""
    terms = resolve_terms(s)
    weights = find_weights(s, (f for t in terms for f in t.den_factors))
    return (expand_to_box(terms, caps, weights)
            == enumerate_series(s, caps, point_budget))


def derive_variant(s: ConeSum) -> RatFunc:
    """Resolve one of the unstated companion sums; alias of resolve."""
    return resolve(s)


# -- JSON schema ----------------------------------------------------------


def linform_to_json(f: LinForm) -> dict:
    return {"coeffs": f.as_dict(), "const": f.const}


def linform_from_json(data: dict) -> LinForm:
    return LinForm.make({k: int(v) for k, v in data.get("coeffs", {}).items()},
                        int(data.get("const", 0)))


def conesum_to_json(s: ConeSum) -> dict:
    terms = []
    for t in s.terms:
        terms.append({
            "scalar": t.scalar.to_json(),
            "mono": {v: linform_to_json(f) for v, f in t.mono},
            "mins": [{"base": m.base_var, "mult": m.mult,
                      "args": [linform_to_json(a) for a in m.args]}
                     for m in t.mins],
            "lower": dict(t.lower),
            "constraints": [linform_to_json(c) for c in t.constraints],
        })
    return {"terms": terms}


def conesum_from_json(data: dict) -> ConeSum:
    terms = []
    for td in data["terms"]:
        scalar = (RatFunc.from_json(td["scalar"])
                  if isinstance(td.get("scalar"), dict) else td.get("scalar", 1))
        terms.append(ConeTerm.make(
            scalar=scalar,
            mono={v: linform_from_json(f) for v, f in td.get("mono", {}).items()},
            mins=[MinExponent(m["base"], int(m["mult"]),
                              tuple(linform_from_json(a) for a in m["args"]))
                  for m in td.get("mins", [])],
            lower={k: int(v) for k, v in td.get("lower", {}).items()},
            constraints=[linform_from_json(c) for c in td.get("constraints", [])],
        ))
    return ConeSum.make(terms)
