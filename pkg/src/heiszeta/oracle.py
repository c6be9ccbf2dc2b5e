"""Residue-enumeration oracle for the local zeta integrals.

Independent numeric route: enumerate residues of (u, y) modulo p^N, evaluate
the minor families directly (the literal half-exponent integrand over the
squared Pfaffians), and accumulate the t-series coefficients of the zeta
function at q = p.  A residue cell only determines valuations up to interval
bounds, so the minor valuations propagate as intervals, sharpened by
per-term analysis (monomial Pfaffians are exact at any depth, and an exact
lift valuation below the perturbation level is shared by the whole cell)
and by the graded top-quotient bound.  Cells whose t-degree is still not
pinned to a single integer <= degree are subdivided one residue digit at a
time, a bounded number of times; whatever remains ambiguous sets the
instability counter, and `stability_check` reruns at level N+1.  Points
with v(u) >= N are discarded: the t-degree is at least v(u), so they
contribute beyond the requested degree whenever N > degree.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .catalog import conjectured_local
from .exact import dumps_json
from .heisenberg import minor_family

CACHE_ENV = "HEISZETA_CACHE"

_CHUNK = 8192


class BudgetExceeded(RuntimeError):
    pass


class Unstable(RuntimeError):
    pass


class NonIntegralExponent(ArithmeticError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class EnumConfig:
    """n: truncation length; p: residue prime (the enumeration works at
    q = p); degree: requested t-series degree; level: residue level N
    (default degree + 1); workers: process count (0 = in-process)."""

    n: int
    p: int
    degree: int
    level: int | None = None
    workers: int = 0
    point_budget: int = 50_000_000

    def N(self) -> int:
        return self.level if self.level is not None else self.degree + 1

    def validate(self) -> None:
        if not _is_prime(self.p):
            raise ValueError("enumeration requires a prime p")
        if self.N() <= self.degree:
            raise ValueError("level must exceed the requested degree "
                             "(deep-u discard would be unsound)")


def _compile_family(n: int) -> tuple:
    """Pfaffian families as integer term lists: table[j] is a tuple of
    polynomials, each a tuple of (coeff, ((var_index, exponent), ...)).
    The minors are the squares of these, so v(minor) = 2 v(pfaffian) — exact
    below 2N instead of N.

    Also verifies the gradedness facts behind the top-quotient bound
    v(pf_n) - v(pf_{n-1}) >= v(Y_n): the top family is the single monomial
    Y_n^n and Y_n^{n-1} belongs to the next family down, so
    min v(F_{n-1}) <= (n-1) v(Y_n) while min v(F_n) = n v(Y_n)."""
    fam = minor_family(n)
    table = []
    for Fj in fam.pf:
        polys = []
        for poly in Fj:
            terms = []
            for mono, c in poly.terms.items():
                assert c.denominator == 1
                terms.append((int(c), tuple((int(v[1:]) - 1, e)
                                            for v, e in mono)))
            polys.append(tuple(terms))
        table.append(tuple(polys))
    top = ((1, ((n - 1, n),)),)
    top_ok = (table[n] == (top,)
              and (n == 1 or ((1, ((n - 1, n - 1),)),) in
                   tuple(table[n - 1])))
    return tuple(table), top_ok


_INF = 1 << 60


def _val_interval(x: int, p: int, cap: int) -> tuple[int, int]:
    """Valuation of a residue known modulo p^cap: exact below cap, else
    [cap, inf)."""
    if x == 0:
        return (cap, _INF)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    if v >= cap:
        return (cap, _INF)
    return (v, v)


def _coeff_vals(table, p: int) -> tuple:
    """Attach v_p(coeff) to every term: ((coeff, cval, mono), ...)."""
    out = []
    for Fj in table:
        polys = []
        for poly in Fj:
            terms = []
            for coeff, mono in poly:
                cv, c = 0, abs(coeff)
                while c % p == 0:
                    c //= p
                    cv += 1
                terms.append((coeff, cv, mono))
            polys.append(tuple(terms))
        out.append(tuple(polys))
    return tuple(out)


def _poly_val(poly, vv, y, p: int, L: int) -> tuple[int, int]:
    """Valuation interval of one pfaffian over the residue cell y mod p^L.

    Monomial terms have exact valuations from the per-variable valuations
    (far beyond the cell level L); a multi-term pfaffian is exact when a
    single term strictly dominates.  Otherwise the polynomial is evaluated
    at the exact integer lift: moving within the cell perturbs the value by
    p^L times a partial derivative, so the lift valuation is shared by the
    whole cell whenever it is below L + d_lo, where d_lo lower-bounds the
    derivative valuations."""
    tlo, thi = [], []
    for coeff, cv, mono in poly:
        lo = hi = cv
        for idx, e in mono:
            lo += e * vv[idx][0]
            hi = _INF if (hi >= _INF or vv[idx][1] >= _INF) \
                else hi + e * vv[idx][1]
        tlo.append(lo)
        thi.append(hi)
    if len(poly) == 1:
        return tlo[0], thi[0]
    k0 = min(range(len(tlo)), key=tlo.__getitem__)
    second = min(tlo[k] for k in range(len(tlo)) if k != k0)
    if thi[k0] < second:
        return tlo[k0], thi[k0]
    val = 0
    d_lo = _INF
    for k, (coeff, cv, mono) in enumerate(poly):
        term = coeff
        for idx, e in mono:
            term *= y[idx] ** e
            d_lo = min(d_lo, tlo[k] - vv[idx][0])
        val += term
    cap = L + d_lo
    if val:
        v, x = 0, abs(val)
        while x % p == 0:
            x //= p
            v += 1
        if v < cap:
            return v, v
    return max(cap, min(tlo)), _INF


_REFINE = 8


def _cell_eval(y, n: int, p: int, L: int, D: int, table, top_ok: bool,
               xset) -> tuple[list, list]:
    """Pinned contributions (b, X) and ambiguous X values for the residue
    cell y mod p^L (xset restricts to the X values still pending)."""
    vv = [_val_interval(y[i], p, L) for i in range(n)]
    # f_j = min valuation over the minor family F_j = (pfaffians)^2,
    # as an interval: twice the pfaffian valuation
    f = [(0, 0)]
    for Fj in table[1:]:
        lo = hi = _INF
        for poly in Fj:
            plo, phi = _poly_val(poly, vv, y, p, L)
            lo = min(lo, 2 * plo if plo < _INF else _INF)
            hi = min(hi, 2 * phi if phi < _INF else _INF)
        f.append((lo, hi))
    contribs = []
    ambiguous = []
    for X in (xset if xset is not None
              else range(1, min(L - 1, D) + 1)):
        # t-degree b = sum_j term_j / 2 with
        # term_j = 2X - min(f_j - f_{j-1}, 2X)
        b2lo = b2hi = 0
        for j in range(1, n + 1):
            fj_lo, fj_hi = f[j]
            fp_lo, fp_hi = f[j - 1]
            g_hi = _INF if fj_hi >= _INF else fj_hi - fp_lo
            g_lo = -_INF if fp_hi >= _INF else fj_lo - fp_hi
            if j == n and top_ok:
                # top quotient bound: f_n - f_{n-1} >= 2 v(Y_n), since
                # F_n = {Y_n^{2n}} and Y_n^{2n-2} belongs to F_{n-1}
                g_lo = max(g_lo, 2 * vv[n - 1][0])
            b2lo += 2 * X - min(g_hi, 2 * X)
            b2hi += 2 * X - min(g_lo, 2 * X)
        if b2lo > 2 * D:
            continue
        if b2lo != b2hi:
            ambiguous.append((X, b2lo, b2hi))
            continue
        if b2lo % 2:
            raise NonIntegralExponent(
                f"odd doubled t-degree {b2lo} at y={tuple(y)}, X={X}")
        b = b2lo // 2
        if b <= D:
            contribs.append((b, X))
    return contribs, ambiguous


def _chunk_eval(args) -> tuple[dict, dict]:
    """Accumulate raw sums R_b = sum p^(nX) * p^(n(N+_REFINE-L)) over the
    cells reached from the y-codes in [start, stop); returns (R, A) with R
    the pinned mass and A[b] the total mass of cells whose possible
    t-degree range includes b.  Ambiguous cells are subdivided one residue
    digit at a time, up to _REFINE extra levels; whatever remains ambiguous
    at the bottom goes into A."""
    n, p, N, D, table, top_ok, start, stop = args
    table = _coeff_vals(table, p)
    pN = p ** N
    top = N + _REFINE
    coeffs: dict[int, int] = {}
    amb_mass: dict[int, int] = {}
    y = [0] * n
    for code in range(start, stop):
        c = code
        for i in range(n):
            y[i] = c % pN
            c //= pN
        if all(v % p == 0 for v in y):
            continue
        stack = [(tuple(y), N, None)]
        while stack:
            yy, L, xset = stack.pop()
            contribs, amb = _cell_eval(yy, n, p, L, D, table, top_ok, xset)
            w = p ** (n * (top - L))
            for b, X in contribs:
                coeffs[b] = coeffs.get(b, 0) + p ** (n * X) * w
            if not amb:
                continue
            if L >= top:
                for X, b2lo, b2hi in amb:
                    mass = p ** (n * X) * w
                    blo = (b2lo + 1) // 2
                    bhi = D if b2hi >= 2 * D else b2hi // 2
                    for b in range(blo, bhi + 1):
                        amb_mass[b] = amb_mass.get(b, 0) + mass
                continue
            pL = p ** L
            xs = tuple(X for X, _, _ in amb)
            for d in range(p ** n):
                dd = d
                child = list(yy)
                for i in range(n):
                    child[i] += (dd % p) * pL
                    dd //= p
                stack.append((tuple(child), L + 1, xs))
    return coeffs, amb_mass


@dataclass(frozen=True)
class EnumResult:
    """zeta_coeffs: exact t-series coefficients at q = p; unstable counts
    coefficients that could not be pinned; slack[b] is the residual
    interval width for coefficients resolved by integrality (the zeta
    coefficients are representation counts, hence integers, so an interval
    of width < 1 around a unique integer determines the coefficient
    exactly)."""

    config: EnumConfig
    zeta_coeffs: dict[int, Fraction]
    unstable: int
    slack: dict[int, Fraction]

    def stable(self) -> bool:
        return self.unstable == 0


def _cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV)


def _cache_path(cfg: EnumConfig, table) -> str | None:
    base = _cache_dir()
    if base is None:
        return None
    key = dumps_json({"n": cfg.n, "p": cfg.p, "N": cfg.N(),
                      "D": cfg.degree, "refine": _REFINE, "table": table})
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    return os.path.join(base, f"enum-{digest}.json")


def evaluate(cfg: EnumConfig, use_cache: bool = True) -> EnumResult:
    """Zeta-function t-series coefficients at q = p up to cfg.degree."""
    cfg.validate()
    n, p, N, D = cfg.n, cfg.p, cfg.N(), cfg.degree
    table, top_ok = _compile_family(n)
    total = p ** (n * N)
    if total > cfg.point_budget:
        raise BudgetExceeded(f"{total} residue points exceed the budget "
                             f"{cfg.point_budget}")
    path = _cache_path(cfg, table)
    raw: dict[int, int] | None = None
    amb: dict[int, int] = {}
    if use_cache and path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        raw = {int(k): int(v) for k, v in data["raw"].items()}
        amb = {int(k): int(v) for k, v in data["amb"].items()}
    if raw is None:
        chunks = [(n, p, N, D, table, top_ok, s, min(s + _CHUNK, total))
                  for s in range(0, total, _CHUNK)]
        raw = {}
        if cfg.workers and cfg.workers > 1 and len(chunks) > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                results = list(pool.map(_chunk_eval, chunks))
        else:
            results = [_chunk_eval(c) for c in chunks]
        for part, part_amb in results:
            for b, v in part.items():
                raw[b] = raw.get(b, 0) + v
            for b, v in part_amb.items():
                amb[b] = amb.get(b, 0) + v
        if use_cache and path:
            os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
            tmp = path + f".tmp{os.getpid()}"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump({"raw": {str(k): v for k, v in raw.items()},
                           "amb": {str(k): v for k, v in amb.items()}}, fh)
            os.replace(tmp, path)
    scale = Fraction(1, p ** (n * (N + _REFINE)))
    coeffs = {0: Fraction(1)}
    slack: dict[int, Fraction] = {}
    unstable = 0
    for b in sorted(set(raw) | set(amb)):
        lo = (Fraction(1) if b == 0 else Fraction(0)) + raw.get(b, 0) * scale
        width = amb.get(b, 0) * scale
        if width == 0:
            coeffs[b] = lo
            continue
        # the coefficient lies in [lo, lo + width] and is an integer
        # (a representation count); a width below 1 can isolate it
        hi = lo + width
        k = -((-lo.numerator) // lo.denominator)       # ceil(lo)
        if k <= hi and k + 1 > hi:
            coeffs[b] = Fraction(k)
            slack[b] = width
        else:
            coeffs[b] = lo
            unstable += 1
    return EnumResult(cfg, coeffs, unstable, slack)


def stability_check(cfg: EnumConfig, use_cache: bool = True) -> bool:
    """Rerun at level N+1: both runs must be free of interval ambiguity and
    agree coefficient by coefficient."""
    r1 = evaluate(cfg, use_cache)
    cfg2 = EnumConfig(cfg.n, cfg.p, cfg.degree, cfg.N() + 1, cfg.workers,
                      cfg.point_budget)
    r2 = evaluate(cfg2, use_cache)
    return (r1.stable() and r2.stable()
            and _full(r1.zeta_coeffs, cfg.degree)
            == _full(r2.zeta_coeffs, cfg.degree))


def _full(coeffs: dict[int, Fraction], degree: int) -> list[Fraction]:
    return [coeffs.get(b, Fraction(0)) for b in range(degree + 1)]


def series_coeffs(rf, p: int, degree: int) -> list[Fraction]:
    """t-series coefficients of a symbolic zeta function specialized to
    q = p."""
    from .exact import rf_series
    ser = rf_series(rf, "t", degree)
    return [c.evaluate({"q": Fraction(p)}) for c in ser.coeffs]


def cross_check(cfg: EnumConfig, rf, use_cache: bool = True) -> bool:
    """Enumerated coefficients against a symbolic closed form."""
    res = evaluate(cfg, use_cache)
    if not res.stable():
        raise Unstable(f"{res.unstable} residue points kept an ambiguous "
                       "t-degree; raise the level")
    return _full(res.zeta_coeffs, cfg.degree) == series_coeffs(
        rf, cfg.p, cfg.degree)


def conjecture_probe(n: int = 4, p: int = 2, degree: int = 3,
                     workers: int = 0, use_cache: bool = True) -> bool:
    """Compare the enumeration against the conjectured product for an n
    beyond the proven range."""
    cfg = EnumConfig(n, p, degree, workers=workers)
    return cross_check(cfg, conjectured_local(n).ratfunc, use_cache)
