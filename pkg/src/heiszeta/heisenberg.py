"""Heisenberg commutator matrices, principal-minor families, and the
defining p-adic integrand.

The group scheme under study is the Heisenberg group over O[x]/(x^n).  Its
commutator matrix R_n(Y) is antisymmetric with Hankel block Q_n(Y); the
integrand of the local zeta integral is built from the families F_j of
principal 2j x 2j minors of R_n, each of which is the square of a Pfaffian.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import MultiPoly, RatFunc

MINOR_BOUND = 6


class SizeLimit(ValueError):
    """Raised when a minor-family computation would blow up combinatorially."""


@dataclass(frozen=True)
class CommutatorMatrix:
    n: int
    Q: tuple[tuple[MultiPoly, ...], ...]
    R: tuple[tuple[MultiPoly, ...], ...]


def build_matrices(n: int) -> CommutatorMatrix:
    """Q[i][j] = Y_{i+j+1} when i+j+1 <= n (0-based), else 0; R = [[0,Q],[-Q^t,0]]."""
    if n < 1:
        raise ValueError("n must be positive")
    zero = MultiPoly.zero()
    Q = [[MultiPoly.var(f"Y{i + j + 1}") if i + j + 1 <= n else zero
          for j in range(n)] for i in range(n)]
    R = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            R[i][n + j] = Q[i][j]
            R[n + i][j] = -Q[j][i]
    return CommutatorMatrix(n, tuple(map(tuple, Q)), tuple(map(tuple, R)))


def pfaffian(m: list[list[MultiPoly]]) -> MultiPoly:
    """Pfaffian of an antisymmetric matrix of even size, by row expansion."""
    k = len(m)
    if k == 0:
        return MultiPoly.const(1)
    if k % 2:
        return MultiPoly.zero()
    if k == 2:
        return m[0][1]
    total = MultiPoly.zero()
    rest = list(range(1, k))
    for idx, j in enumerate(rest):
        a = m[0][j]
        if a.is_zero():
            continue
        keep = [r for r in rest if r != j]
        sub = [[m[r][c] for c in keep] for r in keep]
        piece = a * pfaffian(sub)
        total = total + piece if idx % 2 == 0 else total - piece
    return total


def determinant(m: list[list[MultiPoly]]) -> MultiPoly:
    k = len(m)
    if k == 0:
        return MultiPoly.const(1)
    total = MultiPoly.zero()
    for j in range(k):
        a = m[0][j]
        if a.is_zero():
            continue
        sub = [[m[r][c] for c in range(k) if c != j] for r in range(1, k)]
        piece = a * determinant(sub)
        total = total + piece if j % 2 == 0 else total - piece
    return total


def _sign_normalize(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    lead = p.terms[min(p.terms)]
    return -p if lead < 0 else p


@dataclass(frozen=True)
class MinorFamily:
    """F[j] = distinct nonzero principal 2j x 2j minors; pf[j] their Pfaffians."""

    n: int
    F: tuple[tuple[MultiPoly, ...], ...]
    pf: tuple[tuple[MultiPoly, ...], ...]


def minor_family(n: int) -> MinorFamily:
    if n > MINOR_BOUND:
        raise SizeLimit(f"minor families computed only for n <= {MINOR_BOUND}")
    R = build_matrices(n).R
    F: list[tuple[MultiPoly, ...]] = [(MultiPoly.const(1),)]
    pfs: list[tuple[MultiPoly, ...]] = [(MultiPoly.const(1),)]
    for j in range(1, n + 1):
        seen: dict = {}
        for rows in itertools.combinations(range(2 * n), 2 * j):
            sub = [[R[r][c] for c in rows] for r in rows]
            pf = pfaffian(sub)
            if pf.is_zero():
                continue
            pf = _sign_normalize(pf)
            seen.setdefault(pf, pf * pf)
        pfs.append(tuple(seen.keys()))
        F.append(tuple(seen.values()))
    return MinorFamily(n, tuple(F), tuple(pfs))


def reduced_family(n: int) -> list[list[MultiPoly]]:
    """The compact minor listings used in the derivations, kept as fixtures
    and checked norm-equivalent against the full families (not trusted)."""
    Y = [MultiPoly.var(f"Y{i}") for i in range(n + 1)]  # Y[0] unused
    one = MultiPoly.const(1)
    if n == 1:
        return [[one], [Y[1] ** 2]]
    if n == 2:
        return [[one], [Y[1] ** 2, Y[2] ** 2], [Y[2] ** 4]]
    if n == 3:
        return [[one],
                [Y[1] ** 2, Y[2] ** 2, Y[3] ** 2],
                [Y[3] ** 4, Y[2] ** 2 * Y[3] ** 2,
                 (Y[1] * Y[3] - Y[2] ** 2) ** 2],
                [Y[3] ** 6]]
    raise ValueError("reduced listings exist only for n <= 3")


def min_valuation(polys, point: dict[str, int], p: int, cap: int) -> int:
    """min_h v_p(h(point)) capped at `cap` (cap stands for 'at least cap')."""
    best = cap
    for h in polys:
        val = h.evaluate({k: Fraction(v) for k, v in point.items()})
        num = int(val)
        if num == 0:
            continue
        v = 0
        while num % p == 0 and v < cap:
            num //= p
            v += 1
        best = min(best, v)
        if best == 0:
            return 0
    return best


def norm_equivalent(setA, setB, nvars: int, p: int, N: int) -> bool:
    """Exhaustive check that two minor sets have equal max-norm at every
    point of (o/p^N)^nvars."""
    names = [f"Y{i + 1}" for i in range(nvars)]
    for vals in itertools.product(range(p ** N), repeat=nvars):
        point = dict(zip(names, vals))
        if (min_valuation(setA, point, p, N)
                != min_valuation(setB, point, p, N)):
            return False
    return True


def coord_names(n: int) -> list[str]:
    """Integration-variable names for the y-coordinates (paper-style for
    small n: Y1,Y2,Y3 print as x,y,z)."""
    if n == 1:
        return ["y"]
    if n == 2:
        return ["x", "y"]
    if n == 3:
        return ["x", "y", "z"]
    return [f"y{i}" for i in range(1, n + 1)]


@dataclass(frozen=True)
class PadicIntegral:
    """Domain + integrand of the local zeta integral Z_p(-s/2, ns-n-1).

    abs_factors: (monomial MultiPoly, cs, cc) meaning |m|^(cs*s+cc);
    norm_factors: (tuple of MultiPoly, cs, cc) meaning ||S||^(cs*s+cc)
    with ||S|| = q^(-min v).  The assembly rule is
    zeta = 1 + (1-q^{-1})^{-1} * Z.
    """

    n: int
    variables: tuple[tuple[str, str], ...]       # (name, domain)
    wn_group: tuple[str, ...]                    # joint not-all-in-ideal vars
    abs_factors: tuple[tuple[MultiPoly, int, int], ...]
    norm_factors: tuple[tuple[tuple[MultiPoly, ...], int, int], ...]
    scalar: RatFunc = field(default_factory=lambda: RatFunc.const(1))


def _rename(p: MultiPoly, names: list[str]) -> MultiPoly:
    ren = {f"Y{i + 1}": MultiPoly.var(nm) for i, nm in enumerate(names)}
    r = p.subs(ren)
    assert r.den.is_constant() and r.den.constant_value() == 1
    return r.num


def build_integral(n: int) -> PadicIntegral:
    """Integrand |u|^{ns-n-1} prod_j (||F_j u F_{j-1}u^2|| / ||F_{j-1}||)^{-s/2}.

    By the Pfaffian-square property each minor is a square, so every factor
    is presented with exponent +-s over the Pfaffian lists (square-root
    extraction); the literal half-exponent form over the minors themselves
    gives identical values and is exercised by the enumeration oracle.
    """
    fam = minor_family(n)
    names = coord_names(n)
    u = MultiPoly.var("u")
    variables = [("u", "ideal")] + [(nm, "ring") for nm in names]
    abs_factors = [(u, n, -(n + 1))]
    fams = [tuple(_rename(f, names) for f in Fj) for Fj in fam.pf]
    norms = []
    for j in range(1, n + 1):
        top = fams[j] + tuple(g * u for g in fams[j - 1])
        norms.append((top, -1, 0))
        if j > 1:
            norms.append((fams[j - 1], 1, 0))
    return PadicIntegral(n, tuple(variables), tuple(names),
                         tuple(abs_factors), tuple(norms))
