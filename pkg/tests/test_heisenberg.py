"""Commutator matrices, Pfaffians, minor families, and the p-adic integral
assembly."""

import pytest

from heiszeta.exact import MultiPoly
from heiszeta.heisenberg import (build_integral, build_matrices, coord_names,
                                 determinant, minor_family, norm_equivalent,
                                 pfaffian, reduced_family)


def test_matrices_shape_and_antisymmetry():
    for n in (1, 2, 3, 4):
        R = build_matrices(n).R
        assert len(R) == 2 * n
        for i in range(2 * n):
            assert R[i][i].is_zero()
            for j in range(2 * n):
                assert R[i][j] == -R[j][i]


def test_pfaffian_square_is_determinant():
    for n in (1, 2, 3):
        R = build_matrices(n).R
        pf = pfaffian(R)
        assert pf * pf == determinant(R)


def test_full_determinant_is_top_power():
    # det R_n = +- Y_n^{2n}
    for n in (1, 2, 3):
        R = build_matrices(n).R
        top = MultiPoly.var(f"Y{n}") ** (2 * n)
        det = determinant(R)
        assert det == top or det == -top


def test_minor_family_squares():
    for n in (1, 2, 3, 4):
        fam = minor_family(n)
        assert len(fam.F) == n + 1
        for Fj, pfj in zip(fam.F, fam.pf):
            assert len(Fj) == len(pfj)
            for minor, pf in zip(Fj, pfj):
                assert minor == pf * pf


def test_minor_family_known_listings():
    fam = minor_family(3)
    Y1, Y2, Y3 = (MultiPoly.var(f"Y{i}") for i in (1, 2, 3))
    assert set(fam.pf[1]) == {Y1, Y2, Y3}
    assert set(fam.pf[2]) == {Y1 * Y3 - Y2 ** 2, Y2 * Y3, Y3 ** 2}
    assert set(fam.pf[3]) == {Y3 ** 3}


def test_reduced_family_norm_equivalent():
    for n, p, N in ((1, 2, 4), (2, 2, 3), (2, 3, 2), (3, 2, 3), (3, 3, 2)):
        full = minor_family(n).F
        red = reduced_family(n)
        for j in range(n + 1):
            assert norm_equivalent(full[j], red[j], n, p, N), (n, p, N, j)


def test_norm_equivalent_detects_difference():
    Y1 = MultiPoly.var("Y1")
    assert not norm_equivalent([Y1], [Y1 * Y1], 1, 2, 3)


def test_coord_names():
    assert coord_names(3) == ["x", "y", "z"]
    assert coord_names(5) == ["y1", "y2", "y3", "y4", "y5"]


def test_build_integral_structure():
    for n in (1, 2, 3):
        ig = build_integral(n)
        assert ig.n == n
        assert dict(ig.variables)["u"] == "ideal"
        assert set(ig.wn_group) == set(coord_names(n))
        # |u|^{ns-n-1}
        ((m, cs, cc),) = ig.abs_factors
        assert m == MultiPoly.var("u") and cs == n and cc == -(n + 1)
        # norm factors come in (+-s)-exponent pairs per level beyond the first
        assert len(ig.norm_factors) == 2 * n - 1
        for _, cs, cc in ig.norm_factors:
            assert cs in (-1, 1) and cc == 0


def test_reduced_family_range():
    with pytest.raises(ValueError):
        reduced_family(4)
