"""Root-system data and the Weyl dimension formula for so_N."""

from fractions import Fraction

import pytest

from qso_spectra.cartan import CartanData
from qso_spectra.errors import NonDominantWeight


def test_series_and_rank():
    assert CartanData(5).series == "B" and CartanData(5).n == 2
    assert CartanData(6).series == "D" and CartanData(6).n == 3
    assert CartanData(7).series == "B" and CartanData(7).n == 3
    assert CartanData(8).series == "D" and CartanData(8).n == 4
    with pytest.raises(ValueError):
        CartanData(4)


def test_cartan_matrices():
    assert CartanData(5).cartan_matrix == [[2, -1], [-2, 2]]
    assert CartanData(7).cartan_matrix == [
        [2, -1, 0], [-1, 2, -1], [0, -2, 2]]
    assert CartanData(8).cartan_matrix == [
        [2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]


def test_root_lengths():
    # B_n: short last node d_n = 1/2; D_n: all long
    b = CartanData(7)
    assert b.d == [Fraction(1), Fraction(1), Fraction(1, 2)]
    d = CartanData(8)
    assert d.d == [Fraction(1)] * 4


def test_positive_root_count():
    # |Phi^+| = n^2 for B_n, n(n-1) for D_n
    for N in (5, 6, 7, 8):
        c = CartanData(N)
        expect = c.n * c.n if c.series == "B" else c.n * (c.n - 1)
        assert len(c.positive_roots) == expect


def test_fundamental_weight_duality():
    for N in (5, 6, 7, 8):
        c = CartanData(N)
        for i in range(1, c.n + 1):
            for j, w in enumerate(c.fundamental_weights, start=1):
                assert c.coroot_pair(i, w) == (1 if i == j else 0)


def test_weyl_dim_vector_rep():
    # the vector representation of so_N has dimension N
    for N in (5, 6, 7, 8):
        c = CartanData(N)
        assert c.weyl_dim(c.fundamental_weights[0]) == N


def test_weyl_dim_known_values():
    c7 = CartanData(7)  # so_7 = B_3
    assert c7.weyl_dim(c7.weight((0, 0, 0))) == 1
    assert c7.weyl_dim(c7.fundamental_weights[1]) == 21   # adjoint
    assert c7.weyl_dim(c7.fundamental_weights[2]) == 8    # spinor
    c8 = CartanData(8)  # so_8 = D_4
    assert c8.weyl_dim(c8.fundamental_weights[1]) == 28   # adjoint
    assert c8.weyl_dim(c8.fundamental_weights[2]) == 8    # half-spinor
    assert c8.weyl_dim(c8.fundamental_weights[3]) == 8
    c5 = CartanData(5)  # so_5 = B_2
    assert c5.weyl_dim(c5.weight((2, 0))) == 14
    assert c5.weyl_dim(c5.weight((0, 2))) == 10           # adjoint


def test_nondominant_raises():
    c = CartanData(5)
    with pytest.raises(NonDominantWeight):
        c.weyl_dim((Fraction(-1), Fraction(0)))


def test_pair2_integrality():
    c = CartanData(7)
    for a in c.simple_roots:
        for b in c.positive_roots:
            assert c.pair2(a, b) == int(2 * c.pair(a, b))
    # spinor weight paired with itself: 2*(3/4) not an integer? 3/2 -> no,
    # but against eps_1 it is 2*(1/2) = 1
    w = c.fundamental_weights[2]
    assert c.pair2(w, c.simple_roots[2]) == 1
