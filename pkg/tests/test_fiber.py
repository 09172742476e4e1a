"""Quantum exterior algebra of the fiber: straightening, kappa powers,
Lefschetz theory and the Hodge map."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qso_spectra.errors import IndexOutOfRange
from qso_spectra.fiber import (
    ExtAlgParams,
    FiberForm,
    classical_kappa_coeffs,
    g_expansion,
    hodge,
    kappa,
    kappa_power,
    lefschetz,
    make_evaluator,
    primitive_decompose,
    random_form,
    straighten_minus,
    straighten_plus,
    verify_f_properties,
    verify_hodge_shape,
    verify_lefschetz_iso,
    verify_nonprimitive,
)
from qso_spectra.field import ONE, ZERO, FieldElem

V = FieldElem.v_pow


def single_minus(M, J, coeff):
    f = FiberForm(M)
    f.add((), J, coeff, ZERO)
    return f


def test_straighten_plain_swap():
    # descending non-conjugate minus pair picks up -q
    p = ExtAlgParams(4)
    assert straighten_minus(p, (3, 1)) == single_minus(4, (1, 3), -V(2))
    # plus side mirrors with -q^-1
    f = straighten_plus(p, (3, 1))
    assert f.terms == {((1, 3), ()): [-V(-2), ZERO]}


def test_straighten_conjugate_pair():
    # (conj(1), 1) = (4, 1) at M = 4: no lower corrections, bare -1
    p = ExtAlgParams(4)
    assert straighten_minus(p, (4, 1)) == single_minus(4, (1, 4), -ONE)


def test_straighten_middle_square():
    # e-_2 ^ e-_2 at M = 3: (q^{1/2} - q^{-1/2}) e-_{1,3}
    p = ExtAlgParams(3)
    assert straighten_minus(p, (2, 2)) == single_minus(3, (1, 3), V(1) - V(-1))


def test_straighten_nilpotent_square():
    p = ExtAlgParams(4)
    assert not straighten_minus(p, (2, 2))
    assert not straighten_plus(p, (3, 3))


def test_straighten_fixed_on_normal_words():
    p = ExtAlgParams(5)
    assert straighten_minus(p, (1, 3, 5)) == single_minus(5, (1, 3, 5), ONE)


def test_straighten_index_guard():
    p = ExtAlgParams(3)
    with pytest.raises(IndexOutOfRange):
        straighten_minus(p, (0, 1))
    with pytest.raises(IndexOutOfRange):
        straighten_plus(p, (1, 4))


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(1, 5))))
def test_classical_limit_is_exterior_algebra(perm):
    # at q = 1 all correction terms vanish and straightening is the
    # ordinary sign-of-permutation sort
    p = ExtAlgParams(4)
    res = straighten_minus(p, tuple(perm))
    assert len(res.terms) == 1
    ((I, J), (re, im)), = res.terms.items()
    assert I == () and J == (1, 2, 3, 4) and not im
    inv = sum(1 for a in range(4) for b in range(a + 1, 4)
              if perm[a] > perm[b])
    assert re.eval_v(1) == (-1) ** inv


def test_straighten_confluence_samples():
    # words with two overlapping reducible pairs give one answer
    # regardless of which pair fires first; spot-check by comparing the
    # straightening of w against straightening the reversal twice
    p = ExtAlgParams(5)
    for word in [(3, 3, 2), (5, 1, 5), (2, 4, 2), (4, 3, 3)]:
        res = straighten_minus(p, word)
        # rebuild: expand each output word back, must reproduce itself
        for (_, J), (re, im) in res.terms.items():
            again = straighten_minus(p, J)
            assert again == single_minus(5, J, ONE)
            assert not im


def test_kappa_power_endpoints():
    p = ExtAlgParams(3)
    assert kappa_power(p, 0).coeffs == {((), ()): ONE}
    assert kappa_power(p, 1).to_form() == kappa(p)
    # kappa^{M+1} = 0: bidegree (M+1, M+1) does not exist
    assert kappa_power(p, 4).coeffs == {}


def test_kappa_centrality_between_vs_outside():
    for M in (3, 4):
        p = ExtAlgParams(M)
        for l in range(M + 1):
            assert kappa_power(p, l, "between").coeffs == \
                kappa_power(p, l, "outside").coeffs


def test_classical_kappa_oracle():
    for M in (3, 4, 5):
        for l in range(M + 1):
            oracle = classical_kappa_coeffs(M, l)
            want = (-1) ** (l * (l - 1) // 2) * factorial(l)
            from itertools import combinations
            assert set(oracle) == set(combinations(range(1, M + 1), l))
            assert all(v == want for v in oracle.values())


@pytest.mark.parametrize("M", [3, 4, 5])
def test_f_properties(M):
    out = verify_f_properties(ExtAlgParams(M))
    assert out["status"] == "verified"
    assert out["failures"] == []
    assert out["checks"] > 0


def test_g_mirror_at_q1_matches_f():
    p = ExtAlgParams(3)
    for l in range(4):
        f = kappa_power(p, l).coeffs
        g = g_expansion(p, l)
        fd = {I: c.eval_v(1) for (I, J), c in f.items() if I == J}
        gd = {I: c.eval_v(1) for (I, J), c in g.items() if I == J}
        assert fd == gd


def test_lefschetz_of_one_is_kappa():
    p = ExtAlgParams(3)
    assert lefschetz(p, FiberForm.one(3)) == kappa(p)
    # L^M(1) is the top power, L^{M+1}(1) = 0
    f = FiberForm.one(3)
    for _ in range(3):
        f = lefschetz(p, f)
    assert f == kappa_power(p, 3).to_form()
    assert not lefschetz(p, f)


@pytest.mark.parametrize("q0", [Fraction(1), Fraction(11, 10)])
def test_lefschetz_iso(q0):
    p = ExtAlgParams(3)
    out = verify_lefschetz_iso(p, q0)
    assert out["status"] == "verified"
    assert out["failures"] == []
    # middle-to-complement ranks are binomial-square dimensions
    dims = {d["k"]: d["dim"] for d in out["degrees"]}
    assert dims[0] == 1 and dims[2] == 15


def test_make_evaluator_square_vs_quadratic():
    ev1 = make_evaluator(Fraction(1))
    assert ev1(V(2) + ONE) == 2
    ev2 = make_evaluator(Fraction(11, 10))
    x = ev2(V(2))
    assert x == Fraction(11, 10) or getattr(x, "a", None) == Fraction(11, 10)


def test_primitive_decomposition_reconstructs():
    import random

    p = ExtAlgParams(3)
    rng = random.Random(7)
    for a, b in [(1, 1), (2, 1), (2, 2)]:
        form = random_form(p, a, b, rng)
        if not form:
            continue
        parts = primitive_decompose(p, form)
        acc = FiberForm(3)
        for j, wj in parts:
            g = wj
            for _ in range(j):
                g = lefschetz(p, g)
            acc = acc.plus(g)
        assert acc == form
        # each w_j is primitive: L^{M - deg + 1} w_j = 0
        for j, wj in parts:
            d = wj.degree()
            g = wj
            for _ in range(3 - d + 1):
                g = lefschetz(p, g)
            assert not g


def test_hodge_of_one_and_kappa():
    p = ExtAlgParams(3)
    star1 = hodge(p, FiberForm.one(3))
    want = kappa_power(p, 3).to_form().scaled(
        FieldElem.from_rational(Fraction(1, 6)))
    assert star1 == want
    # *(kappa) = kappa^2 / 2
    star_k = hodge(p, kappa(p))
    want2 = kappa_power(p, 2).to_form().scaled(
        FieldElem.from_rational(Fraction(1, 2)))
    assert star_k == want2


@pytest.mark.parametrize("M", [3, 4])
def test_nonprimitive_top_wedge(M):
    out = verify_nonprimitive(ExtAlgParams(M))
    assert out["status"] == "verified"
    assert set(out["details"]) == {"f", "g"}
    if M == 3:
        assert out["details"]["f"]["at_1"] == "-2"


def test_hodge_shape():
    out = verify_hodge_shape(ExtAlgParams(3), trials=2)
    assert out["status"] == "verified"
    assert out["failures"] == []


def test_form_algebra_helpers():
    f = FiberForm(3)
    f.add((1,), (2,), ONE, V(2))
    assert f.times_i_pow(4) == f
    assert f.times_i_pow(2) == f.scaled(-ONE)
    assert f.bidegrees() == {(1, 1)}
    assert f.degree() == 2
    g = FiberForm(3)
    g.add((1,), (2, 3), ONE, ZERO)
    with pytest.raises(ValueError):
        f.plus(g).degree()
