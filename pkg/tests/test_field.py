"""Coefficient-field arithmetic: axioms, q-integers, exact evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qso_spectra.errors import DenominatorVanishes, ExtensionValueInconsistent
from qso_spectra.field import (
    ONE,
    ZERO,
    FieldElem,
    eval_at,
    make_extension,
    qint,
    sym_qbinom,
    sym_qint,
)

rationals = st.fractions(
    min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6)


@st.composite
def field_elems(draw):
    terms = draw(st.lists(
        st.tuples(st.integers(-4, 4), rationals), min_size=0, max_size=3))
    x = ZERO
    for e, c in terms:
        x = x + FieldElem.monomial(c, e)
    if draw(st.booleans()):
        d = draw(st.integers(-2, 2))
        x = x / (FieldElem.v_pow(d) + 2)
    return x


@settings(max_examples=60, deadline=None)
@given(field_elems(), field_elems(), field_elems())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@settings(max_examples=40, deadline=None)
@given(field_elems())
def test_field_inverse(a):
    if a:
        assert a * a.inverse() == ONE
        assert a / a == ONE
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@settings(max_examples=40, deadline=None)
@given(field_elems(), field_elems(),
       st.fractions(min_value=Fraction(1), max_value=Fraction(3),
                    max_denominator=4))
def test_eval_is_ring_homomorphism(a, b, v0):
    assert eval_at(a + b, v0) == eval_at(a, v0) + eval_at(b, v0)
    assert eval_at(a * b, v0) == eval_at(a, v0) * eval_at(b, v0)


def test_eval_pole_raises():
    x = ONE / (FieldElem.v_pow(1) - 1)
    with pytest.raises(DenominatorVanishes):
        x.eval_v(1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_qint_recurrence_and_sum(k, m):
    t = FieldElem.v_pow(2)
    # (k+1)_t = t*(k)_t + 1
    assert qint(k + 1, t) == t * qint(k, t) + ONE
    # (k+m)_t = (k)_t + t^k (m)_t
    assert qint(k + m, t) == qint(k, t) + FieldElem.v_pow(2 * k) * qint(m, t)


def test_qint_classical_limit():
    t = FieldElem.v_pow(2)
    for k in range(6):
        assert qint(k, t).eval_v(1) == k


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 2))
def test_sym_qbinom_pascal(m, k, vexp):
    # [m+1, k] = v^{-k} [m, k] + v^{m+1-k} [m, k-1] (symmetric Pascal rule)
    lhs = sym_qbinom(m + 1, k, vexp)
    rhs = FieldElem.v_pow(-vexp * k) * sym_qbinom(m, k, vexp) + \
        FieldElem.v_pow(vexp * (m + 1 - k)) * sym_qbinom(m, k - 1, vexp)
    assert lhs == rhs


def test_sym_qint_balanced():
    assert sym_qint(3, 2) == FieldElem.v_pow(4) + ONE + FieldElem.v_pow(-4)
    assert sym_qint(-3, 2) == -sym_qint(3, 2)


def test_adjoint_squares_to_modulus():
    ext = make_extension("qhalf")
    c = FieldElem.adjoint(ext)
    assert c * c == FieldElem.v_pow(1) + FieldElem.v_pow(-1)
    # inverse in the quadratic extension
    x = ONE + c
    assert x * x.inverse() == ONE


def test_adjoint_mixing_raises():
    c1 = FieldElem.adjoint(make_extension("qhalf"))
    c2 = FieldElem.adjoint(make_extension("q2"))
    with pytest.raises(ExtensionValueInconsistent):
        _ = c1 + c2


def test_eval_sqrtq_and_sign():
    x = FieldElem.v_pow(1) - FieldElem.v_pow(-1)  # q^{1/2} - q^{-1/2}
    assert x.sign_at_sqrtq(Fraction(11, 10)) == 1
    assert (-x).sign_at_sqrtq(Fraction(11, 10)) == -1
    assert ZERO.sign_at_sqrtq(Fraction(11, 10)) == 0
    a, b = (FieldElem.v_pow(2)).eval_sqrtq(Fraction(11, 10))
    assert a.a == Fraction(11, 10) and a.b == 0 and not b


def test_to_text_examples():
    assert ZERO.to_text() == "0"
    assert (FieldElem.v_pow(2) + ONE).to_text() == "v^2 + 1"
    assert (-ONE / FieldElem.v_pow(6)).to_text() == "(-1)/(v^6)"
