"""Parity between the compiled and pure-Python kernel backends."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qso_spectra import _kernels_py as py
from qso_spectra import backend

try:
    from qso_spectra import _kernels as c
except ImportError:  # pragma: no cover - source-only install
    c = None

import pytest

pytestmark = pytest.mark.skipif(c is None, reason="compiled kernels unavailable")

coeffs = st.fractions(min_value=Fraction(-9), max_value=Fraction(9),
                      max_denominator=7)
laurent = st.dictionaries(st.integers(-6, 6), coeffs.filter(bool), max_size=5)
dense = st.lists(coeffs, max_size=5).map(
    lambda p: p[:len(p) - next((i for i, x in enumerate(reversed(p)) if x),
                               len(p))])


def test_backend_names():
    assert py.BACKEND_NAME == "py"
    assert c.BACKEND_NAME == "c"
    assert backend.BACKEND_NAME in ("py", "c")


@settings(max_examples=80, deadline=None)
@given(laurent, laurent)
def test_lp_add_sub_mul_parity(a, b):
    assert py.lp_add(a, b) == c.lp_add(a, b)
    assert py.lp_sub(a, b) == c.lp_sub(a, b)
    assert py.lp_mul(a, b) == c.lp_mul(a, b)
    assert py.lp_neg(a) == c.lp_neg(a)


@settings(max_examples=60, deadline=None)
@given(laurent, coeffs, st.integers(-5, 5))
def test_lp_scale_shift_parity(a, s, k):
    assert py.lp_scale(a, s) == c.lp_scale(a, s)
    assert py.lp_shift(a, k) == c.lp_shift(a, k)


@settings(max_examples=60, deadline=None)
@given(laurent, coeffs.filter(bool))
def test_lp_eval_parity(a, x):
    assert py.lp_eval(a, x) == c.lp_eval(a, x)


@settings(max_examples=60, deadline=None)
@given(dense, dense.filter(bool))
def test_divmod_parity_and_identity(a, b):
    qp, rp = py.plist_divmod(a, b)
    qc, rc = c.plist_divmod(a, b)
    assert qp == qc and rp == rc
    # a = q*b + r with deg r < deg b
    prod = {}
    for i, x in enumerate(qp):
        for j, y in enumerate(b):
            if x and y:
                s = prod.get(i + j, Fraction(0)) + x * y
                if s:
                    prod[i + j] = s
                else:
                    prod.pop(i + j, None)
    for i, x in enumerate(rp):
        if x:
            s = prod.get(i, Fraction(0)) + x
            if s:
                prod[i] = s
            else:
                prod.pop(i, None)
    want = {i: x for i, x in enumerate(a) if x}
    assert prod == want
    assert len(rp) < len(b)


@settings(max_examples=40, deadline=None)
@given(dense, dense)
def test_gcd_parity_and_divides(a, b):
    gp = py.plist_gcd(a, b)
    gc = c.plist_gcd(a, b)
    assert gp == gc
    if gp:
        for p in (a, b):
            if p:
                _, r = py.plist_divmod(p, gp)
                assert not r
        assert gp[-1] == 1  # monic
