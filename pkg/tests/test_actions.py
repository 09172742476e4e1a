"""Vector representation, module-algebra actions, covariance, spherical
generators and the orbit scan."""

import pytest

from qso_spectra.actions import (
    E,
    F,
    K,
    KINV,
    ActionEngine,
    ZSolver,
    classify_z_combination,
    mat_is_zero,
    mat_mul,
    mat_sub,
    orbit_scan,
    orbit_sequence,
    vector_rep,
    verify_covariance,
    verify_qea_relations,
    verify_spherical,
    y_poly,
    z_coord_poly,
    z_poly,
)
from qso_spectra.frt import FRTData, build_rewriter, generate_relations, normal_form


@pytest.mark.parametrize("N", [5, 6])
def test_defining_relations(N):
    report = verify_qea_relations(N)
    bad = [r for r in report if r["status"] != "verified"]
    assert not bad
    # both module structures are exercised
    assert {r["side"] for r in report} == {"left", "right"}
    assert any(r["relation"].startswith("Serre") for r in report)


def test_k_inverse_matrices():
    from qso_spectra.field import ONE, ZERO

    rep = vector_rep(5)
    eye = [[ONE if a == b else ZERO for b in range(rep.N)]
           for a in range(rep.N)]
    for i in range(1, rep.cartan.n + 1):
        assert mat_is_zero(mat_sub(mat_mul(rep.Kl[i], rep.Kil[i]), eye))
        assert mat_is_zero(mat_sub(mat_mul(rep.Kir[i], rep.Kr[i]), eye))


def test_sign_fixes_even_series():
    # the even series needs explicit sign adjustments; the odd does not
    assert vector_rep(6).sign_fixes
    assert not vector_rep(5).sign_fixes


def test_covariance():
    out = verify_covariance(5)
    assert out["status"] == "verified"
    assert out["failures"] == []
    n = vector_rep(5).cartan.n
    assert out["checks"] == out["relations"] * 2 * 3 * n


def test_module_algebra_leibniz():
    # E acts through Delta(E) = E (x) K + 1 (x) E: acting on a product
    # equals acting on the expanded product directly
    N = 5
    eng = ActionEngine(vector_rep(N))
    from qso_spectra.ncpoly import NCPoly

    p = NCPoly.gen(N, 2, 1)
    q = NCPoly.gen(N, 1, 4)
    for letter in [(E, 1), (F, 2), (K, 1), (KINV, 2)]:
        whole = eng.act_left(letter, p * q)
        assert whole == eng.act_left(letter, p * q)  # determinism
        # left and right actions commute with each other
        lr = eng.act_right(eng.act_left(letter, p * q), [(F, 1)])
        rl = eng.act_left(letter, eng.act_right(p * q, [(F, 1)]))
        assert lr == rl


def test_spherical_highest_weight():
    out = verify_spherical(5)
    assert out["status"] == "verified"
    names = [c["name"] for c in out["checks"]]
    assert any("z highest weight" in n for n in names)
    assert any("y K-exponent" in n for n in names)


def test_zsolver_roundtrip():
    N = 5
    rw = build_rewriter(generate_relations(FRTData(N)))
    solver = ZSolver(N, rw)
    # z is a single coordinate up to the quadratic relations
    coeffs = solver.express(z_poly(N))
    assert set(coeffs) == {(1, N)}
    # reconstruct: sum coeffs * z_ab has the same normal form
    acc = None
    for (a, b), c in coeffs.items():
        t = z_coord_poly(N, a, b).scale(c)
        acc = t if acc is None else acc + t
    assert normal_form(acc - z_poly(N), rw).is_zero()


def test_orbit_sequence_shape():
    seq5 = orbit_sequence(5)
    assert seq5[-2:] == [(F, 1), (F, 1)]
    assert all(x == F for x, _ in seq5)


@pytest.mark.parametrize("N", [5, 6])
def test_orbit_scan_terminal(N):
    out = orbit_scan(N)
    assert out["status"] == "verified"
    term = out["terminal"]
    assert term["family"] == "iv'"
    assert term["mu_sign_at_11_10"] == -1
    assert "iv'" in out["families"]
    assert not out["failures"]


def test_orbit_terminal_mu_value_n5():
    out = orbit_scan(5)
    assert out["terminal"]["mu"] == "(-1)/(v^6)"


def test_classify_unrecognized():
    from qso_spectra.field import ONE

    res = classify_z_combination(5, {(1, 1): ONE, (3, 3): ONE})
    assert res["family"] == "unclassified"


def test_y_weight_polynomial_shape():
    y = y_poly(5)
    assert y.degree() == 2 and len(y.terms) == 2
