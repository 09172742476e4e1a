"""R-matrix data, the quadratic rewriting system, and the nine
commutation-relation families."""

import pytest

from qso_spectra.errors import DegreeOverflow, IndexOutOfRange
from qso_spectra.field import ZERO, FieldElem
from qso_spectra.frt import (
    FRTData,
    build_rewriter,
    excluded_boundary_instances,
    generate_relations,
    lemma_rel_instances,
    normal_form,
    r_entry,
    saturate_and_check,
    verify_lemma_rels,
)
from qso_spectra.ncpoly import NCPoly


def test_rho_values():
    d = FRTData(5)
    assert [d.rho2[i] for i in range(1, 6)] == [3, 1, 0, -1, -3]
    d = FRTData(6)
    assert [d.rho2[i] for i in range(1, 7)] == [4, 2, 0, 0, -2, -4]


def test_r_entry_diagonal_and_bounds():
    d = FRTData(5)
    # R^{ii}_{ii} = q for non-self-conjugate i
    assert r_entry(d, 1, 1, 1, 1) == FieldElem.v_pow(2)
    # R^{ij}_{ij} = 1 for generic distinct non-conjugate i, j
    assert r_entry(d, 1, 2, 1, 2) == FieldElem.one()
    # R^{i i'}_{i i'} = q^{-1}
    assert r_entry(d, 1, 5, 1, 5) == FieldElem.v_pow(-2)
    with pytest.raises(IndexOutOfRange):
        r_entry(d, 0, 1, 1, 1)


def test_r_entry_offdiagonal():
    d = FRTData(5)
    qq = FieldElem.v_pow(2) - FieldElem.v_pow(-2)
    # lower-triangular swap term
    assert r_entry(d, 2, 1, 1, 2) == qq
    assert r_entry(d, 1, 2, 2, 1) == ZERO
    # conjugate-pair correction R^{2 4}_{1 5}
    assert r_entry(d, 2, 4, 1, 5) == -qq * FieldElem.v_pow(-(d.rho2[4] + d.rho2[1]))


def test_relations_nonzero_and_homogeneous():
    rels = generate_relations(FRTData(5))
    assert rels.elems
    for r in rels.elems:
        assert not r.is_zero()
        assert r.degree() == 2 and r.is_homogeneous()


def test_normal_form_idempotent_and_linear():
    rels = generate_relations(FRTData(5))
    rw = build_rewriter(rels)
    p = NCPoly.gen(5, 3, 1) * NCPoly.gen(5, 1, 2) + \
        NCPoly.gen(5, 2, 5) * NCPoly.gen(5, 2, 1)
    nf = normal_form(p, rw)
    assert normal_form(nf, rw) == nf
    q = NCPoly.gen(5, 1, 1) * NCPoly.gen(5, 2, 2)
    assert normal_form(p + q, rw) == normal_form(p, rw) + normal_form(q, rw)
    # every relation itself reduces to zero
    for r in rels.elems[:20]:
        assert normal_form(r, rw).is_zero()


def test_saturate_rejects_overdegree():
    rels = generate_relations(FRTData(5))
    word = tuple(((1, 1),) * 5)
    target = NCPoly.monomial(5, word, FieldElem.one())
    with pytest.raises(DegreeOverflow):
        saturate_and_check(target, rels, max_degree=4)


def test_saturate_detects_nonmember():
    rels = generate_relations(FRTData(5))
    target = NCPoly.unit(5)  # the unit is never in the homogeneous ideal
    rep = saturate_and_check(target, rels, max_degree=2)
    assert rep.status == "inconclusive"


@pytest.mark.parametrize("N", [5, 6])
def test_verify_lemma_rels_all_clear(N):
    report = verify_lemma_rels(N)
    statuses = {r["status"] for r in report}
    assert statuses <= {"verified", "vacuous", "excluded", "probable"}
    assert not any(r["status"] == "inconclusive" for r in report)
    families = {r["family"] for r in report}
    assert len(families) >= 9
    excluded = [r for r in report if r["status"] == "excluded"]
    assert len(excluded) == len(excluded_boundary_instances(N))


def test_lemma_instances_are_relation_members_degree2():
    N = 5
    rels = generate_relations(FRTData(N))
    rw = build_rewriter(rels)
    for family, indices, target in lemma_rel_instances(N):
        if target is None or target.degree() > 2:
            continue
        assert normal_form(target, rw).is_zero(), (family, indices)
