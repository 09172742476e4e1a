"""Quadratic R-matrix relations of the q-orthogonal coordinate algebra,
rewriting to normal form, degree-bounded ideal membership and the
machine verification of the nine commutation-relation families.

Internally a linear combination of words is a dict {word: coeff}.  The
coefficient ring is FieldElem for symbolic work and Fraction for
specialized (probabilistic) membership checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import DegreeOverflow, IndexOutOfRange
from .field import ONE, ZERO, FieldElem
from .ncpoly import NCPoly, word_key


def _inv(c):
    return c.inverse() if isinstance(c, FieldElem) else 1 / c


# ---------------------------------------------------------------------------
# R-matrix data
# ---------------------------------------------------------------------------


class FRTData:
    """Index bookkeeping for the R-matrix: conjugate index, rho, theta."""

    __slots__ = ("N", "rho2")

    def __init__(self, N: int):
        if N < 5:
            raise ValueError("N >= 5 required")
        self.N = N
        self.rho2 = {}
        for i in range(1, N + 1):
            ip = N + 1 - i
            if i < ip:
                self.rho2[i] = N - 2 * i
            elif i == ip:
                self.rho2[i] = 0
            else:
                self.rho2[i] = -(N - 2 * ip)

    def conj(self, i: int) -> int:
        return self.N + 1 - i

    @staticmethod
    def theta(x: int) -> int:
        """Strict Heaviside step: 1 for x > 0, else 0."""
        return 1 if x > 0 else 0

    def q_rho(self, i: int) -> FieldElem:
        """q^(rho_i) as a v-monomial."""
        return FieldElem.v_pow(self.rho2[i])


def r_entry(data: FRTData, i: int, j: int, m: int, n: int) -> FieldElem:
    """Entry R^{ij}_{mn} of the braiding of the vector representation."""
    N = data.N
    for x in (i, j, m, n):
        if not (1 <= x <= N):
            raise IndexOutOfRange(f"index {x} outside 1..{N}")
    out = ZERO
    if i == m and j == n:
        e = (1 if i == j else 0) - (1 if j == data.conj(i) else 0)
        out = out + FieldElem.v_pow(2 * e)
    if data.theta(i - m):
        qq = FieldElem.v_pow(2) - FieldElem.v_pow(-2)
        if j == m and i == n:
            out = out + qq
        if j == data.conj(i) and m == data.conj(n):
            out = out - qq * FieldElem.v_pow(-(data.rho2[j] + data.rho2[m]))
    return out


def _r_row(data: FRTData, i: int, j: int):
    """Nonzero entries R^{ij}_{kl} as a dict (k, l) -> FieldElem."""
    qq = FieldElem.v_pow(2) - FieldElem.v_pow(-2)
    row = {}
    e = (1 if i == j else 0) - (1 if j == data.conj(i) else 0)
    row[(i, j)] = FieldElem.v_pow(2 * e)
    if j < i:
        row[(j, i)] = row.get((j, i), ZERO) + qq
    if j == data.conj(i):
        for k in range(1, i):
            kk = (k, data.conj(k))
            corr = qq * FieldElem.v_pow(-(data.rho2[j] + data.rho2[k]))
            row[kk] = row.get(kk, ZERO) - corr
    return {k: c for k, c in row.items() if c}


def _r_col(data: FRTData, m: int, n: int):
    """Nonzero entries R^{ab}_{mn} as a dict (a, b) -> FieldElem."""
    qq = FieldElem.v_pow(2) - FieldElem.v_pow(-2)
    col = {}
    e = (1 if m == n else 0) - (1 if n == data.conj(m) else 0)
    col[(m, n)] = FieldElem.v_pow(2 * e)
    if n > m:
        col[(n, m)] = col.get((n, m), ZERO) + qq
    if n == data.conj(m):
        for a in range(m + 1, data.N + 1):
            ab = (a, data.conj(a))
            corr = qq * FieldElem.v_pow(-(data.rho2[data.conj(a)] + data.rho2[m]))
            col[ab] = col.get(ab, ZERO) - corr
    return {k: c for k, c in col.items() if c}


@dataclass
class RelationSet:
    """Nonzero quadratic relation candidates, one per index quadruple."""

    N: int
    elems: list
    scanned: int


def generate_relations(data: FRTData) -> RelationSet:
    """All candidates sum_{kl} R^{ij}_{kl} u^k_m u^l_n -
    sum_{kl} u^j_k u^i_l R^{lk}_{mn}; zero candidates discarded."""
    N = data.N
    rows = {}
    cols = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            rows[(a, b)] = _r_row(data, a, b)
            cols[(a, b)] = _r_col(data, a, b)
    elems = []
    scanned = 0
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            row = rows[(i, j)]
            for m in range(1, N + 1):
                for n in range(1, N + 1):
                    scanned += 1
                    terms = {}
                    for (k, l), c in row.items():
                        w = ((k, m), (l, n))
                        s = terms.get(w)
                        s = c if s is None else s + c
                        if s:
                            terms[w] = s
                        else:
                            terms.pop(w, None)
                    for (l, k), c in cols[(m, n)].items():
                        w = ((j, k), (i, l))
                        s = terms.get(w)
                        s = -c if s is None else s - c
                        if s:
                            terms[w] = s
                        else:
                            terms.pop(w, None)
                    if terms:
                        elems.append(NCPoly(N, terms))
    return RelationSet(N, elems, scanned)


# ---------------------------------------------------------------------------
# Rewriter (reduced row echelon form of the relation span)
# ---------------------------------------------------------------------------


class Rewriter:
    """Word-rewriting rules from the RREF of a homogeneous relation span.

    rules maps a leading word to its tail {word: coeff}, meaning
    lead = sum(coeff * word) modulo the ideal, with every tail word
    strictly deglex-smaller than the lead.
    """

    __slots__ = ("N", "rules", "by_first", "lengths", "rank", "provenance")

    def __init__(self, N: int, rules: dict, provenance=None):
        self.N = N
        self.rules = rules
        self.by_first = {}
        lengths = set()
        for lead, tail in rules.items():
            self.by_first.setdefault(lead[0], {})[lead] = tail
            lengths.add(len(lead))
        self.lengths = sorted(lengths)
        self.rank = len(rules)
        self.provenance = provenance

    def extended(self, new_rules: dict) -> "Rewriter":
        merged = dict(self.rules)
        merged.update(new_rules)
        return Rewriter(self.N, merged, self.provenance)


def _rows_to_rref(rows) -> dict:
    """Reduced row echelon form of a sparse row collection.

    Returns {lead: tail row with leading coefficient normalized out};
    every tail is fully reduced (contains no pivot word).  Strategy:
    forward echelon elimination on leading words only (keeps fill-in
    low while rows are sparse), then a single ascending interreduction
    pass."""
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row, key=word_key)
            prow = pivots.get(lead)
            if prow is None:
                break
            c = row.pop(lead)
            for w2, c2 in prow.items():
                s = row.get(w2)
                s = -c * c2 if s is None else s - c * c2
                if s:
                    row[w2] = s
                else:
                    row.pop(w2, None)
        if not row:
            continue
        lead = max(row, key=word_key)
        lc = row.pop(lead)
        inv = _inv(lc)
        pivots[lead] = {w: c * inv for w, c in row.items()}
    # interreduce tails, ascending in the lead order so that every rule
    # used for reduction is itself already fully reduced
    for lead in sorted(pivots, key=word_key):
        tail = pivots[lead]
        changed = True
        while changed:
            changed = False
            for w in sorted(tail, key=word_key, reverse=True):
                prow = pivots.get(w)
                if prow is None or w == lead:
                    continue
                c = tail.pop(w, None)
                if c is None:
                    continue
                for w2, c2 in prow.items():
                    s = tail.get(w2)
                    s = -c * c2 if s is None else s - c * c2
                    if s:
                        tail[w2] = s
                    else:
                        tail.pop(w2, None)
                changed = True
                break
    return pivots


def build_rewriter(rels: RelationSet) -> Rewriter:
    """RREF the degree-2 span; one rule per pivot."""
    pivots = _rows_to_rref(r.terms for r in rels.elems)
    rules = {lead: {w: -c for w, c in row.items()} for lead, row in pivots.items()}
    return Rewriter(rels.N, rules, provenance=rels)


def _nf_terms(terms: dict, rw: Rewriter) -> dict:
    """Normal form of a {word: coeff} dict under the rewriter."""
    by_first = rw.by_first
    lengths = rw.lengths
    out = {}
    agenda = dict(terms)
    while agenda:
        w, c = agenda.popitem()
        if not c:
            continue
        L = len(w)
        hit = None
        for pos in range(L):
            d = by_first.get(w[pos])
            if not d:
                continue
            for ln in lengths:
                if pos + ln <= L and w[pos:pos + ln] in d:
                    hit = (pos, ln, d[w[pos:pos + ln]])
                    break
            if hit:
                break
        if hit is None:
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        else:
            pos, ln, tail = hit
            pre, suf = w[:pos], w[pos + ln:]
            for tw, tc in tail.items():
                nw = pre + tw + suf
                s = agenda.get(nw)
                s = c * tc if s is None else s + c * tc
                if s:
                    agenda[nw] = s
                else:
                    agenda.pop(nw, None)
    return out


def normal_form(p: NCPoly, rw: Rewriter) -> NCPoly:
    """Leftmost-outermost reduction of every word until irreducible."""
    if p.N != rw.N:
        raise IndexOutOfRange("polynomial and rewriter disagree on N")
    return NCPoly(p.N, _nf_terms(p.terms, rw))


# ---------------------------------------------------------------------------
# Degree-bounded completion (critical pairs)
# ---------------------------------------------------------------------------


def complete_rewriter(rw: Rewriter, max_degree: int, max_rules: int = 20000):
    """Resolve critical pairs up to the degree bound; returns
    (extended rewriter, saturated flag)."""
    rules = dict(rw.rules)

    def all_pairs(leads):
        for w1 in leads:
            for w2 in leads:
                for o in range(1, min(len(w1), len(w2))):
                    if len(w1) + len(w2) - o > max_degree:
                        continue
                    if w1[-o:] == w2[:o]:
                        yield (w1, w2, o)

    queue = list(all_pairs(list(rules)))
    work = Rewriter(rw.N, rules)
    saturated = True
    idx = 0
    while idx < len(queue):
        w1, w2, o = queue[idx]
        idx += 1
        tail1 = work.rules.get(w1)
        tail2 = work.rules.get(w2)
        if tail1 is None or tail2 is None:
            continue
        suf = w2[o:]
        pre = w1[:len(w1) - o]
        left = {w + suf: c for w, c in tail1.items()}
        right = {pre + w: c for w, c in tail2.items()}
        diff = dict(left)
        for w, c in right.items():
            s = diff.get(w)
            s = -c if s is None else s - c
            if s:
                diff[w] = s
            else:
                diff.pop(w, None)
        diff = _nf_terms(diff, work)
        if not diff:
            continue
        lead = max(diff, key=word_key)
        lc = diff.pop(lead)
        ilc = _inv(lc)
        tail = {w: -c * ilc for w, c in diff.items()}
        work.rules[lead] = tail
        work.by_first.setdefault(lead[0], {})[lead] = tail
        if len(lead) not in work.lengths:
            work.lengths = sorted(set(work.lengths) | {len(lead)})
        if len(work.rules) > max_rules:
            saturated = False
            break
        for other in list(work.rules):
            for o2 in range(1, min(len(lead), len(other))):
                if len(lead) + len(other) - o2 <= max_degree:
                    if lead[-o2:] == other[:o2]:
                        queue.append((lead, other, o2))
                    if other[-o2:] == lead[:o2]:
                        queue.append((other, lead, o2))
    work.rank = len(work.rules)
    return work, saturated


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


@dataclass
class MembershipReport:
    status: str  # verified | probable | inconclusive
    certificate_size: int = 0
    millis: int = 0
    samples: list = dc_field(default_factory=list)
    detail: str = ""


_SPECIALIZE_SAMPLES = (Fraction(2), Fraction(3), Fraction(7, 5))


def _specialize_relations(rels: RelationSet, v0: Fraction):
    return [
        {w: c.eval_v(v0) for w, c in r.terms.items()} for r in rels.elems
    ]


def _specialized_rewriter(rels: RelationSet, v0: Fraction) -> Rewriter:
    pivots = _rows_to_rref(_specialize_relations(rels, v0))
    rules = {lead: {w: -c for w, c in row.items()} for lead, row in pivots.items()}
    return Rewriter(rels.N, rules)


def saturate_and_check(
    target: NCPoly,
    seed: RelationSet,
    actions=None,
    max_degree: int = 4,
    rewriter: Rewriter | None = None,
    symbolic_completion: bool | None = None,
) -> MembershipReport:
    """Semi-decide membership of a homogeneous target in the two-sided
    ideal of the relation span.

    Strategy: normal form against the degree-2 rules; then against the
    critical-pair completion bounded at max_degree (this has the same
    reducing power as row-reducing the span of all degree-bounded
    products word * relation * word); finally exact specialized checks
    at three rational points, reported as probable."""
    t0 = time.perf_counter()
    if target.degree() > max_degree:
        raise DegreeOverflow(
            f"target degree {target.degree()} exceeds bound {max_degree}"
        )
    rw = rewriter if rewriter is not None else build_rewriter(seed)
    if actions is not None:
        extra = []
        for r in seed.elems:
            extra.extend(actions(r))
        if extra:
            enriched = RelationSet(seed.N, seed.elems + list(extra), seed.scanned)
            rw = build_rewriter(enriched)
    nf = _nf_terms(dict(target.terms), rw)
    if not nf:
        ms = int((time.perf_counter() - t0) * 1000)
        return MembershipReport("verified", rw.rank, ms, detail="normal form")
    if symbolic_completion is None:
        symbolic_completion = seed.N <= 5
    if symbolic_completion:
        crw, _ = complete_rewriter(rw, max_degree)
        nf2 = _nf_terms(nf, crw)
        if not nf2:
            ms = int((time.perf_counter() - t0) * 1000)
            return MembershipReport(
                "verified", crw.rank, ms, detail="completed normal form"
            )
    samples = []
    all_zero = True
    for v0 in _SPECIALIZE_SAMPLES:
        srw = _specialized_rewriter(seed, v0)
        scrw, _ = complete_rewriter(srw, max_degree)
        st = {w: c.eval_v(v0) for w, c in target.terms.items()}
        snf = _nf_terms({w: c for w, c in st.items() if c}, scrw)
        samples.append(str(v0))
        if snf:
            all_zero = False
            break
    ms = int((time.perf_counter() - t0) * 1000)
    if all_zero:
        return MembershipReport(
            "probable", 0, ms, samples, "specialized membership at 3 points"
        )
    return MembershipReport("inconclusive", 0, ms, samples)


# ---------------------------------------------------------------------------
# Lemma verification: the nine commutation-relation families
# ---------------------------------------------------------------------------


def _u(N, i, j):
    return NCPoly.gen(N, i, j)


def _qp(k):
    return FieldElem.v_pow(2 * k)


def lemma_rel_instances(N: int):
    """Yield (family, indices, target NCPoly or None-for-vacuous,
    degree) for the nine relation families.

    The stated ranges of the degree-2 families exclude the boundary
    cases l = k' and i = j' (and the (1, N) column pair, covered by the
    first family); excluded instances are enumerated separately by
    verify_lemma_rels and are not asserted.
    """
    data = FRTData(N)
    conj = data.conj
    q = _qp(1)
    qq = q - _qp(-1)

    def emitted():
        # family 1: u^i_1 u^i_N = q^2 u^i_N u^i_1, i != i'
        got = False
        for i in range(1, N + 1):
            if i == conj(i):
                continue
            got = True
            yield ("col1N_same_row", (i,),
                   _u(N, i, 1) * _u(N, i, N) - (_u(N, i, N) * _u(N, i, 1)).scale(_qp(2)))
        if not got:
            yield ("col1N_same_row", (), None)

        # family 2: u^i_l u^i_k = q u^i_k u^i_l, l < k, i != i', l != k'
        got = False
        for i in range(1, N + 1):
            if i == conj(i):
                continue
            for l in range(1, N + 1):
                for k in range(l + 1, N + 1):
                    if l == conj(k):
                        continue
                    got = True
                    yield ("same_row_qcomm", (i, l, k),
                           _u(N, i, l) * _u(N, i, k) - (_u(N, i, k) * _u(N, i, l)).scale(q))
        if not got:
            yield ("same_row_qcomm", (), None)

        # family 3: u^j_l u^i_k = u^i_k u^j_l, l < k, i < j, l != k', i != j'
        got = False
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                if i == conj(j):
                    continue
                for l in range(1, N + 1):
                    for k in range(l + 1, N + 1):
                        if l == conj(k):
                            continue
                        got = True
                        yield ("cross_commute", (i, j, l, k),
                               _u(N, j, l) * _u(N, i, k) - _u(N, i, k) * _u(N, j, l))
        if not got:
            yield ("cross_commute", (), None)

        # family 4: u^j_1 u^i_N = q u^i_N u^j_1, i < j, i != j'
        got = False
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                if i == conj(j):
                    continue
                got = True
                yield ("col1N_lower_first", (i, j),
                       _u(N, j, 1) * _u(N, i, N) - (_u(N, i, N) * _u(N, j, 1)).scale(q))
        if not got:
            yield ("col1N_lower_first", (), None)

        # family 5: u^i_1 u^j_N = q u^j_N u^i_1 + (q^2-1) u^i_N u^j_1
        got = False
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                if i == conj(j):
                    continue
                got = True
                yield ("col1N_upper_first", (i, j),
                       _u(N, i, 1) * _u(N, j, N)
                       - (_u(N, j, N) * _u(N, i, 1)).scale(q)
                       - (_u(N, i, N) * _u(N, j, 1)).scale(_qp(2) - ONE))
        if not got:
            yield ("col1N_upper_first", (), None)

        # family 6: u^j_l u^i_k = u^i_k u^j_l - (q-q^-1) u^j_k u^i_l,
        # equivalently u^i_k u^j_l = u^j_l u^i_k + (q-q^-1) u^j_k u^i_l
        got = False
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                if i == conj(j):
                    continue
                for k in range(1, N + 1):
                    for l in range(k + 1, N + 1):
                        if k == conj(l):
                            continue
                        got = True
                        yield ("cross_qcomm", (i, j, k, l),
                               _u(N, i, k) * _u(N, j, l)
                               - _u(N, j, l) * _u(N, i, k)
                               - (_u(N, j, k) * _u(N, i, l)).scale(qq))
        if not got:
            yield ("cross_qcomm", (), None)

        # family 7: u^i_k u^j_k = q u^j_k u^i_k, k != k', i < j, i != j'
        got = False
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                if i == conj(j):
                    continue
                for k in range(1, N + 1):
                    if k == conj(k):
                        continue
                    got = True
                    yield ("same_col_qcomm", (i, j, k),
                           _u(N, i, k) * _u(N, j, k) - (_u(N, j, k) * _u(N, i, k)).scale(q))
        if not got:
            yield ("same_col_qcomm", (), None)

        # families 8 and 9: degree-4 commutations of the highest-weight
        # quadratics h_a = u^1_1 u^2_a - q u^2_1 u^1_a and
        # w_a = u^1_a u^2_N - q u^2_a u^1_N with w_N = h_N
        for a in range(2, N):
            h_a = _u(N, 1, 1) * _u(N, 2, a) - (_u(N, 2, 1) * _u(N, 1, a)).scale(q)
            w_N = _u(N, 1, 1) * _u(N, 2, N) - (_u(N, 2, 1) * _u(N, 1, N)).scale(q)
            yield ("hw_holomorphic", (a,),
                   h_a * w_N - (w_N * h_a).scale(_qp(2)))
        for a in range(2, N):
            w_a = _u(N, 1, a) * _u(N, 2, N) - (_u(N, 2, a) * _u(N, 1, N)).scale(q)
            w_N = _u(N, 1, 1) * _u(N, 2, N) - (_u(N, 2, 1) * _u(N, 1, N)).scale(q)
            yield ("hw_antiholomorphic", (a,),
                   w_N * w_a - (w_a * w_N).scale(_qp(2)))

    return emitted()


def excluded_boundary_instances(N: int):
    """Boundary index combinations the stated ranges leave out."""
    data = FRTData(N)
    conj = data.conj
    out = []
    for i in range(1, N + 1):
        if i == conj(i):
            continue
        for l in range(1, N + 1):
            k = conj(l)
            if l < k and (l, k) != (1, N):
                out.append(("same_row_qcomm", (i, l, k)))
    for i in range(1, N + 1):
        j = conj(i)
        if i < j:
            out.append(("cross_commute", (i, j)))
            out.append(("cross_qcomm", (i, j)))
    return out


def verify_lemma_rels(N: int, max_degree: int = 4) -> list:
    """Verify every admissible instance of the nine relation families.

    Degree-2 instances must reduce to zero by normal form; degree-4
    instances go through saturate_and_check.  Returns a list of report
    dicts."""
    data = FRTData(N)
    rels = generate_relations(data)
    rw = build_rewriter(rels)
    crw = None
    report = []
    for family, indices, target in lemma_rel_instances(N):
        t0 = time.perf_counter()
        if target is None:
            report.append({
                "family": family, "indices": list(indices),
                "status": "vacuous", "certificate_size": 0, "millis": 0,
            })
            continue
        if target.degree() <= 2:
            nf = normal_form(target, rw)
            status = "verified" if nf.is_zero() else "inconclusive"
            cert = rw.rank if nf.is_zero() else 0
            ms = int((time.perf_counter() - t0) * 1000)
            report.append({
                "family": family, "indices": list(indices),
                "status": status, "certificate_size": cert, "millis": ms,
            })
        else:
            nf = normal_form(target, rw)
            if nf.is_zero():
                ms = int((time.perf_counter() - t0) * 1000)
                report.append({
                    "family": family, "indices": list(indices),
                    "status": "verified", "certificate_size": rw.rank,
                    "millis": ms,
                })
                continue
            if N <= 5:
                if crw is None:
                    crw, _ = complete_rewriter(rw, max_degree)
                nf2 = normal_form(nf, crw)
                if nf2.is_zero():
                    ms = int((time.perf_counter() - t0) * 1000)
                    report.append({
                        "family": family, "indices": list(indices),
                        "status": "verified", "certificate_size": crw.rank,
                        "millis": ms,
                    })
                    continue
            mem = saturate_and_check(
                nf if N > 5 else NCPoly(N, nf.terms), rels,
                max_degree=max_degree, rewriter=rw,
                symbolic_completion=False,
            )
            mem.millis = int((time.perf_counter() - t0) * 1000)
            report.append({
                "family": family, "indices": list(indices),
                "status": mem.status, "certificate_size": mem.certificate_size,
                "millis": mem.millis,
            })
    for family, indices in excluded_boundary_instances(N):
        report.append({
            "family": family, "indices": list(indices),
            "status": "excluded", "certificate_size": 0, "millis": 0,
        })
    return report
