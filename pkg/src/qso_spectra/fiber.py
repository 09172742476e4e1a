"""q-deformed exterior fiber algebras on M generators.

Two one-sided exterior algebras Lambda^+ (generators e+_1..e+_M) and
Lambda^- (generators e-_1..e-_M) with straightening relations indexed by
the fiber conjugation i |-> M+1-i:

  Lambda^-:  e-_i ^ e-_i = 0                     (i != conj(i)),
             e-_i ^ e-_j = -q^{-1} e-_j ^ e-_i   (i < j, j != conj(i)),
             e-_c ^ e-_i + e-_i ^ e-_c
               = (q - q^{-1}) sum_{j<i} lam_i^{-1} lam_j q^{j-i+1}
                 e-_j ^ e-_conj(j)               (c = conj(i) > i),
             e-_m ^ e-_m = (q^{1/2} - q^{-1/2}) sum_{j<m}
                 lam_m^{-1} lam_j q^{j-m+1} e-_j ^ e-_conj(j)
                                                 (odd M, m the middle),
  Lambda^+:  the mirror with q |-> q^{-1} in the swap and correction
             exponents and a global minus on the correction sums.

The swap direction (descending pair (x, y) |-> -q^{+1} (y, x) on the
minus side, -q^{-1} on the plus side) is the unique choice that makes
the straightening rules locally confluent together with the fixed
conjugate-pair corrections (checked exhaustively on length-3 words for
M <= 6 with generic lambda); the opposite direction fails confluence
for M >= 5.

Mixed e+/e- commutation relations are never used: all computations on
two-block forms route through centrality of the Kaehler form, inserting
e+_i ^ e-_i between the plus block and the minus block.

The imaginary unit is never adjoined to the coefficient field: a
general form stores a pair (re, im) of real coefficients per basis key
(I, J), representing (re + i*im) e+_I ^ e-_J; the power-of-kappa
expansions keep a single global i^l as an integer exponent.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, isqrt
from time import perf_counter

from .errors import DecompositionSingular, IndexOutOfRange
from .field import ONE, ZERO, FieldElem

_NU = FieldElem.v_pow(2) - FieldElem.v_pow(-2)      # q - q^{-1}
_NU_HALF = FieldElem.v_pow(1) - FieldElem.v_pow(-1)  # q^{1/2} - q^{-1/2}


def _q_pow(k: int) -> FieldElem:
    return FieldElem.v_pow(2 * k)


class ExtAlgParams:
    """Parameters of the two fiber exterior algebras on M generators.

    The conjugation is conj(i) = M + 1 - i; a self-conjugate (middle)
    index exists exactly when M is odd, matching the ambient parity
    (M = N - 2 has the parity of N).  lam_minus / lam_plus are the two
    independent nonzero scaling families entering the conjugate-pair
    corrections; they default to 1.
    """

    __slots__ = ("M", "odd", "middle", "lam_minus", "lam_plus")

    def __init__(self, M: int, lam_minus=None, lam_plus=None):
        if M < 1:
            raise ValueError("M >= 1 required")
        self.M = M
        self.odd = bool(M % 2)
        self.middle = (M + 1) // 2 if self.odd else None

        def build(overrides):
            lam = {i: ONE for i in range(1, M + 1)}
            if overrides:
                for i, val in overrides.items():
                    if not 1 <= i <= M:
                        raise IndexOutOfRange(f"lambda index {i} outside 1..{M}")
                    elem = val if isinstance(val, FieldElem) else \
                        FieldElem.from_rational(val)
                    if not elem:
                        raise ValueError("lambda_i must be nonzero")
                    lam[i] = elem
            return lam

        self.lam_minus = build(lam_minus)
        self.lam_plus = build(lam_plus)

    def conj(self, i: int) -> int:
        return self.M + 1 - i


# ---------------------------------------------------------------------------
# Straightening
# ---------------------------------------------------------------------------

def _reduce_pair(params: ExtAlgParams, side: str, x: int, y: int):
    """Rewrite the adjacent factor e_x ^ e_y, or None if irreducible.

    Returns a dict {(a, b): coeff} replacing the two letters.
    """
    M = params.M
    lam = params.lam_minus if side == "-" else params.lam_plus
    sgn = 1 if side == "-" else -1  # exponent / correction-sum sign mirror
    if x == y:
        if params.odd and x == params.middle:
            m = params.middle
            out = {}
            for j in range(1, m):
                c = _NU_HALF * lam[m].inverse() * lam[j] * \
                    FieldElem.v_pow(2 * sgn * (j - m + 1))
                out[(j, params.conj(j))] = c if side == "-" else -c
            return out
        return {}
    if x > y:
        if y == params.conj(x):
            i = y
            out = {(y, x): -ONE}
            for j in range(1, i):
                c = _NU * lam[i].inverse() * lam[j] * \
                    FieldElem.v_pow(2 * sgn * (j - i + 1))
                c = c if side == "-" else -c
                out[(j, params.conj(j))] = out.get((j, params.conj(j)), ZERO) + c
            return out
        return {(y, x): -FieldElem.v_pow(2 * sgn)}
    return None


def _straighten(params: ExtAlgParams, word, side: str):
    """Normal form of a wedge word as {strictly increasing tuple: coeff}.

    Every rule replaces a two-letter factor by lexicographically smaller
    factors, so the worklist terminates; confluence makes the reduction
    order immaterial.
    """
    for a in word:
        if not 1 <= a <= params.M:
            raise IndexOutOfRange(f"generator index {a} outside 1..{params.M}")
    work = {tuple(word): ONE}
    done = {}
    while work:
        w, c = work.popitem()
        if not c:
            continue
        hit = None
        for p in range(len(w) - 1):
            r = _reduce_pair(params, side, w[p], w[p + 1])
            if r is not None:
                hit = (p, r)
                break
        if hit is None:
            acc = done.get(w)
            done[w] = c if acc is None else acc + c
            continue
        p, r = hit
        for pair, cc in r.items():
            nw = w[:p] + pair + w[p + 2:]
            acc = work.get(nw)
            work[nw] = c * cc if acc is None else acc + c * cc
    return {w: c for w, c in done.items() if c}


def straighten_minus(params: ExtAlgParams, word) -> "FiberForm":
    """Normal form of e-_{w1} ^ ... ^ e-_{wk} as a FiberForm."""
    form = FiberForm(params.M)
    for j_tuple, c in _straighten(params, word, "-").items():
        form.add((), j_tuple, c, ZERO)
    return form


def straighten_plus(params: ExtAlgParams, word) -> "FiberForm":
    """Normal form of e+_{w1} ^ ... ^ e+_{wk} as a FiberForm."""
    form = FiberForm(params.M)
    for i_tuple, c in _straighten(params, word, "+").items():
        form.add(i_tuple, (), c, ZERO)
    return form


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------

class FiberForm:
    """Sum of (re + i*im) e+_I ^ e-_J over sorted-basis keys (I, J)."""

    __slots__ = ("M", "terms")

    def __init__(self, M: int):
        self.M = M
        self.terms = {}  # (I, J) -> [re, im]

    def add(self, I, J, re, im) -> None:
        key = (tuple(I), tuple(J))
        cur = self.terms.get(key)
        if cur is None:
            cur = [ZERO, ZERO]
            self.terms[key] = cur
        cur[0] = cur[0] + re
        cur[1] = cur[1] + im
        if not cur[0] and not cur[1]:
            del self.terms[key]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FiberForm) or self.M != other.M:
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = [ZERO, ZERO]
        for k in keys:
            a = self.terms.get(k, zero)
            b = other.terms.get(k, zero)
            if a[0] != b[0] or a[1] != b[1]:
                return False
        return True

    def scaled(self, re, im=ZERO) -> "FiberForm":
        """Multiply by the complex scalar re + i*im (real FieldElems)."""
        out = FiberForm(self.M)
        for (I, J), (a, b) in self.terms.items():
            out.add(I, J, a * re - b * im, a * im + b * re)
        return out

    def times_i_pow(self, p: int) -> "FiberForm":
        """Multiply by i^p."""
        p %= 4
        out = FiberForm(self.M)
        for (I, J), (a, b) in self.terms.items():
            if p == 0:
                out.add(I, J, a, b)
            elif p == 1:
                out.add(I, J, -b, a)
            elif p == 2:
                out.add(I, J, -a, -b)
            else:
                out.add(I, J, b, -a)
        return out

    def plus(self, other: "FiberForm") -> "FiberForm":
        out = FiberForm(self.M)
        for (I, J), (a, b) in self.terms.items():
            out.add(I, J, a, b)
        for (I, J), (a, b) in other.terms.items():
            out.add(I, J, a, b)
        return out

    def bidegrees(self):
        return {(len(I), len(J)) for I, J in self.terms}

    def degree(self) -> int:
        """Total degree; raises if not homogeneous."""
        degs = {len(I) + len(J) for I, J in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop()

    @classmethod
    def one(cls, M: int) -> "FiberForm":
        f = cls(M)
        f.add((), (), ONE, ZERO)
        return f


def kappa(params: ExtAlgParams) -> FiberForm:
    """The Kaehler fiber form i * sum_i e+_i ^ e-_i."""
    f = FiberForm(params.M)
    for i in range(1, params.M + 1):
        f.add((i,), (i,), ZERO, ONE)
    return f


class KappaExpansion:
    """kappa^l = i^l * sum f_{l,I,J} e+_I ^ e-_J with real f's."""

    __slots__ = ("M", "l", "coeffs")

    def __init__(self, M: int, l: int, coeffs):
        self.M = M
        self.l = l
        self.coeffs = coeffs  # (I, J) -> FieldElem

    def to_form(self) -> FiberForm:
        f = FiberForm(self.M)
        for (I, J), c in self.coeffs.items():
            f.add(I, J, c, ZERO)
        return f.times_i_pow(self.l)


def _insert_pair(params: ExtAlgParams, coeffs, i: int, mode: str):
    """One e+_i ^ e-_i insertion against each basis term of `coeffs`.

    mode "between": e+_I ^ (e+_i ^ e-_i) ^ e-_J -- the central-insertion
    slot.  mode "outside": e+_i ^ (e+_I ^ e-_J) ^ e-_i, valid against a
    central element (kappa power); agreement of the two is the
    computational content of centrality and a regression test.
    Yields ((I', J'), coeff) contributions.
    """
    for (I, J), c in coeffs.items():
        if mode == "between":
            plus = _straighten(params, I + (i,), "+")
            minus = _straighten(params, (i,) + J, "-")
        else:
            plus = _straighten(params, (i,) + I, "+")
            minus = _straighten(params, J + (i,), "-")
        for ip, cp in plus.items():
            for jm, cm in minus.items():
                yield (ip, jm), c * cp * cm


def _kappa_step(params: ExtAlgParams, coeffs, mode: str = "between"):
    out = {}
    for i in range(1, params.M + 1):
        for key, c in _insert_pair(params, coeffs, i, mode):
            acc = out.get(key)
            out[key] = c if acc is None else acc + c
    return {k: c for k, c in out.items() if c}


def kappa_power(params: ExtAlgParams, l: int, mode: str = "between") -> KappaExpansion:
    """Exact expansion of kappa^l over the sorted basis."""
    if l < 0 or l > 2 * params.M:
        raise ValueError("need 0 <= l <= 2M")
    coeffs = {((), ()): ONE}
    for _ in range(l):
        coeffs = _kappa_step(params, coeffs, mode)
    return KappaExpansion(params.M, l, coeffs)


def lefschetz(params: ExtAlgParams, form: FiberForm) -> FiberForm:
    """kappa ^ form, raising bidegree by (1, 1)."""
    out = FiberForm(params.M)
    for i in range(1, params.M + 1):
        for (I, J), (a, b) in form.terms.items():
            plus = _straighten(params, I + (i,), "+")
            minus = _straighten(params, (i,) + J, "-")
            for ip, cp in plus.items():
                for jm, cm in minus.items():
                    c = cp * cm
                    # the inserted kappa term carries a factor i
                    out.add(ip, jm, -b * c, a * c)
    return out


# ---------------------------------------------------------------------------
# Classical q = 1 oracle
# ---------------------------------------------------------------------------

def classical_kappa_coeffs(M: int, l: int):
    """Independent q = 1 oracle for the diagonal kappa-power coefficients.

    Classically all 2M generators anticommute and square to zero, so
    (sum_i p_i m_i)^l is expanded over distinct index tuples and each
    word p_{i1} m_{i1} ... p_{il} m_{il} is sorted into the block form
    p_I m_I by counting transpositions.  Returns {I: integer}.
    """
    out = {}
    for subset in combinations(range(1, M + 1), l):
        total = 0
        for perm in _permutations(subset):
            word = []
            for i in perm:
                word.append((0, i))  # p_i
                word.append((1, i))  # m_i
            total += _sort_sign(word)
        if total:
            out[subset] = total
    return out


def _permutations(items):
    items = list(items)
    if not items:
        yield ()
        return
    for k, x in enumerate(items):
        for rest in _permutations(items[:k] + items[k + 1:]):
            yield (x,) + rest


def _sort_sign(word) -> int:
    """Sign of the permutation sorting distinct letters (bubble count)."""
    w = list(word)
    sign = 1
    for a in range(len(w)):
        for b in range(len(w) - 1 - a):
            if w[b] > w[b + 1]:
                w[b], w[b + 1] = w[b + 1], w[b]
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Scalar evaluation helpers (exact, at v = sqrt(q0))
# ---------------------------------------------------------------------------

def _sqrt_fraction(q0: Fraction):
    """Exact sqrt of a positive rational, or None if irrational."""
    pn, pd = q0.numerator, q0.denominator
    rn, rd = isqrt(pn), isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


def make_evaluator(q0):
    """Exact scalar evaluator FieldElem -> Fraction | QuadExt at v = sqrt(q0)."""
    q0 = Fraction(q0)
    root = _sqrt_fraction(q0)
    if root is not None:
        return lambda x: x.eval_v(root)

    def ev(x):
        a, b = x.eval_sqrtq(q0)
        if b:
            raise ValueError("unexpected adjoint part in fiber coefficient")
        return a
    return ev


# ---------------------------------------------------------------------------
# Exact linear algebra (field-generic: Fraction, QuadExt or FieldElem)
# ---------------------------------------------------------------------------

def _rank(columns, nrows: int) -> int:
    """Rank of the matrix with the given dense columns."""
    rows = [[col[r] for col in columns] for r in range(nrows)]
    return _echelon(rows)[0]


def _echelon(rows):
    """In-place fraction-free-ish elimination; returns (rank, pivot cols)."""
    rank = 0
    pivots = []
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][c]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c]
        rows[rank] = [x / inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(c)
        rank += 1
    return rank, pivots


def _nullspace(columns, nrows: int):
    """Nullspace basis (as coordinate lists over the columns)."""
    ncols = len(columns)
    rows = [[col[r] for col in columns] for r in range(nrows)]
    if not rows:
        rows = [[0] * ncols] if ncols else []
    rank, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [None] * ncols
        for c in range(ncols):
            vec[c] = 0
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def _solve(columns, rhs, nrows: int):
    """Solve sum_j x_j * columns[j] = rhs, or None if no unique solution."""
    ncols = len(columns)
    rows = [[col[r] for col in columns] + [rhs[r]] for r in range(nrows)]
    rank, pivots = _echelon(rows)
    if any(p == ncols for p in pivots):
        return None  # inconsistent
    if rank != ncols:
        return None  # underdetermined
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return x


# ---------------------------------------------------------------------------
# Lefschetz matrices, primitive decomposition, Hodge map
# ---------------------------------------------------------------------------

def _basis(M: int, k: int):
    """Sorted basis keys (I, J) of total degree k."""
    out = []
    for a in range(max(0, k - M), min(k, M) + 1):
        for I in combinations(range(1, M + 1), a):
            for J in combinations(range(1, M + 1), k - a):
                out.append((I, J))
    return out


class _LefschetzTable:
    """Symbolic single-insertion map on all basis keys (i-factor dropped).

    L(e+_I ^ e-_J) = i * sum over targets; the uniform i per application
    never affects ranks or solvability, so it is bookkept by the caller.
    """

    def __init__(self, params: ExtAlgParams):
        self.params = params
        self.map = {}
        M = params.M
        for k in range(0, 2 * M + 1):
            for key in _basis(M, k):
                self.map[key] = self._image(key)

    def _image(self, key):
        I, J = key
        out = {}
        for i in range(1, self.params.M + 1):
            plus = _straighten(self.params, I + (i,), "+")
            minus = _straighten(self.params, (i,) + J, "-")
            for ip, cp in plus.items():
                for jm, cm in minus.items():
                    c = cp * cm
                    tgt = (ip, jm)
                    acc = out.get(tgt)
                    out[tgt] = c if acc is None else acc + c
        return {t: c for t, c in out.items() if c}

    def numeric(self, ev):
        return {key: {t: ev(c) for t, c in img.items()}
                for key, img in self.map.items()}


def _apply_num(num_map, vec):
    out = {}
    for key, c in vec.items():
        if not c:
            continue
        for tgt, m in num_map[key].items():
            acc = out.get(tgt)
            out[tgt] = c * m if acc is None else acc + c * m
    return {k: c for k, c in out.items() if c}


def verify_lefschetz_iso(params: ExtAlgParams, q0, table: _LefschetzTable | None = None) -> dict:
    """Certify bijectivity of L^{M-k}: degree k -> degree 2M-k by exact rank."""
    t0 = perf_counter()
    M = params.M
    if table is None:
        table = _LefschetzTable(params)
    num = table.numeric(make_evaluator(q0))
    results = []
    failures = []
    for k in range(M):
        src = _basis(M, k)
        tgt = _basis(M, 2 * M - k)
        index = {key: r for r, key in enumerate(tgt)}
        cols = []
        for key in src:
            vec = {key: Fraction(1)}
            for _ in range(M - k):
                vec = _apply_num(num, vec)
            col = [0] * len(tgt)
            for t, c in vec.items():
                col[index[t]] = c
            cols.append(col)
        dim = len(src)
        rank = _rank(cols, len(tgt))
        ok = rank == dim == len(tgt)
        results.append({"k": k, "dim": dim, "rank": rank,
                        "status": "bijective" if ok else "NotBijective"})
        if not ok:
            failures.append(results[-1])
    return {
        "M": M,
        "q0": str(Fraction(q0)),
        "degrees": results,
        "failures": failures,
        "status": "verified" if not failures else "failed",
        "millis": int(1000 * (perf_counter() - t0)),
    }


def primitive_decompose(params: ExtAlgParams, form: FiberForm, q0=None):
    """Lefschetz decomposition form = sum_j L^j(w_j), each w_j primitive.

    Symbolic over the coefficient field when q0 is None (intended for
    M <= 4); exact rational/quadratic arithmetic at v = sqrt(q0)
    otherwise.  Returns a list of (j, FiberForm).  Raises
    DecompositionSingular when the sample point degenerates the system.
    """
    M = params.M
    k = form.degree()
    if not form:
        return []
    table = _LefschetzTable(params)
    if q0 is None:
        ev = lambda x: x
        zero, one = ZERO, ONE
    else:
        ev = make_evaluator(q0)
        zero, one = Fraction(0), Fraction(1)
    num = table.numeric(ev) if q0 is not None else {
        key: dict(img) for key, img in table.map.items()}

    tgt = _basis(M, k)
    index = {key: r for r, key in enumerate(tgt)}
    js = [j for j in range(max(0, k - M), k // 2 + 1) if k - 2 * j <= M]
    columns = []
    col_info = []  # (j, primitive basis vector as {key: scalar})
    for j in js:
        d = k - 2 * j
        src = _basis(M, d)
        # primitive subspace: kernel of L^{M-d+1} on degree d
        pcols = []
        ptgt = _basis(M, 2 * M - d + 2)
        pindex = {key: r for r, key in enumerate(ptgt)}
        for key in src:
            vec = {key: one}
            for _ in range(M - d + 1):
                vec = _apply_num(num, vec)
            col = [zero] * len(ptgt)
            for t, c in vec.items():
                col[pindex[t]] = c
            pcols.append(col)
        null = _nullspace(pcols, len(ptgt))
        for coords in null:
            prim = {}
            for c, key in zip(coords, src):
                if c:
                    prim[key] = prim.get(key, zero) + c
            vec = dict(prim)
            for _ in range(j):
                vec = _apply_num(num, vec)
            col = [zero] * len(tgt)
            for t, c in vec.items():
                col[index[t]] = c
            columns.append(col)
            col_info.append((j, prim))

    def solve_component(part):
        rhs = [zero] * len(tgt)
        todo = False
        for (I, J), pair in form.terms.items():
            val = ev(pair[part]) if q0 is not None else pair[part]
            if val:
                rhs[index[(I, J)]] = val
                todo = True
        if not todo:
            return None
        sol = _solve(columns, rhs, len(tgt))
        if sol is None:
            raise DecompositionSingular(
                f"Lefschetz decomposition singular (M={M}, degree {k}, q0={q0})")
        return sol

    sol_re = solve_component(0)
    sol_im = solve_component(1)
    parts = {}
    for idx, (j, prim) in enumerate(col_info):
        xr = sol_re[idx] if sol_re is not None else zero
        xi = sol_im[idx] if sol_im is not None else zero
        if not xr and not xi:
            continue
        f = parts.get(j)
        if f is None:
            f = FiberForm(M)
            parts[j] = f
        for key, c in prim.items():
            re = xr * c if xr else (ZERO if q0 is None else zero)
            im = xi * c if xi else (ZERO if q0 is None else zero)
            if q0 is None:
                f.add(key[0], key[1], re, im)
            else:
                # numeric scalars: wrap back into the generic FiberForm slots
                f.add(key[0], key[1], _NumWrap(re), _NumWrap(im))
    # the solve used the i-less insertion table, i.e. L~ = L / i, so the
    # raw j-component is i^j w_j; undo the rotation to return the true w_j
    return sorted((j, f.times_i_pow(-j % 4)) for j, f in parts.items())


class _NumWrap:
    """Adapter letting FiberForm hold exact numeric scalars.

    Provides just the arithmetic FiberForm and the Hodge map use, over
    Fraction or QuadExt payloads.
    """

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v.v if isinstance(v, _NumWrap) else v

    def _val(self, other):
        if isinstance(other, _NumWrap):
            return other.v
        if isinstance(other, FieldElem):
            if not other:
                return 0
            if other.is_rational():
                return other.as_fraction()
            raise TypeError("cannot mix symbolic and numeric coefficients")
        return other

    def __add__(self, other):
        return _NumWrap(self.v + self._val(other))

    __radd__ = __add__

    def __sub__(self, other):
        return _NumWrap(self.v - self._val(other))

    def __rsub__(self, other):
        return _NumWrap(self._val(other) - self.v)

    def __mul__(self, other):
        return _NumWrap(self.v * self._val(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return _NumWrap(self.v / self._val(other))

    def __neg__(self):
        return _NumWrap(-self.v)

    def __bool__(self):
        return bool(self.v)

    def __eq__(self, other):
        try:
            return self.v == self._val(other)
        except TypeError:
            return NotImplemented

    def __repr__(self):
        return f"_NumWrap({self.v!r})"


def hodge(params: ExtAlgParams, form: FiberForm, q0=None) -> FiberForm:
    """Hodge map via the Weil formula on the Lefschetz decomposition:

        *(L^j w) = (-1)^{k(k+1)/2} i^{a-b} j!/(M-j-k)! L^{M-j-k}(w)

    for w primitive of bidegree (a, b), total degree k = a + b.
    """
    M = params.M
    out = FiberForm(M)
    if not form:
        return out
    for j, wj in primitive_decompose(params, form, q0):
        k = wj.degree()
        scale = Fraction((-1) ** (k * (k + 1) // 2) * factorial(j),
                         factorial(M - j - k))
        grouped = {}
        for (I, J), (re, im) in wj.terms.items():
            grouped.setdefault((len(I), len(J)), FiberForm(M)).add(I, J, re, im)
        for (a, b), g in grouped.items():
            piece = g.times_i_pow((a - b) % 4).scaled(
                FieldElem.from_rational(scale) if q0 is None else _NumWrap(scale))
            for _ in range(M - j - k):
                piece = _lefschetz_generic(params, piece, q0)
            out = out.plus(piece)
    return out


def _lefschetz_generic(params: ExtAlgParams, form: FiberForm, q0):
    if q0 is None:
        return lefschetz(params, form)
    ev = make_evaluator(q0)
    out = FiberForm(params.M)
    for i in range(1, params.M + 1):
        for (I, J), (a, b) in form.terms.items():
            plus = _straighten(params, I + (i,), "+")
            minus = _straighten(params, (i,) + J, "-")
            for ip, cp in plus.items():
                for jm, cm in minus.items():
                    c = _NumWrap(ev(cp * cm))
                    out.add(ip, jm, -b * c, a * c)
    return out


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def verify_f_properties(params: ExtAlgParams) -> dict:
    """Coefficient laws of the kappa powers, against the classical oracle.

    For every l <= M: f_{l,I,J}(1) = 0 off the diagonal; the diagonal
    values at q = 1 carry sign (-1)^{l(l-1)/2}; the observed diagonal
    value is (-1)^{l(l-1)/2} l!, cross-checked against an independent
    classical anticommuting computation.
    """
    t0 = perf_counter()
    M = params.M
    checks = 0
    failures = []
    expansions = []
    coeffs = {((), ()): ONE}
    records = []
    for l in range(M + 1):
        if l:
            coeffs = _kappa_step(params, coeffs)
        oracle = classical_kappa_coeffs(M, l)
        want_sign = (-1) ** (l * (l - 1) // 2)
        want_val = want_sign * factorial(l)
        seen_diag = set()
        for (I, J), c in coeffs.items():
            at1 = c.eval_v(1)
            checks += 1
            if I != J:
                if at1 != 0:
                    failures.append({"l": l, "I": I, "J": J,
                                     "reason": f"f(1) = {at1} != 0 off-diagonal"})
                continue
            seen_diag.add(I)
            if at1 == 0 or (at1 > 0) - (at1 < 0) != want_sign:
                failures.append({"l": l, "I": I, "J": J,
                                 "reason": f"sign(f(1)) = sign({at1}) != {want_sign}"})
            if at1 != want_val:
                failures.append({"l": l, "I": I, "J": J,
                                 "reason": f"f(1) = {at1} != {want_val} (observed law)"})
            if at1 != oracle.get(I, 0):
                failures.append({"l": l, "I": I, "J": J,
                                 "reason": f"f(1) = {at1} disagrees with classical "
                                           f"oracle {oracle.get(I, 0)}"})
        expected_diag = {s for s in combinations(range(1, M + 1), l)}
        for I in expected_diag - seen_diag:
            failures.append({"l": l, "I": I, "J": I,
                             "reason": "diagonal coefficient missing"})
            checks += 1
        records.append({"l": l, "terms": len(coeffs),
                        "diag_at_1": want_val if not failures else None})
        expansions.append(KappaExpansion(M, l, dict(coeffs)))
    return {
        "M": M,
        "checks": checks,
        "records": records,
        "failures": failures,
        "status": "verified" if not failures else "failed",
        "millis": int(1000 * (perf_counter() - t0)),
        "expansions": expansions,
    }


def g_expansion(params: ExtAlgParams, l: int):
    """Mirrored kappa powers on minus-first forms:
    [kappa^l] = i^l sum g_{l,I,J} e-_I ^ e+_J, built by inserting
    e-_i ^ e+_i between the minus block and the plus block."""
    coeffs = {((), ()): ONE}
    for _ in range(l):
        out = {}
        for i in range(1, params.M + 1):
            for (I, J), c in coeffs.items():
                minus = _straighten(params, I + (i,), "-")
                plus = _straighten(params, (i,) + J, "+")
                for jm, cm in minus.items():
                    for ip, cp in plus.items():
                        key = (jm, ip)
                        cc = c * cm * cp
                        acc = out.get(key)
                        out[key] = cc if acc is None else acc + cc
        coeffs = {k: c for k, c in out.items() if c}
    return coeffs


def verify_nonprimitive(params: ExtAlgParams, extra_samples=(Fraction(101, 100),)) -> dict:
    """kappa^{M-1} ^ e+_M ^ e-_M is a nonzero multiple of the top form
    (nonzero at q = 1 and at the extra sample points), plus the mirrored
    minus-first computation through the g coefficients."""
    t0 = perf_counter()
    M = params.M
    failures = []
    details = {}

    def top_wedge(coeffs, first_side):
        """coeffs is an (M-1)-power expansion; wedge with the (M, M) pair
        in the given block convention and collect basis terms."""
        out = {}
        for (I, J), c in coeffs.items():
            if first_side == "+":
                left = _straighten(params, I + (M,), "+")
                right = _straighten(params, (M,) + J, "-")
            else:
                left = _straighten(params, I + (M,), "-")
                right = _straighten(params, (M,) + J, "+")
            for lk, lc in left.items():
                for rk, rc in right.items():
                    key = (lk, rk)
                    cc = c * lc * rc
                    acc = out.get(key)
                    out[key] = cc if acc is None else acc + cc
        return {k: c for k, c in out.items() if c}

    full = tuple(range(1, M + 1))
    for label, coeffs, first_side in (
        ("f", kappa_power(params, M - 1).coeffs, "+"),
        ("g", g_expansion(params, M - 1), "-"),
    ):
        res = top_wedge(coeffs, first_side)
        keys = list(res)
        if keys != [(full, full)]:
            failures.append({"law": label,
                             "reason": f"expected only the top pair, got {keys}"})
            continue
        c = res[(full, full)]
        at1 = c.eval_v(1)
        entry = {"coefficient": c.to_text(), "at_1": str(at1)}
        if at1 == 0:
            failures.append({"law": label, "reason": "top coefficient vanishes at q = 1"})
        for q0 in extra_samples:
            s = c.sign_at_sqrtq(Fraction(q0))
            entry[f"sign_at_{q0}"] = s
            if s == 0:
                failures.append({"law": label,
                                 "reason": f"top coefficient vanishes at q = {q0}"})
        details[label] = entry
    return {
        "M": M,
        "details": details,
        "failures": failures,
        "status": "verified" if not failures else "failed",
        "millis": int(1000 * (perf_counter() - t0)),
    }


def random_form(params: ExtAlgParams, a: int, b: int, rng: random.Random,
                terms: int = 3) -> FiberForm:
    """Random bidegree-(a, b) form with small rational coefficients."""
    M = params.M
    keys_a = list(combinations(range(1, M + 1), a))
    keys_b = list(combinations(range(1, M + 1), b))
    f = FiberForm(M)
    for _ in range(terms):
        I = rng.choice(keys_a)
        J = rng.choice(keys_b)
        re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        im = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        f.add(I, J, FieldElem.from_rational(re), FieldElem.from_rational(im))
    return f


def verify_hodge_shape(params: ExtAlgParams, q0=Fraction(11, 10),
                       seed: int = 0, trials: int = 4) -> dict:
    """Bidegree law (a, b) -> (M-b, M-a) on random forms, and the exact
    identity *(1) = kappa^M / M!."""
    t0 = perf_counter()
    M = params.M
    rng = random.Random(seed)
    failures = []
    checks = 0

    star_one = hodge(params, FiberForm.one(M))
    want = kappa_power(params, M).to_form().scaled(
        FieldElem.from_rational(Fraction(1, factorial(M))))
    checks += 1
    if star_one != want:
        failures.append({"reason": "*(1) != kappa^M / M!"})

    for a in range(M + 1):
        for b in range(M + 1):
            for _ in range(trials):
                form = random_form(params, a, b, rng)
                if not form:
                    continue
                checks += 1
                try:
                    image = hodge(params, form, q0)
                except DecompositionSingular as exc:
                    failures.append({"a": a, "b": b, "reason": str(exc)})
                    continue
                bad = {bd for bd in image.bidegrees() if bd != (M - b, M - a)}
                if bad:
                    failures.append({"a": a, "b": b,
                                     "reason": f"output bidegrees {sorted(bad)} != "
                                               f"{(M - b, M - a)}"})
    return {
        "M": M,
        "q0": str(Fraction(q0)),
        "checks": checks,
        "failures": failures,
        "status": "verified" if not failures else "failed",
        "millis": int(1000 * (perf_counter() - t0)),
    }
