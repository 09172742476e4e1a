"""Free noncommutative polynomials over FieldElem.

A generator label is a pair (i, j) for u^i_j with 1 <= i, j <= N; a word
is a tuple of labels.  The monomial order is degree-lexicographic:
shorter words first, equal lengths compared letter by letter with
(i, j) < (k, l) lexicographically.
"""

from __future__ import annotations

from .errors import AlphabetMismatch, IndexOutOfRange
from .field import ONE, FieldElem

Word = tuple


def word_key(w: Word):
    """Sort key realizing the deglex order."""
    return len(w), w


def deglex_compare(w1: Word, w2: Word) -> int:
    """-1, 0 or 1 as w1 <, =, > w2 in deglex."""
    k1, k2 = word_key(w1), word_key(w2)
    return (k1 > k2) - (k1 < k2)


class NCPoly:
    """Finite FieldElem-linear combination of words."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[w] = c

    # -- constructors ------------------------------------------------
    @classmethod
    def zero(cls, N: int) -> "NCPoly":
        return cls(N)

    @classmethod
    def unit(cls, N: int) -> "NCPoly":
        return cls(N, {(): ONE})

    @classmethod
    def gen(cls, N: int, i: int, j: int) -> "NCPoly":
        if not (1 <= i <= N and 1 <= j <= N):
            raise IndexOutOfRange(f"u^{i}_{j} outside 1..{N}")
        return cls(N, {((i, j),): ONE})

    @classmethod
    def monomial(cls, N: int, word: Word, coeff: FieldElem) -> "NCPoly":
        return cls(N, {tuple(word): coeff})

    # -- helpers -----------------------------------------------------
    def _check(self, other: "NCPoly"):
        if self.N != other.N:
            raise AlphabetMismatch(f"N = {self.N} vs N = {other.N}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Maximal word length (-1 for the zero polynomial)."""
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {len(w) for w in self.terms}
        return len(degs) <= 1

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=word_key)

    def leading_coeff(self) -> FieldElem:
        return self.terms[self.leading_word()]

    def coeff(self, word: Word) -> FieldElem:
        from .field import ZERO

        return self.terms.get(tuple(word), ZERO)

    # -- arithmetic --------------------------------------------------
    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        p = NCPoly(self.N)
        p.terms = out
        return p

    def __neg__(self) -> "NCPoly":
        p = NCPoly(self.N)
        p.terms = {w: -c for w, c in self.terms.items()}
        return p

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c: FieldElem) -> "NCPoly":
        if not c:
            return NCPoly(self.N)
        p = NCPoly(self.N)
        p.terms = {w: co * c for w, co in self.terms.items()}
        return p

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        p = NCPoly(self.N)
        p.terms = out
        return p

    def mul_word_left(self, word: Word) -> "NCPoly":
        word = tuple(word)
        p = NCPoly(self.N)
        p.terms = {word + w: c for w, c in self.terms.items()}
        return p

    def mul_word_right(self, word: Word) -> "NCPoly":
        word = tuple(word)
        p = NCPoly(self.N)
        p.terms = {w + word: c for w, c in self.terms.items()}
        return p

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.N == other.N and (self - other).is_zero()

    def __hash__(self):
        return hash((self.N, frozenset(self.terms)))

    # -- formatting --------------------------------------------------
    @staticmethod
    def _fmt_word(w: Word) -> str:
        if not w:
            return "1"
        return " ".join(f"u[{i},{j}]" for i, j in w)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key):
            parts.append(f"({self.terms[w]})*{self._fmt_word(w)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly({self})"


def nc_mul(p: NCPoly, r: NCPoly) -> NCPoly:
    """Free-algebra product."""
    return p * r
