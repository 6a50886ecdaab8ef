"""The quantum coordinate ring of N x N quantum matrices.

Generators x[i,j] (1-based row i, column j) obey, for i < j and k < l:

    x[i,k] x[j,k] = q x[j,k] x[i,k]            (same column)
    x[k,i] x[k,j] = q x[k,j] x[k,i]            (same row)
    x[i,l] x[j,k] = x[j,k] x[i,l]              (antidiagonal pair)
    x[i,k] x[j,l] - x[j,l] x[i,k] = (q - q^-1) x[i,l] x[j,k]   (diagonal pair)

A monomial is *normal* when its letters are weakly increasing in the
row-major order on (row, col).  Every word straightens to a unique integer
combination of normal monomials; the rewriter below works one letter at a
time, inserting a generator into an already-normal word from the right.
Each rewrite either swaps an adjacent out-of-order pair at fixed inversion
count zero cost (antidiagonal), scales it (same row/column), or splits off a
word with strictly fewer inversions (diagonal), so the process terminates.

Letters are encoded as small integers g = (row-1)*N + (col-1); a normal
monomial is a sorted tuple of letters.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, permutations

from .coeff import L_ONE, L_QCOMM, L_QINV, Laurent
from .partitions import inversions


class AmbientMismatch(ValueError):
    """Operands live over different ambient matrix sizes."""


class IndexOutOfRange(ValueError):
    """A generator index falls outside 1..N."""


class SizeMismatch(ValueError):
    """Row and column index sets of a minor differ in size."""


class Inhomogeneous(ValueError):
    """The polynomial has no common multidegree."""


def gen_id(N: int, row: int, col: int) -> int:
    if not (1 <= row <= N and 1 <= col <= N):
        raise IndexOutOfRange(f"generator ({row},{col}) outside 1..{N}")
    return (row - 1) * N + (col - 1)


def gen_rc(N: int, g: int) -> tuple:
    return g // N + 1, g % N + 1


# ---------------------------------------------------------------------------
# straightening engine
# ---------------------------------------------------------------------------

# per-N memo of nontrivial letter insertions: (mono, g) -> {mono: Laurent}
_INSERT_CACHES: dict = {}

# only memoize short carriers; longer words recurse into cached territory
_CACHE_LEN_MAX = 6


def _insert_cache(N):
    cache = _INSERT_CACHES.get(N)
    if cache is None:
        cache = _INSERT_CACHES[N] = {}
    return cache


def _insert(N, cache, mono, g):
    """Normal form of (normal mono) * x_g as {normal mono: Laurent}."""
    if not mono or mono[-1] <= g:
        return {mono + (g,): L_ONE}
    key = (mono, g)
    hit = cache.get(key)
    if hit is not None:
        return hit
    a = mono[-1]
    head = mono[:-1]
    ra, ca = divmod(a, N)
    rg, cg = divmod(g, N)
    if ra == rg or ca == cg:
        # x_a x_g = q^-1 x_g x_a; all letters of the recursion stay <= a
        res = {m + (a,): c * L_QINV for m, c in _insert(N, cache, head, g).items()}
    elif cg < ca:
        # rows rg < ra, cols cg < ca: x_a x_g = x_g x_a - (q-q^-1) x_g' x_a'
        res = {m + (a,): c for m, c in _insert(N, cache, head, g).items()}
        g2 = rg * N + ca
        a2 = ra * N + cg
        split = _mono_times_gen(N, cache, _insert(N, cache, head, g2), a2)
        for m, c in split.items():
            s = res.get(m)
            c = c * L_QCOMM
            res[m] = (s - c) if s is not None else -c
            if res[m].is_zero():
                del res[m]
    else:
        # rows rg < ra, cols cg > ca: the pair commutes
        res = {m + (a,): c for m, c in _insert(N, cache, head, g).items()}
    if len(mono) <= _CACHE_LEN_MAX:
        cache[key] = res
    return res


def _mono_times_gen(N, cache, poly, g):
    """{mono: coeff} * x_g with renormalization."""
    out = {}
    for m, c in poly.items():
        for m2, c2 in _insert(N, cache, m, g).items():
            s = out.get(m2)
            c3 = c * c2
            out[m2] = (s + c3) if s is not None else c3
            if out[m2].is_zero():
                del out[m2]
    return out


def _terms_add(acc, extra, scale=None):
    for m, c in extra.items():
        if scale is not None:
            c = scale * c
        s = acc.get(m)
        acc[m] = (s + c) if s is not None else c
        if acc[m].is_zero():
            del acc[m]
    return acc


class QPolynomial:
    """Element of the quantum matrix ring in PBW-normal form."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(N):
        return QPolynomial(N)

    @staticmethod
    def unit(N, coeff: Laurent = L_ONE):
        return QPolynomial(N, {(): coeff} if not coeff.is_zero() else {})

    @staticmethod
    def generator(N, row, col):
        return QPolynomial(N, {(gen_id(N, row, col),): L_ONE})

    # -- ring operations ----------------------------------------------------

    def _check(self, other):
        if self.N != other.N:
            raise AmbientMismatch(f"ambient sizes {self.N} != {other.N}")

    def __add__(self, other):
        self._check(other)
        return QPolynomial(self.N, _terms_add(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = (s - c) if s is not None else -c
            if out[m].is_zero():
                del out[m]
        return QPolynomial(self.N, out)

    def __neg__(self):
        return QPolynomial(self.N, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff):
        if isinstance(coeff, int):
            coeff = Laurent.integer(coeff)
        if coeff.is_zero():
            return QPolynomial(self.N)
        return QPolynomial(self.N, {m: coeff * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self.scale(other)
        self._check(other)
        N = self.N
        cache = _insert_cache(N)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                if not m2:
                    _terms_add(out, {m1: c})
                    continue
                if not m1 or m1[-1] <= m2[0]:
                    _terms_add(out, {m1 + m2: c})
                    continue
                cur = {m1: c}
                for g in m2:
                    cur = _mono_times_gen(N, cache, cur, g)
                _terms_add(out, cur)
        return QPolynomial(N, out)

    __rmul__ = scale

    def __pow__(self, n):
        out = QPolynomial.unit(self.N)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, QPolynomial) and self.N == other.N
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.N, frozenset((m, c) for m, c in self.terms.items())))

    def is_zero(self):
        return not self.terms

    def term_count(self):
        return len(self.terms)

    def degree(self):
        return max((len(m) for m in self.terms), default=0)

    # -- gradings ------------------------------------------------------------

    def bi_weight(self):
        """(row multidegrees, column multidegrees); raises Inhomogeneous."""
        N = self.N
        seen = None
        for m in self.terms:
            rows = [0] * N
            cols = [0] * N
            for g in m:
                rows[g // N] += 1
                cols[g % N] += 1
            bw = (tuple(rows), tuple(cols))
            if seen is None:
                seen = bw
            elif seen != bw:
                raise Inhomogeneous("terms carry different bi-weights")
        if seen is None:
            return (0,) * N, (0,) * N
        return seen

    def _one_weight(self, by_row: bool):
        N = self.N
        seen = None
        for m in self.terms:
            w = [0] * N
            for g in m:
                w[g // N if by_row else g % N] += 1
            w = tuple(w)
            if seen is None:
                seen = w
            elif seen != w:
                raise Inhomogeneous("terms carry different weights")
        return seen if seen is not None else (0,) * N

    def row_weight(self):
        return self._one_weight(True)

    def column_weight(self):
        return self._one_weight(False)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        items = sorted(self.terms.items())
        return {
            "N": self.N,
            "terms": [
                {"word": [list(gen_rc(self.N, g)) for g in m], "coeff": c.to_json()}
                for m, c in items
            ],
        }

    @staticmethod
    def from_json(obj):
        N = int(obj["N"])
        out = QPolynomial(N)
        for entry in obj["terms"]:
            word = [(int(r), int(c)) for r, c in entry["word"]]
            coeff = Laurent.from_json(entry["coeff"])
            out = out + normal_form(N, word, coeff)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            word = "*".join("x%d%d" % gen_rc(self.N, g) for g in m) or "1"
            bits.append("(%r)*%s" % (c, word))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def normal_form(N: int, word, coeff: Laurent = L_ONE) -> QPolynomial:
    """Straighten a word of (row, col) generator pairs into normal form."""
    letters = [gen_id(N, r, c) for r, c in word]
    cache = _insert_cache(N)
    cur = {(): coeff}
    for g in letters:
        cur = _mono_times_gen(N, cache, cur, g)
    if coeff.is_zero():
        cur = {}
    return QPolynomial(N, cur)


def normal_form_merge(N: int, word, coeff: Laurent = L_ONE) -> QPolynomial:
    """Divide-and-merge straightening; agrees with normal_form (confluence)."""
    if len(word) <= 1:
        return normal_form(N, word, coeff)
    mid = len(word) // 2
    left = normal_form_merge(N, word[:mid])
    right = normal_form_merge(N, word[mid:])
    return (left * right).scale(coeff)


def quantum_minor(N: int, rows, cols) -> QPolynomial:
    """Sum over permutations s of (-q)^inv(s) x[r1,c_s(1)] ... x[rk,c_s(k)]."""
    rows = tuple(rows)
    cols = tuple(cols)
    if len(rows) != len(cols):
        raise SizeMismatch("row and column sets differ in size")
    if any(rows[i] >= rows[i + 1] for i in range(len(rows) - 1)) or \
       any(cols[i] >= cols[i + 1] for i in range(len(cols) - 1)):
        raise IndexOutOfRange("minor index sets must be strictly increasing")
    r = len(rows)
    if r == 0:
        return QPolynomial.unit(N)
    ids = [[gen_id(N, i, j) for j in cols] for i in rows]
    terms = {}
    for sigma in permutations(range(r)):
        inv = inversions(sigma)
        mono = tuple(ids[i][sigma[i]] for i in range(r))
        # rows strictly increase, so the word is already normal
        terms[mono] = Laurent.v_power(2 * inv, -1 if inv % 2 else 1)
    return QPolynomial(N, terms)


def quantum_det(N: int) -> QPolynomial:
    rng = tuple(range(1, N + 1))
    return quantum_minor(N, rng, rng)


def bi_weight(p: QPolynomial):
    return p.bi_weight()


def count_normal_monomials(N: int, d: int) -> int:
    """Free commutative count binom(N^2 + d - 1, d)."""
    from math import comb
    return comb(N * N + d - 1, d)


def enumerate_normal_monomials(N: int, d: int):
    return combinations_with_replacement(range(N * N), d)
