"""Symmetric polynomials over Q(q,t): difference operators, Macdonald
polynomials by triangular eigen-solve, central-element scalars, and the
comparison harness against torus-restricted zonal vectors.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb

from .coeff import (Laurent, QTPoly, QTRational, QTR_ONE, QTR_ZERO,
                    RationalScalar, q_factorial, q_int)
from .partitions import inversions, partitions, trim


class NonzeroRemainder(ArithmeticError):
    """Division by the Vandermonde determinant left a remainder."""


class EigenvalueCollision(ArithmeticError):
    """Two partitions of the same size share a difference-operator eigenvalue."""


class NoConventionMatches(RuntimeError):
    """No tested parameter convention reproduces the zonal restriction."""


# ---------------------------------------------------------------------------
# polynomials in x_1..x_n over Q(q,t): {exponent tuple: QTRational}
# ---------------------------------------------------------------------------

def xp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        s = (s + c) if s is not None else c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def xp_scale(a: dict, c: QTRational) -> dict:
    if c.is_zero():
        return {}
    return {e: c * v for e, v in a.items()}


def xp_mul(a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            c = c1 * c2
            s = out.get(e)
            s = (s + c) if s is not None else c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def xp_monomial(n: int, exps, c=QTR_ONE) -> dict:
    return {tuple(exps): c} if not c.is_zero() else {}


def _binomial_x(n: int, i: int, j: int, ci: QTRational, cj: QTRational) -> dict:
    """ci * x_i + cj * x_j."""
    ei = [0] * n
    ei[i] = 1
    ej = [0] * n
    ej[j] = 1
    return xp_add(xp_monomial(n, ei, ci), xp_monomial(n, ej, cj))


def xp_div_binomial(p: dict, n: int, i: int, j: int) -> dict:
    """Exact division by (x_i - x_j); raises NonzeroRemainder."""
    if not p:
        return {}
    rem = dict(p)
    quo = {}

    def key(e):
        return (e[i], e)

    while rem:
        e = max(rem, key=key)
        c = rem[e]
        if e[i] == 0:
            raise NonzeroRemainder("division by a Vandermonde factor failed")
        qe = list(e)
        qe[i] -= 1
        qe = tuple(qe)
        s = quo.get(qe)
        s = (s + c) if s is not None else c
        if not s.is_zero():
            quo[qe] = s
        del rem[e]
        je = list(qe)
        je[j] += 1
        je = tuple(je)
        s = rem.get(je)
        s = (s + c) if s is not None else c
        if s.is_zero():
            rem.pop(je, None)
        else:
            rem[je] = s
    return quo


def xp_div_vandermonde(p: dict, n: int) -> dict:
    for i in range(n):
        for j in range(i + 1, n):
            p = xp_div_binomial(p, n, i, j)
    return p


# ---------------------------------------------------------------------------
# symmetric polynomials
# ---------------------------------------------------------------------------

class SymPolynomial:
    """Polynomial in n variables over Q(q,t), expected to be symmetric."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = coeffs if coeffs is not None else {}

    @staticmethod
    def monomial_symmetric(lam, n: int) -> "SymPolynomial":
        lam = trim(lam)
        if len(lam) > n:
            return SymPolynomial(n)
        padded = tuple(lam) + (0,) * (n - len(lam))
        out = {}
        for e in set(permutations(padded)):
            out[e] = QTR_ONE
        return SymPolynomial(n, out)

    @staticmethod
    def one(n: int) -> "SymPolynomial":
        return SymPolynomial(n, {(0,) * n: QTR_ONE})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        return SymPolynomial(self.n, xp_add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return self + other.scale(QTRational.const(-1))

    def scale(self, c: QTRational):
        return SymPolynomial(self.n, xp_scale(self.coeffs, c))

    def __mul__(self, other):
        return SymPolynomial(self.n, xp_mul(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return (isinstance(other, SymPolynomial) and self.n == other.n
                and self.coeffs == other.coeffs)

    def is_symmetric(self) -> bool:
        for e, c in self.coeffs.items():
            rep = tuple(sorted(e, reverse=True))
            if self.coeffs.get(rep) != c:
                return False
        return True

    def m_basis(self) -> dict:
        """{partition: coefficient}; raises when not symmetric."""
        if not self.is_symmetric():
            raise ValueError("polynomial is not symmetric")
        out = {}
        for e, c in self.coeffs.items():
            rep = trim(sorted(e, reverse=True))
            out[rep] = c
        return out

    @staticmethod
    def from_m_basis(mdict: dict, n: int) -> "SymPolynomial":
        out = SymPolynomial(n)
        for lam, c in mdict.items():
            out = out + SymPolynomial.monomial_symmetric(lam, n).scale(c)
        return out

    def to_json(self):
        mb = self.m_basis()
        return {
            "n": self.n,
            "basis": "monomial-symmetric",
            "coeffs": [
                {"lambda": list(lam), "value": mb[lam].to_json()}
                for lam in sorted(mb, reverse=True)
            ],
        }

    def __repr__(self):
        try:
            mb = self.m_basis()
            return " + ".join("(%r)*m%s" % (mb[l], list(l))
                              for l in sorted(mb, reverse=True)) or "0"
        except ValueError:
            return "<non-symmetric polynomial, %d terms>" % len(self.coeffs)


def shift(f, i: int, u) -> dict:
    """Substitution x_i -> u * x_i on a raw coefficient dict or SymPolynomial;
    u is 'q', 't' or an explicit QTRational.  Returns a raw dict."""
    coeffs = f.coeffs if isinstance(f, SymPolynomial) else f
    if u == "q":
        base = QTRational.from_poly(QTPoly.gen_q())
    elif u == "t":
        base = QTRational.from_poly(QTPoly.gen_t())
    else:
        base = u
    out = {}
    powers = {0: QTR_ONE}
    for e, c in coeffs.items():
        k = e[i]
        if k not in powers:
            p = powers[k - 1] if k - 1 in powers else None
            if p is None:
                p = QTR_ONE
                for _ in range(k):
                    p = p * base
            else:
                p = p * base
            powers[k] = p
        out[e] = c * powers[k]
    return {e: c for e, c in out.items() if not c.is_zero()}


# ---------------------------------------------------------------------------
# Macdonald difference operators
# ---------------------------------------------------------------------------

_QT_T = QTRational.from_poly(QTPoly.gen_t())
_QT_MINUS1 = QTRational.const(-1)


def _vandermonde_without(n: int, skip: int) -> dict:
    out = SymPolynomial.one(n).coeffs
    for a in range(n):
        for b in range(a + 1, n):
            if a == skip or b == skip:
                continue
            out = xp_mul(out, _binomial_x(n, a, b, QTR_ONE, _QT_MINUS1))
    return out


def macdonald_d1(f: SymPolynomial) -> SymPolynomial:
    """D_1 f = sum_i prod_{j != i} (t x_i - x_j)/(x_i - x_j) (T_{q,x_i} f),
    assembled over the Vandermonde denominator with exact division."""
    n = f.n
    num = {}
    for i in range(n):
        pref = SymPolynomial.one(n).coeffs
        for j in range(n):
            if j != i:
                pref = xp_mul(pref, _binomial_x(n, i, j, _QT_T, _QT_MINUS1))
        term = xp_mul(pref, _vandermonde_without(n, i))
        term = xp_mul(term, shift(f, i, "q"))
        if i % 2:
            term = xp_scale(term, _QT_MINUS1)
        num = xp_add(num, term)
    quo = xp_div_vandermonde(num, n)
    return SymPolynomial(n, quo)


def macdonald_dr(f: SymPolynomial, r: int) -> SymPolynomial:
    """Coefficient of X^(n-r) in the generating difference operator: for each
    permutation w and r-subset S, a signed x^(w.delta) t-weighted q-shift."""
    n = f.n
    if r == 0:
        return f
    if not 0 <= r <= n:
        raise ValueError("order must lie in 0..n")
    delta = tuple(n - 1 - i for i in range(n))
    num = {}
    for w in permutations(range(n)):
        sgn = -1 if inversions(w) % 2 else 1
        wd = tuple(delta[w[i]] for i in range(n))
        base = xp_monomial(n, wd, QTRational.const(sgn))
        for S in combinations(range(n), r):
            texp = sum(wd[i] for i in S)
            g = f.coeffs
            for i in S:
                g = shift(g, i, "q")
            term = xp_scale(xp_mul(base, g),
                            QTRational.from_poly(QTPoly.monomial(0, texp)))
            num = xp_add(num, term)
    quo = xp_div_vandermonde(num, n)
    return SymPolynomial(n, quo)


def macdonald_eigenvalue(lam, n: int) -> QTRational:
    """sum_i q^(lam_i) t^(n-i)."""
    lam = tuple(trim(lam)) + (0,) * (n - len(trim(lam)))
    out = QTPoly()
    for i, part in enumerate(lam):
        out = out + QTPoly.monomial(part, n - 1 - i)
    return QTRational.from_poly(out)


def elementary_symmetric_eigenvalue(lam, n: int, r: int) -> QTRational:
    """e_r of the eigenvalue alphabet q^(lam_i) t^(n-i)."""
    lam = tuple(trim(lam)) + (0,) * (n - len(trim(lam)))
    alphabet = [QTPoly.monomial(lam[i], n - 1 - i) for i in range(n)]
    out = QTPoly()
    for S in combinations(range(n), r):
        prod = QTPoly.const(1)
        for i in S:
            prod = prod * alphabet[i]
        out = out + prod
    return QTRational.from_poly(out)


def macdonald_polynomial(lam, n: int) -> dict:
    """P_lam in the monomial-symmetric basis: {partition: QTRational}.

    Solved from the triangular eigenproblem for D_1 with unit leading
    coefficient; the linear order on partitions of |lam| is lexicographic
    descending, which refines dominance.
    """
    lam = trim(lam)
    if len(lam) > n:
        raise ValueError("partition has more parts than variables")
    d = sum(lam)
    if d == 0:
        return {(): QTR_ONE}
    plist = [p for p in partitions(d, n)]
    action = {}
    for mu in plist:
        action[mu] = macdonald_d1(SymPolynomial.monomial_symmetric(mu, n)).m_basis()
    ev_lam = macdonald_eigenvalue(lam, n)
    u = {lam: QTR_ONE}
    started = False
    for mu in plist:
        if mu == lam:
            started = True
            continue
        if not started:
            continue
        acc = QTR_ZERO
        for nu, unu in u.items():
            c = action[nu].get(mu)
            if c is not None:
                acc = acc + unu * c
        if acc.is_zero():
            u[mu] = QTR_ZERO
            continue
        ev_mu = macdonald_eigenvalue(mu, n)
        gap = ev_lam - ev_mu
        if gap.is_zero():
            raise EigenvalueCollision(f"{lam} and {mu} share an eigenvalue")
        u[mu] = acc / gap
    return {mu: c for mu, c in u.items() if not c.is_zero()}


def schur_polynomial(lam, n: int) -> dict:
    """Bialternant form det(x_i^(lam_j + n - j)) / Vandermonde, in the
    monomial-symmetric basis with integer coefficients."""
    lam = tuple(trim(lam)) + (0,) * n
    lam = lam[:n]
    exps = tuple(lam[j] + (n - 1 - j) for j in range(n))
    num = {}
    for w in permutations(range(n)):
        sgn = -1 if inversions(w) % 2 else 1
        e = tuple(exps[w[i]] for i in range(n))
        c = QTRational.const(sgn)
        s = num.get(e)
        s = (s + c) if s is not None else c
        if s.is_zero():
            num.pop(e, None)
        else:
            num[e] = s
    quo = xp_div_vandermonde(num, n)
    return SymPolynomial(n, quo).m_basis()


def macdonald_specialize(mdict: dict, q_to: QTRational, t_to: QTRational) -> dict:
    """Substitute the parameters in a monomial-basis coefficient table."""
    out = {}
    for lam, c in mdict.items():
        num = _qt_eval(c.num, q_to, t_to)
        den = _qt_eval(c.den, q_to, t_to)
        val = num / den
        if not val.is_zero():
            out[lam] = val
    return out


def _qt_eval(p: QTPoly, q_to: QTRational, t_to: QTRational) -> QTRational:
    out = QTR_ZERO
    powq = {0: QTR_ONE}
    powt = {0: QTR_ONE}
    for (eq, et), c in sorted(p.t.items()):
        for cachepow, base, e in ((powq, q_to, eq), (powt, t_to, et)):
            if e not in cachepow:
                b = cachepow[max(cachepow)]
                for _ in range(max(cachepow), e):
                    b = b * base
                    cachepow[max(cachepow) + 1] = b
        out = out + QTRational.const(c) * powq[eq] * powt[et]
    return out


# ---------------------------------------------------------------------------
# central-element scalars
# ---------------------------------------------------------------------------

def central_element_scalar(k: int, lam, n: int) -> Laurent:
    """Scalar by which the k-th central element acts on the irreducible with
    highest weight lam:

        q^(2|lam| + C(n,2) + k(n-1)) [k]! [n-k]!
            * sum_{i_1<...<i_k} q^(-2 lam_{i_1} - ... + 2(i_1-n) + ...)
    """
    if not 1 <= k <= n:
        raise ValueError("central element index must lie in 1..n")
    lam = tuple(trim(lam)) + (0,) * n
    lam = lam[:n]
    size = sum(lam)
    pref = Laurent.q_power(2 * size + comb(n, 2) + k * (n - 1))
    pref = pref * q_factorial(k) * q_factorial(n - k)
    total = Laurent()
    for S in combinations(range(1, n + 1), k):
        e = sum(-2 * lam[i - 1] + 2 * (i - n) for i in S)
        total = total + Laurent.q_power(e)
    return pref * total


def doubled_weight_sum(lam, nprime: int) -> Laurent:
    """sum_{1<=i<=n'} q^(-2 lam_i + 4(i - n'))."""
    lam = tuple(trim(lam)) + (0,) * nprime
    lam = lam[:nprime]
    out = Laurent()
    for i in range(1, nprime + 1):
        out = out + Laurent.q_power(-2 * lam[i - 1] + 4 * (i - nprime))
    return out


def c1_doubled_display(lam, nprime: int) -> Laurent:
    """The published closed form for the first central element on a doubled
    weight: q^(4|lam| + C(2n,2) + 2(2n-1) - 1) [2]^2 [2n-2]! * the doubled
    weight sum."""
    n2 = 2 * nprime
    lam = tuple(trim(lam)) + (0,) * nprime
    lam = lam[:nprime]
    size = sum(lam)
    pref = Laurent.q_power(4 * size + comb(n2, 2) + 2 * (n2 - 1) - 1)
    pref = pref * q_int(2) * q_int(2) * q_factorial(n2 - 2)
    return pref * doubled_weight_sum(lam, nprime)


def c1_doubled_reduction(lam, nprime: int) -> Laurent:
    """The same scalar computed by reducing central_element_scalar(1, .) over
    the doubled weight: q^(4|lam| + C(2n,2) + 2n - 2) [2] [2n-1]! * sum."""
    n2 = 2 * nprime
    lam = tuple(trim(lam)) + (0,) * nprime
    lam = lam[:nprime]
    size = sum(lam)
    pref = Laurent.q_power(4 * size + comb(n2, 2) + n2 - 2)
    pref = pref * q_int(2) * q_factorial(n2 - 1)
    return pref * doubled_weight_sum(lam, nprime)


def central_index_sum(k: int, lam, n: int) -> Laurent:
    """Bare index sum inside central_element_scalar (no prefactor)."""
    lam = tuple(trim(lam)) + (0,) * n
    lam = lam[:n]
    out = Laurent()
    for S in combinations(range(1, n + 1), k):
        e = sum(-2 * lam[i - 1] + 2 * (i - n) for i in S)
        out = out + Laurent.q_power(e)
    return out


# ---------------------------------------------------------------------------
# comparison of zonal restrictions with Macdonald polynomials
# ---------------------------------------------------------------------------

DEFAULT_CONVENTIONS = ((2, 4), (2, -4), (-2, -4))


def convention_name(conv) -> str:
    a, b = conv

    def power(e):
        return "q^%d" % e if e != 1 else "q"
    return "(%s, %s)" % (power(a), power(b))


def compare_zonal(mu, N: int, conventions=DEFAULT_CONVENTIONS, cap=None) -> dict:
    """Compare the normalized torus restriction of the zonal vector with the
    Macdonald polynomial P_mu under each (q -> q^a, t -> q^b) convention.

    Returns a report; raises NoConventionMatches when nothing matches.
    """
    from .isotypic import zonal_vector
    mu = trim(mu)
    zv = zonal_vector(mu, N, cap=cap)
    m = N // 2
    # the primitive restriction must live in Z[q^(+-2)] (v-exponents = 0 mod 4)
    for c in zv.s_restriction.values():
        if any(e % 4 for e in c.t):
            raise AssertionError("zonal restriction leaves Z[q^(+-2)]")
    zcoeffs = {}
    for e, c in zv.s_restriction.items():
        rep = trim(sorted(e, reverse=True))
        prev = zcoeffs.get(rep)
        val = zv.normalization * RationalScalar.from_laurent(c)
        if prev is not None and prev != val:
            raise AssertionError("zonal restriction is not symmetric")
        zcoeffs[rep] = val
    pmu = macdonald_polynomial(mu, m)
    entries = []
    for conv in conventions:
        a, b = conv
        match = True
        constant = None
        note = ""
        try:
            sub = {lam: c.substitute_v(a, b) for lam, c in pmu.items()}
        except ZeroDivisionError:
            entries.append({"convention": convention_name(conv), "match": False,
                            "constant": None, "note": "singular substitution"})
            continue
        keys = set(sub) | set(zcoeffs)
        for lam in keys:
            lhs = zcoeffs.get(lam, RationalScalar.zero())
            rhs = sub.get(lam, RationalScalar.zero())
            if lhs != rhs:
                match = False
                break
        if match:
            lead_l = zcoeffs[mu]
            lead_r = sub[mu]
            constant = repr(lead_l / lead_r)
        entries.append({"convention": convention_name(conv), "match": match,
                        "constant": constant, "note": note})
    report = {
        "mu": list(mu),
        "N": N,
        "restriction": {"-".join(map(str, k)) or "0": repr(v)
                        for k, v in sorted(zcoeffs.items(), reverse=True)},
        "conventions": entries,
    }
    if not any(e["match"] for e in entries):
        raise NoConventionMatches(report)
    return report
