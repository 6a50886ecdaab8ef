"""Quantum-symplectic invariant theory on an even ambient size N = 2m.

Contents: the sp-operators deforming the symplectic subalgebra, the
quadratic z-generators of the quantum antisymmetric algebra and their
relation suite, the quantum Pfaffian and partial Pfaffians over perfect
matchings, the invariant sums built from paired-column quantum minors, and
the torus/Borel restriction maps.
"""

from __future__ import annotations

from itertools import combinations

from .coeff import L_Q, L_QINV, Laurent
from .partitions import halve_partition, inversions
from .qmatrix import IndexOutOfRange, QPolynomial, normal_form, quantum_minor
from .uq_action import LEFT, RIGHT, UqElement, act, composite_E

__all__ = [
    "OddAmbient", "OddSubset", "sp_element", "sp_generating_set",
    "sp_full_set", "z_generator", "verify_z_relations", "matchings",
    "matching_length", "quantum_pfaffian", "partial_pfaffian",
    "invariance_kernel_check", "left_invariant_generator",
    "left_invariant_product", "bi_invariant_generator", "paired_indices",
    "restrict_H", "torus_to_s", "restrict_Borel", "relative_invariant_check",
]


class OddAmbient(ValueError):
    """The construction needs an even ambient size."""


class OddSubset(ValueError):
    """Pfaffians are indexed by even-size subsets."""


def _check_even(N):
    if N % 2:
        raise OddAmbient(f"ambient size {N} must be even")
    return N // 2


# ---------------------------------------------------------------------------
# sp operators
# ---------------------------------------------------------------------------

def sp_element(kind: str, i: int, j: int, N: int) -> UqElement:
    """The symplectic combinations of composite root vectors.

    kind 'e':  E[2i-1,2j] + q^{2(i-j)} E[2j-1,2i]   (E[2i-1,2i] when i == j)
    kind 'f':  E[2i,2j-1] + q^{2(i-j)} E[2j,2i-1]   (E[2i,2i-1] when i == j)
    kind 'h':  E[2i-1,2j-1] - q^{2(i-j)} E[2j,2i]
    """
    m = _check_even(N)
    if not (1 <= i <= m and 1 <= j <= m):
        raise IndexOutOfRange(f"sp indices must lie in 1..{m}")
    w = Laurent.q_power(2 * (i - j))
    if kind == "e":
        if i == j:
            return composite_E(N, 2 * i - 1, 2 * i)
        return composite_E(N, 2 * i - 1, 2 * j) + \
            composite_E(N, 2 * j - 1, 2 * i).scale(w)
    if kind == "f":
        if i == j:
            return composite_E(N, 2 * i, 2 * i - 1)
        return composite_E(N, 2 * i, 2 * j - 1) + \
            composite_E(N, 2 * j, 2 * i - 1).scale(w)
    if kind == "h":
        return composite_E(N, 2 * i - 1, 2 * j - 1) - \
            composite_E(N, 2 * j, 2 * i).scale(w)
    raise ValueError("kind must be 'e', 'f' or 'h'")


def sp_generating_set(N: int) -> list:
    """The generating sp-operators: diagonal pairs plus adjacent mixed pairs."""
    m = _check_even(N)
    ops = []
    for j in range(1, m + 1):
        ops.append(sp_element("e", j, j, N))
        ops.append(sp_element("f", j, j, N))
    for i in range(1, m):
        ops.append(sp_element("e", i, i + 1, N))
        ops.append(sp_element("f", i, i + 1, N))
    return ops


def sp_full_set(N: int) -> list:
    """All sp_e(i,j) and sp_f(i,j)."""
    m = _check_even(N)
    return [sp_element(kind, i, j, N)
            for kind in ("e", "f")
            for i in range(1, m + 1) for j in range(1, m + 1)]


def invariance_kernel_check(p: QPolynomial, side: str, ops=None) -> bool:
    """True iff every operator in ops (default: generating set) kills p."""
    if ops is None:
        ops = sp_generating_set(p.N)
    return all(act(side, g, p).is_zero() for g in ops)


# ---------------------------------------------------------------------------
# z-generators and their relations
# ---------------------------------------------------------------------------

def z_generator(side: str, i: int, j: int, N: int) -> QPolynomial:
    """Degree-2 antisymmetric generators built from paired-column 2-minors.

    side 'L': sum_k v^(i+j+1-4k) (x[i,2k-1] x[j,2k] - q x[i,2k] x[j,2k-1])
    side 'R': sum_k v^-(i+j+1-4k) (x[2k-1,i] x[2k,j] - q x[2k,i] x[2k-1,j])

    with k running over the column (row) pairs 1..N/2.
    """
    m = _check_even(N)
    if not (1 <= i <= N and 1 <= j <= N):
        raise IndexOutOfRange(f"z indices must lie in 1..{N}")
    out = QPolynomial(N)
    for k in range(1, m + 1):
        vexp = i + j + 1 - 4 * k
        if side == RIGHT or side == "R":
            w = [(2 * k - 1, i), (2 * k, j)]
            w2 = [(2 * k, i), (2 * k - 1, j)]
            vexp = -vexp
        else:
            w = [(i, 2 * k - 1), (j, 2 * k)]
            w2 = [(i, 2 * k), (j, 2 * k - 1)]
        coeff = Laurent.v_power(vexp)
        out = out + normal_form(N, w, coeff) - normal_form(N, w2, coeff * L_Q)
    return out


# relation suite on the concrete z polynomials; each instance must expand to 0
_Z_RELATION_NAMES = (
    "skew",               # z[i,j] + q^-1 z[j,i]
    "diagonal_zero",      # z[i,i]
    "shared_row_q",       # z[i,j] z[i,k] - q z[i,k] z[i,j]
    "outer_commute",      # z[i,l] z[j,k] - z[j,k] z[i,l]
    "interlaced_bracket",  # z[i,k] z[j,l] - z[j,l] z[i,k] - (q-q^-1) z[i,l] z[j,k]
    "disjoint_bracket",   # z[i,j] z[k,l] - z[k,l] z[i,j]
    #   - (q-q^-1) z[i,k] z[j,l] + q(q-q^-1) z[i,l] z[j,k]
    "disjoint_bracket_alt",  # same bracket vs q z[j,l] z[i,k] - q^-1 z[i,k] z[j,l]
)


def verify_z_relations(side: str, N: int) -> list:
    """Expand every relation instance through the rewriter; report each."""
    _check_even(N)
    zs = {}

    def z(i, j):
        key = (i, j)
        if key not in zs:
            zs[key] = z_generator(side, i, j, N)
        return zs[key]

    qc = L_Q - L_QINV
    report = []

    def entry(name, idx, residual):
        report.append({
            "relation": name,
            "indices": list(idx),
            "pass": residual.is_zero(),
            "residual_terms": residual.term_count(),
        })

    for i in range(1, N + 1):
        entry("diagonal_zero", (i,), z(i, i))
    for i, j in combinations(range(1, N + 1), 2):
        entry("skew", (i, j), z(i, j) + z(j, i).scale(L_QINV))
    for i, j, k in combinations(range(1, N + 1), 3):
        entry("shared_row_q", (i, j, k), z(i, j) * z(i, k) - (z(i, k) * z(i, j)).scale(L_Q))
    for i, j, k, l in combinations(range(1, N + 1), 4):
        entry("outer_commute", (i, j, k, l), z(i, l) * z(j, k) - z(j, k) * z(i, l))
        entry("interlaced_bracket", (i, j, k, l),
              z(i, k) * z(j, l) - z(j, l) * z(i, k) - (z(i, l) * z(j, k)).scale(qc))
        bracket = z(i, j) * z(k, l) - z(k, l) * z(i, j)
        entry("disjoint_bracket", (i, j, k, l),
              bracket - (z(i, k) * z(j, l)).scale(qc)
              + (z(i, l) * z(j, k)).scale(L_Q * qc))
        entry("disjoint_bracket_alt", (i, j, k, l),
              bracket - (z(j, l) * z(i, k)).scale(L_Q)
              + (z(i, k) * z(j, l)).scale(L_QINV))
    return report


# ---------------------------------------------------------------------------
# quantum Pfaffian
# ---------------------------------------------------------------------------

def matchings(points) -> list:
    """Perfect matchings of an ordered point set, pairs (i,j) with i < j and
    first coordinates increasing."""
    points = tuple(points)
    if len(points) % 2:
        raise OddSubset("perfect matchings need an even point count")
    if not points:
        return [()]
    out = []
    head, rest = points[0], points[1:]
    for pos, j in enumerate(rest):
        remaining = rest[:pos] + rest[pos + 1:]
        for sub in matchings(remaining):
            out.append(((head, j),) + sub)
    return out


def matching_length(pairs) -> int:
    """Inversion count of the flattened word i1 j1 i2 j2 ..."""
    word = [x for pair in pairs for x in pair]
    return inversions(word)


def _pfaffian_sum(points: tuple, N: int, zcache: dict, memo: dict) -> QPolynomial:
    """Sum over matchings of points of (-q)^len * ordered z-products.

    The inversion statistic splits across the recursion: pairing the minimal
    point with j contributes one inversion per remaining point below j.
    """
    if not points:
        return QPolynomial.unit(N)
    hit = memo.get(points)
    if hit is not None:
        return hit
    total = QPolynomial(N)
    head, rest = points[0], points[1:]
    for pos, j in enumerate(rest):
        inv = sum(1 for p in rest if p < j)
        remaining = rest[:pos] + rest[pos + 1:]
        zkey = (head, j)
        zq = zcache.get(zkey)
        if zq is None:
            zq = zcache[zkey] = z_generator("L", head, j, N)
        sub = _pfaffian_sum(remaining, N, zcache, memo)
        sign = Laurent.v_power(2 * inv, -1 if inv % 2 else 1)
        total = total + (zq * sub).scale(sign)
    memo[points] = total
    return total


def quantum_pfaffian(N: int) -> QPolynomial:
    _check_even(N)
    return _pfaffian_sum(tuple(range(1, N + 1)), N, {}, {})


def partial_pfaffian(r: int, N: int) -> QPolynomial:
    """Pfaffian over matchings of {1..r} only, r even."""
    if r % 2:
        raise OddSubset(f"subset size {r} must be even")
    _check_even(N)
    if r > N:
        raise IndexOutOfRange("subset exceeds the ambient size")
    return _pfaffian_sum(tuple(range(1, r + 1)), N, {}, {})


# ---------------------------------------------------------------------------
# invariant sums of paired-column minors
# ---------------------------------------------------------------------------

def paired_indices(subset) -> tuple:
    """{a1 < a2 < ...} -> (2a1-1, 2a1, 2a2-1, 2a2, ...)."""
    out = []
    for a in sorted(subset):
        out.extend((2 * a - 1, 2 * a))
    return tuple(out)


def left_invariant_generator(r: int, N: int) -> QPolynomial:
    """sum_J q^(-2|J|) minor(rows 1..2r; cols paired by J), J an r-subset."""
    m = _check_even(N)
    if not 1 <= r <= m:
        raise IndexOutOfRange(f"generator index must lie in 1..{m}")
    rows = tuple(range(1, 2 * r + 1))
    out = QPolynomial(N)
    for J in combinations(range(1, m + 1), r):
        coeff = Laurent.q_power(-2 * sum(J))
        out = out + quantum_minor(N, rows, paired_indices(J)).scale(coeff)
    return out


def left_invariant_product(lam, N: int) -> QPolynomial:
    """Product of powers of the generators indexed by a doubled partition."""
    mu = halve_partition(lam)
    m = _check_even(N)
    if len(mu) > m:
        raise IndexOutOfRange("partition is longer than the paired size")
    out = QPolynomial.unit(N)
    mu = tuple(mu) + (0,)
    for r in range(1, len(mu)):
        mult = mu[r - 1] - mu[r]
        for _ in range(mult):
            out = out * left_invariant_generator(r, N)
    return out


def bi_invariant_generator(r: int, N: int) -> QPolynomial:
    """sum_{I,J} q^(2(|I|-|J|)) minor(rows paired by I; cols paired by J)."""
    m = _check_even(N)
    if not 1 <= r <= m:
        raise IndexOutOfRange(f"generator index must lie in 1..{m}")
    out = QPolynomial(N)
    for I in combinations(range(1, m + 1), r):
        for J in combinations(range(1, m + 1), r):
            coeff = Laurent.q_power(2 * (sum(I) - sum(J)))
            out = out + quantum_minor(N, paired_indices(I), paired_indices(J)).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# restriction maps
# ---------------------------------------------------------------------------

def restrict_H(p: QPolynomial) -> dict:
    """Torus restriction x[i,j] -> delta_ij t_i, as {t-exponent tuple: Laurent}."""
    N = p.N
    out = {}
    for mono, c in p.terms.items():
        exps = [0] * N
        ok = True
        for g in mono:
            r, col = divmod(g, N)
            if r != col:
                ok = False
                break
            exps[r] += 1
        if not ok:
            continue
        key = tuple(exps)
        s = out.get(key)
        out[key] = (s + c) if s is not None else c
        if out[key].is_zero():
            del out[key]
    return out


def torus_to_s(tpoly: dict, N: int) -> dict:
    """Rewrite a torus polynomial in s_i = t_{2i-1} t_{2i}; raises when a
    monomial does not pair up."""
    m = _check_even(N)
    out = {}
    for exps, c in tpoly.items():
        s = []
        for i in range(m):
            if exps[2 * i] != exps[2 * i + 1]:
                raise ValueError("torus monomial does not descend to s-variables")
            s.append(exps[2 * i])
        out[tuple(s)] = c
    return out


def restrict_Borel(p: QPolynomial, sign: str) -> QPolynomial:
    """Triangular restriction: keep terms supported on the closed upper ('+')
    or lower ('-') triangle.  Products of restricted elements computed in the
    ambient ring and restricted again agree with the quotient product."""
    N = p.N
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    keep_upper = sign == "+"
    out = {}
    for mono, c in p.terms.items():
        ok = all((g // N <= g % N) if keep_upper else (g // N >= g % N)
                 for g in mono)
        if ok:
            out[mono] = c
    return QPolynomial(N, out)


# ---------------------------------------------------------------------------
# relative invariants (highest-weight style test)
# ---------------------------------------------------------------------------

G_MOD_B = "G/B+"
B_MOD_G = "B-\\G"


def relative_invariant_check(p: QPolynomial, lam, side: str) -> bool:
    """Weight-and-highest-vector test for the flag-type relative invariants.

    side 'B-\\G': column weight equals lam and the left raising operators
    e_k all kill p; side 'G/B+': row weight equals lam and the right
    operators f_k all kill p.
    """
    from .uq_action import gen_e, gen_f
    N = p.N
    lam = tuple(lam) + (0,) * (N - len(tuple(lam)))
    if side == B_MOD_G:
        if p.column_weight() != lam:
            return False
        return all(act(LEFT, gen_e(N, k), p).is_zero() for k in range(1, N))
    if side == G_MOD_B:
        if p.row_weight() != lam:
            return False
        return all(act(RIGHT, gen_f(N, k), p).is_zero() for k in range(1, N))
    raise ValueError("side must be 'G/B+' or 'B-\\G'")
