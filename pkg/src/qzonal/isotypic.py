"""Exact linear algebra on graded components of the quantum matrix ring.

Vectors over a graded component are sparse maps {basis index: Laurent};
elimination is fraction-free (rows stay integral and primitive, divisions
happen only at read-out), which keeps the arithmetic in the Laurent ring
where gcds are cheap.

Kernels of one-sided operator families split along the weight grading the
operators preserve (row weights for left actions, column weights for right
actions), and further along the connectivity of the constraint support, so
each elimination block stays small even when the ambient component has
tens of thousands of monomials.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .coeff import L_ONE, Laurent, RationalScalar, laurent_gcd
from .partitions import double_partition, is_partition, trim
from .qmatrix import QPolynomial, enumerate_normal_monomials, quantum_minor
from .symplectic import restrict_H, sp_generating_set, torus_to_s
from .uq_action import LEFT, RIGHT, act, gen_e, gen_f


class ComponentTooLarge(RuntimeError):
    """The graded component exceeds the configured dimension cap."""


class NotOneDimensional(RuntimeError):
    """A slice expected to be a line has a different dimension."""


DEFAULT_CAP = 100_000


def dimension_cap() -> int:
    return int(os.environ.get("QZ_CAP", DEFAULT_CAP))


# ---------------------------------------------------------------------------
# graded components
# ---------------------------------------------------------------------------

class GradedComponent:
    """The span of the normal monomials of one total degree."""

    def __init__(self, N: int, degree: int):
        self.N = N
        self.degree = degree
        self.basis = list(enumerate_normal_monomials(N, degree))
        self.index = {m: i for i, m in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def vector_of(self, p: QPolynomial) -> dict:
        if p.N != self.N:
            raise ValueError("ambient size mismatch")
        out = {}
        for m, c in p.terms.items():
            if len(m) != self.degree:
                raise ValueError("polynomial does not live in this component")
            out[self.index[m]] = c
        return out

    def polynomial_of(self, vec: dict) -> QPolynomial:
        return QPolynomial(self.N, {self.basis[i]: c for i, c in vec.items()})

    def row_weight_classes(self) -> dict:
        return self._weight_classes(by_row=True)

    def column_weight_classes(self) -> dict:
        return self._weight_classes(by_row=False)

    def _weight_classes(self, by_row: bool) -> dict:
        N = self.N
        classes = {}
        for i, m in enumerate(self.basis):
            w = [0] * N
            for g in m:
                w[g // N if by_row else g % N] += 1
            classes.setdefault(tuple(w), []).append(i)
        return classes


# ---------------------------------------------------------------------------
# sparse fraction-free vectors
# ---------------------------------------------------------------------------

def _int_gcd_many(vec) -> int:
    from math import gcd
    d = 0
    for c in vec.values():
        for v in c.t.values():
            d = gcd(d, v)
            if d == 1:
                return 1
    return d


def vec_primitive(vec: dict) -> dict:
    """Divide through by the Laurent gcd; normalize the leading entry's unit."""
    if not vec:
        return vec
    if any(len(c.t) == 1 for c in vec.values()):
        # a monomial entry forces the polynomial part of the gcd to a unit
        d = _int_gcd_many(vec)
        if d > 1:
            vec = {i: Laurent({e: v // d for e, v in c.t.items()})
                   for i, c in vec.items()}
    else:
        g = None
        for c in sorted(vec.values(), key=lambda c: len(c.t)):
            g = c.unit_normal()[0] if g is None else laurent_gcd(g, c)
            if g.is_one():
                g = None
                break
        if g is not None and not g.is_one():
            vec = {i: c.divexact(g) for i, c in vec.items()}
    piv = min(vec)
    _, unit = vec[piv].unit_normal()
    if not unit.is_one():
        vec = {i: c.divexact(unit) for i, c in vec.items()}
    return vec


def vec_combine(a: dict, ca: Laurent, b: dict, cb: Laurent) -> dict:
    """ca * a + cb * b."""
    if ca.is_one():
        out = dict(a)
    else:
        out = {i: ca * c for i, c in a.items()}
    for i, c in b.items():
        s = out.get(i)
        c = cb * c
        out[i] = (s + c) if s is not None else c
        if out[i].is_zero():
            del out[i]
    return out


class SubspaceBasis:
    """Row space in echelon form: distinct pivot (minimal-index) columns."""

    def __init__(self, component: GradedComponent):
        self.component = component
        self.rows: list = []
        self.pivot_map: dict = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Fraction-free residual of vec against the basis (scaled freely)."""
        vec = dict(vec)
        while vec:
            p = min(vec)
            r = self.pivot_map.get(p)
            if r is None:
                return vec
            row = self.rows[r]
            vec = vec_combine(vec, row[p], row, -vec[p])
        return vec

    def insert(self, vec: dict):
        """Insert a vector; returns the primitive residual row or None."""
        res = self.reduce(vec)
        if not res:
            return None
        res = vec_primitive(res)
        self.pivot_map[min(res)] = len(self.rows)
        self.rows.append(res)
        return res

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def contains_poly(self, p: QPolynomial) -> bool:
        return self.contains(self.component.vector_of(p))

    def polynomials(self) -> list:
        return [self.component.polynomial_of(r) for r in self.rows]

    def canonical_rows(self) -> list:
        """Fully reduced echelon rows, primitive, sorted by pivot column.

        This form is construction-independent, so two bases of the same
        subspace compare equal row by row.
        """
        rows = [dict(r) for r in self.rows]
        order = sorted(range(len(rows)), key=lambda r: min(rows[r]) if rows[r] else -1)
        rows = [rows[r] for r in order]
        for i in range(len(rows) - 1, -1, -1):
            p = min(rows[i])
            for j in range(len(rows)):
                if j != i and p in rows[j]:
                    rows[j] = vec_combine(rows[j], rows[i][p], rows[i], -rows[j][p])
            rows[i] = vec_primitive(rows[i])
        return [vec_primitive(r) for r in rows]

    def equals(self, other: "SubspaceBasis") -> bool:
        if self.rank != other.rank:
            return False
        return all(self.contains(r) for r in other.rows)

    def to_json(self, meta=None):
        obj = dict(meta or {})
        obj.update({
            "N": self.component.N,
            "degree": self.component.degree,
            "rank": self.rank,
            "rows": [self.component.polynomial_of(r).to_json()["terms"]
                     for r in self.canonical_rows()],
        })
        return obj


# ---------------------------------------------------------------------------
# nullspaces of sparse constraint systems
# ---------------------------------------------------------------------------

def _nullspace_block(rows: list, cols: list) -> list:
    """Nullspace vectors (primitive, over the given columns) of the system
    whose rows are {col: Laurent} constraints.

    Forward fraction-free echelon only: a pivot is always the minimal column
    of its row, so solving pivot columns in decreasing order is triangular
    and the full Gauss-Jordan clearing step is never needed.
    """
    pivots = {}          # pivot col -> primitive row with that minimal col
    for row in sorted(rows, key=len):
        row = dict(row)
        steps = 0
        while row:
            p = min(row)
            prow = pivots.get(p)
            if prow is None:
                break
            row = vec_combine(row, prow[p], prow, -row[p])
            steps += 1
            if steps % 8 == 0 and row:
                row = vec_primitive(row)
        if row:
            row = vec_primitive(row)
            pivots[min(row)] = row
    free = [c for c in cols if c not in pivots]
    if not free:
        return []
    order = sorted(pivots, reverse=True)
    out = []
    for f in free:
        x = {f: RationalScalar.one()}
        for p in order:
            prow = pivots[p]
            acc = None
            for c, coef in prow.items():
                if c == p:
                    continue
                xv = x.get(c)
                if xv is not None:
                    term = xv * coef
                    acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                x[p] = -(acc / RationalScalar.from_laurent(prow[p]))
        x = {c: v for c, v in x.items() if not v.is_zero()}
        # clear denominators to a primitive integral vector
        den = L_ONE
        for val in x.values():
            den = den * val.den.divexact(laurent_gcd(den, val.den))
        vec = {c: val.num * den.divexact(val.den) for c, val in x.items()}
        out.append(vec_primitive(vec))
    return out


def _union_find_blocks(rows: list) -> list:
    """Group constraint rows by connectivity of their column support."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for row in rows:
        it = iter(row)
        first = next(it, None)
        if first is None:
            continue
        if first not in parent:
            parent[first] = first
        for c in it:
            if c not in parent:
                parent[c] = c
            union(first, c)
    blocks = {}
    for row in rows:
        if not row:
            continue
        blocks.setdefault(find(next(iter(row))), []).append(row)
    cols = {}
    for c in parent:
        cols.setdefault(find(c), []).append(c)
    return [(sorted(cols[root]), blocks.get(root, [])) for root in cols]


# ---------------------------------------------------------------------------
# operator kernels
# ---------------------------------------------------------------------------

def _single_side_kernel(side: str, ops: list, component: GradedComponent) -> SubspaceBasis:
    classes = (component.row_weight_classes() if side == LEFT
               else component.column_weight_classes())
    basis = SubspaceBasis(component)
    N = component.N
    for _, idxs in sorted(classes.items()):
        constraints = {}
        for i in idxs:
            mono_poly = QPolynomial(N, {component.basis[i]: L_ONE})
            for oi, op in enumerate(ops):
                img = act(side, op, mono_poly)
                for m, c in img.terms.items():
                    constraints.setdefault((oi, m), {})[i] = c
        rows = list(constraints.values())
        for cols, block_rows in _union_find_blocks(rows):
            for vec in _nullspace_block(block_rows, cols):
                basis.insert(vec)
        # columns never touched by any constraint are free
        touched = set()
        for row in rows:
            touched.update(row)
        for i in idxs:
            if i not in touched:
                basis.insert({i: L_ONE})
    return basis


def restrict_to_joint_kernel(polys: list, ops_with_sides: list,
                             component: GradedComponent) -> list:
    """Vectors in span(polys) killed by every (side, op); returns polynomials."""
    constraints = {}
    for j, p in enumerate(polys):
        for side, op in ops_with_sides:
            img = act(side, op, p)
            for m, c in img.terms.items():
                constraints.setdefault((side, id(op), m), {})[j] = c
    combos = _nullspace_block(list(constraints.values()), list(range(len(polys))))
    out = []
    for combo in combos:
        acc = QPolynomial(component.N)
        for j, c in combo.items():
            acc = acc + polys[j].scale(c)
        out.append(acc)
    return out


def operator_kernel(ops_with_sides: list, component: GradedComponent,
                    cap: int | None = None) -> SubspaceBasis:
    """Joint kernel of degree-preserving operators given as (side, op) pairs.

    One-sided families are eliminated blockwise along the preserved weight
    grading; mixed families stage the left kernel first and then cut it down
    by the right operators (the two actions commute, so right operators map
    the left kernel to itself).
    """
    if (cap or dimension_cap()) < component.dim:
        raise ComponentTooLarge(
            f"component dimension {component.dim} exceeds cap")
    left_ops = [op for side, op in ops_with_sides if side == LEFT]
    right_ops = [op for side, op in ops_with_sides if side == RIGHT]
    if left_ops and not right_ops:
        return _single_side_kernel(LEFT, left_ops, component)
    if right_ops and not left_ops:
        return _single_side_kernel(RIGHT, right_ops, component)
    if not left_ops and not right_ops:
        basis = SubspaceBasis(component)
        for i in range(component.dim):
            basis.insert({i: L_ONE})
        return basis
    left_kernel = _single_side_kernel(LEFT, left_ops, component)
    polys = left_kernel.polynomials()
    cut = restrict_to_joint_kernel(
        polys, [(RIGHT, op) for op in right_ops], component)
    basis = SubspaceBasis(component)
    for p in cut:
        basis.insert(component.vector_of(p))
    return basis


_SP_KERNEL_CACHE: dict = {}


def two_sided_sp_kernel(N: int, degree: int, cap: int | None = None) -> SubspaceBasis:
    key = (N, degree)
    hit = _SP_KERNEL_CACHE.get(key)
    if hit is not None:
        return hit
    ops = sp_generating_set(N)
    pairs = [(LEFT, g) for g in ops] + [(RIGHT, g) for g in ops]
    basis = operator_kernel(pairs, GradedComponent(N, degree), cap=cap)
    _SP_KERNEL_CACHE[key] = basis
    return basis


def graded_bi_invariant_dimension(m: int, N: int, cap: int | None = None) -> int:
    return two_sided_sp_kernel(N, 2 * m, cap=cap).rank


# ---------------------------------------------------------------------------
# highest-weight vectors and module closures
# ---------------------------------------------------------------------------

def highest_weight_vector(lam, N: int) -> QPolynomial:
    """Product of powers of principal minors realizing a dominant weight."""
    lam = trim(lam)
    if not is_partition(lam):
        raise ValueError("weight must be a partition")
    if len(lam) > N:
        raise ValueError("weight longer than the ambient size")
    out = QPolynomial.unit(N)
    lam = tuple(lam) + (0,)
    for s in range(len(lam) - 1, 0, -1):
        mult = lam[s - 1] - lam[s]
        if mult < 0:
            raise ValueError("weight must be a partition")
        minor = quantum_minor(N, range(1, s + 1), range(1, s + 1))
        for _ in range(mult):
            out = out * minor
    return out


def module_closure(seed: QPolynomial, sides, cap: int | None = None) -> SubspaceBasis:
    """Smallest subspace containing seed closed under e_k, f_k on the given
    sides; breadth-first with rank-stabilization."""
    N = seed.N
    degree = seed.degree()
    if any(len(m) != degree for m in seed.terms):
        raise ValueError("seed must be homogeneous")
    component = GradedComponent(N, degree)
    if (cap or dimension_cap()) < component.dim:
        raise ComponentTooLarge(f"component dimension {component.dim} exceeds cap")
    if isinstance(sides, str):
        sides = (LEFT, RIGHT) if sides == "both" else (sides,)
    ops = [(side, g)
           for side in sides
           for k in range(1, N)
           for g in (gen_e(N, k), gen_f(N, k))]
    basis = SubspaceBasis(component)
    first = basis.insert(component.vector_of(seed))
    queue = [component.polynomial_of(first)] if first is not None else []
    while queue:
        nxt = []
        for p in queue:
            for side, g in ops:
                img = act(side, g, p)
                if img.is_zero():
                    continue
                res = basis.insert(component.vector_of(img))
                if res is not None:
                    nxt.append(component.polynomial_of(res))
        queue = nxt
    return basis


# ---------------------------------------------------------------------------
# zonal vectors
# ---------------------------------------------------------------------------

@dataclass
class ZonalVector:
    mu: tuple
    vector: QPolynomial          # primitive integral representative
    normalization: RationalScalar  # scalar making the s^mu coefficient 1
    s_restriction: dict          # {s-exponent tuple: Laurent}, unnormalized

    def normalized_s_coefficients(self) -> dict:
        return {e: self.normalization * RationalScalar.from_laurent(c)
                for e, c in self.s_restriction.items()}

    def to_json(self):
        obj = self.vector.to_json()
        return {
            "N": obj["N"],
            "degree": 2 * sum(self.mu),
            "lambda": list(self.mu),
            "rank": 1,
            "terms": obj["terms"],
            "normalization": self.normalization.to_json(),
        }


def zonal_vector(mu, N: int, cap: int | None = None) -> ZonalVector:
    """The bi-invariant line inside the doubled-weight isotypic component.

    Intersects the two-sided sp-kernel in degree 2|mu| with the two-sided
    module closure of the highest-weight minor product for the doubled
    partition; the intersection must be a line.
    """
    mu = trim(mu)
    if not is_partition(mu):
        raise ValueError("mu must be a partition")
    if N % 2 or len(mu) > N // 2:
        raise ValueError("mu must fit in the paired ambient size")
    if not mu:
        unit = QPolynomial.unit(N)
        return ZonalVector((), unit, RationalScalar.one(), {(0,) * (N // 2): L_ONE})
    degree = 2 * sum(mu)
    kernel = two_sided_sp_kernel(N, degree, cap=cap)
    component = kernel.component
    seed = highest_weight_vector(double_partition(mu), N)
    closure = module_closure(seed, "both", cap=cap)

    kernel_rows = kernel.rows
    closure_rows = closure.rows
    nk = len(kernel_rows)
    stacked = {}
    for j, row in enumerate(kernel_rows):
        for i, c in row.items():
            stacked.setdefault(i, {})[j] = c
    for j, row in enumerate(closure_rows):
        for i, c in row.items():
            stacked.setdefault(i, {})[nk + j] = -c
    combos = _nullspace_block(list(stacked.values()),
                              list(range(nk + len(closure_rows))))
    if len(combos) != 1:
        raise NotOneDimensional(
            f"intersection dimension {len(combos)} for mu={mu}, N={N}")
    combo = combos[0]
    vec = {}
    for j, c in combo.items():
        if j < nk:
            vec = vec_combine(vec, L_ONE, kernel_rows[j], c)
    vec = vec_primitive(vec)
    poly = component.polynomial_of(vec)

    srest = torus_to_s(restrict_H(poly), N)
    key = tuple(mu) + (0,) * (N // 2 - len(mu))
    lead = srest.get(key)
    if lead is None:
        raise NotOneDimensional("torus restriction misses the leading s-monomial")
    return ZonalVector(tuple(mu), poly,
                       RationalScalar(L_ONE, lead), srest)
