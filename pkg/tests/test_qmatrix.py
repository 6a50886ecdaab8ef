"""Quantum matrix ring: straightening, minors, determinant, gradings."""

import random
from itertools import product

import pytest

from qzonal.coeff import L_Q, L_QINV, Laurent
from qzonal.partitions import inversions
from qzonal.qmatrix import (AmbientMismatch, IndexOutOfRange, Inhomogeneous,
                            QPolynomial, SizeMismatch, count_normal_monomials,
                            enumerate_normal_monomials, gen_rc, normal_form,
                            normal_form_merge, quantum_det, quantum_minor)


def x(N, i, j):
    return QPolynomial.generator(N, i, j)


class TestStraightening:
    def test_antidiagonal_commutes(self):
        assert normal_form(2, [(2, 1), (1, 2)]) == x(2, 1, 2) * x(2, 2, 1)

    def test_diagonal_split(self):
        got = normal_form(2, [(2, 2), (1, 1)])
        want = x(2, 1, 1) * x(2, 2, 2) - (x(2, 1, 2) * x(2, 2, 1)).scale(L_Q - L_QINV)
        assert got == want

    def test_same_row_scales(self):
        assert normal_form(2, [(1, 2), (1, 1)]) == \
            (x(2, 1, 1) * x(2, 1, 2)).scale(L_QINV)

    def test_same_column_scales(self):
        assert normal_form(2, [(2, 1), (1, 1)]) == \
            (x(2, 1, 1) * x(2, 2, 1)).scale(L_QINV)

    def test_empty_word_is_unit(self):
        assert normal_form(3, []) == QPolynomial.unit(3)

    def test_index_validation(self):
        with pytest.raises(IndexOutOfRange):
            normal_form(2, [(3, 1)])

    def test_outputs_are_normal(self):
        rng = random.Random(7)
        for _ in range(200):
            N = rng.randint(2, 4)
            word = [(rng.randint(1, N), rng.randint(1, N))
                    for _ in range(rng.randint(0, 6))]
            p = normal_form(N, word)
            for mono in p.terms:
                assert all(mono[i] <= mono[i + 1] for i in range(len(mono) - 1))

    def test_confluence_left_to_right_vs_merge(self):
        rng = random.Random(11)
        for _ in range(150):
            N = rng.randint(2, 4)
            word = [(rng.randint(1, N), rng.randint(1, N))
                    for _ in range(rng.randint(2, 6))]
            assert normal_form(N, word) == normal_form_merge(N, word)

    def test_exhaustive_straightening_small(self):
        # every length-3 word over the 2x2 ring lands in the normal span
        N = 2
        normal = set(enumerate_normal_monomials(N, 3))
        for word in product(range(1, 3), repeat=6):
            pairs = list(zip(word[::2], word[1::2]))
            p = normal_form(N, pairs)
            assert set(p.terms) <= normal


class TestRingStructure:
    def test_unit(self):
        p = quantum_det(3)
        assert QPolynomial.unit(3) * p == p

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            x(2, 1, 1) * x(3, 1, 1)

    def test_associativity_random(self):
        rng = random.Random(3)
        for _ in range(40):
            N = rng.randint(2, 4)
            polys = []
            for _ in range(3):
                word = [(rng.randint(1, N), rng.randint(1, N))
                        for _ in range(rng.randint(1, 3))]
                polys.append(normal_form(N, word, Laurent.v_power(rng.randint(-2, 2))))
            a, b, c = polys
            assert (a * b) * c == a * (b * c)

    def test_bi_weight_additivity(self):
        rng = random.Random(5)
        for _ in range(40):
            N = rng.randint(2, 4)
            words = [[(rng.randint(1, N), rng.randint(1, N))
                      for _ in range(rng.randint(1, 3))] for _ in range(2)]
            a, b = (normal_form(N, w) for w in words)
            ra, ca = a.bi_weight()
            rb, cb = b.bi_weight()
            rr, cc = (a * b).bi_weight()
            assert rr == tuple(u + v for u, v in zip(ra, rb))
            assert cc == tuple(u + v for u, v in zip(ca, cb))

    def test_bi_weight_examples(self):
        assert quantum_det(2).bi_weight() == ((1, 1), (1, 1))
        assert (x(2, 1, 1) * x(2, 1, 2)).bi_weight() == ((2, 0), (1, 1))
        with pytest.raises(Inhomogeneous):
            (x(2, 1, 1) + x(2, 2, 2)).bi_weight()


class TestMinors:
    def test_rank_one_minor(self):
        assert quantum_minor(2, (1,), (1,)) == x(2, 1, 1)

    def test_two_by_two(self):
        want = x(2, 1, 1) * x(2, 2, 2) - (x(2, 1, 2) * x(2, 2, 1)).scale(L_Q)
        assert quantum_minor(2, (1, 2), (1, 2)) == want
        assert quantum_det(2) == want

    def test_degenerate_empty_minor(self):
        assert quantum_minor(3, (), ()) == QPolynomial.unit(3)

    def test_validation(self):
        with pytest.raises(SizeMismatch):
            quantum_minor(3, (1, 2), (1,))
        with pytest.raises(IndexOutOfRange):
            quantum_minor(3, (2, 1), (1, 2))
        with pytest.raises(IndexOutOfRange):
            quantum_minor(3, (1, 4), (1, 2))

    def test_det_term_counts(self):
        assert quantum_det(1) == x(1, 1, 1)
        assert quantum_det(3).term_count() == 6
        assert quantum_det(4).term_count() == 24

    @staticmethod
    def classical_minor(rows, cols):
        from itertools import permutations
        out = {}
        for sigma in permutations(range(len(cols))):
            sgn = -1 if inversions(sigma) % 2 else 1
            mono = tuple(sorted((rows[i], cols[sigma[i]]) for i in range(len(rows))))
            out[mono] = out.get(mono, 0) + sgn
        return {k: v for k, v in out.items() if v}

    def test_classical_specialization(self):
        from itertools import combinations
        for N in (2, 3, 4):
            for r in range(1, min(N, 3) + 1):
                for rows in combinations(range(1, N + 1), r):
                    for cols in combinations(range(1, N + 1), r):
                        qm = quantum_minor(N, rows, cols)
                        got = {}
                        for mono, c in qm.terms.items():
                            key = tuple(gen_rc(N, g) for g in mono)
                            val = c.specialize(1)
                            if val:
                                got[key] = got.get(key, 0) + val
                        assert got == self.classical_minor(rows, cols)


class TestPBWBasis:
    @pytest.mark.parametrize("N", [2, 3])
    @pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
    def test_monomial_counts(self, N, d):
        monos = list(enumerate_normal_monomials(N, d))
        assert len(monos) == count_normal_monomials(N, d)
        assert len(set(monos)) == len(monos)

    def test_random_words_stay_in_span(self):
        rng = random.Random(13)
        for N in (2, 3):
            for d in (2, 3, 4):
                normal = set(enumerate_normal_monomials(N, d))
                for _ in range(150):
                    word = [(rng.randint(1, N), rng.randint(1, N)) for _ in range(d)]
                    p = normal_form(N, word)
                    assert set(p.terms) <= normal


class TestCentrality:
    @pytest.mark.parametrize("N", [2, 3])
    def test_det_is_central(self, N):
        d = quantum_det(N)
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                g = x(N, i, j)
                assert d * g == g * d


class TestSerialization:
    def test_round_trip(self):
        p = quantum_det(2) * x(2, 2, 1) + x(2, 1, 2).scale(Laurent.v_power(-3, 5))
        assert QPolynomial.from_json(p.to_json()) == p

    def test_documented_shape(self):
        obj = quantum_det(2).to_json()
        assert obj == {"N": 2, "terms": [
            {"word": [[1, 1], [2, 2]], "coeff": {"0": "1"}},
            {"word": [[1, 2], [2, 1]], "coeff": {"2": "-1"}},
        ]}

    def test_non_normal_words_accepted(self):
        obj = {"N": 2, "terms": [{"word": [[2, 2], [1, 1]], "coeff": {"0": "1"}}]}
        assert QPolynomial.from_json(obj) == normal_form(2, [(2, 2), (1, 1)])
