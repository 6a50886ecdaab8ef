"""Symplectic operators, z-generators, Pfaffians, invariant sums, restrictions."""

import random
from itertools import combinations

import pytest

from qzonal.coeff import L_ONE, L_Q, L_QINV, Laurent
from qzonal.partitions import double_partition
from qzonal.qmatrix import QPolynomial, quantum_det, quantum_minor
from qzonal.symplectic import (B_MOD_G, G_MOD_B, OddAmbient, OddSubset,
                               bi_invariant_generator, invariance_kernel_check,
                               left_invariant_generator, left_invariant_product,
                               matching_length, matchings, partial_pfaffian,
                               quantum_pfaffian, relative_invariant_check,
                               restrict_Borel, restrict_H, sp_element,
                               sp_full_set, sp_generating_set, torus_to_s,
                               verify_z_relations, z_generator)
from qzonal.uq_action import LEFT, RIGHT, act, composite_E, gen_e, gen_f


def x(N, i, j):
    return QPolynomial.generator(N, i, j)


class TestSpElements:
    def test_diagonal_base_cases(self):
        assert sp_element("e", 1, 1, 4) == gen_e(4, 1)
        assert sp_element("f", 1, 1, 4) == gen_f(4, 1)

    def test_mixed_pair(self):
        want = composite_E(4, 1, 4) + composite_E(4, 3, 2).scale(Laurent.q_power(-2))
        assert sp_element("e", 1, 2, 4) == want

    def test_h_element(self):
        want = composite_E(4, 1, 3) - composite_E(4, 4, 2).scale(Laurent.q_power(-1 * 2))
        assert sp_element("h", 1, 2, 4) == want

    def test_odd_ambient_rejected(self):
        with pytest.raises(OddAmbient):
            sp_element("e", 1, 1, 3)

    def test_generating_set_size(self):
        assert len(sp_generating_set(4)) == 2 * 2 + 2 * 1
        assert len(sp_generating_set(6)) == 2 * 3 + 2 * 2
        assert len(sp_full_set(4)) == 2 * 4


class TestZGenerators:
    def test_smallest_case_is_det(self):
        assert z_generator("L", 1, 2, 2) == quantum_det(2)

    def test_diagonal_vanishes(self):
        for N in (2, 4, 6):
            for i in range(1, N + 1):
                assert z_generator("L", i, i, N).is_zero()
                assert z_generator("R", i, i, N).is_zero()

    def test_skew_symmetry(self):
        # oriented: z[i,j] = -q^-1 z[j,i] for i < j
        for N in (4, 6):
            for side in ("L", "R"):
                for i, j in combinations(range(1, N + 1), 2):
                    zij = z_generator(side, i, j, N)
                    zji = z_generator(side, j, i, N)
                    assert (zij + zji.scale(L_QINV)).is_zero()

    def test_explicit_small_value(self):
        # z^L_{1,2} at N=4: v^0 minor(12|12) + v^-4 minor(12|34)
        got = z_generator("L", 1, 2, 4)
        want = quantum_minor(4, (1, 2), (1, 2)) + \
            quantum_minor(4, (1, 2), (3, 4)).scale(Laurent.v_power(-4))
        assert got == want

    @pytest.mark.parametrize("side", ["L", "R"])
    @pytest.mark.parametrize("N", [4, 6])
    def test_relation_suite(self, side, N):
        report = verify_z_relations(side, N)
        bad = [r for r in report if not r["pass"]]
        assert not bad, bad

    def test_invariance(self):
        for N in (4, 6):
            ops = sp_generating_set(N)
            for i, j in combinations(range(1, N + 1), 2):
                assert invariance_kernel_check(z_generator("L", i, j, N), LEFT, ops)
                assert invariance_kernel_check(z_generator("R", i, j, N), RIGHT, ops)

    def test_non_invariant_example(self):
        assert not invariance_kernel_check(x(4, 1, 1), LEFT)


class TestMatchings:
    def test_counts(self):
        assert len(matchings(range(1, 5))) == 3
        assert len(matchings(range(1, 7))) == 15
        assert len(matchings(range(1, 9))) == 105

    def test_lengths(self):
        assert matching_length(((1, 2), (3, 4))) == 0
        assert matching_length(((1, 3), (2, 4))) == 1
        assert matching_length(((1, 4), (2, 3))) == 2

    def test_odd_rejected(self):
        with pytest.raises(OddSubset):
            matchings((1, 2, 3))


class TestQuantumPfaffian:
    def test_two_by_two(self):
        assert quantum_pfaffian(2) == z_generator("L", 1, 2, 2)

    def test_expansion_matches_matching_sum(self):
        N = 4
        z = {(i, j): z_generator("L", i, j, N)
             for i, j in combinations(range(1, 5), 2)}
        want = z[(1, 2)] * z[(3, 4)] \
            - (z[(1, 3)] * z[(2, 4)]).scale(L_Q) \
            + (z[(1, 4)] * z[(2, 3)]).scale(L_Q * L_Q)
        assert quantum_pfaffian(4) == want

    @pytest.mark.parametrize("N", [2, 4, 6])
    def test_equals_quantum_det(self, N):
        assert quantum_pfaffian(N) == quantum_det(N)

    def test_killed_by_right_action(self):
        N = 4
        pf = quantum_pfaffian(N)
        for k in range(1, N):
            assert act(RIGHT, gen_e(N, k), pf).is_zero()
            assert act(RIGHT, gen_f(N, k), pf).is_zero()

    def test_invariant_both_sides(self):
        pf = quantum_pfaffian(4)
        assert invariance_kernel_check(pf, LEFT)
        assert invariance_kernel_check(pf, RIGHT)

    def test_odd_ambient(self):
        with pytest.raises(OddAmbient):
            quantum_pfaffian(3)


class TestClassicalLimit:
    @staticmethod
    def classical_pfaffian(A):
        n = len(A)
        total = 0
        for pairs in matchings(range(1, n + 1)):
            sgn = -1 if matching_length(pairs) % 2 else 1
            prod = 1
            for i, j in pairs:
                prod *= A[i - 1][j - 1]
            total += sgn * prod
        return total

    @staticmethod
    def det(A):
        from itertools import permutations
        from qzonal.partitions import inversions
        n = len(A)
        total = 0
        for sigma in permutations(range(n)):
            sgn = -1 if inversions(sigma) % 2 else 1
            prod = 1
            for i in range(n):
                prod *= A[i][sigma[i]]
            total += sgn * prod
        return total

    def test_sign_pattern_at_one(self):
        signs = {pairs: Laurent.v_power(2 * matching_length(pairs),
                                        -1 if matching_length(pairs) % 2 else 1)
                 for pairs in matchings(range(1, 5))}
        at_one = {pairs: c.specialize(1) for pairs, c in signs.items()}
        assert at_one == {((1, 2), (3, 4)): 1,
                          ((1, 3), (2, 4)): -1,
                          ((1, 4), (2, 3)): 1}

    def test_pfaffian_squared_is_det(self):
        rng = random.Random(21)
        for _ in range(25):
            n = 4
            A = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    A[i][j] = rng.randint(-9, 9)
                    A[j][i] = -A[i][j]
            assert self.classical_pfaffian(A) ** 2 == self.det(A)


class TestPartialPfaffian:
    def test_full_subset_is_pfaffian(self):
        assert partial_pfaffian(4, 4) == quantum_pfaffian(4)

    def test_smallest_subset(self):
        assert partial_pfaffian(2, 4) == z_generator("L", 1, 2, 4)

    def test_annihilation(self):
        N = 4
        pf = partial_pfaffian(2, N)
        for k in range(1, N):
            assert act(RIGHT, gen_f(N, k), pf).is_zero()
        assert act(RIGHT, gen_e(N, 1), pf).is_zero()
        # the boundary raising operator does not kill it
        assert not act(RIGHT, gen_e(N, 2), pf).is_zero()

    def test_odd_subset(self):
        with pytest.raises(OddSubset):
            partial_pfaffian(3, 4)


class TestInvariantSums:
    def test_row_block_sum_small(self):
        got = left_invariant_generator(1, 2)
        assert got == quantum_det(2).scale(Laurent.q_power(-2))

    def test_row_block_sum_four(self):
        got = left_invariant_generator(1, 4)
        want = quantum_minor(4, (1, 2), (1, 2)).scale(Laurent.q_power(-2)) + \
            quantum_minor(4, (1, 2), (3, 4)).scale(Laurent.q_power(-4))
        assert got == want

    def test_left_invariance(self):
        for N in (4, 6):
            ops = sp_generating_set(N)
            for r in range(1, N // 2 + 1):
                assert invariance_kernel_check(
                    left_invariant_generator(r, N), LEFT, ops)

    def test_product_invariance(self):
        ops = sp_generating_set(4)
        for mu in [(1,), (2,), (1, 1)]:
            p = left_invariant_product(double_partition(mu), 4)
            assert invariance_kernel_check(p, LEFT, ops)

    def test_two_sided_generator_small(self):
        assert bi_invariant_generator(1, 2) == quantum_det(2)

    def test_two_sided_generator_four(self):
        got = bi_invariant_generator(1, 4)
        want = quantum_minor(4, (1, 2), (1, 2)) + \
            quantum_minor(4, (1, 2), (3, 4)).scale(Laurent.q_power(-2)) + \
            quantum_minor(4, (3, 4), (1, 2)).scale(Laurent.q_power(2)) + \
            quantum_minor(4, (3, 4), (3, 4))
        assert got == want

    def test_two_sided_invariance(self):
        for N in (4, 6):
            ops = sp_generating_set(N)
            for r in range(1, N // 2 + 1):
                e = bi_invariant_generator(r, N)
                assert invariance_kernel_check(e, LEFT, ops)
                assert invariance_kernel_check(e, RIGHT, ops)

    def test_product_independence(self):
        # products of total degree 2m, m <= 3, at N=4 are independent
        from qzonal.isotypic import GradedComponent, SubspaceBasis
        from itertools import combinations_with_replacement
        N = 4
        gens = {r: bi_invariant_generator(r, N) for r in (1, 2)}
        for m in (1, 2, 3):
            prods = []
            for k in range(1, m + 1):
                for combo in combinations_with_replacement((1, 2), k):
                    if sum(combo) == m:
                        poly = QPolynomial.unit(N)
                        for r in combo:
                            poly = poly * gens[r]
                        prods.append(poly)
            comp = GradedComponent(N, 2 * m)
            basis = SubspaceBasis(comp)
            for p in prods:
                assert basis.insert(comp.vector_of(p)) is not None
            assert basis.rank == len(prods)


class TestRestrictions:
    def test_torus_restriction_of_det(self):
        assert restrict_H(quantum_det(2)) == {(1, 1): L_ONE}

    def test_torus_kills_off_diagonal(self):
        assert restrict_H(x(2, 1, 2)) == {}

    def test_paired_minor_restriction(self):
        got = restrict_H(bi_invariant_generator(2, 4))
        assert got == {(1, 1, 1, 1): L_ONE}

    def test_generator_restriction(self):
        got = restrict_H(bi_invariant_generator(1, 4))
        assert got == {(1, 1, 0, 0): L_ONE, (0, 0, 1, 1): L_ONE}

    def test_s_collapse(self):
        got = torus_to_s(restrict_H(bi_invariant_generator(1, 4)), 4)
        assert got == {(1, 0): L_ONE, (0, 1): L_ONE}
        with pytest.raises(ValueError):
            torus_to_s({(1, 0, 0, 0): L_ONE}, 4)

    def test_borel_restriction(self):
        p = x(2, 1, 2) + x(2, 2, 1)
        assert restrict_Borel(p, "+") == x(2, 1, 2)
        assert restrict_Borel(p, "-") == x(2, 2, 1)

    def test_borel_diagonal_elements_commute(self):
        # images of x_kk and x_ll commute in the triangular quotient
        for N in (2, 3):
            for sign in ("+", "-"):
                for k in range(1, N + 1):
                    for l in range(1, N + 1):
                        a = restrict_Borel(x(N, k, k) * x(N, l, l), sign)
                        b = restrict_Borel(x(N, l, l) * x(N, k, k), sign)
                        assert a == b

    def test_borel_is_multiplicative(self):
        rng = random.Random(17)
        from qzonal.qmatrix import normal_form
        for _ in range(40):
            N = 3
            sign = rng.choice("+-")
            words = [[(rng.randint(1, N), rng.randint(1, N))
                      for _ in range(2)] for _ in range(2)]
            a, b = (normal_form(N, w) for w in words)
            ra, rb = restrict_Borel(a, sign), restrict_Borel(b, sign)
            assert restrict_Borel(ra * rb, sign) == restrict_Borel(a * b, sign)


class TestRelativeInvariants:
    def test_det_both_sides(self):
        d = quantum_det(3)
        assert relative_invariant_check(d, (1, 1, 1), B_MOD_G)
        assert relative_invariant_check(d, (1, 1, 1), G_MOD_B)

    def test_principal_minor(self):
        m = quantum_minor(4, (1, 2), (1, 2))
        assert relative_invariant_check(m, (1, 1, 0, 0), B_MOD_G)

    def test_non_highest_vector(self):
        assert not relative_invariant_check(x(2, 1, 2), (1, 0), B_MOD_G)

    def test_partial_pfaffian_row_side(self):
        pf = partial_pfaffian(2, 4)
        assert relative_invariant_check(pf, (1, 1, 0, 0), G_MOD_B)
