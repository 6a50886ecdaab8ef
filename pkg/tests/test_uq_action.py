"""Left/right enveloping-algebra actions and composite root vectors."""

import random

import pytest

from qzonal.coeff import L_ONE, Laurent, q_int
from qzonal.isotypic import GradedComponent
from qzonal.qmatrix import IndexOutOfRange, QPolynomial, normal_form, quantum_det
from qzonal.uq_action import (LEFT, RIGHT, act, act_generator, alpha_coords,
                              composite_E, gen_e, gen_f, q_weight,
                              weight_pairing)


def x(N, i, j):
    return QPolynomial.generator(N, i, j)


class TestGeneratorActions:
    def test_left_e_moves_column_down(self):
        assert act_generator(LEFT, ("e", 1), x(2, 1, 2)) == x(2, 1, 1)

    def test_left_e_kills_first_column(self):
        assert act_generator(LEFT, ("e", 1), x(2, 1, 1)).is_zero()

    def test_left_f_twisted_leibniz(self):
        got = act(LEFT, gen_f(2, 1), x(2, 1, 1) * x(2, 1, 1))
        want = (x(2, 1, 1) * x(2, 1, 2)).scale(Laurent({-3: 1, 1: 1}))
        assert got == want

    def test_right_e_moves_row(self):
        assert act_generator(RIGHT, ("e", 1), x(2, 1, 2)) == x(2, 2, 2)

    def test_weight_atoms(self):
        # column reading on the left
        eps2 = (0, 2)
        got = act(LEFT, q_weight(2, eps2), x(2, 1, 2))
        assert got == x(2, 1, 2).scale(Laurent.q_power(1))
        # row reading on the right
        got = act(RIGHT, q_weight(2, eps2), x(2, 1, 2))
        assert got == x(2, 1, 2)

    def test_index_validation(self):
        with pytest.raises(IndexOutOfRange):
            gen_e(2, 2)
        with pytest.raises(IndexOutOfRange):
            act(LEFT, gen_e(3, 1), x(2, 1, 1))


class TestOperatorRelations:
    @pytest.mark.parametrize("N,d", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
    def test_ef_commutator(self, N, d):
        comp = GradedComponent(N, d)
        for side in (LEFT, RIGHT):
            for i in range(1, N):
                for j in range(1, N):
                    u = gen_e(N, i) * gen_f(N, j) - gen_f(N, j) * gen_e(N, i)
                    for mono in comp.basis:
                        p = QPolynomial(N, {mono: L_ONE})
                        lhs = act(side, u, p)
                        if i != j:
                            assert lhs.is_zero()
                            continue
                        wt = p.column_weight() if side == LEFT else p.row_weight()
                        m = wt[i - 1] - wt[i]
                        if m == 0:
                            assert lhs.is_zero()
                        else:
                            c = q_int(abs(m))
                            assert lhs == p.scale(c if m > 0 else -c)

    @pytest.mark.parametrize("N,d", [(3, 2), (3, 3), (4, 2), (4, 3)])
    def test_serre_relations(self, N, d):
        comp = GradedComponent(N, d)
        two = q_int(2)
        for side in (LEFT, RIGHT):
            for g in (gen_e, gen_f):
                for i in range(1, N):
                    for j in range(1, N):
                        if i == j:
                            continue
                        a, b = g(N, i), g(N, j)
                        if abs(i - j) == 1:
                            u = a * a * b - (a * b * a).scale(two) + b * a * a
                        else:
                            u = a * b - b * a
                        for mono in comp.basis:
                            p = QPolynomial(N, {mono: L_ONE})
                            assert act(side, u, p).is_zero()

    def test_left_right_actions_commute(self):
        rng = random.Random(2)
        for N in (2, 3, 4):
            atoms = [gen_e(N, k) for k in range(1, N)] + \
                    [gen_f(N, k) for k in range(1, N)]
            for _ in range(25):
                a, b = rng.choice(atoms), rng.choice(atoms)
                word = [(rng.randint(1, N), rng.randint(1, N))
                        for _ in range(rng.randint(1, 3))]
                p = normal_form(N, word)
                assert act(RIGHT, b, act(LEFT, a, p)) == \
                    act(LEFT, a, act(RIGHT, b, p))

    def test_coproduct_bracketing(self):
        # action on a product agrees with the two-factor product rule
        rng = random.Random(9)
        for _ in range(30):
            N = 3
            k = rng.randint(1, 2)
            wa = [(rng.randint(1, N), rng.randint(1, N)) for _ in range(2)]
            wb = [(rng.randint(1, N), rng.randint(1, N)) for _ in range(2)]
            a, b = normal_form(N, wa), normal_form(N, wb)
            half = alpha_coords(N, k, half=True)
            minus = tuple(-c for c in half)
            for side, g in ((LEFT, gen_e(N, k)), (LEFT, gen_f(N, k)),
                            (RIGHT, gen_e(N, k)), (RIGHT, gen_f(N, k))):
                lhs = act(side, g, a * b)
                rhs = act(side, g, a) * act(side, q_weight(N, minus), b) + \
                    act(side, q_weight(N, half), a) * act(side, g, b)
                assert lhs == rhs, (side, k)


class TestCompositeRootVectors:
    def test_base_cases(self):
        assert composite_E(3, 1, 2) == gen_e(3, 1)
        assert composite_E(3, 2, 1) == gen_f(3, 1)

    def test_nested_action(self):
        got = act(LEFT, composite_E(3, 1, 3), x(3, 1, 3))
        assert got == x(3, 1, 1)

    def test_intermediate_independence(self):
        for d in (1, 2):
            comp = GradedComponent(4, d)
            u2 = composite_E(4, 1, 4, via=2)
            u3 = composite_E(4, 1, 4, via=3)
            d2 = composite_E(4, 4, 1, via=2)
            d3 = composite_E(4, 4, 1, via=3)
            for side in (LEFT, RIGHT):
                for mono in comp.basis:
                    p = QPolynomial(4, {mono: L_ONE})
                    assert act(side, u2, p) == act(side, u3, p)
                    assert act(side, d2, p) == act(side, d3, p)

    def test_validation(self):
        with pytest.raises(IndexOutOfRange):
            composite_E(3, 1, 1)
        with pytest.raises(IndexOutOfRange):
            composite_E(3, 1, 3, via=3)


class TestWeights:
    def test_weight_compatibility(self):
        rng = random.Random(4)
        for _ in range(30):
            N = rng.randint(2, 4)
            word = [(rng.randint(1, N), rng.randint(1, N))
                    for _ in range(rng.randint(1, 3))]
            p = normal_form(N, word)
            if p.is_zero():
                continue
            lam = tuple(rng.randint(-2, 2) for _ in range(N))
            got = act(LEFT, q_weight(N, lam), p)
            assert got == p.scale(Laurent.v_power(
                weight_pairing(lam, p.column_weight())))

    def test_det_killed_both_sides(self):
        for N in (2, 3, 4):
            d = quantum_det(N)
            for k in range(1, N):
                for side in (LEFT, RIGHT):
                    assert act(side, gen_e(N, k), d).is_zero()
                    assert act(side, gen_f(N, k), d).is_zero()
