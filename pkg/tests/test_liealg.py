import itertools
from fractions import Fraction

import numpy as np
import pytest

from gaudinrsk.combinatorics import NatMatrix
from gaudinrsk.liealg import (
    Operator,
    casimir_eigenvalue,
    commute_on,
    compositions,
    delta_n,
    delta_r,
    dense,
    dual_nabla,
    dual_nested_casimir,
    dual_op_E,
    exact_matrix,
    g_h,
    gaudin_h,
    is_self_adjoint,
    jm,
    kappa,
    nabla,
    nested_casimir,
    omega,
    op_E,
    sqnorm,
    weight_basis,
    weight_op,
)

Z = (Fraction(5), Fraction(2), Fraction(1))
Q = (Fraction(3), Fraction(1))
BASIS = weight_basis(2, 3, (1, 1, 1))


class TestBasis:
    def test_compositions(self):
        assert len(compositions(3, 2)) == 4
        assert compositions(0, 0) == [()]
        assert compositions(1, 0) == []

    def test_dimension(self):
        # (C^2)^{x3}: 2^3 monomials with column sums (1,1,1)
        assert len(BASIS) == 8
        assert len(weight_basis(2, 2, (2, 1))) == 6

    def test_weight_restriction(self):
        block = weight_basis(2, 3, (1, 1, 1), row_sums=(2, 1))
        assert len(block) == 3
        assert all(m.row_sums() == (2, 1) for m in block)

    def test_deterministic_order(self):
        assert weight_basis(2, 2, (1, 0)) == weight_basis(2, 2, (1, 0))

    def test_sqnorm(self):
        assert sqnorm(NatMatrix([[2, 0], [1, 3]])) == 2 * 1 * 1 * 6

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            weight_basis(2, 3, (1, 1))


class TestOperatorAlgebra:
    def test_elementary_action(self):
        m = NatMatrix([[1, 0], [0, 1]])
        img = op_E(1, 2, 2).apply_monomial(m)
        assert img == {NatMatrix([[1, 1], [0, 0]]): 1}
        assert op_E(2, 1, 2).apply_monomial(m) == {}

    def test_diagonal_action(self):
        m = NatMatrix([[1, 2], [0, 1]])
        img = op_E(1, 1, 2).apply_monomial(m)
        assert img == {m: 2}

    def test_dual_elementary_action(self):
        m = NatMatrix([[1, 0], [0, 1]])
        img = dual_op_E(1, 2, 2).apply_monomial(m)
        assert img == {NatMatrix([[1, 0], [1, 0]]): 1}

    def test_linear_combination(self):
        m = NatMatrix([[1], [1]])
        op = op_E(1, 2, 1) * 2 - op_E(2, 1, 1) / 3
        img = op.apply_monomial(m)
        assert img == {
            NatMatrix([[2], [0]]): Fraction(2),
            NatMatrix([[0], [2]]): Fraction(-1, 3),
        }

    def test_composition_order(self):
        # (E_12 E_21) x_11 = x_11 on a single 2x1 column
        m = NatMatrix([[1], [0]])
        op = op_E(1, 2, 1) * op_E(2, 1, 1)
        assert op.apply_monomial(m) == {m: 1}
        assert (op_E(2, 1, 1) * op_E(1, 2, 1)).apply_monomial(m) == {}

    def test_gl2_commutation_relation(self):
        # [E_12, E_21] = E_11 - E_22 in each tensor factor
        lhs = op_E(1, 2, 1).commutator(op_E(2, 1, 1))
        rhs = op_E(1, 1, 1) - op_E(2, 2, 1)
        assert (lhs - rhs).is_zero_on(weight_basis(2, 1, (2,)))

    def test_exact_matrix_leaves_span(self):
        block = weight_basis(2, 2, (1, 1), row_sums=(2, 0))
        with pytest.raises(ValueError):
            exact_matrix(delta_n(2, 1, 2), block)


class TestCommutingFamilies:
    def test_dynamical_family_commutes(self):
        ops = [nabla(i, Z, Q, 3) for i in (1, 2)]
        assert commute_on(ops[0], ops[1], BASIS)

    def test_dynamical_and_exchange_commute(self):
        nab = [nabla(i, Z, Q, 3) for i in (1, 2)]
        ham = [gaudin_h(a, Z, Q, 2) for a in (1, 2, 3)]
        for x, y in itertools.product(nab, ham):
            assert commute_on(x, y, BASIS)
        for x, y in itertools.combinations(ham, 2):
            assert commute_on(x, y, BASIS)

    def test_limit_family_commutes(self):
        nab0 = [nabla(i, (0, 0, 0), Q, 3) for i in (1, 2)]
        jms = [jm(a, 2) for a in (1, 2, 3)]
        for x, y in itertools.product(nab0, jms):
            assert commute_on(x, y, BASIS)
        for x, y in itertools.combinations(jms, 2):
            assert commute_on(x, y, BASIS)
        # independent of the diagonal parameter
        nab0b = [nabla(i, (0, 0, 0), (Fraction(7), Fraction(2)), 3) for i in (1, 2)]
        for x, y in itertools.product(nab0b, jms + nab0):
            assert commute_on(x, y, BASIS)

    def test_two_diagonal_actions_commute(self):
        for i, j, a, b in itertools.product((1, 2), (1, 2), (1, 2, 3), (1, 2, 3)):
            assert commute_on(delta_n(i, j, 3), delta_r(a, b, 2), BASIS)

    def test_dual_family_commutes(self):
        dnab = [dual_nabla(a, (0, 0), Z, 2) for a in (1, 2, 3)]
        nab0 = [nabla(i, (0, 0, 0), Q, 3) for i in (1, 2)]
        ham0 = [gaudin_h(a, Z, (0, 0), 2) for a in (1, 2, 3)]
        for x, y in itertools.combinations(dnab, 2):
            assert commute_on(x, y, BASIS)
        for x, y in itertools.product(dnab, nab0 + ham0):
            assert commute_on(x, y, BASIS)

    def test_weight_ops_are_central_for_the_families(self):
        ws = [weight_op(i, 3) for i in (1, 2)]
        others = (
            [nabla(i, Z, Q, 3) for i in (1, 2)]
            + [gaudin_h(a, Z, Q, 2) for a in (1, 2, 3)]
            + [jm(a, 2) for a in (1, 2, 3)]
        )
        for w, x in itertools.product(ws, others):
            assert commute_on(w, x, BASIS)


class TestAdjointness:
    def test_families_self_adjoint(self):
        ops = (
            [nabla(i, Z, Q, 3) for i in (1, 2)]
            + [gaudin_h(a, Z, Q, 2) for a in (1, 2, 3)]
            + [jm(a, 2) for a in (1, 2, 3)]
            + [weight_op(i, 3) for i in (1, 2)]
            + [nested_casimir(i, 3) for i in (1, 2)]
            + [dual_nested_casimir(a, 2) for a in (1, 2, 3)]
            + [dual_nabla(a, (0, 0), Z, 2) for a in (1, 2, 3)]
        )
        for op in ops:
            assert is_self_adjoint(op, BASIS)

    def test_dense_symmetric(self):
        for op in [nabla(1, Z, Q, 3), gaudin_h(2, Z, Q, 2), jm(3, 2)]:
            mat = dense(op, BASIS)
            assert np.allclose(mat, mat.T)

    def test_raw_matrix_matches_exact(self):
        op = nabla(1, Z, Q, 3)
        cols = exact_matrix(op, BASIS)
        mat = dense(op, BASIS, orthonormal=False)
        for src, col in cols.items():
            for dst, coeff in col.items():
                assert mat[dst, src] == pytest.approx(float(coeff))


class TestCasimirs:
    def test_eigenvalue_formula_single_row(self):
        for m in (1, 2, 3):
            block = weight_basis(2, 1, (m,), row_sums=(m, 0))
            img = nested_casimir(2, 1).apply_monomial(block[0])
            assert img[block[0]] == casimir_eigenvalue([m], 2)

    def test_eigenvalue_formula_spectrum(self):
        # column sums (1,1,1) for gl_2: shapes (3) and (2,1) appear
        mat = dense(nested_casimir(2, 3), BASIS)
        eig = sorted(np.linalg.eigvalsh(mat))
        expected = sorted(
            [casimir_eigenvalue([3], 2)] * 4 + [casimir_eigenvalue([2, 1], 2)] * 4
        )
        assert np.allclose(eig, expected)

    def test_dual_eigenvalue_formula_spectrum(self):
        mat = dense(dual_nested_casimir(3, 2), BASIS)
        eig = sorted(np.linalg.eigvalsh(mat))
        expected = sorted(
            [casimir_eigenvalue([3], 3)] * 4 + [casimir_eigenvalue([2, 1], 3)] * 4
        )
        assert np.allclose(eig, expected)

    def test_first_order_counts_boxes(self):
        block = weight_basis(2, 2, (2, 1), row_sums=(2, 1))
        op = nested_casimir(2, 2, order=1)
        for m in block:
            assert op.apply_monomial(m) == {m: 3}

    def test_rejects_higher_order(self):
        with pytest.raises(ValueError):
            nested_casimir(2, 2, order=3)


class TestSingleColumnOperator:
    def test_g_h_self_adjoint_and_diagonalizable(self):
        h = (Fraction(2), Fraction(0))
        q = (Fraction(3), Fraction(1))
        basis = weight_basis(2, 1, (2,))
        assert is_self_adjoint(g_h(h, q), basis)

    def test_g_h_vanishes_for_constant_h(self):
        basis = weight_basis(2, 1, (2,))
        op = g_h((Fraction(1), Fraction(1)), (Fraction(3), Fraction(1)))
        assert op.is_zero_on(basis)
