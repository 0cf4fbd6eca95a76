"""Symbol operators, gram matrices, polynomial-matrix determinants."""

import itertools
from fractions import Fraction as F

import pytest

from symlab.catalog import divergence, gradient, hyperbolic_example, saint_venant
from symlab.exact import Polynomial, PolyMatrix, QMatrix, SymbolOperator


def test_gradient_evaluate():
    g = gradient(2).operator
    assert g.evaluate([2, 3]) == QMatrix.from_rows([[2], [3]])


def test_divergence_evaluate():
    d = divergence(2).operator
    assert d.evaluate([2, 3]) == QMatrix.from_rows([[2, 3]])


def test_evaluate_homogeneity():
    h = hyperbolic_example().operator
    for t in (F(2), F(-3, 7), F(5, 2)):
        xi = [F(1, 3), F(-2)]
        scaled = h.evaluate([t * x for x in xi])
        assert scaled == h.evaluate(xi).scale(t**h.order)


def test_saint_venant_displayed_entry():
    # At frequency (1, 0) applied to the (e2 tensor e2) form, the tensor
    # component (e2, e2, e1, e1) equals 1.
    w = saint_venant(2).operator
    mat = w.evaluate([1, 0])
    col = 0  # multiset {2, 2} is exponent (0, 2), first in graded-lex order
    row = 1 * 8 + 1 * 4 + 0 * 2 + 0  # tensor index (1, 1, 0, 0), row-major
    assert mat[row, col] == 1


def test_saint_venant_matches_quadruple_formula():
    # Independent oracle: evaluate the displayed 4-slot formula directly.
    w = saint_venant(2).operator
    xi = [F(2), F(-3)]
    mat = w.evaluate(xi)
    pairs = [(0, 0), (0, 1), (1, 1)]  # graded-lex multisets (0,2),(1,1),(2,0) map
    sym = {(0, 2): (1, 1), (1, 1): (0, 1), (2, 0): (0, 0)}
    from symlab.exact.poly import multi_indices

    cols = multi_indices(2, 2)
    for col, beta in enumerate(cols):
        i, j = sym[beta]
        e = {(i, j): F(1), (j, i): F(1)} if i != j else {(i, i): F(1)}

        def e_val(a, b):
            return e.get((a, b), F(0))

        for u, v, ww, z in itertools.product(range(2), repeat=4):
            expected = (
                e_val(u, v) * xi[ww] * xi[z]
                + e_val(ww, z) * xi[u] * xi[v]
                - e_val(u, z) * xi[ww] * xi[v]
                - e_val(ww, v) * xi[u] * xi[z]
            )
            row = u * 8 + v * 4 + ww * 2 + z
            assert mat[row, col] == expected


def test_gram_gradient_and_hyperbolic_determinant():
    g = gradient(2).operator
    gram = g.gram()
    x1sq = Polynomial.make(2, {(2, 0): F(1), (0, 2): F(1)})
    assert gram.entries[0][0] == x1sq
    assert gram.det() == x1sq
    assert gram.adjugate().entries[0][0] == Polynomial.constant(2, 1)

    h = hyperbolic_example().operator
    det = h.gram().det()
    # Hand expansion: (x1^2 - x2^2)^2.
    expected = Polynomial.make(2, {(4, 0): F(1), (2, 2): F(-2), (0, 4): F(1)})
    assert det == expected
    assert det.evaluate([1, 1]) == 0 and det.evaluate([1, -1]) == 0


def test_diag_polymatrix_det_adjugate():
    x0 = Polynomial.variable(2, 0)
    x1 = Polynomial.variable(2, 1)
    z = Polynomial.zero(2)
    m = PolyMatrix.from_rows(2, [[x0, z], [z, x1]])
    assert m.det() == x0 * x1
    adj = m.adjugate()
    assert adj.entries[0][0] == x1 and adj.entries[1][1] == x0
    assert adj.entries[0][1].is_zero() and adj.entries[1][0].is_zero()


def test_adjugate_identity_for_catalog_grams():
    from symlab.catalog import quaternion, sym_gradient

    for inst in (gradient(3), sym_gradient(2), quaternion(), hyperbolic_example()):
        gram = inst.operator.gram()
        det = gram.det()
        lhs = gram.adjugate() @ gram
        rhs = PolyMatrix.identity_times(gram.n, gram.rows, det)
        assert (lhs - rhs).is_zero()


def test_coefficient_round_trip():
    for inst in (gradient(2), hyperbolic_example(), saint_venant(2)):
        op = inst.operator
        pm = op.to_polymatrix()
        back = SymbolOperator.from_polymatrix(pm, op.order, allow_zero=True)
        assert back == op


def test_zero_operator_rules():
    with pytest.raises(ValueError):
        SymbolOperator.make(2, 1, 1, 1, {})
    z = SymbolOperator.zero(2, 3, 4, 2)
    assert z.is_zero()
    assert z.evaluate([5, 7]) == QMatrix.zeros(4, 3)
    sv1 = saint_venant(1).operator
    assert sv1.is_zero()


def test_shape_validation():
    with pytest.raises(ValueError):
        SymbolOperator.make(2, 1, 2, 1, {(1, 0): QMatrix.from_rows([[1]])})
    with pytest.raises(ValueError):
        SymbolOperator.make(2, 1, 1, 2, {(1, 0): QMatrix.from_rows([[1]])})


def test_compose_and_scale():
    g = gradient(2).operator
    m = QMatrix.from_rows([[2, 1], [1, 1]])
    left = g.compose_left(m)
    xi = [F(3), F(5)]
    assert left.evaluate(xi) == m @ g.evaluate(xi)
    assert g.scale(F(-2)).evaluate(xi) == g.evaluate(xi).scale(F(-2))
