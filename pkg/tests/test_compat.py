"""Annihilator construction and verification."""

from fractions import Fraction as F

import pytest

from symlab.catalog import (
    codifferential_terms,
    exterior_derivative_terms,
    gradient,
    hodge_pair,
    hyperbolic_example,
    laplacian,
    quaternion,
    sym_gradient,
)
from symlab.compat import (
    AnnihilatorBudgetError,
    annihilator_degree,
    build_annihilator,
    verify_annihilator,
)
from symlab.deciders import COCANCELING, check_canceling, check_cocanceling
from symlab.exact import Polynomial, PolyMatrix, QMatrix, SymbolOperator


def test_gradient_annihilator_matches_hand_expansion():
    res = build_annihilator(gradient(2).operator)
    assert res.identity_checked and res.kernel_checks_passed
    # |x|^2 Id - x x^T, written out per coefficient matrix.
    expect = {
        (2, 0): QMatrix.from_rows([[0, 0], [0, 1]]),
        (1, 1): QMatrix.from_rows([[0, -1], [-1, 0]]),
        (0, 2): QMatrix.from_rows([[1, 0], [0, 0]]),
    }
    assert res.operator.terms_dict() == expect
    assert res.operator.order == annihilator_degree(gradient(2).operator) == 2


def test_annihilation_identity_across_elliptic_examples():
    for inst in (gradient(3), sym_gradient(2), quaternion(), hodge_pair(3, 2)):
        res = build_annihilator(inst.operator)
        assert res.identity_checked
        assert res.operator.is_zero() or res.operator.to_polymatrix().is_homogeneous(
            annihilator_degree(inst.operator)
        )
        assert res.kernel_checks_passed


def test_hyperbolic_annihilator_is_zero_with_kernel_mismatch():
    # A square symbol forces the construction to collapse to the zero
    # operator, and the kernel samples at the degenerate diagonal directions
    # expose that its kernels are too large.
    res = build_annihilator(hyperbolic_example().operator)
    assert res.operator.is_zero()
    assert res.identity_checked
    assert not res.kernel_checks_passed
    failing = [xi for xi, ok in res.sampled_kernel_checks if not ok]
    assert any(abs(xi[0]) == abs(xi[1]) for xi in failing)


def test_laplacian_annihilator_zero_and_not_cocanceling():
    res = build_annihilator(laplacian(2).operator)
    assert res.operator.is_zero()
    assert check_cocanceling(res.operator).status != COCANCELING


def test_verify_annihilator_rejects_zero_for_canceling_operator():
    # The zero symbol annihilates everything but its kernels are everything,
    # so the kernel comparison must fail wherever images are proper.
    op = gradient(2).operator
    zero = SymbolOperator.zero(2, 2, 2, 2)
    report = verify_annihilator(op, zero)
    assert report.identity_ok
    assert not report.kernels_match


def test_verify_annihilator_full_pass_on_construction():
    op = sym_gradient(2).operator
    res = build_annihilator(op)
    report = verify_annihilator(op, res.operator)
    assert report.identity_ok and report.kernels_match and report.ranks_full


def test_annihilator_cocancellation_tracks_cancellation():
    for inst in (gradient(2), gradient(1), laplacian(2), hodge_pair(3, 1)):
        res = build_annihilator(inst.operator)
        cv = check_canceling(inst.operator, seed=3)
        assert (check_cocanceling(res.operator).status == COCANCELING) == (
            cv.status == "CANCELING"
        )


def test_budget_guard():
    with pytest.raises(AnnihilatorBudgetError):
        build_annihilator(hodge_pair(4, 2).operator, term_budget=100)


def test_hodge_remark_annihilator():
    # For the paired derivative/codifferential symbol on 2-forms over R^4,
    # the block operator (q^(m-1) down-up on the top component, q^(m-1)
    # up-down on the bottom one) with q = |x|^2 annihilates it, where m is
    # the codomain dimension 4 + 4.
    n, ell = 4, 2
    a = hodge_pair(n, ell).operator  # 6 -> 8

    xs = [Polynomial.variable(n, i) for i in range(n)]
    q = sum((x * x for x in xs[1:]), xs[0] * xs[0])

    def pm_from_terms(terms):
        acc = None
        for alpha, mat in terms.items():
            part = PolyMatrix.from_qmatrix(n, mat).scale_poly(xs[alpha.index(1)])
            acc = part if acc is None else acc + part
        return acc

    du3 = pm_from_terms(exterior_derivative_terms(n, ell + 1))  # 3-forms -> 4-forms
    co4 = pm_from_terms(codifferential_terms(n, ell + 2))       # 4-forms -> 3-forms
    top = co4 @ du3                                             # 4 x 4, degree 2
    co1 = pm_from_terms(codifferential_terms(n, ell - 1))       # 1-forms -> 0-forms
    du0 = pm_from_terms(exterior_derivative_terms(n, ell - 2))  # 0-forms -> 1-forms
    bottom = du0 @ co1                                          # 4 x 4, degree 2

    z = Polynomial.zero(n)
    rows = []
    for i in range(4):
        rows.append(list(top.entries[i]) + [z] * 4)
    for i in range(4):
        rows.append([z] * 4 + list(bottom.entries[i]))
    bare = PolyMatrix.from_rows(n, rows)
    assert (bare @ a.to_polymatrix()).is_zero()
    # The full remark operator carries the q^(m-1) factor; scaling by a
    # polynomial preserves annihilation, and the result is homogeneous of
    # degree 2(m - 1) + 2.
    m = 8
    l_pm = bare.scale_poly(q.pow(m - 1))
    assert l_pm.is_homogeneous(2 * (m - 1) + 2)
