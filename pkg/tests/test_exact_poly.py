"""Sparse polynomials, interval enclosures, Bernstein bounds."""

from fractions import Fraction as F

import pytest

from symlab.exact import Polynomial, monomial_count, multi_indices
from symlab.exact.bernstein import bernstein_range


def x(i, n=2):
    return Polynomial.variable(n, i)


def test_arithmetic_and_cleanup():
    p = x(0) + x(1)
    q = x(0) - x(1)
    prod = p * q
    assert prod.as_dict() == {(2, 0): F(1), (0, 2): F(-1)}
    assert (p - p).is_zero()
    assert p.scale(0).is_zero()


def test_graded_lex_iteration_order():
    p = Polynomial.make(
        2, {(2, 0): F(1), (0, 1): F(2), (1, 1): F(3), (0, 0): F(5)}
    )
    assert [a for a, _ in p.terms] == [(0, 0), (0, 1), (1, 1), (2, 0)]


def test_evaluate_exact():
    p = (x(0) * x(0)).scale(3) + x(1).scale(F(1, 2))
    assert p.evaluate([F(2, 3), F(4)]) == 3 * F(4, 9) + F(2)


def test_substitute_pins_variable():
    p = x(0) * x(0) + x(0) * x(1) + Polynomial.constant(2, 1)
    q = p.substitute(0, F(2))
    assert q.as_dict() == {(0, 0): F(5), (0, 1): F(2)}


def test_homogeneity_detection():
    assert (x(0) * x(1)).is_homogeneous(2)
    assert not (x(0) + Polynomial.constant(2, 1)).is_homogeneous()
    assert Polynomial.zero(2).is_homogeneous(7)


def test_pow_matches_repeated_product():
    p = x(0) + x(1).scale(2)
    assert p.pow(3) == p * p * p
    assert p.pow(0) == Polynomial.constant(2, 1)


def test_interval_containment_on_samples():
    p = (x(0) * x(0)).scale(2) - x(0) * x(1) + x(1)
    box = [(F(-1), F(1)), (F(0), F(2))]
    lo, hi = p.interval_evaluate(box)
    for a in (F(-1), F(0), F(1, 2), F(1)):
        for b in (F(0), F(1), F(3, 2), F(2)):
            v = p.evaluate([a, b])
            assert lo <= v <= hi


def test_bernstein_tighter_than_interval():
    # Dependency-heavy polynomial: (x0 + x1)^2 - 2 x0 x1 = x0^2 + x1^2.
    p = (x(0) + x(1)).pow(2) - (x(0) * x(1)).scale(2)
    box = [(F(1, 2), F(1)), (F(1, 2), F(1))]
    ilo, ihi = p.interval_evaluate(box)
    blo, bhi = bernstein_range(p, box)
    assert blo >= ilo and bhi <= ihi
    # True minimum is 1/2; Bernstein certifies positivity on this box.
    assert blo > 0
    for a in (F(1, 2), F(3, 4), F(1)):
        for b in (F(1, 2), F(2, 3), F(1)):
            v = p.evaluate([a, b])
            assert blo <= v <= bhi


def test_bernstein_exact_at_corners():
    p = (x(0) * x(1)).scale(3) + x(0) - x(1)
    box = [(F(-2), F(1)), (F(0), F(3))]
    blo, bhi = bernstein_range(p, box)
    corners = [
        p.evaluate([a, b]) for a in (F(-2), F(1)) for b in (F(0), F(3))
    ]
    assert blo <= min(corners) and bhi >= max(corners)


def test_multi_indices_and_counts():
    assert multi_indices(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(multi_indices(3, 4)) == monomial_count(3, 4) == 15
    assert multi_indices(1, 3) == [(3,)]


def test_bad_exponent_rejected():
    with pytest.raises(ValueError):
        Polynomial.make(2, {(1,): F(1)})
