"""Tests for exact Laurent polynomial arithmetic."""

from fractions import Fraction

import pytest

from clusterlab.services.exact_poly import (
    DivisionByZero,
    LaurentPoly,
    NonInvertibleSubstitution,
    NotDivisible,
    ZeroPolynomial,
    adic_valuation,
    divides,
    exact_div,
    min_exponent,
    rewrite,
    substitute,
)

X = ("x", "y")


def _x():
    return LaurentPoly.var("x", X)


def _y():
    return LaurentPoly.var("y", X)


def test_canonical_text_orders_terms_and_prints_fractions():
    f = _x() * _y() + 3 - _x() ** 2
    assert f.to_text() == "-1/1*x^2 + 1/1*x*y + 3/1"
    assert LaurentPoly.zero(X).to_text() == "0"


def test_text_uses_natural_name_order():
    names = ("A10", "A2")
    f = LaurentPoly.var("A10", names) * LaurentPoly.var("A2", names)
    assert f.to_text() == "1/1*A2*A10"


def test_equality_ignores_variable_order_and_unused_variables():
    f = LaurentPoly.var("x", ("x", "y"))
    g = LaurentPoly.var("x", ("y", "x", "z"))
    assert f == g
    assert hash(f) == hash(g)
    assert LaurentPoly.constant(2, X) == 2


def test_operations_align_on_variable_union():
    f = LaurentPoly.var("a") + LaurentPoly.var("b")
    assert f.support() == {"a", "b"}
    assert (f * f).to_text() == "1/1*a^2 + 2/1*a*b + 1/1*b^2"


def test_negative_powers_of_monomials():
    m = LaurentPoly.monomial({"x": 2, "y": -1}, 3, X)
    inv = m ** -1
    assert (m * inv) == 1
    assert inv.terms == {(-2, 1): Fraction(1, 3)}


def test_inverse_of_binomial_is_rejected():
    with pytest.raises(NonInvertibleSubstitution):
        (_x() + 1).inverse()


def test_exact_division_of_polynomials():
    f = _x() ** 2 - _y() ** 2
    assert exact_div(f, _x() - _y()) == _x() + _y()
    assert divides(_x() + _y(), f)


def test_exact_division_with_monomial_content():
    f = (_x() ** 2 - 1) * _y() ** -2
    g = (_x() - 1) * _x() ** -1
    assert exact_div(f, g) == (_x() + 1) * _x() * _y() ** -2


def test_division_remainder_raises():
    with pytest.raises(NotDivisible):
        exact_div(_x() ** 2 + 1, _x() + 1)
    assert not divides(_x() + 1, _x() ** 2 + 1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        exact_div(_x(), LaurentPoly.zero(X))
    with pytest.raises(DivisionByZero):
        _x() / 0


def test_substitute_to_rationals_and_polynomials():
    f = _x() ** 2 * _y() ** -1 + 1
    assert substitute(f, {"x": 2, "y": 4}) == Fraction(2)
    partial = substitute(f, {"x": LaurentPoly.var("t")})
    assert partial == LaurentPoly.var("t") ** 2 * LaurentPoly.var("y") ** -1 + 1


def test_substitute_rejects_negative_power_of_binomial():
    f = _x() ** -1
    with pytest.raises(NonInvertibleSubstitution):
        substitute(f, {"x": _y() + 1})
    with pytest.raises(NonInvertibleSubstitution):
        substitute(f, {"x": 0})


def test_rewrite_divides_out_binomial_denominators():
    names = ("u", "y")
    y = LaurentPoly.var("y", names)
    f = (y ** 2 + 3 * y + 2) * LaurentPoly.var("u", names) ** -1
    assert rewrite(f, {"u": y + 1}) == y + 2
    g = LaurentPoly(("u",), {(-1,): 1})
    with pytest.raises(NotDivisible):
        rewrite(g, {"u": y + 1})


def test_valuations():
    f = _x() ** -2 * _y() + _x() ** 3
    assert min_exponent(f, "x") == -2
    assert min_exponent(f, "z") == 0
    assert adic_valuation((_x() + _y()) ** 3 * (_x() - _y()), _x() + _y()) == 3
    assert adic_valuation(_x() ** 4 * _y() ** 2, _x() ** 2) == 2


def test_zero_polynomial_errors():
    with pytest.raises(ZeroPolynomial):
        LaurentPoly.zero(X).leading_term()
    with pytest.raises(ZeroPolynomial):
        min_exponent(LaurentPoly.zero(X), "x")


def test_split_content():
    f = _x() ** -1 * _y() ** 2 + _y() ** 3
    m, rest = f.split_content()
    assert m == _x() ** -1 * _y() ** 2
    assert rest == 1 + _x() * _y()
    assert m * rest == f
