"""Tests for expression parsing and membership queries."""

import pytest

from clusterlab.services.cluster_engine import NotLaurentInSeed, Verdict, mutate_state
from clusterlab.services.errors import InputError
from clusterlab.services.exact_poly import LaurentPoly
from clusterlab.services.expression import (
    ExpressionError,
    membership_query,
    parse_expression,
    parse_laurent,
    resolve_sigma,
)

NAMES = ("A1", "A2")


def _a(name):
    return LaurentPoly.var(name, NAMES)


def test_parse_polynomial_with_rationals():
    f = parse_laurent("A1^2 - 1/2*A2 + 3", NAMES)
    assert f == _a("A1") ** 2 - _a("A2") * LaurentPoly.constant(1, NAMES) / 2 + 3


def test_parse_negative_powers_and_python_power():
    assert parse_laurent("A1**-2 * A2", NAMES) == _a("A1") ** -2 * _a("A2")
    assert parse_laurent("A2/A1^3", NAMES) == _a("A2") * _a("A1") ** -3


def test_parse_exact_quotient():
    assert parse_laurent("(A1^2 - A2^2)/(A1 - A2)", NAMES) == _a("A1") + _a("A2")


def test_parse_constant():
    assert parse_laurent("7/3", NAMES) == LaurentPoly.constant(7, NAMES) / 3


@pytest.mark.parametrize(
    "text",
    ["1/(A1 + 1)", "A3", "A1 + * A2", "A1^(1/2)"],
)
def test_parse_errors(text):
    with pytest.raises(ExpressionError):
        parse_laurent(text, NAMES)


def test_parse_primed_variable(sl2_initial):
    mutated = mutate_state(sl2_initial, 1).vars[1]
    assert parse_expression("A1'", sl2_initial) == mutated
    a0 = LaurentPoly.var("A0", sl2_initial.variables)
    assert parse_expression("A1*A1' - A2*A3", sl2_initial) == a0


def test_negative_power_of_primed_variable_is_not_laurent(sl2_initial):
    with pytest.raises(NotLaurentInSeed):
        parse_expression("1/A1'", sl2_initial)


def test_resolve_sigma(sl2_framed):
    assert resolve_sigma(sl2_framed, None) == [-1, 2]
    assert resolve_sigma(sl2_framed, ["all"]) == [-2, -1, 2]
    assert resolve_sigma(sl2_framed, ["A3", "A0"]) == [-2, 2]
    with pytest.raises(InputError):
        resolve_sigma(sl2_framed, ["A1"])
    with pytest.raises(InputError):
        resolve_sigma(sl2_framed, ["A9"])


@pytest.mark.parametrize(
    "text,sigma,verdict",
    [
        ("A1'", None, Verdict.IN_UPPER_BAR),
        ("A0^-1", None, Verdict.IN_UPPER_BAR),
        ("A0^-1", ["all"], Verdict.IN_UPPER_ONLY),
        ("A0^-1", ["A2", "A3"], Verdict.IN_UPPER_BAR),
        ("A1 - A1", ["all"], Verdict.IN_UPPER_BAR),
        ("A2^-1", None, Verdict.IN_UPPER_ONLY),
        ("1/A1", None, Verdict.NOT_LAURENT),
        ("1/A1'", None, Verdict.NOT_LAURENT),
        ("A1 + A2*A3", None, Verdict.IN_UPPER_BAR),
    ],
)
def test_membership_query(sl2_framed, text, sigma, verdict):
    f, vertices, result = membership_query(text, sl2_framed, sigma, depth=1)
    assert result.verdict == verdict
    if verdict == Verdict.NOT_LAURENT:
        assert result.witnesses
    else:
        assert f is not None


def test_membership_witness(sl2_framed):
    _, vertices, result = membership_query("A0^-1", sl2_framed, ["all"], depth=1)
    assert vertices == [-2, -1, 2]
    assert [(w.offending_vertex, w.exponent) for w in result.witnesses] == [(-2, -1)]
