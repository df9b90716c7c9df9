"""
Parse membership expressions into Laurent polynomials in the initial cluster.

Names are the seed's variable names (A0, A1, ...). A mutable name followed by
an apostrophe (A1') stands for the variable obtained by mutating there once.
Grammar: rationals, + - * / with ^ or ** integer powers, parentheses.
"""

import logging
import re
from fractions import Fraction
from typing import Iterable, Optional

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from clusterlab.services.cluster_engine import (
    MembershipResult,
    NotLaurentInSeed,
    SeedState,
    Verdict,
    Witness,
    enumerate_seeds,
    initial_state,
    membership,
    mutate_state,
)
from clusterlab.services.dbc_seed import DBCSeed
from clusterlab.services.errors import InputError
from clusterlab.services.exact_poly import LaurentPoly, NotDivisible, exact_div, rewrite

logger = logging.getLogger(__name__)

_TRANSFORMS = standard_transformations + (convert_xor,)
_PRIMED = re.compile(r"\b(A\d+)'")
_PRIME_SUFFIX = "_mut"


class ExpressionError(InputError):
    """Expression does not parse or is not a Laurent polynomial in the seed's names."""


def _to_laurent(expr: sympy.Expr, symbols: dict[str, sympy.Symbol], names: tuple[str, ...]) -> LaurentPoly:
    gens = [symbols[n] for n in names]
    poly = sympy.Poly(expr, *gens) if gens else None
    if poly is None or poly.is_zero:
        value = sympy.Rational(expr) if poly is None else sympy.Integer(0)
        return LaurentPoly.constant(Fraction(int(value.p), int(value.q)), names)
    if not (poly.domain.is_ZZ or poly.domain.is_QQ):
        raise ExpressionError(f"Coefficients must be rational, got domain {poly.domain}")
    terms = {}
    for monom, coeff in poly.terms():
        c = sympy.Rational(coeff)
        terms[tuple(monom)] = Fraction(int(c.p), int(c.q))
    return LaurentPoly(names, terms)


def parse_laurent(text: str, names: Iterable[str]) -> LaurentPoly:
    """Parse text over the given variable names (primed names allowed when listed)."""
    names = tuple(names)
    symbols = {n: sympy.Symbol(n.replace("'", _PRIME_SUFFIX)) for n in names}
    local = {s.name: s for s in symbols.values()}
    source = _PRIMED.sub(lambda m: m.group(1) + _PRIME_SUFFIX, text)
    try:
        expr = parse_expr(source, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as exc:
        raise ExpressionError(f"Cannot parse {text!r}: {exc}") from exc
    if not isinstance(expr, sympy.Expr):
        raise ExpressionError(f"{text!r} is not an arithmetic expression")
    unknown = {str(s) for s in expr.free_symbols} - set(local)
    if unknown:
        raise ExpressionError(f"Unknown variables {sorted(unknown)}; expected {list(names)}")
    numerator, denominator = sympy.fraction(sympy.together(expr))
    try:
        num = _to_laurent(sympy.expand(numerator), symbols, names)
        den = _to_laurent(sympy.expand(denominator), symbols, names)
    except (sympy.PolynomialError, TypeError) as exc:
        raise ExpressionError(f"{text!r} is not a rational function with integer powers: {exc}") from exc
    if den.is_zero():
        raise ExpressionError(f"{text!r} divides by zero")
    if den.is_monomial():
        return num * den.inverse()
    try:
        return exact_div(num, den)
    except NotDivisible as exc:
        raise ExpressionError(f"{text!r} is not a Laurent polynomial") from exc


def parse_expression(text: str, state: SeedState) -> LaurentPoly:
    """
    Parse text into a Laurent polynomial in the initial cluster of state.
    A primed name is replaced by its mutated variable; NotLaurentInSeed when the
    result leaves the Laurent ring of the initial cluster.
    """
    seed = state.seed
    names = state.variables
    primed = {f"{seed.names[v]}'": v for v in seed.mutable_vertices}
    f = parse_laurent(text, names + tuple(primed))
    images = {p: mutate_state(state, v).vars[v] for p, v in primed.items() if p in f.support()}
    if images:
        try:
            f = rewrite(f, images)
        except NotDivisible:
            raise NotLaurentInSeed(f"{text!r} is not Laurent in the initial cluster", ())
    f = LaurentPoly.coerce(f)
    extra = f.support() - set(names)
    if extra:
        raise ExpressionError(f"Unresolved variables {sorted(extra)}")
    return f.extend(names) if f.variables != names else f


def resolve_sigma(built: DBCSeed, sigma: Optional[Iterable[str]]) -> list[int]:
    """
    Frozen vertices named in sigma. None gives the seed's Σ (every frozen vertex
    for seeds without one); the single name "all" gives every frozen vertex.
    """
    seed = built.seed
    if sigma is None:
        return list(getattr(built, "sigma", seed.frozen))
    sigma = [name.strip() for name in sigma if name.strip()]
    if sigma == ["all"]:
        return list(seed.frozen)
    out = []
    for name in sigma:
        v = seed.vertex_of(name.strip())
        if v in seed.mutable:
            raise InputError(f"{name} is mutable and cannot be in Σ")
        out.append(v)
    return sorted(out)


def membership_query(
    text: str,
    built: DBCSeed,
    sigma: Optional[Iterable[str]] = None,
    depth: int = 1,
) -> tuple[Optional[LaurentPoly], list[int], MembershipResult]:
    """Parse an expression and decide membership; returns (parsed f or None, Σ vertices, result)."""
    initial = initial_state(built.seed)
    vertices = resolve_sigma(built, sigma)
    try:
        f = parse_expression(text, initial)
    except NotLaurentInSeed as exc:
        return None, vertices, MembershipResult(
            verdict=Verdict.NOT_LAURENT, depth=depth, seeds_checked=1, witnesses=[Witness(seed_path=list(exc.path))]
        )
    states = enumerate_seeds(initial, depth)
    logger.info("membership of %s over %d seeds, Σ=%s", f.to_text(), len(states), vertices)
    return f, vertices, membership(f, vertices, initial, depth, states=states)
