"""
Exact sparse multivariate Laurent polynomials over the rationals.

A LaurentPoly stores an ordered tuple of variable names and a dict mapping
integer exponent vectors (one entry per variable, negatives allowed) to nonzero
Fraction coefficients.

  x0^2 * x1^-1 + 3  ->  variables ("x0", "x1"), terms {(2, -1): 1, (0, 0): 3}

Binary operations align operands on the union of their variables, so values
built over different variable sets combine freely. Equality and the canonical
text form ignore variable order and unused variables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from clusterlab.services.errors import ClusterLabError, InputError

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class NotDivisible(ClusterLabError):
    """Exact division left a nonzero remainder."""


class DivisionByZero(InputError):
    """Division by the zero polynomial."""


class ZeroPolynomial(InputError):
    """Operation undefined on the zero polynomial."""


class NonInvertibleSubstitution(InputError):
    """A negative power was applied to a non-invertible image."""


class ExactPolyError(InputError):
    """Malformed polynomial input."""


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------


def _natural_key(name: str) -> tuple:
    """Sort "A2" before "A10"."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", name))


def _grlex(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


def _fmt_fraction(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Immutable sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("variables", "terms", "_index", "_key")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Optional[Mapping[Exponent, Scalar]] = None,
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ExactPolyError(f"Duplicate variable names in {variables}")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise ExactPolyError(
                    f"Exponent {exp} has length {len(exp)}, expected {len(variables)}"
                )
            c = Fraction(coeff)
            if c != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.variables: tuple[str, ...] = variables
        self.terms: dict[Exponent, Fraction] = clean
        self._index = {name: i for i, name in enumerate(variables)}
        self._key: Optional[frozenset] = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def constant(cls, value: Scalar, variables: Sequence[str] = ()) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, name: str, variables: Optional[Sequence[str]] = None) -> "LaurentPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ExactPolyError(f"Variable {name!r} not in {variables}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: 1})

    @classmethod
    def monomial(
        cls,
        exponents: Mapping[str, int],
        coeff: Scalar = 1,
        variables: Optional[Sequence[str]] = None,
    ) -> "LaurentPoly":
        variables = tuple(variables) if variables is not None else tuple(exponents)
        missing = set(exponents) - set(variables)
        if missing:
            raise ExactPolyError(f"Variables {sorted(missing)} not in {variables}")
        exp = tuple(int(exponents.get(v, 0)) for v in variables)
        return cls(variables, {exp: coeff})

    # -- alignment ------------------------------------------------------------

    def extend(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-embed into a variable tuple containing all of this polynomial's variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        missing = [v for v in self.variables if v not in variables]
        if missing:
            # Variables that never occur with a nonzero exponent may be dropped
            used = self.support()
            blocked = [v for v in missing if v in used]
            if blocked:
                raise ExactPolyError(f"Cannot drop variables {blocked} still in use")
        positions = [self._index.get(v) for v in variables]
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            out[tuple(exp[p] if p is not None else 0 for p in positions)] = coeff
        return LaurentPoly._raw(variables, out)

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "LaurentPoly":
        """Build without re-validating; terms must already be canonical."""
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._index = {name: i for i, name in enumerate(variables)}
        obj._key = None
        return obj

    def _align(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        if self.variables == other.variables:
            return self, other
        union = self.variables + tuple(v for v in other.variables if v not in self._index)
        return self.extend(union), other.extend(union)

    @staticmethod
    def coerce(value: Union["LaurentPoly", Scalar], variables: Sequence[str] = ()) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return LaurentPoly.constant(value, variables)
        raise ExactPolyError(f"Cannot coerce {type(value).__name__} to LaurentPoly")

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ExactPolyError(f"{self.to_text()} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exp in self.terms for e in exp)

    def support(self) -> set[str]:
        """Variables occurring with a nonzero exponent in some term."""
        used = set()
        for exp in self.terms:
            for name, e in zip(self.variables, exp):
                if e:
                    used.add(name)
        return used

    def num_terms(self) -> int:
        return len(self.terms)

    def degree(self, name: str) -> int:
        i = self._index.get(name)
        if i is None or not self.terms:
            return 0
        return max(exp[i] for exp in self.terms)

    def total_degree(self) -> int:
        return max((sum(exp) for exp in self.terms), default=0)

    def min_exponents(self) -> Exponent:
        if not self.terms:
            raise ZeroPolynomial("min_exponents of the zero polynomial")
        return tuple(min(col) for col in zip(*self.terms))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Leading term in graded lexicographic order on this variable tuple."""
        if not self.terms:
            raise ZeroPolynomial("leading_term of the zero polynomial")
        exp = max(self.terms, key=_grlex)
        return exp, self.terms[exp]

    def split_content(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Return (m, F) with m a monomial, F a polynomial divisible by no variable, and self = m*F."""
        mins = self.min_exponents()
        m = LaurentPoly._raw(self.variables, {mins: Fraction(1)})
        shifted = {tuple(e - s for e, s in zip(exp, mins)): c for exp, c in self.terms.items()}
        return m, LaurentPoly._raw(self.variables, shifted)

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        other = LaurentPoly.coerce(other, self.variables)
        a, b = self._align(other)
        out = dict(a.terms)
        for exp, coeff in b.terms.items():
            c = out.get(exp, Fraction(0)) + coeff
            if c:
                out[exp] = c
            else:
                out.pop(exp, None)
        return LaurentPoly._raw(a.variables, out)

    __radd__ = __add__

    def __sub__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other, self.variables))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other, self.variables) - self

    def __mul__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return LaurentPoly._raw(self.variables, {})
            return LaurentPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        other = LaurentPoly.coerce(other)
        a, b = self._align(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                c = out.get(exp, Fraction(0)) + ca * cb
                if c:
                    out[exp] = c
                else:
                    out.pop(exp, None)
        return LaurentPoly._raw(a.variables, out)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial (nonzero constants included)."""
        if not self.is_monomial():
            raise NonInvertibleSubstitution(f"{self.to_text()} is not a unit of the Laurent ring")
        exp, coeff = next(iter(self.terms.items()))
        return LaurentPoly._raw(self.variables, {tuple(-e for e in exp): 1 / coeff})

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise ExactPolyError("Exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_monomial():
            exp, coeff = next(iter(self.terms.items()))
            return LaurentPoly._raw(self.variables, {tuple(e * n for e in exp): coeff**n})
        result = LaurentPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("Division by zero scalar")
            return self * (1 / Fraction(other))
        return exact_div(self, other)

    # -- comparison -----------------------------------------------------------

    def _canonical_key(self) -> frozenset:
        if self._key is None:
            items = []
            for exp, coeff in self.terms.items():
                mono = tuple(sorted((v, e) for v, e in zip(self.variables, exp) if e))
                items.append((mono, coeff))
            self._key = frozenset(items)
        return self._key

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._canonical_key() == other._canonical_key()

    def __hash__(self) -> int:
        return hash(self._canonical_key())

    # -- evaluation and text --------------------------------------------------

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at rational values; every used variable must be assigned."""
        result = substitute(self, point)
        if isinstance(result, LaurentPoly):
            raise ExactPolyError(f"Unassigned variables {sorted(result.support())}")
        return result

    def to_text(self) -> str:
        """Canonical text: terms in descending graded-lex order on naturally sorted names."""
        if not self.terms:
            return "0"
        used = sorted(self.support(), key=_natural_key)
        pos = [self._index[v] for v in used]
        rows = []
        for exp, coeff in self.terms.items():
            rows.append((tuple(exp[p] for p in pos), coeff))
        rows.sort(key=lambda r: _grlex(r[0]), reverse=True)
        parts = []
        for exp, coeff in rows:
            factors = [_fmt_fraction(coeff)]
            for name, e in zip(used, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


# -----------------------------------------------------------------------------
# Ring operations
# -----------------------------------------------------------------------------


def add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def power(f: LaurentPoly, n: int) -> LaurentPoly:
    return f**n


def product(factors: Iterable[LaurentPoly], variables: Sequence[str] = ()) -> LaurentPoly:
    result = LaurentPoly.constant(1, variables)
    for factor in factors:
        result = result * factor
    return result


def _divide_polynomial(
    num: dict[Exponent, Fraction], den: dict[Exponent, Fraction]
) -> Optional[dict[Exponent, Fraction]]:
    """Single-divisor division of polynomials; the quotient, or None if a remainder appears."""
    lead = max(den, key=_grlex)
    lead_c = den[lead]
    rest = dict(num)
    quotient: dict[Exponent, Fraction] = {}
    while rest:
        exp = max(rest, key=_grlex)
        shift = tuple(e - l for e, l in zip(exp, lead))
        if any(s < 0 for s in shift):
            return None
        coeff = rest[exp] / lead_c
        quotient[shift] = quotient.get(shift, Fraction(0)) + coeff
        for dexp, dcoeff in den.items():
            target = tuple(s + d for s, d in zip(shift, dexp))
            value = rest.get(target, Fraction(0)) - coeff * dcoeff
            if value:
                rest[target] = value
            else:
                rest.pop(target, None)
    return {e: c for e, c in quotient.items() if c}


def exact_div(f: LaurentPoly, g: Union[LaurentPoly, Scalar]) -> LaurentPoly:
    """Return h with f = g*h in the Laurent ring, or raise NotDivisible."""
    g = LaurentPoly.coerce(g, f.variables)
    if g.is_zero():
        raise DivisionByZero("Division by the zero polynomial")
    f, g = f._align(g)
    if f.is_zero():
        return f
    if g.is_monomial():
        return f * g.inverse()
    # Strip monomial content; a Laurent quotient of content-free polynomials is a polynomial
    mf, num = f.split_content()
    mg, den = g.split_content()
    quotient = _divide_polynomial(num.terms, den.terms)
    if quotient is None:
        raise NotDivisible(f"({f.to_text()}) is not divisible by ({g.to_text()})")
    return LaurentPoly._raw(f.variables, quotient) * mf * mg.inverse()


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    try:
        exact_div(f, g)
    except NotDivisible:
        return False
    return True


# -----------------------------------------------------------------------------
# Valuations
# -----------------------------------------------------------------------------


def min_exponent(f: LaurentPoly, var: str) -> int:
    """Minimum exponent of var over the terms of f (the vanishing order along var = 0)."""
    if f.is_zero():
        raise ZeroPolynomial("min_exponent of the zero polynomial")
    i = f._index.get(var)
    if i is None:
        return 0
    return min(exp[i] for exp in f.terms)


def adic_valuation(f: LaurentPoly, p: LaurentPoly) -> int:
    """Largest k with p^k dividing f. Monomial content of f is a unit unless p is a monomial."""
    if f.is_zero():
        raise ZeroPolynomial("adic_valuation of the zero polynomial")
    if p.is_zero() or p.is_constant():
        raise ExactPolyError("adic_valuation needs a non-constant divisor")
    if not p.is_polynomial():
        raise ExactPolyError(f"Divisor {p.to_text()} has negative exponents")
    if p.is_monomial():
        f, p = f._align(p)
        exp = next(iter(p.terms))
        mins = f.min_exponents()
        return min(m // e for m, e in zip(mins, exp) if e)
    _, rest = f.split_content()
    k = 0
    while True:
        try:
            rest = exact_div(rest, p)
        except NotDivisible:
            return k
        k += 1


# -----------------------------------------------------------------------------
# Substitution
# -----------------------------------------------------------------------------


def _image_power(image: Union[LaurentPoly, Fraction], e: int, name: str):
    if e == 0:
        return Fraction(1)
    if isinstance(image, LaurentPoly):
        if e < 0 and not image.is_monomial():
            raise NonInvertibleSubstitution(
                f"{name} -> {image.to_text()} is not invertible but occurs with exponent {e}"
            )
        return image**e
    if e < 0 and image == 0:
        raise NonInvertibleSubstitution(f"{name} -> 0 but occurs with exponent {e}")
    return image**e


def substitute(
    f: LaurentPoly,
    assignment: Mapping[str, Union[LaurentPoly, Scalar]],
) -> Union[LaurentPoly, Fraction]:
    """
    Substitute variables of f. Unassigned variables stay as they are.
    Returns a Fraction when every used variable is sent to a rational.
    """
    images: dict[str, Union[LaurentPoly, Fraction]] = {}
    for name, value in assignment.items():
        images[name] = value if isinstance(value, LaurentPoly) else Fraction(value)
    used = f.support()
    if all(v in images and not isinstance(images[v], LaurentPoly) for v in used):
        total = Fraction(0)
        for exp, coeff in f.terms.items():
            term = coeff
            for name, e in zip(f.variables, exp):
                if e:
                    term *= _image_power(images[name], e, name)
            total += term
        return total

    cache: dict[tuple[str, int], Union[LaurentPoly, Fraction]] = {}
    result = LaurentPoly.zero()
    for exp, coeff in f.terms.items():
        term: Union[LaurentPoly, Fraction] = coeff
        for name, e in zip(f.variables, exp):
            if not e:
                continue
            key = (name, e)
            if key not in cache:
                image = images.get(name, LaurentPoly.var(name))
                cache[key] = _image_power(image, e, name)
            factor = cache[key]
            term = factor * term if isinstance(term, Fraction) else term * factor
        result = result + LaurentPoly.coerce(term)
    return result


def rewrite(f: LaurentPoly, assignment: Mapping[str, LaurentPoly]) -> LaurentPoly:
    """
    Substitute Laurent images, allowing negative powers of non-monomial images.

    The denominator built from those images is divided out exactly; NotDivisible
    means f is not a Laurent polynomial in the image variables.
    """
    if f.is_zero():
        return f
    needs_division = {
        name: -min(exp[f._index[name]] for exp in f.terms)
        for name, image in assignment.items()
        if name in f._index and not image.is_monomial()
        and min(exp[f._index[name]] for exp in f.terms) < 0
    }
    if not needs_division:
        result = substitute(f, assignment)
        return LaurentPoly.coerce(result)
    denominator = product(assignment[name] ** n for name, n in needs_division.items())
    numerator = LaurentPoly.zero()
    cache: dict[tuple[str, int], LaurentPoly] = {}
    for exp, coeff in f.terms.items():
        term = LaurentPoly.constant(coeff)
        for name, e in zip(f.variables, exp):
            shift = needs_division.get(name, 0)
            power_ = e + shift
            if not power_:
                continue
            key = (name, power_)
            if key not in cache:
                image = assignment.get(name, LaurentPoly.var(name))
                cache[key] = image**power_
            term = term * cache[key]
        numerator = numerator + term
    return exact_div(numerator, denominator)
