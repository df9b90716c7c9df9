"""
Exact evaluation of pinnings, generalized minors and framed cluster variables
on points of SL_n x T (type A only).

Pinning: x_i(a) = I + a E_{i,i+1}, y_i(c) = I + c E_{i+1,i},
α_i^∨(b) = diag(.., b, 1/b, ..) at positions i, i+1, ṡ_i = x_i(1) y_i(-1) x_i(1).
Δ_{uω_i, vω_i}(g) is the leading principal i x i minor of u̇^{-1} g v̇.
Torus characters: ω_i(t) = t_1···t_i, α_i(t) = t_i / t_{i+1}.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from pydantic import BaseModel, Field
from sympy import Matrix, Rational, eye

from clusterlab.config import SAMPLE_RETRIES
from clusterlab.services.cartan import RootDatum, Weight, cartan_matrix_of_type
from clusterlab.services.cluster_engine import SeedState, exchange_exponents, mutate_state
from clusterlab.services.dbc_seed import DBCSeed, MinorLabel
from clusterlab.services.errors import ClusterLabError, DefectError, InputError
from clusterlab.services.exact_poly import LaurentPoly, substitute

logger = logging.getLogger(__name__)


class Unsupported(InputError):
    """Concrete evaluation is only implemented for type A."""


class DegenerateSample(ClusterLabError):
    """No generic point found within CLUSTER_SAMPLE_RETRIES attempts."""


class ExchangeFailure(DefectError):
    """An exchange relation or regularity check failed at a point."""

    def __init__(self, message: str, point: Optional["GroupPoint"] = None, lhs=None, rhs=None):
        super().__init__(message)
        self.point = point
        self.lhs = lhs
        self.rhs = rhs


def _q(x) -> Rational:
    x = Fraction(x)
    return Rational(x.numerator, x.denominator)


def _f(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


# -----------------------------------------------------------------------------
# Group points
# -----------------------------------------------------------------------------


class GroupPoint:
    """Representative (g, t) of a point of SL_n x^Z T."""

    __slots__ = ("matrix", "torus")

    def __init__(self, matrix: Matrix, torus: Sequence[Fraction]):
        self.matrix = Matrix(matrix)
        self.torus = tuple(Fraction(x) for x in torus)
        n = self.matrix.rows
        if self.matrix.cols != n or len(self.torus) != n:
            raise InputError("GroupPoint needs an n x n matrix and n torus coordinates")
        if self.matrix.det() != 1:
            raise InputError("GroupPoint matrix must have determinant 1")
        prod = Fraction(1)
        for x in self.torus:
            if x == 0:
                raise InputError("Torus coordinates must be nonzero")
            prod *= x
        if prod != 1:
            raise InputError("Torus coordinates must multiply to 1")

    @property
    def n(self) -> int:
        return self.matrix.rows

    def to_dict(self) -> dict:
        return {
            "matrix": [[str(_f(self.matrix[i, j])) for j in range(self.n)] for i in range(self.n)],
            "torus": [str(x) for x in self.torus],
        }


def type_a_size(datum: RootDatum) -> int:
    """n for a datum whose original part is A_{n-1}; raises Unsupported otherwise."""
    r = datum.base_rank
    block = [[datum.cartan.a(i, j) for j in range(1, r + 1)] for i in range(1, r + 1)]
    if r == 0 or block != cartan_matrix_of_type(f"A{r}"):
        raise Unsupported(f"Concrete evaluation needs type A, got {block}")
    return r + 1


def x_gen(n: int, i: int, a) -> Matrix:
    m = eye(n)
    m[i - 1, i] = _q(a)
    return m


def y_gen(n: int, i: int, c) -> Matrix:
    m = eye(n)
    m[i, i - 1] = _q(c)
    return m


def coroot(n: int, i: int, b) -> Matrix:
    m = eye(n)
    m[i - 1, i - 1] = _q(b)
    m[i, i] = 1 / _q(b)
    return m


@lru_cache(maxsize=None)
def s_dot(n: int, i: int) -> Matrix:
    return x_gen(n, i, 1) * y_gen(n, i, -1) * x_gen(n, i, 1)


def wrep(n: int, word: Sequence[int]) -> Matrix:
    """ẇ = ṡ_{i1} ··· ṡ_{ik} along a reduced word."""
    m = eye(n)
    for i in word:
        m = m * s_dot(n, i)
    return m


def generalized_minor(u_word: Sequence[int], v_word: Sequence[int], i: int, g: Matrix) -> Fraction:
    """Leading principal i x i minor of u̇^{-1} g v̇; u̇ is orthogonal so u̇^{-1} = u̇^T."""
    n = g.rows
    m = wrep(n, u_word).T * g * wrep(n, v_word)
    return _f(m[:i, :i].det())


def omega_character(torus: Sequence[Fraction], i: int) -> Fraction:
    out = Fraction(1)
    for x in torus[:i]:
        out *= x
    return out


def character(weight: Weight, torus: Sequence[Fraction]) -> Fraction:
    """Torus character of a weight given in fundamental-weight coordinates."""
    out = Fraction(1)
    for i, c in enumerate(weight.coords, start=1):
        if c:
            out *= omega_character(torus, i) ** c
    return out


def framed_value(label: MinorLabel, point: GroupPoint) -> Fraction:
    """Δ_{uω_i, vω_i}(g) ω_i(t) on I levels, α_i(t) on I' levels."""
    if label.shift_kind == "alpha":
        return character(label.torus_shift, point.torus)
    minor = generalized_minor(label.u_part.word, label.v_part.word, label.level, point.matrix)
    if label.torus_shift is None:
        return minor
    return minor * character(label.torus_shift, point.torus)


def label_degree(label: MinorLabel) -> int:
    """Degree of the label as a function of the matrix entries."""
    return 0 if label.shift_kind == "alpha" else label.level


def initial_values(built: DBCSeed, point: GroupPoint) -> dict[str, Fraction]:
    seed = built.seed
    return {seed.names[k]: framed_value(built.labels[k], point) for k in seed.vertices}


# -----------------------------------------------------------------------------
# Sampling
# -----------------------------------------------------------------------------


def _small_positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 7), rng.randint(1, 4))


def random_point(
    rng_seed: int,
    n: int,
    built: Optional[DBCSeed] = None,
    w0_word: Optional[Sequence[int]] = None,
) -> GroupPoint:
    """
    Deterministic point (g, t): g = ∏ y_i(c) · ∏ α_i^∨(b) · ∏ x_i(a) along a word for w0
    with small positive rationals. Retries until every initial variable of built is nonzero.
    """
    if w0_word is None:
        w0_word = [i for k in range(1, n) for i in range(n - 1, k - 1, -1)]
    for attempt in range(SAMPLE_RETRIES):
        rng = random.Random(rng_seed * 1000003 + attempt)
        g = eye(n)
        for i in w0_word:
            g = g * y_gen(n, i, _small_positive(rng))
        for i in range(1, n):
            g = g * coroot(n, i, _small_positive(rng))
        for i in w0_word:
            g = g * x_gen(n, i, _small_positive(rng))
        torus = [_small_positive(rng) * rng.choice((1, -1)) for _ in range(n - 1)]
        last = Fraction(1)
        for x in torus:
            last /= x
        point = GroupPoint(g, torus + [last])
        if built is None or all(v != 0 for v in initial_values(built, point).values()):
            return point
        logger.debug("degenerate sample at attempt %d for seed %d", attempt, rng_seed)
    raise DegenerateSample(f"No generic point after {SAMPLE_RETRIES} attempts (seed {rng_seed})")


def z_twist(point: GroupPoint) -> GroupPoint:
    """(g, t) -> (-g, -t), the same point of SL_n x^Z T for even n."""
    if point.n % 2:
        raise InputError("-1 is central in SL_n only for even n")
    return GroupPoint(-point.matrix, [-x for x in point.torus])


def phi_sl2(g: Matrix, t: Fraction) -> Matrix:
    """(g, t) ↦ [[g t, 0], [0, t^-2]] in SL_3."""
    t = _q(t)
    m = Matrix.zeros(3, 3)
    for i in range(2):
        for j in range(2):
            m[i, j] = g[i, j] * t
    m[2, 2] = 1 / t**2
    return m


# -----------------------------------------------------------------------------
# Exchange verification
# -----------------------------------------------------------------------------


class ExchangeReport(BaseModel):
    """Outcome of checking one exchange relation on a batch of points."""

    vertex: int = Field(..., description="Mutated vertex")
    points: int = Field(..., description="Points checked")
    degree_bound: int = Field(..., description="Degree bound D along unipotent lines")
    lines_checked: int = Field(..., description="Unipotent lines on which regularity was checked")


def _divided_difference(xs: list[Fraction], ys: list[Fraction]) -> Fraction:
    table = list(ys)
    for level in range(1, len(xs)):
        table = [
            (table[m + 1] - table[m]) / (xs[m + level] - xs[m])
            for m in range(len(table) - 1)
        ]
    return table[0]


def _value_at(
    poly: LaurentPoly, built: DBCSeed, point: GroupPoint
) -> Optional[Fraction]:
    values = initial_values(built, point)
    used = poly.support()
    if any(values[name] == 0 for name in used):
        return None
    result = substitute(poly, values)
    return Fraction(result)


def verify_exchange(
    state: SeedState,
    k: int,
    points: Sequence[GroupPoint],
    built: DBCSeed,
) -> ExchangeReport:
    """
    Check Δ_k Δ_k' = ∏Δ_i^[eps_ki]+ + ∏Δ_i^[-eps_ki]+ at every point, and that Δ_k'
    restricted to each line g x_j(s) is a polynomial in s of degree ≤ D.
    """
    if state.parent is not None:
        raise InputError("verify_exchange evaluates labels of the initial seed only")
    n = type_a_size(built.datum)
    mutated = mutate_state(state, k)
    new_var = mutated.vars[k]
    plus, minus = exchange_exponents(state.seed, k)
    labels = built.labels
    names = state.seed.names

    def degree_of(exps: dict[int, int]) -> int:
        return sum(e * label_degree(labels[i]) for i, e in exps.items())

    # Minors are linear in each column, so lines need degree at least 1
    bound = max(max(degree_of(plus), degree_of(minus)) - label_degree(labels[k]), 1)

    lines = 0
    for point in points:
        values = initial_values(built, point)
        lhs_value = _value_at(new_var, built, point)
        if lhs_value is None:
            raise DegenerateSample("Initial variable vanishes at a sample point")
        lhs = values[names[k]] * lhs_value
        rhs = Fraction(1)
        other = Fraction(1)
        for i, e in plus.items():
            rhs *= values[names[i]] ** e
        for i, e in minus.items():
            other *= values[names[i]] ** e
        rhs += other
        if lhs != rhs:
            raise ExchangeFailure(f"Exchange relation at vertex {k} fails", point, lhs, rhs)

        for j in range(1, n):
            xs: list[Fraction] = []
            ys: list[Fraction] = []
            s = 0
            while len(xs) < bound + 2:
                s += 1
                shifted = GroupPoint(point.matrix * x_gen(n, j, s), point.torus)
                value = _value_at(new_var, built, shifted)
                if value is None:
                    continue
                xs.append(Fraction(s))
                ys.append(value)
            if _divided_difference(xs, ys) != 0:
                raise ExchangeFailure(
                    f"Mutated variable at vertex {k} is not regular along g x_{j}(s)", point
                )
            lines += 1
    return ExchangeReport(vertex=k, points=len(points), degree_bound=bound, lines_checked=lines)
