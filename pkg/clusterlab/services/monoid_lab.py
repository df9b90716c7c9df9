"""
Monoid-side constructions at the scale of SL_2 and its relatives.

- Presentations of coordinate rings with a reference substitution that makes
  every relation vanish (the SL_2 Vinberg monoid, the GL_2 family M_k and the
  SL_2 x C^x family).
- Frozen specialization of presentations and seed states.
- Det-adic and boundary valuations on polynomials in y11, y12, y21, y22, and the
  seeded corpus used to compare them with frozen valuations.
- Dotted Cartan matrices from a specialization matrix, the ρ* substitution, and
  the monomial monoid-homomorphism test.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from typing import Optional, Sequence, Union

from pydantic import BaseModel, Field, field_validator

from clusterlab.services.cartan import (
    GeneralizedCartanMatrix,
    RootDatum,
    cartan_matrix_of_type,
    datum_of_type,
    root_datum,
    validate_cartan,
)
from clusterlab.services.cluster_engine import (
    SeedState,
    enumerate_seeds,
    frozen_valuation,
    initial_state,
    mutate_state,
)
from clusterlab.services.dbc_seed import DBCSeed, FramedSeed, framed_seed
from clusterlab.services.errors import InputError
from clusterlab.services.exact_poly import (
    LaurentPoly,
    ZeroPolynomial,
    adic_valuation,
    exact_div,
    min_exponent,
    rewrite,
    substitute,
)

logger = logging.getLogger(__name__)

Y_VARS = ("y11", "y12", "y21", "y22")
X_VARS = ("x11", "x12", "x21", "x22")
SL2_GENERATORS = ("A1", "A2", "A3", "A1'", "A0")


class InvalidSpecialization(InputError):
    """Specialization matrix with a negative or non-integer entry."""


def _var(name: str, variables: Sequence[str]) -> LaurentPoly:
    return LaurentPoly.var(name, variables)


def _det(variables: Sequence[str]) -> LaurentPoly:
    a, b, c, d = (_var(v, variables) for v in variables)
    return a * d - b * c


def det_y() -> LaurentPoly:
    return _det(Y_VARS)


# -----------------------------------------------------------------------------
# Presentations
# -----------------------------------------------------------------------------


class MonoidPresentation:
    """
    Generators and relations of a coordinate ring, with a reference substitution
    of the generators into target coordinates. expected holds the images the
    relations must have under that substitution (zero unless stated).
    """

    __slots__ = ("name", "generators", "relations", "frozen", "substitution", "expected")

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        relations: Sequence[LaurentPoly],
        frozen: Sequence[str],
        substitution: dict[str, LaurentPoly],
        expected: Optional[Sequence[LaurentPoly]] = None,
    ):
        self.name = name
        self.generators = tuple(generators)
        self.relations = list(relations)
        self.frozen = tuple(frozen)
        self.substitution = dict(substitution)
        self.expected = list(expected) if expected is not None else None

    @property
    def has_reference(self) -> bool:
        return self.expected is not None

    def images(self) -> list[LaurentPoly]:
        """Relations under the reference substitution; unmapped generators stay symbolic."""
        return [LaurentPoly.coerce(substitute(r, self.substitution)) for r in self.relations]

    def verify(self) -> bool:
        if self.expected is None:
            raise InputError(f"Presentation {self.name!r} has no reference identity")
        ok = all(img == exp for img, exp in zip(self.images(), self.expected))
        logger.debug("presentation %s verified=%s", self.name, ok)
        return ok

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "frozen": list(self.frozen),
            "relations": [r.to_text() for r in self.relations],
            "substitutions": {g: p.to_text() for g, p in self.substitution.items()},
        }


def _sl2_relation(power: int) -> LaurentPoly:
    a1, a2, a3, a1p, a0 = (_var(g, SL2_GENERATORS) for g in SL2_GENERATORS)
    return a1 * a1p - a2 * a3 - a0**power


def sl2_env_presentation() -> MonoidPresentation:
    """
    C[A1, A2, A3, A1', A0] / (A1 A1' - A2 A3 - A0) with A0 ↦ det.
    A2 and A3 carry the pinning sign: A2 ↦ -y12, A3 ↦ -y21.
    """
    y11, y12, y21, y22 = (_var(v, Y_VARS) for v in Y_VARS)
    substitution = {"A1": y11, "A2": -y12, "A3": -y21, "A1'": y22, "A0": det_y()}
    zero = LaurentPoly.zero(Y_VARS)
    return MonoidPresentation("Env SL2", SL2_GENERATORS, [_sl2_relation(1)], ["A0"], substitution, [zero])


def gl2_localization() -> MonoidPresentation:
    """
    The SL_2 presentation with A0 inverted through a new generator D.
    Its relations map onto (0, det·D - 1), the presentation of C[GL_2].
    """
    generators = SL2_GENERATORS + ("D",)
    base = sl2_env_presentation()
    targets = Y_VARS + ("D",)
    d = _var("D", targets)
    substitution = {g: p.extend(targets) for g, p in base.substitution.items()}
    substitution["D"] = d
    inverse_rel = _var("A0", generators) * _var("D", generators) - 1
    expected = [LaurentPoly.zero(targets), _det(Y_VARS).extend(targets) * d - 1]
    return MonoidPresentation(
        "GL2", generators, [base.relations[0].extend(generators), inverse_rel], [], substitution, expected
    )


def gl2_family(k: int) -> MonoidPresentation:
    """M_k: A1 A1' - A2 A3 - A0^(1+2k) with (A1, A2, A3, A1', A0) ↦ (x_ij Δ^k, Δ)."""
    if k < 0:
        raise InputError("k must be nonnegative")
    delta = _det(X_VARS)
    scale = delta**k
    x11, x12, x21, x22 = (_var(v, X_VARS) for v in X_VARS)
    substitution = {
        "A1": x11 * scale,
        "A2": x12 * scale,
        "A3": x21 * scale,
        "A1'": x22 * scale,
        "A0": delta,
    }
    zero = LaurentPoly.zero(X_VARS)
    return MonoidPresentation(f"M{k}", SL2_GENERATORS, [_sl2_relation(1 + 2 * k)], ["A0"], substitution, [zero])


def gl2_family_identity(k: int) -> bool:
    """(x11 Δ^k)(x22 Δ^k) - (x12 Δ^k)(x21 Δ^k) = Δ^(2k+1)."""
    sub = gl2_family(k).substitution
    lhs = sub["A1"] * sub["A1'"] - sub["A2"] * sub["A3"]
    return lhs == sub["A0"] ** (2 * k + 1)


def gl2_cartan(k: int) -> list[list[int]]:
    return [[2, -1 - 2 * k], [-1 - 2 * k, 2]]


def torus_cone_generators(k: int) -> list[LaurentPoly]:
    """Nonzero restrictions of the M_k generators to the diagonal torus x12 = x21 = 0."""
    sub = gl2_family(k).substitution
    out = []
    for g in SL2_GENERATORS:
        image = LaurentPoly.coerce(substitute(sub[g], {"x12": 0, "x21": 0}))
        if not image.is_zero() and image not in out:
            out.append(image)
    return out


def sl2_torus_family(k: int) -> MonoidPresentation:
    """
    Cartan [[2,-2k],[-2k,2]]: A1 A1' - A2 A3 - A0^(2k) with
    (A1, A2, A3, A1', A0) ↦ (x_ij z^k, z). The relation maps to z^(2k)(Δ - 1).
    """
    if k < 1:
        raise InputError("k must be at least 1")
    targets = X_VARS + ("z",)
    z = _var("z", targets)
    scale = z**k
    x11, x12, x21, x22 = (_var(v, targets) for v in X_VARS)
    substitution = {"A1": x11 * scale, "A2": x12 * scale, "A3": x21 * scale, "A1'": x22 * scale, "A0": z}
    delta = _det(X_VARS).extend(targets)
    expected = [z ** (2 * k) * (delta - 1)]
    return MonoidPresentation(f"SL2xC* k={k}", SL2_GENERATORS, [_sl2_relation(2 * k)], ["A0"], substitution, expected)


def torus_family_quotient(k: int) -> LaurentPoly:
    """Image of the SL_2 x C^x relation divided exactly by Δ - 1."""
    presentation = sl2_torus_family(k)
    image = presentation.images()[0]
    delta = _det(X_VARS).extend(image.variables)
    return exact_div(image, delta - 1)


# -----------------------------------------------------------------------------
# Specialization
# -----------------------------------------------------------------------------


def _specialize_presentation(
    presentation: MonoidPresentation, assignment: dict[str, Union[LaurentPoly, Fraction]]
) -> MonoidPresentation:
    fixed = {g for g, v in assignment.items() if not isinstance(v, LaurentPoly)}
    generators = [g for g in presentation.generators if g not in fixed]
    relations = []
    for r in presentation.relations:
        image = LaurentPoly.coerce(substitute(r, assignment))
        relations.append(image.extend(generators) if set(image.variables) <= set(generators) else image)
    substitution = {g: p for g, p in presentation.substitution.items() if g in generators}
    label = ",".join(f"{g}={v.to_text() if isinstance(v, LaurentPoly) else v}" for g, v in sorted(assignment.items()))
    return MonoidPresentation(
        f"{presentation.name} | {label}",
        generators,
        relations,
        [g for g in presentation.frozen if g not in fixed],
        substitution,
    )


def specialize_frozen(
    target: Union[MonoidPresentation, SeedState],
    assignment: dict[str, Union[LaurentPoly, int, Fraction]],
):
    """
    Substitute frozen variables. A presentation gives a presentation whose
    reference substitution is restricted to the surviving generators; its
    images() are then the fibre equations in the target coordinates. A seed
    state gives its cluster variables, keyed by vertex, after substitution.
    """
    values = {
        name: value if isinstance(value, LaurentPoly) else Fraction(value) for name, value in assignment.items()
    }
    if isinstance(target, MonoidPresentation):
        unknown = set(values) - set(target.frozen)
        if unknown:
            raise InputError(f"Not frozen generators of {target.name}: {sorted(unknown)}")
        return _specialize_presentation(target, values)
    seed = target.seed
    frozen_names = {seed.names[v] for v in seed.frozen}
    unknown = set(values) - frozen_names
    if unknown:
        raise InputError(f"Not frozen variables: {sorted(unknown)}")
    return {v: substitute(target.vars[v], values) for v in seed.vertices}


def cluster_containment(presentation: MonoidPresentation, states: Sequence[SeedState]) -> bool:
    """
    Every cluster variable of every state is a generator, and every relation
    vanishes with the generators read as Laurent polynomials in the initial
    cluster. A generator X' is the variable obtained by mutating at X.
    """
    initial = next(s for s in states if s.parent is None)
    seed = initial.seed
    images: dict[str, LaurentPoly] = {}
    for g in presentation.generators:
        if g.endswith("'"):
            v = seed.vertex_of(g[:-1])
            images[g] = mutate_state(initial, v).vars[v]
        else:
            images[g] = initial.vars[seed.vertex_of(g)]
    known = set(images.values())
    for state in states:
        for v, poly in state.vars.items():
            if poly not in known:
                logger.info("cluster variable %s at path %s is not a generator", poly.to_text(), state.path)
                return False
    for r in presentation.relations:
        if not LaurentPoly.coerce(rewrite(r, images)).is_zero():
            return False
    return True


# -----------------------------------------------------------------------------
# Valuations
# -----------------------------------------------------------------------------


def _check_y_poly(f: LaurentPoly) -> LaurentPoly:
    if f.is_zero():
        raise ZeroPolynomial("valuation of the zero polynomial")
    extra = f.support() - set(Y_VARS)
    if extra:
        raise InputError(f"Expected a polynomial in {Y_VARS}, found {sorted(extra)}")
    return f.extend(Y_VARS)


def vinberg_valuation_sl2(f: LaurentPoly) -> int:
    """Order of vanishing of f along det = 0."""
    return adic_valuation(_check_y_poly(f), det_y())


def boundary_valuation_sl2(f: LaurentPoly, side: str) -> int:
    """y12-adic order for side '+', y21-adic order for side '-'."""
    f = _check_y_poly(f)
    if side == "+":
        return min_exponent(f, "y12")
    if side == "-":
        return min_exponent(f, "y21")
    raise InputError(f"side must be '+' or '-', got {side!r}")


def y_in_cluster(built: DBCSeed) -> dict[str, LaurentPoly]:
    """y_ij as Laurent polynomials in the initial SL_2 framed cluster."""
    seed = built.seed
    names = tuple(seed.names[v] for v in seed.vertices)
    a = {n: _var(n, names) for n in names}
    return {
        "y11": a["A1"],
        "y12": -a["A2"],
        "y21": -a["A3"],
        "y22": exact_div(a["A2"] * a["A3"] + a["A0"], a["A1"]),
    }


class ValuationRow(BaseModel):
    """Geometric and cluster valuations of one corpus item."""

    item: str = Field(..., description="Corpus item id")
    poly: str = Field(..., description="The polynomial in y11, y12, y21, y22")
    det_order: int = Field(..., description="det-adic order")
    plus_order: int = Field(..., description="y12-adic order")
    minus_order: int = Field(..., description="y21-adic order")
    cluster_a0: int = Field(..., description="frozen valuation at A0")
    cluster_a2: int = Field(..., description="frozen valuation at A2")
    cluster_a3: int = Field(..., description="frozen valuation at A3")

    @property
    def agrees(self) -> bool:
        return (self.det_order, self.plus_order, self.minus_order) == (
            self.cluster_a0,
            self.cluster_a2,
            self.cluster_a3,
        )


def valuation_row(item: str, f: LaurentPoly, built: DBCSeed, states: Sequence[SeedState]) -> ValuationRow:
    cluster = LaurentPoly.coerce(rewrite(f.extend(Y_VARS), y_in_cluster(built)))
    seed = built.seed
    return ValuationRow(
        item=item,
        poly=f.to_text(),
        det_order=vinberg_valuation_sl2(f),
        plus_order=boundary_valuation_sl2(f, "+"),
        minus_order=boundary_valuation_sl2(f, "-"),
        cluster_a0=frozen_valuation(cluster, seed.vertex_of("A0"), states),
        cluster_a2=frozen_valuation(cluster, seed.vertex_of("A2"), states),
        cluster_a3=frozen_valuation(cluster, seed.vertex_of("A3"), states),
    )


def sl2_valuation_corpus(rng_seed: int, random_count: int = 200) -> list[tuple[str, LaurentPoly]]:
    """
    Cluster variables as y-polynomials, every monomial of degree ≤ 3, det-multiples,
    and random integer polynomials times random powers of det, y12 and y21.
    """
    y = {v: _var(v, Y_VARS) for v in Y_VARS}
    det = det_y()
    corpus: list[tuple[str, LaurentPoly]] = [
        ("cluster:A1", y["y11"]),
        ("cluster:A2", -y["y12"]),
        ("cluster:A3", -y["y21"]),
        ("cluster:A1'", y["y22"]),
        ("cluster:A0", det),
    ]
    monomials = [LaurentPoly.constant(1, Y_VARS)]
    for _ in range(3):
        monomials = monomials + [m * y[v] for m in monomials for v in Y_VARS]
    unique: list[LaurentPoly] = []
    for m in monomials:
        if m not in unique:
            unique.append(m)
    unique.sort(key=lambda m: (m.total_degree(), m.to_text()))
    corpus += [(f"monomial:{m.to_text()}", m) for m in unique]
    corpus += [(f"det:{m.to_text()}", det * m) for m in unique if m.total_degree() <= 1]
    corpus.append(("det:det^2", det**2))

    rng = random.Random(rng_seed)
    for idx in range(random_count):
        g = LaurentPoly.zero(Y_VARS)
        while g.is_zero():
            for _ in range(rng.randint(1, 4)):
                exps = {v: rng.randint(0, 2) for v in Y_VARS}
                g = g + LaurentPoly.monomial(exps, rng.choice([-3, -2, -1, 1, 2, 3]), Y_VARS)
        factor = det ** rng.randint(0, 2) * y["y12"] ** rng.randint(0, 2) * y["y21"] ** rng.randint(0, 1)
        corpus.append((f"random:{idx}", g * factor))
    return corpus


# -----------------------------------------------------------------------------
# Dotted Cartan matrices
# -----------------------------------------------------------------------------


class SpecializationMatrix(BaseModel):
    """f_ij ≥ 0: rows indexed by I, columns by the abelianization coordinates."""

    entries: list[list[int]] = Field(..., description="Nonnegative integer matrix f_ij")

    model_config = {"extra": "forbid"}

    @field_validator("entries")
    @classmethod
    def _nonnegative(cls, value: list[list[int]]) -> list[list[int]]:
        if not value or any(len(row) != len(value[0]) for row in value):
            raise ValueError("specialization matrix must be a non-empty rectangle")
        if any(x < 0 for row in value for x in row):
            raise ValueError("specialization entries must be nonnegative")
        return value

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])


def _as_specialization(spec: Union[SpecializationMatrix, Sequence[Sequence[int]]]) -> SpecializationMatrix:
    if isinstance(spec, SpecializationMatrix):
        return spec
    try:
        return SpecializationMatrix(entries=[list(row) for row in spec])
    except ValueError as exc:
        raise InvalidSpecialization(str(exc)) from exc


def build_dotted_cartan(
    a: GeneralizedCartanMatrix, spec: Union[SpecializationMatrix, Sequence[Sequence[int]]]
) -> GeneralizedCartanMatrix:
    """
    Block matrix on I ⊔ J: A on I x I, 2 on the J diagonal, ȧ_ij' = -f_ij and
    ȧ_j'i = -d_i f_ij (symmetrizability with ḋ_j' = 1).
    """
    f = _as_specialization(spec)
    r = a.rank
    if f.rows != r:
        raise InvalidSpecialization(f"Specialization has {f.rows} rows, Cartan rank is {r}")
    k = f.cols
    size = r + k
    out = [[0] * size for _ in range(size)]
    for i in range(r):
        for j in range(r):
            out[i][j] = a.entries[i][j]
    for j in range(k):
        out[r + j][r + j] = 2
        for i in range(r):
            out[i][r + j] = -f.entries[i][j]
            out[r + j][i] = -a.symmetrizers[i] * f.entries[i][j]
    labels = a.labels + tuple(f"{j}'" for j in range(1, k + 1))
    return validate_cartan(out, labels)


def dotted_datum(
    a: GeneralizedCartanMatrix, spec: Union[SpecializationMatrix, Sequence[Sequence[int]]], name: str = ""
) -> RootDatum:
    dotted = build_dotted_cartan(a, spec)
    return root_datum(dotted, levi=range(1, a.rank + 1), base_rank=a.rank, name=name)


def matrix_monoid_dotted(n: int) -> RootDatum:
    """Dotted datum of M_n: type A_{n-1} with the all-ones specialization column."""
    if n < 2:
        raise InputError("n must be at least 2")
    a = validate_cartan(cartan_matrix_of_type(f"A{n - 1}"))
    return dotted_datum(a, [[1] for _ in range(n - 1)], name=f"M{n}")


def rho_star_exponents(dotted: RootDatum, levi: Optional[Sequence[int]] = None) -> dict[int, dict[int, int]]:
    """i ↦ {j: -ȧ_ij'} for ρ*(Δ_ω̃_i') = ∏_j' Δ_ω̇_j'^(-ȧ_ij')."""
    r = dotted.base_rank
    levi = tuple(levi) if levi is not None else tuple(range(1, r + 1))
    out: dict[int, dict[int, int]] = {}
    for i in levi:
        dotted.check_index(i)
        out[i] = {j - r: -dotted.cartan.a(i, j) for j in range(r + 1, dotted.rank + 1) if dotted.cartan.a(i, j)}
    return out


def rho_star_substitution(framed: FramedSeed, dotted_seed: DBCSeed) -> dict[str, LaurentPoly]:
    """Framed I'-frozen name ↦ monomial in the dotted J-frozen names."""
    dotted = dotted_seed.datum
    r = dotted.base_rank
    if framed.base.rank != r:
        raise InputError("Framed and dotted seeds have different base ranks")
    dseed = dotted_seed.seed
    j_names = tuple(dseed.names[-(r + j)] for j in range(1, dotted.rank - r + 1))
    out = {}
    for i, exps in rho_star_exponents(dotted).items():
        name = framed.seed.names[-(r + i)]
        out[name] = LaurentPoly.monomial({j_names[j - 1]: e for j, e in exps.items()}, 1, j_names)
    return out


# -----------------------------------------------------------------------------
# Monoid homomorphisms
# -----------------------------------------------------------------------------


def _comultiplication_holds(f: LaurentPoly) -> bool:
    """Δ(f) = f ⊗ f for the coordinate-wise comultiplication y ↦ y' y''."""
    if f.is_zero():
        return True
    left = tuple(f"{v}'" for v in f.variables)
    right = tuple(f"{v}''" for v in f.variables)
    both = left + right
    coproduct = substitute(
        f, {v: _var(lv, both) * _var(rv, both) for v, lv, rv in zip(f.variables, left, right)}
    )
    f_left = LaurentPoly.coerce(substitute(f, {v: _var(lv, both) for v, lv in zip(f.variables, left)}))
    f_right = LaurentPoly.coerce(substitute(f, {v: _var(rv, both) for v, rv in zip(f.variables, right)}))
    return LaurentPoly.coerce(coproduct) == f_left * f_right


def is_monomial_monoid_hom(maps: Sequence[LaurentPoly]) -> bool:
    """Every entry is zero or a single monomial with coefficient 1, checked through Δ(f) = f ⊗ f."""
    for f in maps:
        if not f.is_polynomial():
            raise InputError(f"{f.to_text()} is not a polynomial")
        monomial = f.is_zero() or (f.is_monomial() and next(iter(f.terms.values())) == 1)
        if monomial != _comultiplication_holds(f):
            raise InputError(f"Monomial test and comultiplication disagree on {f.to_text()}")
        if not monomial:
            return False
    return True


def random_monomial_map(rng: random.Random, n_x: int, y_vars: Sequence[str]) -> list[LaurentPoly]:
    return [
        LaurentPoly.monomial({v: rng.randint(0, 3) for v in y_vars}, 1, y_vars) for _ in range(n_x)
    ]


def random_two_term_map(rng: random.Random, n_x: int, y_vars: Sequence[str]) -> list[LaurentPoly]:
    """A monomial map with one entry replaced by a sum of two distinct monomials."""
    maps = random_monomial_map(rng, n_x, y_vars)
    first = maps[rng.randrange(n_x)]
    second = first
    while second == first:
        second = LaurentPoly.monomial({v: rng.randint(0, 3) for v in y_vars}, 1, y_vars)
    maps[rng.randrange(n_x)] = first + second
    return maps


def sl2_framed() -> FramedSeed:
    return framed_seed(datum_of_type("A1"))


def sl2_states(depth: int = 1) -> tuple[FramedSeed, list[SeedState]]:
    built = sl2_framed()
    return built, enumerate_seeds(initial_state(built.seed), depth)
