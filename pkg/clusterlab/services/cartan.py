"""
Generalized Cartan matrices, simply connected root data and Weyl group elements.

Indices are 1-based integers (the index set I = {1..r}); labels are strings used
only for display and JSON. Weights are integer vectors in the basis of
fundamental weights, so the simple root alpha_j is column j of the Cartan matrix.

Weyl group elements carry their integer matrix on the weight lattice plus a
cached reduced word. Length and reduced-word operations are only defined on
the finite-type Levi part of a datum.
"""

from __future__ import annotations

import logging
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, Field
from sympy import Matrix, Rational

from clusterlab.config import WEYL_CAP
from clusterlab.services.errors import InputError

logger = logging.getLogger(__name__)


class NotGCM(InputError):
    """Matrix violates the generalized Cartan matrix axioms."""


class NotSymmetrizable(InputError):
    """No positive symmetrizer exists."""


class InfiniteType(InputError):
    """Operation needs a finite-type (sub)datum."""


class SingularCartan(InputError):
    """Cartan matrix is not invertible over the rationals."""


class InvalidIndex(InputError):
    """Index outside the index set (or outside the Levi part)."""


# -----------------------------------------------------------------------------
# Cartan data
# -----------------------------------------------------------------------------


class GeneralizedCartanMatrix(BaseModel):
    """Symmetrizable generalized Cartan matrix with minimal symmetrizers."""

    labels: tuple[str, ...] = Field(..., description="Display labels of the index set, in order")
    entries: tuple[tuple[int, ...], ...] = Field(..., description="Integer matrix a_ij (row i, column j)")
    symmetrizers: tuple[int, ...] = Field(..., description="Positive integers d_i with d_i a_ij = d_j a_ji, gcd 1")

    model_config = {"extra": "forbid", "frozen": True}

    @property
    def rank(self) -> int:
        return len(self.entries)

    def a(self, i: int, j: int) -> int:
        """Entry a_ij for 1-based indices."""
        return self.entries[i - 1][j - 1]

    def d(self, i: int) -> int:
        return self.symmetrizers[i - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.entries)

    def label(self, i: int) -> str:
        return self.labels[i - 1]


class RootDatum(BaseModel):
    """
    Simply connected root datum of a Cartan matrix.

    base_rank marks the original index set when the datum was framed or dotted:
    indices 1..base_rank form I, the rest are the added levels (I' or J).
    levi lists the indices on which Weyl group functionality is allowed.
    """

    cartan: GeneralizedCartanMatrix = Field(..., description="Generalized Cartan matrix")
    base_rank: int = Field(..., ge=0, description="Size of the original index set I")
    levi: tuple[int, ...] = Field(..., description="Finite-type Levi index set (1-based)")
    name: str = Field("", description="Optional type name, e.g. 'A2'")

    model_config = {"extra": "forbid", "frozen": True}

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    def is_added_level(self, i: int) -> bool:
        """True for framed (I') or dotted (J) levels."""
        return i > self.base_rank

    def partner(self, i: int) -> int:
        """For a framed datum, the I level of an I' level and vice versa."""
        if self.rank != 2 * self.base_rank:
            raise InvalidIndex("partner() is only defined on framed data")
        return i - self.base_rank if i > self.base_rank else i + self.base_rank

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise InvalidIndex(f"Index {i} outside 1..{self.rank}")

    def check_levi(self, i: int) -> None:
        if i not in self.levi:
            raise InvalidIndex(f"Index {i} not in the Levi index set {self.levi}")


def _symmetrizers(a: list[list[int]]) -> tuple[int, ...]:
    """Minimal positive symmetrizers by traversal of each connected component."""
    r = len(a)
    d: list[Optional[Fraction]] = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        component = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if j == i or a[i][j] == 0:
                    continue
                # d_i a_ij = d_j a_ji
                want = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = want
                    component.append(j)
                    stack.append(j)
                elif d[j] != want:
                    raise NotSymmetrizable(f"Cycle condition fails between indices {i + 1} and {j + 1}")
        denominators = 1
        for i in component:
            denominators = denominators * d[i].denominator // gcd(denominators, d[i].denominator)
        scaled = [int(d[i] * denominators) for i in component]
        g = 0
        for value in scaled:
            g = gcd(g, value)
        for i, value in zip(component, scaled):
            d[i] = Fraction(value // g)
    return tuple(int(x) for x in d)


def validate_cartan(
    entries: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
) -> GeneralizedCartanMatrix:
    """Check the GCM axioms and compute minimal symmetrizers (gcd 1 per component)."""
    a = [list(row) for row in entries]
    r = len(a)
    if any(len(row) != r for row in a):
        raise NotGCM("Cartan matrix must be square")
    for i in range(r):
        for j in range(r):
            if not isinstance(a[i][j], int) or isinstance(a[i][j], bool):
                raise NotGCM(f"Entry ({i + 1},{j + 1}) is not an integer")
        if a[i][i] != 2:
            raise NotGCM(f"Diagonal entry a_{i + 1}{i + 1} = {a[i][i]} (expected 2)")
        for j in range(r):
            if i == j:
                continue
            if a[i][j] > 0:
                raise NotGCM(f"Positive off-diagonal entry a_{i + 1}{j + 1} = {a[i][j]}")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise NotGCM(f"Zero pattern asymmetric at ({i + 1},{j + 1})")
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(1, r + 1))
    if len(labels) != r or len(set(labels)) != r:
        raise NotGCM("Labels must be distinct and match the rank")
    return GeneralizedCartanMatrix(
        labels=labels,
        entries=tuple(tuple(row) for row in a),
        symmetrizers=_symmetrizers(a),
    )


def root_datum(
    cartan: GeneralizedCartanMatrix,
    levi: Optional[Iterable[int]] = None,
    base_rank: Optional[int] = None,
    name: str = "",
) -> RootDatum:
    levi = tuple(sorted(levi)) if levi is not None else tuple(range(1, cartan.rank + 1))
    for i in levi:
        if not 1 <= i <= cartan.rank:
            raise InvalidIndex(f"Levi index {i} outside 1..{cartan.rank}")
    return RootDatum(
        cartan=cartan,
        base_rank=cartan.rank if base_rank is None else base_rank,
        levi=levi,
        name=name,
    )


_TYPE_RE = re.compile(r"^\s*([ABCDG])\s*(\d+)\s*$", re.IGNORECASE)


def cartan_matrix_of_type(name: str) -> list[list[int]]:
    """Cartan matrix of a finite Dynkin type A_n, B_n, C_n, D_n or G2."""
    m = _TYPE_RE.match(name)
    if not m:
        raise InputError(f"Unknown Cartan type {name!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if n < 1:
        raise InputError(f"Rank must be positive in {name!r}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if family == "A":
        return a
    if family in ("B", "C"):
        if n < 2:
            raise InputError(f"{family}{n} needs rank at least 2")
        if family == "B":
            a[n - 1][n - 2] = -2
        else:
            a[n - 2][n - 1] = -2
        return a
    if family == "D":
        if n < 4:
            raise InputError("D_n needs rank at least 4")
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if n != 2:
        raise InputError("Only G2 is supported in family G")
    return [[2, -1], [-3, 2]]


def datum_of_type(name: str) -> RootDatum:
    return root_datum(validate_cartan(cartan_matrix_of_type(name)), name=name.strip().upper())


def frame(datum: RootDatum) -> RootDatum:
    """Framed datum on I ⊔ I': one new node i' joined to each i by a simple edge."""
    r = datum.rank
    a = [[0] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            a[i][j] = datum.cartan.entries[i][j]
        a[r + i][r + i] = 2
        a[i][r + i] = a[r + i][i] = -1
    labels = list(datum.cartan.labels)
    for lab in datum.cartan.labels:
        primed = f"{lab}'"
        while primed in labels:
            primed += "'"
        labels.append(primed)
    framed = validate_cartan(a, labels)
    name = f"framed {datum.name}".strip() if datum.name else ""
    return root_datum(framed, levi=datum.indices, base_rank=r, name=name)


# -----------------------------------------------------------------------------
# Weights
# -----------------------------------------------------------------------------


class Weight:
    """Integer weight in fundamental-weight coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int]):
        self.coords: tuple[int, ...] = tuple(int(c) for c in coords)

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def fundamental(cls, rank: int, i: int) -> "Weight":
        return cls(1 if j == i else 0 for j in range(1, rank + 1))

    @classmethod
    def simple_root(cls, datum: RootDatum, i: int) -> "Weight":
        return cls(datum.cartan.column(i))

    def __getitem__(self, i: int) -> int:
        """1-based coordinate."""
        return self.coords[i - 1]

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(x + y for x, y in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(x - y for x, y in zip(self.coords, other.coords))

    def __neg__(self) -> "Weight":
        return Weight(-x for x in self.coords)

    def __mul__(self, n: int) -> "Weight":
        return Weight(n * x for x in self.coords)

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Weight{self.coords}"


def reflect(datum: RootDatum, i: int, weight: Weight) -> Weight:
    """s_i(λ) = λ - λ_i α_i."""
    datum.check_index(i)
    c = weight[i]
    if c == 0:
        return weight
    return Weight(x - c * a for x, a in zip(weight.coords, datum.cartan.column(i)))


# -----------------------------------------------------------------------------
# Weyl group
# -----------------------------------------------------------------------------


IntMatrix = tuple[tuple[int, ...], ...]


def _identity(r: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def _matmul(x: IntMatrix, y: IntMatrix) -> IntMatrix:
    n = len(y)
    cols = list(zip(*y)) if n else []
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in x)


def _reflection_matrix(datum: RootDatum, i: int) -> IntMatrix:
    r = datum.rank
    col = datum.cartan.column(i)
    return tuple(
        tuple((1 if j == k else 0) - (col[j] if k == i - 1 else 0) for k in range(r))
        for j in range(r)
    )


class WeylElement:
    """Weyl group element: matrix on the weight lattice plus a cached reduced word."""

    __slots__ = ("matrix", "word")

    def __init__(self, matrix: IntMatrix, word: tuple[int, ...]):
        self.matrix = matrix
        self.word = tuple(word)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, weight: Weight) -> Weight:
        return Weight(sum(m * c for m, c in zip(row, weight.coords)) for row in self.matrix)

    def is_identity(self) -> bool:
        return self.matrix == _identity(len(self.matrix))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"WeylElement(word={self.word})"


def word_matrix(datum: RootDatum, word: Sequence[int]) -> IntMatrix:
    """Product s_{i1} s_{i2} ... of reflection matrices."""
    m = _identity(datum.rank)
    for i in word:
        datum.check_index(i)
        m = _matmul(m, _reflection_matrix(datum, i))
    return m


@lru_cache(maxsize=64)
def _levi_inverse(datum: RootDatum) -> Matrix:
    levi = datum.levi
    sub = Matrix([[datum.cartan.a(i, j) for j in levi] for i in levi])
    sym = Matrix([[datum.cartan.d(i) * datum.cartan.a(i, j) for j in levi] for i in levi])
    if sub.rows and not sym.is_positive_definite:
        raise InfiniteType(f"Levi part {levi} of {datum.name or 'datum'} is not of finite type")
    return sub.inv() if sub.rows else sub


def is_finite_type(datum: RootDatum) -> bool:
    """True when the Levi part is of finite type."""
    try:
        _levi_inverse(datum)
    except InfiniteType:
        return False
    return True


def _is_positive_root(datum: RootDatum, root: Weight) -> bool:
    """Sign of a Levi root given in weight coordinates."""
    inv = _levi_inverse(datum)
    v = Matrix([root[i] for i in datum.levi])
    c = inv * v
    if all(x >= 0 for x in c):
        return True
    if all(x <= 0 for x in c):
        return False
    raise InfiniteType(f"{root} is not a root of the Levi part")


def _check_word(datum: RootDatum, word: Sequence[int]) -> None:
    for i in word:
        datum.check_levi(i)


def is_reduced(datum: RootDatum, word: Sequence[int]) -> bool:
    """True iff ℓ(s_{i1}···s_{in}) = n, tested letter by letter through root positivity."""
    _check_word(datum, word)
    m = _identity(datum.rank)
    for i in word:
        w = WeylElement(m, ())
        if not _is_positive_root(datum, w.act(Weight.simple_root(datum, i))):
            return False
        m = _matmul(m, _reflection_matrix(datum, i))
    return True


def reduce(datum: RootDatum, word: Sequence[int]) -> tuple[int, ...]:
    """Some reduced word for the same element, by the deletion algorithm."""
    _check_word(datum, word)
    current: list[int] = []
    m = _identity(datum.rank)
    for i in word:
        s = _reflection_matrix(datum, i)
        target = _matmul(m, s)
        if _is_positive_root(datum, WeylElement(m, ()).act(Weight.simple_root(datum, i))):
            current.append(i)
        else:
            # Exchange condition: w s_i is w with one letter deleted
            for pos in range(len(current) - 1, -1, -1):
                candidate = current[:pos] + current[pos + 1:]
                if word_matrix(datum, candidate) == target:
                    current = candidate
                    break
            else:
                raise InfiniteType("Deletion failed; Levi part is not of finite type")
        m = target
    return tuple(current)


def weyl_element(datum: RootDatum, word: Sequence[int]) -> WeylElement:
    """Element spelled by word, caching a reduced word for it."""
    reduced = reduce(datum, word)
    return WeylElement(word_matrix(datum, reduced), reduced)


def identity_element(datum: RootDatum) -> WeylElement:
    return WeylElement(_identity(datum.rank), ())


def compose(datum: RootDatum, x: WeylElement, y: WeylElement) -> WeylElement:
    return weyl_element(datum, x.word + y.word)


def inverse(datum: RootDatum, w: WeylElement) -> WeylElement:
    word = tuple(reversed(w.word))
    return WeylElement(word_matrix(datum, word), word)


@lru_cache(maxsize=64)
def longest_element(datum: RootDatum) -> WeylElement:
    """
    w0 of the Levi part by greedy descent of ρ = Σ ω_i (i in the Levi set):
    reflect at the smallest i with a positive coordinate until all are negative.
    """
    _levi_inverse(datum)
    weight = Weight(1 if i in datum.levi else 0 for i in datum.indices)
    word: list[int] = []
    while True:
        descents = [i for i in datum.levi if weight[i] > 0]
        if not descents:
            break
        if len(word) >= WEYL_CAP:
            raise InfiniteType(f"longest_element exceeded {WEYL_CAP} steps")
        i = descents[0]
        weight = reflect(datum, i, weight)
        word.append(i)
    logger.debug("longest element of %s: %s", datum.name or datum.levi, word)
    return WeylElement(word_matrix(datum, word), tuple(word))


def bar_involution(datum: RootDatum) -> dict[int, int]:
    """i ↦ ī with s_ī = w0 s_i w0, on the Levi index set."""
    w0 = longest_element(datum)
    out: dict[int, int] = {}
    for i in datum.levi:
        target = word_matrix(datum, w0.word + (i,) + w0.word)
        for j in datum.levi:
            if _reflection_matrix(datum, j) == target:
                out[i] = j
                break
        else:
            raise InfiniteType(f"w0 s_{i} w0 is not a simple reflection")
    return out


def dominance_leq(datum: RootDatum, lower: Weight, upper: Weight) -> bool:
    """λ ≤ μ iff μ - λ is a nonnegative integer combination of simple roots."""
    a = Matrix(datum.cartan.entries)
    if a.det() == 0:
        raise SingularCartan("dominance_leq needs an invertible Cartan matrix")
    c = a.LUsolve(Matrix((upper - lower).coords))
    return all(isinstance(x, Rational) and x.q == 1 and x >= 0 for x in c)


def simple_roots_in_alpha_coords(datum: RootDatum, weight: Weight) -> tuple[Fraction, ...]:
    """Coordinates of a weight in the simple-root basis (full Cartan must be invertible)."""
    a = Matrix(datum.cartan.entries)
    if a.det() == 0:
        raise SingularCartan("Cartan matrix is singular")
    c = a.LUsolve(Matrix(weight.coords))
    return tuple(Fraction(int(x.p), int(x.q)) for x in c)
