"""
Type A crystals on tableau reading words and string parametrizations.

Elements of B(λ) are semistandard tableaux of shape λ with entries in 1..n,
stored as their row reading word (bottom row to top row, each row left to right).
Kashiwara operators follow the signature rule: every i+1 opens a bracket, every
later i closes one; e_i turns the leftmost unmatched i+1 into i and f_i turns the
rightmost unmatched i into i+1.
"""

from __future__ import annotations

import logging
from collections import deque
from itertools import product as cartesian
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, Field

from clusterlab.services.cartan import Weight, bar_involution, datum_of_type, is_reduced
from clusterlab.services.dbc_seed import DBCSeed
from clusterlab.services.errors import InputError
from clusterlab.services.group_eval import type_a_size

logger = logging.getLogger(__name__)


class NotReduced(InputError):
    """Word is not a reduced word for w0."""


class CrystalElement:
    """Reading word of a semistandard tableau of shape λ in B(λ) for SL_n."""

    __slots__ = ("word", "shape", "n")

    def __init__(self, word: Sequence[int], shape: Sequence[int], n: int):
        self.word = tuple(word)
        self.shape = tuple(shape)
        self.n = n

    def weight(self) -> Weight:
        counts = [self.word.count(j) for j in range(1, self.n + 1)]
        return Weight(counts[j] - counts[j + 1] for j in range(self.n - 1))

    def rows(self) -> list[tuple[int, ...]]:
        """Tableau rows, top row first."""
        out = []
        pos = 0
        for length in reversed(self.shape):
            out.append(self.word[pos : pos + length])
            pos += length
        return list(reversed(out))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CrystalElement) and self.word == other.word

    def __hash__(self) -> int:
        return hash(self.word)

    def __repr__(self) -> str:
        return "".join(str(x) for x in self.word) or "∅"


# -----------------------------------------------------------------------------
# Operators
# -----------------------------------------------------------------------------


def _unmatched(word: Sequence[int], i: int) -> tuple[list[int], list[int]]:
    """Positions of unmatched i+1 (left to right) and unmatched i."""
    opening: list[int] = []
    closing: list[int] = []
    for pos, letter in enumerate(word):
        if letter == i + 1:
            opening.append(pos)
        elif letter == i:
            if opening:
                opening.pop()
            else:
                closing.append(pos)
    return opening, closing


def _check_index(b: CrystalElement, i: int) -> None:
    if not 1 <= i < b.n:
        raise InputError(f"Crystal index {i} outside 1..{b.n - 1}")


def crystal_e(b: CrystalElement, i: int) -> Optional[CrystalElement]:
    _check_index(b, i)
    opening, _ = _unmatched(b.word, i)
    if not opening:
        return None
    word = list(b.word)
    word[opening[0]] = i
    return CrystalElement(word, b.shape, b.n)


def crystal_f(b: CrystalElement, i: int) -> Optional[CrystalElement]:
    _check_index(b, i)
    _, closing = _unmatched(b.word, i)
    if not closing:
        return None
    word = list(b.word)
    word[closing[-1]] = i + 1
    return CrystalElement(word, b.shape, b.n)


def epsilon(b: CrystalElement, i: int) -> int:
    return len(_unmatched(b.word, i)[0])


def phi(b: CrystalElement, i: int) -> int:
    return len(_unmatched(b.word, i)[1])


def raise_fully(b: CrystalElement, i: int) -> CrystalElement:
    """Λ_i(b) = e_i^{ε_i(b)} b."""
    while True:
        up = crystal_e(b, i)
        if up is None:
            return b
        b = up


def to_highest_weight(b: CrystalElement) -> tuple[CrystalElement, list[int]]:
    """Raise until every e_i vanishes; returns the element and the indices applied."""
    path = []
    while True:
        for i in range(1, b.n):
            up = crystal_e(b, i)
            if up is not None:
                b = up
                path.append(i)
                break
        else:
            return b, path


# -----------------------------------------------------------------------------
# B(λ)
# -----------------------------------------------------------------------------


def shape_of(weight: Weight) -> tuple[int, ...]:
    """Partition of a dominant weight a_1 ω_1 + ... + a_{n-1} ω_{n-1}."""
    if not weight.is_dominant():
        raise InputError(f"{weight} is not dominant")
    coords = weight.coords
    rows = [sum(coords[r:]) for r in range(len(coords))]
    return tuple(x for x in rows if x > 0)


def highest_weight_element(weight: Weight) -> CrystalElement:
    n = len(weight) + 1
    shape = shape_of(weight)
    word: list[int] = []
    for row in range(len(shape), 0, -1):
        word.extend([row] * shape[row - 1])
    return CrystalElement(word, shape, n)


def crystal_elements(weight: Weight) -> list[CrystalElement]:
    """B(λ) by closure of the highest weight element under the f_i, in BFS order."""
    top = highest_weight_element(weight)
    seen = {top}
    order = [top]
    queue = deque([top])
    while queue:
        b = queue.popleft()
        for i in range(1, top.n):
            down = crystal_f(b, i)
            if down is not None and down not in seen:
                seen.add(down)
                order.append(down)
                queue.append(down)
    return order


def extremal_element(weight: Weight, target: Weight) -> CrystalElement:
    """The element of B(weight) of weight target (an extremal weight)."""
    matches = [b for b in crystal_elements(weight) if b.weight() == target]
    if len(matches) != 1:
        raise InputError(f"{target} is not an extremal weight of B({weight.coords})")
    return matches[0]


# -----------------------------------------------------------------------------
# String parametrization
# -----------------------------------------------------------------------------


class StringVector(BaseModel):
    entries: list[int] = Field(..., description="c_i(b), one entry per letter")
    word: list[int] = Field(..., description="Reduced word for w0")
    weight: list[int] = Field(..., description="Highest weight λ in fundamental-weight coordinates")


def check_w0_word(n: int, word: Sequence[int]) -> None:
    datum = datum_of_type(f"A{n - 1}")
    if len(word) != n * (n - 1) // 2 or not is_reduced(datum, word):
        raise NotReduced(f"{tuple(word)} is not a reduced word for w0 of SL_{n}")


def string_entries(b: CrystalElement, word: Sequence[int]) -> tuple[int, ...]:
    """(ε_{i1}(b), ε_{i2}(Λ_{i1} b), ...)."""
    out = []
    for i in word:
        out.append(epsilon(b, i))
        b = raise_fully(b, i)
    return tuple(out)


def string_param(b: CrystalElement, word: Sequence[int], weight: Optional[Weight] = None) -> StringVector:
    check_w0_word(b.n, word)
    weight = weight or to_highest_weight(b)[0].weight()
    return StringVector(entries=list(string_entries(b, word)), word=list(word), weight=list(weight.coords))


def string_injective(weight: Weight, word: Sequence[int]) -> bool:
    elements = crystal_elements(weight)
    check_w0_word(elements[0].n, word)
    return len({string_entries(b, word) for b in elements}) == len(elements)


# -----------------------------------------------------------------------------
# Leading strings of the initial minors
# -----------------------------------------------------------------------------


class MinorStringReport(BaseModel):
    """Leading string triple of one initial cluster variable."""

    vertex: int = Field(..., description="Signed vertex id")
    case: int = Field(..., description="1: k < 0, 2: k in the v-part, 3: k in the u-part")
    first: list[int] = Field(..., description="c_j of the u-side extremal element")
    second: list[int] = Field(..., description="c_{bar j'} of the dual-side extremal element")
    weight: list[int] = Field(..., description="ω_i in fundamental-weight coordinates")
    shape_ok: bool = Field(..., description="Whether the case shape holds")


def _shape_ok(case: int, position: int, first: Sequence[int], second: Sequence[int]) -> bool:
    if case == 1:
        return not any(first) and not any(second)
    vector = second if case == 2 else first
    return vector[position - 1] == 1 and not any(vector[position:])


def minor_string(k: int, built: DBCSeed) -> Optional[MinorStringReport]:
    """Leading string triple of Δ(k); None on framed I' levels."""
    datum = built.datum
    n = type_a_size(datum)
    r = n - 1
    label = built.labels[k]
    if label.level > r:
        return None
    letters = built.word.letters
    j = [x for x in letters if x > 0]
    j_prime = [-x for x in letters if x < 0]
    bar = bar_involution(datum_of_type(f"A{r}"))
    j_bar_prime = [bar[x] for x in j_prime]

    i = label.level
    omega = Weight.fundamental(r, i)
    dual = Weight.fundamental(r, bar[i])
    u_weight, v_weight = label.weights(datum)
    first_el = extremal_element(omega, Weight(u_weight.coords[:r]))
    second_el = extremal_element(dual, -Weight(v_weight.coords[:r]))
    first = list(string_entries(first_el, j)) if j else []
    second = list(string_entries(second_el, j_bar_prime)) if j_bar_prime else []

    N = len(j)
    if k < 0:
        case, position = 1, 0
    elif k <= N:
        case, position = 2, k
    else:
        case, position = 3, k - N
    return MinorStringReport(
        vertex=k,
        case=case,
        first=first,
        second=second,
        weight=list(omega.coords),
        shape_ok=_shape_ok(case, position, first, second),
    )


def minor_strings(built: DBCSeed) -> list[MinorStringReport]:
    out = []
    for k in built.seed.vertices:
        report = minor_string(k, built)
        if report is not None:
            out.append(report)
    return out


def _leading_vector(report: MinorStringReport) -> tuple[int, ...]:
    return tuple(report.first) + tuple(report.second) + tuple(report.weight)


def leading_injectivity(reports: Sequence[MinorStringReport], d_vectors: Iterable[Sequence[int]]) -> bool:
    """True iff d ↦ Σ d_k (first_k, second_k, ω_k) is injective on the given d-vectors."""
    vectors = [_leading_vector(rep) for rep in reports]
    width = len(vectors[0]) if vectors else 0
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for d in d_vectors:
        d = tuple(d)
        if len(d) != len(vectors):
            raise InputError(f"d-vector {d} has length {len(d)}, expected {len(vectors)}")
        total = tuple(sum(c * v[pos] for c, v in zip(d, vectors)) for pos in range(width))
        if total in seen and seen[total] != d:
            logger.info("leading strings collide for %s and %s", seen[total], d)
            return False
        seen[total] = d
    return True


def bounded_d_vectors(size: int, max_total: int) -> list[tuple[int, ...]]:
    """All d in N^size with |d| ≤ max_total."""
    return [d for d in cartesian(range(max_total + 1), repeat=size) if sum(d) <= max_total]


# -----------------------------------------------------------------------------
# Tensor products
# -----------------------------------------------------------------------------


class TensorCheck(BaseModel):
    pairs: int = Field(..., description="Pairs b ⊗ b' examined")
    cartan_pairs: int = Field(..., description="Pairs in the Cartan component")
    violations: list[list[str]] = Field(default_factory=list, description="Pairs breaking subadditivity")


def tensor_subadditivity(mu1: Weight, mu2: Weight, word: Sequence[int]) -> TensorCheck:
    """
    For b ⊗ b' in the Cartan component of B(μ1) ⊗ B(μ2), check
    c(b ⊗ b') ≤ c(b) + c(b') in lexicographic order.
    """
    top = mu1 + mu2
    left, right = crystal_elements(mu1), crystal_elements(mu2)
    n = left[0].n
    check_w0_word(n, word)
    pairs = cartan = 0
    violations = []
    for b in left:
        cb = string_entries(b, word)
        for b2 in right:
            pairs += 1
            tensor = CrystalElement(b.word + b2.word, (), n)
            if to_highest_weight(tensor)[0].weight() != top:
                continue
            cartan += 1
            combined = string_entries(tensor, word)
            bound = tuple(x + y for x, y in zip(cb, string_entries(b2, word)))
            if combined > bound:
                violations.append([repr(b), repr(b2)])
    return TensorCheck(pairs=pairs, cartan_pairs=cartan, violations=violations)
