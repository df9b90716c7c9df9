"""
Seeds of double Bruhat cells from double reduced words.

- double_word / unshuffled_word: validated signed words for a pair (u, v)
- kplus: next vertex on the same level
- build_seed: vertex set J = [-r,-1] ⊔ [1,l], frozen set, exchange matrix, minor labels;
  raises InvalidSeed when the result fails validate_seed
- framed_seed / levi_seed: seeds for (w_I, w_I) over framed and dotted data
- validate_seed: structural issues as a list (never raises)
- to_dot: quiver export, arrow j -> k when eps_jk > 0
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, Field

from clusterlab.services.cartan import (
    RootDatum,
    Weight,
    WeylElement,
    frame,
    identity_element,
    inverse,
    is_reduced,
    longest_element,
    root_datum,
    weyl_element,
)
from clusterlab.services.errors import DefectError, InputError

logger = logging.getLogger(__name__)


class InvalidWord(InputError):
    """Letters out of range or subwords not reduced."""


class InvalidSeed(DefectError):
    """A constructed seed fails skew-symmetrizability or integrality."""

    def __init__(self, issues: list["SeedIssue"]):
        self.issues = issues
        super().__init__("; ".join(f"{i.code}: {i.message}" for i in issues))


# -----------------------------------------------------------------------------
# Double words
# -----------------------------------------------------------------------------


class DoubleWord:
    """Signed word: negative letters spell u, positive letters spell v."""

    __slots__ = ("letters", "datum", "u", "v")

    def __init__(self, letters: tuple[int, ...], datum: RootDatum, u: WeylElement, v: WeylElement):
        self.letters = letters
        self.datum = datum
        self.u = u
        self.v = v

    @property
    def length(self) -> int:
        return len(self.letters)

    def letter(self, k: int) -> int:
        """i_k for k in J, with i_{-j} = -j."""
        if k < 0:
            return k
        return self.letters[k - 1]

    def level(self, k: int) -> int:
        return abs(self.letter(k))

    def sign(self, k: int) -> int:
        return 1 if self.letter(k) > 0 else -1

    def vertices(self) -> tuple[int, ...]:
        r = self.datum.rank
        return tuple(range(-r, 0)) + tuple(range(1, self.length + 1))

    def __repr__(self) -> str:
        return f"DoubleWord({list(self.letters)})"


def double_word(datum: RootDatum, letters: Sequence[int]) -> DoubleWord:
    """Validate a double reduced word over the Levi part of datum."""
    letters = tuple(int(x) for x in letters)
    for x in letters:
        if x == 0 or abs(x) not in datum.levi:
            raise InvalidWord(f"Letter {x} is not a signed Levi index of {datum.levi}")
    u_word = tuple(-x for x in letters if x < 0)
    v_word = tuple(x for x in letters if x > 0)
    if not is_reduced(datum, u_word):
        raise InvalidWord(f"Negative subword {u_word} is not reduced")
    if not is_reduced(datum, v_word):
        raise InvalidWord(f"Positive subword {v_word} is not reduced")
    return DoubleWord(letters, datum, weyl_element(datum, u_word), weyl_element(datum, v_word))


def unshuffled_word(datum: RootDatum, u: WeylElement, v: WeylElement) -> DoubleWord:
    """Reduced word of v (positive letters) followed by a reduced word of u (negative letters)."""
    return double_word(datum, tuple(v.word) + tuple(-i for i in u.word))


def kplus(word: DoubleWord, k: int) -> int:
    """min{m in J : m > k, |i_m| = |i_k|}, or l + 1."""
    level = word.level(k)
    start = 1 if k < 0 else k + 1
    for m in range(start, word.length + 1):
        if word.level(m) == level:
            return m
    return word.length + 1


# -----------------------------------------------------------------------------
# Seeds
# -----------------------------------------------------------------------------


class Seed:
    """
    Labeled seed: ordered vertices, mutable subset, exact exchange matrix,
    symmetrizers, levels and display names of the cluster variables.
    """

    __slots__ = ("vertices", "mutable", "epsilon", "symmetrizers", "levels", "names", "_pos")

    def __init__(
        self,
        vertices: Sequence[int],
        mutable: Iterable[int],
        epsilon: Sequence[Sequence[Fraction]],
        symmetrizers: dict[int, int],
        levels: dict[int, int],
        names: dict[int, str],
    ):
        self.vertices: tuple[int, ...] = tuple(vertices)
        self.mutable: frozenset[int] = frozenset(mutable)
        self.epsilon: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(x) for x in row) for row in epsilon
        )
        self.symmetrizers = dict(symmetrizers)
        self.levels = dict(levels)
        self.names = dict(names)
        self._pos = {v: p for p, v in enumerate(self.vertices)}

    def eps(self, i: int, j: int) -> Fraction:
        return self.epsilon[self._pos[i]][self._pos[j]]

    def is_mutable(self, k: int) -> bool:
        return k in self.mutable

    @property
    def frozen(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v not in self.mutable)

    @property
    def mutable_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v in self.mutable)

    def vertex_of(self, name: str) -> int:
        for v, n in self.names.items():
            if n == name:
                return v
        raise InputError(f"No vertex named {name!r}")

    def with_epsilon(self, epsilon: Sequence[Sequence[Fraction]]) -> "Seed":
        return Seed(self.vertices, self.mutable, epsilon, self.symmetrizers, self.levels, self.names)

    def matrix_key(self) -> tuple:
        return self.epsilon

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Seed)
            and self.vertices == other.vertices
            and self.mutable == other.mutable
            and self.epsilon == other.epsilon
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.epsilon))

    def __repr__(self) -> str:
        return f"Seed(vertices={len(self.vertices)}, mutable={sorted(self.mutable)})"


class MinorLabel:
    """Δ_{u ω_i, v ω_i} with the torus shift of the framed variable."""

    __slots__ = ("u_part", "v_part", "level", "torus_shift", "shift_kind")

    def __init__(
        self,
        u_part: WeylElement,
        v_part: WeylElement,
        level: int,
        torus_shift: Optional[Weight] = None,
        shift_kind: Optional[str] = None,
    ):
        self.u_part = u_part
        self.v_part = v_part
        self.level = level
        self.torus_shift = torus_shift
        self.shift_kind = shift_kind

    def weights(self, datum: RootDatum) -> tuple[Weight, Weight]:
        """(u ω_i, v ω_i) in the weight lattice of datum."""
        omega = Weight.fundamental(datum.rank, self.level)
        return self.u_part.act(omega), self.v_part.act(omega)

    def __repr__(self) -> str:
        return f"MinorLabel(u={self.u_part.word}, v={self.v_part.word}, level={self.level})"


class SeedIssue(BaseModel):
    """A single seed validation issue."""

    code: str = Field(..., description="Issue code (e.g. not_skew_symmetrizable, non_integral)")
    message: str = Field(..., description="Human-readable message")
    vertex: Optional[int] = Field(None, description="Relevant vertex if applicable")


class DBCSeed:
    """Seed of a double reduced word together with its minor labels."""

    __slots__ = ("seed", "word", "labels", "display")

    def __init__(self, seed: Seed, word: DoubleWord, labels: dict[int, MinorLabel], display: dict[int, int]):
        self.seed = seed
        self.word = word
        self.labels = labels
        self.display = display

    @property
    def datum(self) -> RootDatum:
        return self.word.datum


class FramedSeed(DBCSeed):
    """Framed seed with the frozen split I⁻ ⊔ I' ⊔ I⁺ and Σ = frozen minus I'."""

    __slots__ = ("base", "i_minus", "i_prime", "i_plus", "sigma")

    def __init__(
        self,
        built: DBCSeed,
        base: RootDatum,
        i_minus: tuple[int, ...],
        i_prime: tuple[int, ...],
        i_plus: tuple[int, ...],
    ):
        super().__init__(built.seed, built.word, built.labels, built.display)
        self.base = base
        self.i_minus = i_minus
        self.i_prime = i_prime
        self.i_plus = i_plus
        self.sigma = tuple(sorted(i_minus + i_plus))


# -----------------------------------------------------------------------------
# Exchange matrix
# -----------------------------------------------------------------------------


def _b_entry(word: DoubleWord, k: int, l: int, plus: dict[int, int]) -> int:
    """
    Sign-aware entry b_kl of a double reduced word.

    Interlaced pairs on different levels carry the sign of the later vertex.
    """
    if k == l:
        return 0
    a = word.datum.cartan.a(word.level(k), word.level(l))
    kp, lp = plus[k], plus[l]
    ek, el = word.sign(k), word.sign(l)
    if k == lp:
        return -ek
    if l == kp:
        return el
    if (k < l < kp < lp and el == word.sign(kp)) or (k < l < lp < kp and el == -word.sign(lp)):
        return el * a
    if (l < k < lp < kp and ek == word.sign(lp)) or (l < k < kp < lp and ek == -word.sign(kp)):
        return -ek * a
    return 0


def exchange_matrix(word: DoubleWord) -> tuple[tuple[Fraction, ...], ...]:
    """
    eps_jk = b_kj on rows with a mutable index; frozen rows follow from
    eps_ij d_j = -eps_ji d_i; the frozen-frozen block is zero.
    """
    vertices = word.vertices()
    plus = {k: kplus(word, k) for k in vertices}
    l = word.length
    mutable = {k for k in vertices if k > 0 and plus[k] <= l}
    d = {k: word.datum.cartan.d(word.level(k)) for k in vertices}
    eps: dict[tuple[int, int], Fraction] = {}
    for j in vertices:
        for k in vertices:
            if j in mutable:
                eps[j, k] = Fraction(_b_entry(word, k, j, plus))
            elif k in mutable:
                eps[j, k] = -Fraction(_b_entry(word, j, k, plus)) * d[j] / d[k]
            else:
                eps[j, k] = Fraction(0)
    return tuple(tuple(eps[j, k] for k in vertices) for j in vertices)


def printed_exchange_matrix(word: DoubleWord) -> tuple[tuple[Fraction, ...], ...]:
    """Sign-free formula with m = l. Diagnostics only; no construction uses it."""
    vertices = word.vertices()
    plus = {k: kplus(word, k) for k in vertices}
    l = word.length
    cartan = word.datum.cartan

    def d(k: int) -> int:
        return cartan.d(word.level(k))

    rows = []
    for j in vertices:
        row = []
        for k in vertices:
            jp, kp = plus[j], plus[k]
            total = Fraction(0)
            if j == kp:
                total += d(j)
            if jp == k:
                total -= d(k)
            if k < j < kp and j > 0:
                total += d(j)
            if k < jp < kp and jp <= l:
                total -= d(jp)
            if j < k < jp and k > 0:
                total -= d(k)
            if j < kp < jp and kp <= l:
                total += d(kp)
            row.append(Fraction(cartan.a(word.level(j), word.level(k)), 2) * total)
        rows.append(tuple(row))
    return tuple(rows)


# -----------------------------------------------------------------------------
# Construction
# -----------------------------------------------------------------------------


def _minor_labels(word: DoubleWord) -> dict[int, MinorLabel]:
    datum = word.datum
    framed = datum.rank == 2 * datum.base_rank and datum.base_rank > 0
    labels: dict[int, MinorLabel] = {}
    e = identity_element(datum)
    v_inv = inverse(datum, word.v)
    for k in word.vertices():
        if k < 0:
            u_part, v_part = e, v_inv
        else:
            u_letters = [-x for x in word.letters[:k] if x < 0]
            v_letters = [x for x in reversed(word.letters[k:]) if x > 0]
            u_part = weyl_element(datum, u_letters)
            v_part = weyl_element(datum, v_letters)
        level = word.level(k)
        shift = kind = None
        if framed:
            base = datum.base_rank
            if level <= base:
                shift, kind = Weight.fundamental(base, level), "omega"
            else:
                base_level = level - base
                column = datum.cartan.column(base_level)[:base]
                shift, kind = Weight(column), "alpha"
        labels[k] = MinorLabel(u_part, v_part, level, shift, kind)
    return labels


def display_order(word: DoubleWord, mutable: set[int]) -> dict[int, int]:
    """Added-level frozens by level, then mutables, then other frozens, by signed id."""
    vertices = word.vertices()
    datum = word.datum
    added = sorted(
        (k for k in vertices if k not in mutable and datum.is_added_level(word.level(k))),
        key=word.level,
    )
    rest = [k for k in vertices if k in mutable] + [
        k for k in vertices if k not in mutable and k not in added
    ]
    return {k: n for n, k in enumerate(added + rest)}


def build_seed(word: DoubleWord) -> DBCSeed:
    vertices = word.vertices()
    l = word.length
    mutable = {k for k in vertices if k > 0 and kplus(word, k) <= l}
    display = display_order(word, mutable)
    seed = Seed(
        vertices=vertices,
        mutable=mutable,
        epsilon=exchange_matrix(word),
        symmetrizers={k: word.datum.cartan.d(word.level(k)) for k in vertices},
        levels={k: word.level(k) for k in vertices},
        names={k: f"A{display[k]}" for k in vertices},
    )
    issues = validate_seed(seed)
    if issues:
        logger.error("seed for %s has %d issues", word, len(issues))
        raise InvalidSeed(issues)
    logger.debug("built seed for %s: %d vertices, %d mutable", word, len(vertices), len(mutable))
    return DBCSeed(seed, word, _minor_labels(word), display)


def levi_seed(datum: RootDatum, levi: Optional[Sequence[int]] = None) -> DBCSeed:
    """Seed of the unshuffled word for (w_I, w_I) on the Levi index set."""
    if levi is not None:
        datum = root_datum(datum.cartan, levi=levi, base_rank=datum.base_rank, name=datum.name)
    w0 = longest_element(datum)
    return build_seed(unshuffled_word(datum, w0, w0))


def framed_seed(datum: RootDatum) -> FramedSeed:
    """Seed of the framed datum for (w0, w0) with letters in I."""
    framed = frame(datum)
    built = levi_seed(framed)
    r = datum.rank
    seed = built.seed
    i_minus = tuple(-i for i in range(r, 0, -1))
    i_prime = tuple(-i for i in range(2 * r, r, -1))
    i_plus = tuple(k for k in seed.frozen if k > 0)
    return FramedSeed(built, datum, i_minus, i_prime, i_plus)


# -----------------------------------------------------------------------------
# Validation and export
# -----------------------------------------------------------------------------


def validate_seed(seed: Seed) -> list[SeedIssue]:
    """Check skew-symmetrizability and integrality on mutable rows and columns."""
    issues: list[SeedIssue] = []
    n = len(seed.vertices)
    if len(seed.epsilon) != n or any(len(row) != n for row in seed.epsilon):
        issues.append(SeedIssue(code="bad_shape", message=f"Exchange matrix is not {n}x{n}"))
        return issues
    unknown = seed.mutable - set(seed.vertices)
    for k in sorted(unknown):
        issues.append(SeedIssue(code="unknown_vertex", message=f"Mutable vertex {k} not in J", vertex=k))
    for i in seed.vertices:
        for j in seed.vertices:
            lhs = seed.eps(i, j) * seed.symmetrizers[j]
            rhs = -seed.eps(j, i) * seed.symmetrizers[i]
            if lhs != rhs:
                issues.append(
                    SeedIssue(
                        code="not_skew_symmetrizable",
                        message=f"eps[{i},{j}] d[{j}] = {lhs} but -eps[{j},{i}] d[{i}] = {rhs}",
                        vertex=i,
                    )
                )
            if (i in seed.mutable or j in seed.mutable) and seed.eps(i, j).denominator != 1:
                issues.append(
                    SeedIssue(
                        code="non_integral",
                        message=f"eps[{i},{j}] = {seed.eps(i, j)} is not an integer",
                        vertex=i,
                    )
                )
    return issues


def _display_key(name: str) -> tuple[str, int]:
    """A10 after A9: split the trailing display index off the name."""
    head = name.rstrip("0123456789")
    return head, int(name[len(head):] or 0)


def to_dot(seed: Seed, title: str = "seed") -> str:
    """Graphviz quiver: arrow j -> k when eps_jk > 0, labelled with |eps_jk| when not 1."""
    lines = [f'digraph "{title}" {{']
    for v in seed.vertices:
        shape = "circle" if v in seed.mutable else "box"
        lines.append(f'  "{seed.names[v]}" [shape={shape}, tooltip="vertex {v}"];')
    order = sorted(seed.vertices, key=lambda v: _display_key(seed.names[v]))
    for j in order:
        for k in order:
            value = seed.eps(j, k)
            if value > 0 and (j in seed.mutable or k in seed.mutable):
                label = "" if value == 1 else f' [label="{value}"]'
                lines.append(f'  "{seed.names[j]}" -> "{seed.names[k]}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"
