"""Tests for double reduced words and their seeds."""

from fractions import Fraction

import pytest

from clusterlab.services.cartan import Weight, datum_of_type, frame, validate_cartan, root_datum
from clusterlab.services import dbc_seed
from clusterlab.services.dbc_seed import (
    InvalidSeed,
    InvalidWord,
    Seed,
    build_seed,
    double_word,
    framed_seed,
    kplus,
    levi_seed,
    printed_exchange_matrix,
    to_dot,
    validate_seed,
)


def test_framed_sl2_vertices_and_names(sl2_framed):
    seed = sl2_framed.seed
    assert seed.vertices == (-2, -1, 1, 2)
    assert seed.mutable_vertices == (1,)
    assert seed.names == {-2: "A0", 1: "A1", -1: "A2", 2: "A3"}
    assert sl2_framed.sigma == (-1, 2)
    assert sl2_framed.i_prime == (-2,)
    assert list(sl2_framed.word.letters) == [1, -1]


def test_framed_sl2_exchange_row(sl2_framed):
    seed = sl2_framed.seed
    assert seed.eps(1, -1) == 1
    assert seed.eps(1, 2) == 1
    assert seed.eps(1, -2) == -1
    assert seed.eps(-1, 2) == 0


def test_framed_sl2_minor_labels(sl2_framed):
    labels = sl2_framed.labels
    assert labels[-2].shift_kind == "alpha"
    assert labels[-2].torus_shift == Weight((2,))
    assert labels[1].shift_kind == "omega"
    assert labels[1].u_part.word == () and labels[1].v_part.word == ()
    assert labels[-1].v_part.word == (1,)
    assert labels[2].u_part.word == (1,)


def test_kplus_on_sl3_word():
    word = double_word(datum_of_type("A2"), [1, 2, 1, -1, -2, -1])
    assert kplus(word, -1) == 1
    assert kplus(word, -2) == 2
    assert kplus(word, 1) == 3
    assert kplus(word, 3) == 4
    assert kplus(word, 6) == 7


def test_sl3_exchange_rows_follow_plucker_relations(sl3_framed):
    seed = sl3_framed.seed
    # vertex 1 is Δ_{1,2}: Δ_{1,1} Δ_{12,23} against Δ_{1,3} Δ_{12,12}
    row1 = {k: seed.eps(1, k) for k in seed.vertices if seed.eps(1, k) != 0}
    assert row1 == {3: -1, -2: -1, -1: 1, 2: 1}
    # vertex 2 is Δ_{12,12}; the level-2 added vertex sits with Δ_{1,2} Δ_{2,1}
    row2 = {k: seed.eps(2, k) for k in seed.vertices if seed.eps(2, k) != 0}
    assert row2 == {5: 1, -2: 1, 3: 1, 1: -1, 4: -1, -4: -1}
    row3 = {k: seed.eps(3, k) for k in seed.vertices if seed.eps(3, k) != 0}
    assert row3 == {1: 1, 4: 1, 2: -1, -3: -1}
    row4 = {k: seed.eps(4, k) for k in seed.vertices if seed.eps(4, k) != 0}
    assert row4 == {3: -1, 5: -1, 6: 1, 2: 1}


def test_levi_seed_of_sl3():
    built = levi_seed(datum_of_type("A2"))
    seed = built.seed
    assert len(seed.vertices) == 8
    assert set(seed.mutable) == {1, 2, 3, 4}
    assert validate_seed(seed) == []


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C3", "G2"])
def test_framed_seeds_are_valid(name):
    built = framed_seed(datum_of_type(name))
    assert validate_seed(built.seed) == []
    r = built.datum.base_rank
    assert len(built.i_prime) == r
    assert len(built.seed.frozen) == 3 * r


def test_framed_seed_of_a_framed_datum():
    inner = frame(datum_of_type("A1"))
    built = framed_seed(inner)
    assert built.datum.rank == 2
    assert len(built.i_prime) == 2
    assert len(built.seed.frozen) == 6
    assert validate_seed(built.seed) == []


def test_exchange_matrix_is_skew_symmetrizable_for_mixed_word():
    built = build_seed(double_word(datum_of_type("B2"), [1, -2, 2, -1, 1, -2, 2, -1]))
    seed = built.seed
    for i in seed.vertices:
        for j in seed.vertices:
            assert seed.eps(i, j) * seed.symmetrizers[j] == -seed.eps(j, i) * seed.symmetrizers[i]


@pytest.mark.parametrize("letters", [[1, 1], [0], [3], [1, 2, 1, 2]])
def test_invalid_words(letters):
    with pytest.raises(InvalidWord):
        double_word(datum_of_type("A2"), letters)


def test_validate_seed_reports_issues():
    seed = Seed(
        vertices=(1, 2),
        mutable={1},
        epsilon=[[0, Fraction(1, 2)], [1, 0]],
        symmetrizers={1: 1, 2: 1},
        levels={1: 1, 2: 1},
        names={1: "A1", 2: "A2"},
    )
    codes = {issue.code for issue in validate_seed(seed)}
    assert codes == {"not_skew_symmetrizable", "non_integral"}


def test_to_dot_shapes(sl2_framed):
    dot = to_dot(sl2_framed.seed, "sl2")
    assert dot.startswith('digraph "sl2" {')
    assert '"A1" [shape=circle' in dot
    assert '"A0" [shape=box' in dot
    assert dot.rstrip().endswith("}")


def test_seed_over_explicit_cartan():
    cartan = validate_cartan([[2, -3], [-1, 2]], ["a", "b"])
    built = levi_seed(root_datum(cartan, name="G2"))
    assert len(built.word.letters) == 12
    assert validate_seed(built.seed) == []


def test_printed_matrix_misses_the_added_level_arrow(sl2_framed):
    word = sl2_framed.word
    pos = {v: p for p, v in enumerate(word.vertices())}
    printed = printed_exchange_matrix(word)
    assert printed[pos[1]][pos[-2]] == 0
    assert sl2_framed.seed.eps(1, -2) == -1


def test_build_seed_raises_on_invalid_matrix(monkeypatch):
    word = double_word(datum_of_type("A1"), [1, -1])
    good = dbc_seed.exchange_matrix(word)
    bad = [list(row) for row in good]
    # vertices (-1, 1, 2): halve an entry of the mutable row
    bad[1][2] = Fraction(1, 2)
    monkeypatch.setattr(dbc_seed, "exchange_matrix", lambda w: bad)
    with pytest.raises(InvalidSeed) as info:
        build_seed(word)
    codes = {issue.code for issue in info.value.issues}
    assert codes == {"not_skew_symmetrizable", "non_integral"}


def test_to_dot_orders_edges_by_display_index():
    built = framed_seed(datum_of_type("A3"))
    assert len(built.seed.vertices) > 10
    dot = to_dot(built.seed)
    sources = [int(line.split('"')[1][1:]) for line in dot.splitlines() if "->" in line]
    assert sources == sorted(sources)
    assert max(sources) >= 10
