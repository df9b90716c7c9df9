"""Tests for Cartan data, weights and Weyl group elements."""

from fractions import Fraction

import pytest

from clusterlab.services.cartan import (
    InfiniteType,
    InvalidIndex,
    NotGCM,
    NotSymmetrizable,
    Weight,
    bar_involution,
    cartan_matrix_of_type,
    datum_of_type,
    dominance_leq,
    frame,
    is_finite_type,
    is_reduced,
    longest_element,
    reduce,
    reflect,
    root_datum,
    simple_roots_in_alpha_coords,
    validate_cartan,
    weyl_element,
)
from clusterlab.services.errors import InputError


def test_symmetrizers_of_finite_types():
    assert validate_cartan(cartan_matrix_of_type("A3")).symmetrizers == (1, 1, 1)
    assert validate_cartan(cartan_matrix_of_type("B2")).symmetrizers == (2, 1)
    assert validate_cartan(cartan_matrix_of_type("G2")).symmetrizers == (3, 1)


def test_symmetrizer_condition_holds():
    a = validate_cartan(cartan_matrix_of_type("C3"))
    for i in range(1, 4):
        for j in range(1, 4):
            assert a.d(i) * a.a(i, j) == a.d(j) * a.a(j, i)


@pytest.mark.parametrize(
    "entries",
    [
        [[2, 1], [-1, 2]],
        [[1, -1], [-1, 2]],
        [[2, -1], [0, 2]],
        [[2, -1, 0], [-1, 2]],
    ],
)
def test_gcm_axioms_rejected(entries):
    with pytest.raises(NotGCM):
        validate_cartan(entries)


def test_non_symmetrizable_cycle():
    entries = [[2, -1, -1], [-2, 2, -1], [-1, -1, 2]]
    with pytest.raises(NotSymmetrizable):
        validate_cartan(entries)


def test_unknown_type_is_input_error():
    with pytest.raises(InputError):
        datum_of_type("E9")
    with pytest.raises(InputError):
        datum_of_type("D3")


def test_reflection_and_simple_root():
    a2 = datum_of_type("A2")
    omega1 = Weight.fundamental(2, 1)
    assert reflect(a2, 1, omega1) == Weight((-1, 1))
    assert Weight.simple_root(a2, 1) == Weight((2, -1))
    with pytest.raises(InvalidIndex):
        reflect(a2, 3, omega1)


@pytest.mark.parametrize("name,length", [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("G2", 6)])
def test_longest_element_length(name, length):
    w0 = longest_element(datum_of_type(name))
    assert w0.length == length
    assert is_reduced(datum_of_type(name), w0.word)


def test_longest_element_sends_rho_to_minus_rho():
    a3 = datum_of_type("A3")
    rho = Weight((1, 1, 1))
    assert longest_element(a3).act(rho) == -rho


def test_reduce_and_is_reduced():
    a2 = datum_of_type("A2")
    assert not is_reduced(a2, [1, 1])
    assert reduce(a2, [1, 1]) == ()
    assert len(reduce(a2, [1, 2, 1, 2])) == 2
    assert weyl_element(a2, [1, 2, 1]) == weyl_element(a2, [2, 1, 2])


def test_bar_involution():
    assert bar_involution(datum_of_type("A2")) == {1: 2, 2: 1}
    assert bar_involution(datum_of_type("B2")) == {1: 1, 2: 2}


def test_dominance_order():
    a2 = datum_of_type("A2")
    alpha1 = Weight.simple_root(a2, 1)
    zero = Weight.zero(2)
    assert dominance_leq(a2, zero, alpha1)
    assert not dominance_leq(a2, alpha1, zero)
    assert simple_roots_in_alpha_coords(a2, Weight((1, 0))) == (Fraction(2, 3), Fraction(1, 3))


def test_frame_adds_primed_levels():
    framed = frame(datum_of_type("A2"))
    assert framed.rank == 4
    assert framed.base_rank == 2
    assert framed.levi == (1, 2)
    assert framed.cartan.labels == ("1", "2", "1'", "2'")
    assert framed.cartan.a(1, 3) == -1
    assert framed.cartan.a(1, 4) == 0
    assert framed.partner(3) == 1


def test_framing_a_framed_datum_doubles_rank_again():
    once = frame(datum_of_type("A1"))
    twice = frame(once)
    assert twice.rank == 4
    assert twice.base_rank == 2
    assert twice.cartan.labels == ("1", "1'", "1''", "1'''")
    assert twice.cartan.a(1, 2) == -1 and twice.cartan.a(1, 3) == -1
    assert twice.cartan.a(2, 4) == -1 and twice.cartan.a(1, 4) == 0
    assert twice.partner(4) == 2
    assert validate_cartan(twice.cartan.entries, twice.cartan.labels) == twice.cartan


def test_affine_levi_is_infinite_type():
    affine = validate_cartan([[2, -2], [-2, 2]])
    datum = root_datum(affine)
    assert not is_finite_type(datum)
    with pytest.raises(InfiniteType):
        longest_element(datum)


def test_levi_restriction():
    affine = validate_cartan([[2, -2], [-2, 2]])
    datum = root_datum(affine, levi=[1])
    assert longest_element(datum).word == (1,)
    with pytest.raises(InvalidIndex):
        is_reduced(datum, [2])
