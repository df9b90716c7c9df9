"""Tests for type A crystals and string parametrizations."""

import pytest

from clusterlab.services.cartan import Weight, datum_of_type
from clusterlab.services.crystal_string import (
    NotReduced,
    bounded_d_vectors,
    crystal_e,
    crystal_elements,
    crystal_f,
    epsilon,
    highest_weight_element,
    leading_injectivity,
    minor_strings,
    phi,
    shape_of,
    string_injective,
    string_param,
    tensor_subadditivity,
    to_highest_weight,
)
from clusterlab.services.dbc_seed import framed_seed
from clusterlab.services.errors import InputError


@pytest.mark.parametrize(
    "weight,size",
    [((1,), 2), ((3,), 4), ((1, 0), 3), ((0, 1), 3), ((1, 1), 8), ((2, 0), 6)],
)
def test_crystal_sizes(weight, size):
    assert len(crystal_elements(Weight(weight))) == size


def test_highest_weight_element():
    top = highest_weight_element(Weight((1, 1)))
    assert top.word == (2, 1, 1)
    assert top.weight() == Weight((1, 1))
    assert top.rows() == [(1, 1), (2,)]
    assert all(crystal_e(top, i) is None for i in (1, 2))


def test_operators_are_partial_inverses():
    for b in crystal_elements(Weight((1, 1))):
        for i in (1, 2):
            down = crystal_f(b, i)
            if down is not None:
                assert crystal_e(down, i) == b
            assert phi(b, i) - epsilon(b, i) == b.weight()[i]


def test_to_highest_weight_returns_top():
    elements = crystal_elements(Weight((2, 1)))
    top = elements[0]
    for b in elements:
        assert to_highest_weight(b)[0] == top


def test_shape_of():
    assert shape_of(Weight((2, 1))) == (3, 1)
    with pytest.raises(InputError):
        shape_of(Weight((1, -1)))


@pytest.mark.parametrize("word", [(1, 2, 1), (2, 1, 2)])
def test_string_parametrization_injective_a2(word):
    for weight in [(1, 0), (0, 1), (1, 1), (2, 1), (3, 0)]:
        assert string_injective(Weight(weight), word)


def test_string_param_of_lowest_element():
    elements = crystal_elements(Weight((1,)))
    lowest = elements[-1]
    vector = string_param(lowest, [1])
    assert vector.entries == [1]
    assert vector.weight == [1]


def test_non_reduced_word_rejected():
    with pytest.raises(NotReduced):
        string_injective(Weight((1, 1)), (1, 2))
    with pytest.raises(NotReduced):
        string_injective(Weight((1, 1)), (1, 1, 2))


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_minor_string_shapes(name):
    reports = minor_strings(framed_seed(datum_of_type(name)))
    assert reports
    assert all(r.shape_ok for r in reports)
    assert {r.case for r in reports} <= {1, 2, 3}


def test_leading_injectivity_a2():
    reports = minor_strings(framed_seed(datum_of_type("A2")))
    assert leading_injectivity(reports, bounded_d_vectors(len(reports), 2))


def test_leading_injectivity_detects_collisions():
    reports = minor_strings(framed_seed(datum_of_type("A1")))
    doubled = list(reports) + [reports[0]]
    size = len(doubled)
    first = tuple(1 if p == 0 else 0 for p in range(size))
    last = tuple(1 if p == size - 1 else 0 for p in range(size))
    vectors = [first, last]
    assert not leading_injectivity(doubled, vectors)


def test_bounded_d_vectors():
    vectors = bounded_d_vectors(2, 2)
    assert len(vectors) == 6
    assert (2, 0) in vectors and (1, 1) in vectors


def test_tensor_subadditivity_a2():
    check = tensor_subadditivity(Weight((1, 0)), Weight((1, 0)), (1, 2, 1))
    assert check.pairs == 9
    assert check.cartan_pairs == 6
    assert check.violations == []
