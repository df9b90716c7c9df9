"""Tests for monoid presentations, specialization, valuations and dotted Cartan data."""

import random

import pytest

from clusterlab.services.cartan import cartan_matrix_of_type, datum_of_type, validate_cartan
from clusterlab.services.dbc_seed import framed_seed, levi_seed
from clusterlab.services.errors import InputError
from clusterlab.services.exact_poly import LaurentPoly
from clusterlab.services.monoid_lab import (
    InvalidSpecialization,
    Y_VARS,
    boundary_valuation_sl2,
    build_dotted_cartan,
    cluster_containment,
    det_y,
    dotted_datum,
    gl2_cartan,
    gl2_family,
    gl2_family_identity,
    gl2_localization,
    is_monomial_monoid_hom,
    matrix_monoid_dotted,
    random_monomial_map,
    random_two_term_map,
    rho_star_exponents,
    rho_star_substitution,
    sl2_env_presentation,
    sl2_states,
    sl2_torus_family,
    sl2_valuation_corpus,
    specialize_frozen,
    torus_cone_generators,
    torus_family_quotient,
    valuation_row,
    vinberg_valuation_sl2,
)


def _y(name):
    return LaurentPoly.var(name, Y_VARS)


def test_sl2_presentation_reference():
    presentation = sl2_env_presentation()
    assert presentation.verify()
    assert presentation.frozen == ("A0",)
    data = presentation.to_dict()
    assert data["substitutions"]["A2"] == "-1/1*y12"
    assert data["relations"] == ["1/1*A1*A1' + -1/1*A2*A3 + -1/1*A0"]


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_gl2_family(k):
    assert gl2_family(k).verify()
    assert gl2_family_identity(k)
    assert gl2_cartan(k) == [[2, -1 - 2 * k], [-1 - 2 * k, 2]]


def test_gl2_family_rejects_negative_k():
    with pytest.raises(InputError):
        gl2_family(-1)
    with pytest.raises(InputError):
        sl2_torus_family(0)


def test_gl2_localization():
    assert gl2_localization().verify()


def test_torus_cone_generators_k1():
    texts = sorted(p.to_text() for p in torus_cone_generators(1))
    assert texts == sorted(["1/1*x11^2*x22", "1/1*x11*x22^2", "1/1*x11*x22"])


@pytest.mark.parametrize("k", [1, 2])
def test_torus_family(k):
    assert sl2_torus_family(k).verify()
    assert torus_family_quotient(k) == LaurentPoly.var("z") ** (2 * k)


@pytest.mark.parametrize("value", [0, 1, 5])
def test_fibres_of_the_frozen_variable(value):
    fibre = specialize_frozen(sl2_env_presentation(), {"A0": value})
    assert "A0" not in fibre.generators
    assert fibre.images() == [det_y() - value]


def test_specialize_unknown_generator():
    with pytest.raises(InputError):
        specialize_frozen(sl2_env_presentation(), {"A1": 0})


def test_specialize_seed_state():
    built, states = sl2_states(1)
    mutated = states[1]
    values = specialize_frozen(mutated, {"A0": 0})
    names = states[0].variables
    a = {n: LaurentPoly.var(n, names) for n in names}
    assert values[-2] == 0
    assert values[1] == a["A2"] * a["A3"] * a["A1"] ** -1
    with pytest.raises(InputError):
        specialize_frozen(mutated, {"A1": 1})


def test_cluster_containment_sl2():
    _, states = sl2_states(2)
    assert cluster_containment(sl2_env_presentation(), states)


def test_valuations():
    det = det_y()
    assert vinberg_valuation_sl2(det**2 * _y("y11")) == 2
    f = _y("y12") ** 2 * _y("y21") + _y("y12") ** 3 * _y("y21") ** 2
    assert boundary_valuation_sl2(f, "+") == 2
    assert boundary_valuation_sl2(f, "-") == 1
    with pytest.raises(InputError):
        boundary_valuation_sl2(f, "x")
    with pytest.raises(InputError):
        vinberg_valuation_sl2(LaurentPoly.var("q"))


def test_valuation_rows_agree_on_cluster_variables():
    built, states = sl2_states(1)
    for item, f in sl2_valuation_corpus(7, random_count=3)[:5]:
        row = valuation_row(item, f, built, states)
        assert row.agrees, row


def test_valuation_row_of_det_power():
    built, states = sl2_states(1)
    row = valuation_row("det^2", det_y() ** 2 * _y("y12"), built, states)
    assert (row.det_order, row.plus_order, row.minus_order) == (2, 1, 0)
    assert row.agrees


def test_corpus_is_seeded():
    a = [text for text, _ in sl2_valuation_corpus(3, random_count=10)]
    b = [text for text, _ in sl2_valuation_corpus(3, random_count=10)]
    assert a == b
    assert a[:5] == ["cluster:A1", "cluster:A2", "cluster:A3", "cluster:A1'", "cluster:A0"]


def test_dotted_cartan_a1():
    a1 = validate_cartan(cartan_matrix_of_type("A1"))
    dotted = build_dotted_cartan(a1, [[3]])
    assert [list(r) for r in dotted.entries] == [[2, -3], [-3, 2]]
    assert dotted.labels == ("1", "1'")


def test_dotted_cartan_uses_symmetrizers():
    b2 = validate_cartan(cartan_matrix_of_type("B2"))
    dotted = build_dotted_cartan(b2, [[1], [1]])
    assert [list(r) for r in dotted.entries] == [[2, -1, -1], [-2, 2, -1], [-2, -1, 2]]
    assert dotted.symmetrizers == (2, 1, 1)


def test_invalid_specializations():
    a1 = validate_cartan(cartan_matrix_of_type("A1"))
    with pytest.raises(InvalidSpecialization):
        build_dotted_cartan(a1, [[-1]])
    with pytest.raises(InvalidSpecialization):
        build_dotted_cartan(a1, [[1], [1]])


def test_matrix_monoid_dotted():
    datum = matrix_monoid_dotted(3)
    assert datum.base_rank == 2
    assert datum.levi == (1, 2)
    assert [list(r) for r in datum.cartan.entries] == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    with pytest.raises(InputError):
        matrix_monoid_dotted(1)


def test_rho_star():
    a1 = validate_cartan(cartan_matrix_of_type("A1"))
    dotted = dotted_datum(a1, [[3]])
    assert rho_star_exponents(dotted) == {1: {1: 3}}
    framed = framed_seed(datum_of_type("A1"))
    substitution = rho_star_substitution(framed, levi_seed(dotted))
    assert substitution == {"A0": LaurentPoly.var("A0") ** 3}
    specialized = specialize_frozen(sl2_env_presentation(), substitution)
    assert specialized.relations == gl2_family(1).relations


def test_monomial_monoid_homs():
    y1, y2 = LaurentPoly.var("y1", ("y1", "y2")), LaurentPoly.var("y2", ("y1", "y2"))
    assert is_monomial_monoid_hom([y1 * y2**3, LaurentPoly.constant(1, ("y1", "y2"))])
    assert is_monomial_monoid_hom([LaurentPoly.zero(("y1",))])
    assert not is_monomial_monoid_hom([y1 + y2])
    assert not is_monomial_monoid_hom([2 * y1])
    with pytest.raises(InputError):
        is_monomial_monoid_hom([y1**-1])


def test_random_maps():
    rng = random.Random(0)
    y_vars = ("y1", "y2", "y3")
    for _ in range(10):
        assert is_monomial_monoid_hom(random_monomial_map(rng, 2, y_vars))
        assert not is_monomial_monoid_hom(random_two_term_map(rng, 2, y_vars))
