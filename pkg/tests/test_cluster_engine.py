"""Tests for mutation, enumeration, frozen valuations and membership."""

import pytest

from clusterlab.services.cartan import datum_of_type, frame, weyl_element
from clusterlab.services.cluster_engine import (
    CapExceeded,
    FrozenVertex,
    Verdict,
    enumerate_seeds,
    exchange_binomial,
    frozen_valuation,
    initial_state,
    membership,
    mutate_matrix,
    mutate_state,
    seeds_equivalent,
)
from clusterlab.services.dbc_seed import build_seed, levi_seed, unshuffled_word
from clusterlab.services.errors import InputError
from clusterlab.services.exact_poly import LaurentPoly


def _vars(state):
    return {n: LaurentPoly.var(n, state.variables) for n in state.variables}


def test_sl2_exchange_relation(sl2_initial):
    a = _vars(sl2_initial)
    assert exchange_binomial(sl2_initial, 1) == a["A2"] * a["A3"] + a["A0"]
    mutated = mutate_state(sl2_initial, 1)
    assert mutated.vars[1] * a["A1"] == a["A2"] * a["A3"] + a["A0"]
    assert mutated.path == (1,)


def test_mutation_is_an_involution(sl3_framed):
    state = initial_state(sl3_framed.seed)
    for k in sl3_framed.seed.mutable_vertices:
        once = mutate_matrix(state.seed, k)
        assert mutate_matrix(once, k) == state.seed
        back = mutate_state(mutate_state(state, k), k)
        assert back.vars == state.vars


def test_frozen_mutation_rejected(sl2_initial):
    with pytest.raises(FrozenVertex):
        mutate_state(sl2_initial, -1)
    with pytest.raises(FrozenVertex):
        mutate_matrix(sl2_initial.seed, 2)


def test_enumeration_sl2_has_two_seeds(sl2_initial):
    states = enumerate_seeds(sl2_initial, 3)
    assert [s.path for s in states] == [(), (1,)]


def test_enumeration_depth_one_sl3_levi_seed():
    built = levi_seed(datum_of_type("A2"))
    states = enumerate_seeds(initial_state(built.seed), 1)
    assert len(states) == 5
    assert sorted(s.path for s in states) == [(), (1,), (2,), (3,), (4,)]


def test_enumeration_cap(sl3_framed):
    with pytest.raises(CapExceeded):
        enumerate_seeds(initial_state(sl3_framed.seed), 3, cap=3)


def test_frozen_valuation_agrees_across_seeds(sl2_framed, sl2_initial):
    states = enumerate_seeds(sl2_initial, 1)
    a = _vars(sl2_initial)
    f = a["A0"] ** -1 * a["A2"] ** 2
    assert frozen_valuation(f, -2, states) == -1
    assert frozen_valuation(f, -1, states) == 2
    assert frozen_valuation(f, 2, states) == 0


def test_membership_verdicts(sl2_framed, sl2_initial):
    a = _vars(sl2_initial)
    sigma = sl2_framed.sigma
    mutated = mutate_state(sl2_initial, 1).vars[1]

    assert membership(mutated, sigma, sl2_initial, 1).verdict == Verdict.IN_UPPER_BAR
    assert membership(a["A0"] ** -1, sigma, sl2_initial, 1).verdict == Verdict.IN_UPPER_BAR

    only = membership(a["A2"] ** -1, sigma, sl2_initial, 1)
    assert only.verdict == Verdict.IN_UPPER_ONLY
    assert only.witnesses[0].offending_vertex == -1
    assert only.witnesses[0].exponent == -1

    not_laurent = membership(a["A1"] ** -1, sigma, sl2_initial, 1)
    assert not_laurent.verdict == Verdict.NOT_LAURENT
    assert not_laurent.witnesses[0].seed_path == [1]


def test_membership_rejects_mutable_sigma(sl2_initial):
    with pytest.raises(InputError):
        membership(LaurentPoly.constant(1), [1], sl2_initial, 1)


def test_braid_move_seeds_are_mutation_equivalent():
    framed = frame(datum_of_type("A2"))
    seeds = []
    for word in ((1, 2, 1), (2, 1, 2)):
        w = weyl_element(framed, word)
        seeds.append(build_seed(unshuffled_word(framed, w, w)))
    assert seeds_equivalent(seeds[0], seeds[1], 3) is not None
    assert seeds_equivalent(seeds[0], seeds[0], 0) == ()


def test_zero_lies_in_every_compactification(sl2_framed, sl2_initial):
    zero = LaurentPoly.zero(sl2_initial.variables)
    result = membership(zero, sl2_framed.seed.frozen, sl2_initial, 1)
    assert result.verdict == Verdict.IN_UPPER_BAR
    assert result.witnesses == []
    assert result.seeds_checked == 2
