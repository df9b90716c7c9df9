"""Tests for pinnings, generalized minors and exchange checks at group points."""

from fractions import Fraction

import pytest
from sympy import Matrix, Rational

from clusterlab.services.cartan import datum_of_type
from clusterlab.services.cluster_engine import initial_state, mutate_state
from clusterlab.services.dbc_seed import framed_seed
from clusterlab.services.errors import InputError
from clusterlab.services.exact_poly import substitute
from clusterlab.services.group_eval import (
    GroupPoint,
    Unsupported,
    generalized_minor,
    initial_values,
    phi_sl2,
    random_point,
    s_dot,
    type_a_size,
    verify_exchange,
    wrep,
    z_twist,
)


def _sl2_point():
    return GroupPoint(Matrix([[2, 1], [1, 1]]), [Fraction(3), Fraction(1, 3)])


def test_group_point_validation():
    with pytest.raises(InputError):
        GroupPoint(Matrix([[2, 0], [0, 1]]), [1, 1])
    with pytest.raises(InputError):
        GroupPoint(Matrix([[1, 0], [0, 1]]), [2, 1])
    with pytest.raises(InputError):
        GroupPoint(Matrix([[1, 0], [0, 1]]), [1])


def test_s_dot_sl2():
    assert s_dot(2, 1) == Matrix([[0, 1], [-1, 0]])


def test_generalized_minors_sl3():
    g = Matrix([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
    assert generalized_minor((), (), 1, g) == 1
    assert generalized_minor((), (), 2, g) == 1
    # Δ_{ω1, s1 ω1}(g) = g12 up to the sign of ṡ1
    assert generalized_minor((), (1,), 1, g) == -2


def test_sl2_framed_values(sl2_framed, sl2_initial):
    values = initial_values(sl2_framed, _sl2_point())
    assert values == {"A0": 9, "A1": 6, "A2": -3, "A3": -3}
    mutated = mutate_state(sl2_initial, 1).vars[1]
    assert substitute(mutated, values) == 3


def test_random_point_is_deterministic(sl3_framed):
    a = random_point(11, 3, sl3_framed)
    b = random_point(11, 3, sl3_framed)
    assert a.matrix == b.matrix
    assert a.torus == b.torus
    assert all(v != 0 for v in initial_values(sl3_framed, a).values())


def test_verify_exchange_sl2(sl2_framed, sl2_initial):
    points = [random_point(seed, 2, sl2_framed) for seed in range(5)]
    report = verify_exchange(sl2_initial, 1, points, sl2_framed)
    assert report.points == 5
    assert report.lines_checked == 5


def test_verify_exchange_sl3(sl3_framed):
    initial = initial_state(sl3_framed.seed)
    points = [random_point(seed, 3, sl3_framed) for seed in range(3)]
    for k in sl3_framed.seed.mutable_vertices:
        assert verify_exchange(initial, k, points, sl3_framed).vertex == k


def test_type_a_only():
    assert type_a_size(datum_of_type("A3")) == 4
    assert type_a_size(framed_seed(datum_of_type("A2")).datum) == 3
    with pytest.raises(Unsupported):
        type_a_size(datum_of_type("B2"))


def test_z_twist_preserves_framed_values(sl2_framed):
    point = _sl2_point()
    assert initial_values(sl2_framed, z_twist(point)) == initial_values(sl2_framed, point)
    odd = random_point(1, 3)
    with pytest.raises(InputError):
        z_twist(odd)


def test_phi_sl2_lands_in_sl3():
    g = Matrix([[2, 1], [1, 1]])
    m = phi_sl2(g, Fraction(2))
    assert m.det() == 1
    assert m[2, 2] == Rational(1, 4)


def test_wrep_of_longest_element_is_antidiagonal():
    m = wrep(3, [1, 2, 1])
    assert m.det() == 1
    assert m == wrep(3, [2, 1, 2])
    for r in range(3):
        assert [c for c in range(3) if m[r, c] != 0] == [2 - r]
    assert wrep(2, [1]) == s_dot(2, 1)
