from fractions import Fraction
from itertools import product

import pytest

from tilekit.algebra import Poly
from tilekit.aztec import KTiling, enumerate_tilings
from tilekit.encodings import PG, WP, generating_polynomial, ktiling_to_sequence, weight
from tilekit.vertex import (FAMILIES, all_faces, aztec_lattice_spec, balanced_boundaries,
                            configuration_weight, enumerate_configurations, family_name,
                            lattice_constant, lattice_partition_function, phi, row_weight,
                            sequence_states, weight_algebraic, weight_graphical, ybe_certify,
                            ybe_check, ybe_grid, ybe_random_points)

X, T, Y = Fraction(3, 7), Fraction(5, 2), Fraction(11, 13)


def face(*vs):
    return tuple(tuple(v) for v in vs)


def test_one_color_examples():
    assert weight_algebraic("L", 1, face((1,), (0,), (0,), (1,)), X, T) == X
    assert weight_algebraic("R'", 1, face((1,), (0,), (0,), (1,)), X, T, Y) == 1 / (1 + Y / X)


def test_two_color_example():
    f = face((1, 1), (0, 0), (0, 1), (1, 0))
    assert weight_algebraic("L", 2, f, X, T) == X * T
    assert weight_graphical("L", 2, f, X, T) == X * T


def test_phi():
    assert phi((1, 0), (1, 1)) == 1
    assert phi((0, 1), (1, 1)) == 0
    assert phi((1, 1, 0), (0, 1, 1)) == 3


def test_conservation():
    for fam in FAMILIES:
        y = Y if fam == "R'" else None
        for f in all_faces(2):
            I, J, K, L = f
            if any(a + b != c + d for a, b, c, d in zip(I, J, K, L)):
                assert weight_algebraic(fam, 2, f, X, T, y) == 0
                assert weight_graphical(fam, 2, f, X, T, y) == 0


def test_family_aliases():
    assert family_name("Lp") == "L'"
    with pytest.raises(ValueError):
        family_name("Q")


@pytest.mark.parametrize("k", [1, 2])
def test_algebraic_equals_graphical(k):
    for fam in FAMILIES:
        for x, t, y in ybe_random_points(3, seed=k):
            y = y if fam == "R'" else None
            for f in all_faces(k):
                assert weight_algebraic(fam, k, f, x, t, y) == weight_graphical(fam, k, f, x, t, y)


@pytest.mark.parametrize("triple", ["purple-gray", "white-pink"])
def test_ybe_one_color(triple):
    assert ybe_certify(1, triple, ybe_grid(4)) == []


@pytest.mark.parametrize("triple", ["purple-gray", "white-pink"])
def test_ybe_two_colors_random_point(triple):
    assert ybe_check(2, triple, Fraction(2, 3), Fraction(5, 7), Fraction(3, 11)) == []


def test_ybe_detects_a_wrong_parameter():
    # swapping the cross parameter breaks the identity
    from tilekit import vertex

    tabs = vertex._ybe_tables(1, "purple-gray", X, Y, T)
    bad_cross = vertex.weight_table("R'", 1, Y, T, X)
    broken = (tabs[0], tabs[1], bad_cross)
    diffs = [bd for bd in balanced_boundaries(1)
             if len(set(vertex._ybe_sides_from_tables(1, broken, bd))) > 1]
    assert diffs


def test_unbalanced_boundary_is_zero():
    bd = face((1,), (0,), (0,), (0,), (0,), (0,))
    from tilekit.vertex import ybe_sides

    assert ybe_sides(1, "purple-gray", X, Y, T, bd) == (0, 0)


@pytest.mark.parametrize("model", [PG, WP])
def test_rank_two_configurations(model):
    spec = aztec_lattice_spec(2, 1, model)
    configs = enumerate_configurations(spec)
    assert len(configs) == 8
    from_tilings = {tuple(sequence_states(spec, ktiling_to_sequence(KTiling.make([t]), model)))
                    for t in enumerate_tilings(2)}
    assert {tuple(c) for c in configs} == from_tilings


@pytest.mark.parametrize("model", [PG, WP])
def test_configuration_weight_is_tiling_weight_times_constant(model):
    spec = aztec_lattice_spec(2, 2, model)
    const = lattice_constant(2, 2, model)
    tilings = enumerate_tilings(2)
    for a, b in product(tilings, repeat=2):
        kt = KTiling.make([a, b])
        states = sequence_states(spec, ktiling_to_sequence(kt, model))
        assert configuration_weight(spec, states) == weight(kt, model) * const


@pytest.mark.parametrize("model", [PG, WP])
@pytest.mark.parametrize("m,k", [(1, 2), (2, 1), (2, 2)])
def test_lattice_normalization(model, m, k):
    z = lattice_partition_function(aztec_lattice_spec(m, k, model))
    assert z == generating_polynomial(m, k, model) * lattice_constant(m, k, model)


def test_lattice_constants():
    rho = Poly.monomial({"y1": 2, "y2": 0})
    assert lattice_constant(2, 2, PG) == rho * Poly.monomial({"t": 1})
    assert lattice_constant(2, 2, WP) == rho * Poly.monomial({"y1": 2, "y2": 2})


def test_row_weight():
    assert row_weight("L", "x1", 1, [(1,)], [(1,)], t=1) == Poly.const(1)
    assert row_weight("L", "x1", 1, [(1,)], [(2, 1)], t=1) == Poly.var("x1") ** 2
    assert row_weight("L", "x1", 1, [(2, 1)], [(1,)], t=1).is_zero()
