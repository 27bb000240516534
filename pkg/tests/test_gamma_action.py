from fractions import Fraction

import pytest

from parascope import exact_linalg as la
from parascope.gamma_action import (ActionError, check_norm_identities, diagram_automorphism,
                                    factor_permutation, fixed_cocharacters, fixed_root_datum,
                                    has_case2, integrality_constants, make_action,
                                    multiple_coefficient, norm_maps, root_orbits, validate_action)
from parascope.root_datum import build, classify

from cases import FOLDINGS, all_actions, base_change_action, folding_action


@pytest.mark.parametrize("name,expected", [(f[0], f[3]) for f in FOLDINGS])
def test_folding(name, expected):
    a = folding_action(name)
    assert validate_action(a).ok
    assert str(classify(fixed_root_datum(a).datum)) == expected


def test_orbit_cases_a2():
    a = folding_action("A2 flip")
    orbits = root_orbits(a)
    assert sorted(o.case for o in orbits) == [1, 1, 2, 2]
    assert has_case2(a)
    assert not has_case2(folding_action("A3 flip"))


@pytest.mark.parametrize("name,a", all_actions())
def test_multiple_coefficient_and_integrality(name, a):
    for o in root_orbits(a):
        c = multiple_coefficient(a, o)
        assert c == (Fraction(1, 2) if o.case == 2 else 1)
        for k in integrality_constants(a, o):
            assert k > 0 and k.denominator == 1


def test_swap_norm_maps():
    a = base_change_action()
    fx = fixed_root_datum(a)
    assert fx.i_star == ((1, 1),)
    nm = norm_maps(a, fx.i_lower)
    assert check_norm_identities(nm).ok


def test_swap_norm_is_coordinate_sum():
    # X_*(T~) = Z^2 in the coroot basis; the norm sends (a, b) to a + b
    a = base_change_action()
    fx = fixed_root_datum(a)
    nm = norm_maps(a, fx.i_lower)
    assert la.as_int_matrix(nm.norm_lower) == ((1, 1),)


@pytest.mark.parametrize("name,a", all_actions())
def test_norm_identities(name, a):
    fx = fixed_root_datum(a)
    assert check_norm_identities(norm_maps(a, fx.i_lower)).ok


def test_fixed_cocharacters_trivial_action():
    a = make_action(build("A2"), [])
    assert len(fixed_cocharacters(a)) == 2


def test_action_must_preserve_positive_system():
    rd = build("A2")
    w = rd.reflection_matrix(rd.simple[0])
    rep = validate_action(make_action(rd, [w]))
    assert not rep.ok
    assert any("positive" in c[0] for c in rep.failures)


def test_named_automorphism_errors():
    with pytest.raises(ActionError):
        diagram_automorphism(build("B3"), "flip")
    with pytest.raises(ActionError):
        diagram_automorphism(build("A3"), "triality")
    with pytest.raises(ActionError):
        factor_permutation(build("A1 x A2"), [1, 0])
