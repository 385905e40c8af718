from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eisenlab.characters import DirichletCharacter, legendre_character, primitive_characters
from eisenlab.cyclotomic import CycNum
from eisenlab.eisenstein import (build_E_chi, build_E_MLchi, closed_form_E_chi,
                                 closed_form_E_MLchi, dirichlet_factorization_check,
                                 eigen_table_check, expected_eigenvalue, oldform_quadratic_check,
                                 sigma_chi, two_path_check)
from eisenlab.qexp import QExpansion, U, degeneracy, hecke

ONE = DirichletCharacter.trivial()
QUAD3 = primitive_characters(3)[0]


def _sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def test_sigma_chi_examples():
    for chi in primitive_characters(7):
        assert sigma_chi(chi, 1) == 1
    assert sigma_chi(ONE, 6) == 12
    assert sigma_chi(QUAD3, 2) == -3


def test_trivial_character_series():
    pv, E = build_E_chi(ONE, 30)
    assert E[0] == Fraction(-1, 24)
    assert E.rider == Fraction(1, 2)
    assert all(E[n] == _sigma(n) for n in range(1, 31))
    assert pv.expand(30) == E


@pytest.mark.parametrize("f", [3, 4, 5, 7, 8])
def test_normalised_and_two_paths(f):
    for chi in primitive_characters(f):
        pv, E = build_E_chi(chi, 60)
        assert E[1] == 1 and E[0] == 0 and E.is_holomorphic()
        assert pv.expand(60) == E


def test_quadratic_mod_3_second_coefficient():
    pv, E = build_E_chi(QUAD3, 5)
    assert E[2] == -3 and pv.expand(5)[2] == -3


def test_E_11():
    pv, E = build_E_MLchi(ONE, 11, 1, 40)
    assert E.level == 11 and E.is_holomorphic()
    assert E[0] == Fraction(5, 12) and E[1] == 1
    for n in range(1, 41):
        expected = _sigma(n) - (11 * _sigma(n // 11) if n % 11 == 0 else 0)
        assert E[n] == expected
    assert pv.rider() == 0
    assert pv.expand(40) == E


def test_M_equal_one_rejected():
    with pytest.raises(ValueError, match="M = 1"):
        build_E_MLchi(ONE, 1, 5, 10)
    with pytest.raises(ValueError):
        build_E_MLchi(QUAD3, 3, 1, 10)
    with pytest.raises(ValueError):
        build_E_MLchi(ONE, 9, 1, 10)


@pytest.mark.parametrize("chi,Mbar,Lbar", [(ONE, 3, 5), (ONE, 15, 7), (QUAD3, 5, 1),
                                           (QUAD3, 1, 5), (primitive_characters(5)[0], 3, 1)])
def test_two_path_ML(chi, Mbar, Lbar):
    assert two_path_check(chi, Mbar, Lbar, 80)


def test_T2_on_E11():
    E = closed_form_E_MLchi(ONE, 11, 1, 200)
    assert hecke(11, 2, E).truncate(100) == E.truncate(100).scaled(3)


def test_eigenvalue_cases():
    assert expected_eigenvalue(ONE, 3, 5, 2)[0] == "good"
    assert expected_eigenvalue(ONE, 3, 3, 3)[0] == "M_and_L"
    assert expected_eigenvalue(ONE, 3, 3, 3)[2] == 0
    assert expected_eigenvalue(ONE, 15, 5, 3)[0] == "M_only"
    case, _, lam = expected_eigenvalue(ONE, 3, 5, 5)
    assert case == "L_only" and lam == 5
    case, level, _ = expected_eigenvalue(ONE, 3, 1, 5, level=45)
    assert case == "good_at_series_level" and level == 3


def test_eigen_table_at_conductor_primes():
    # T_ell E_chi = 0 for ell | f
    for chi in primitive_characters(5):
        E = closed_form_E_chi(chi, 400)
        assert hecke(25, 5, E).truncate(80).is_zero()


@pytest.mark.parametrize("chi,Mbar,Lbar", [(ONE, 11, 1), (ONE, 3, 3), (ONE, 5, 3), (QUAD3, 1, 1),
                                           (QUAD3, 5, 1), (primitive_characters(5)[1], 1, 3)])
def test_eigen_table_check(chi, Mbar, Lbar):
    rep = eigen_table_check(chi, Mbar, Lbar, 30, 60)
    assert rep.passed, [c.to_json() for c in rep.checks if not c.passed]


def test_eigen_table_detects_wrong_series():
    E = closed_form_E_MLchi(ONE, 11, 1, 600)
    bad = E + QExpansion.from_coefficients(11, 600, {7: 1})
    rep = eigen_table_check(ONE, 11, 1, 20, 30, E=bad)
    assert not rep.passed
    assert 7 in [c.ell for c in rep.checks if not c.passed]


def test_oldform_on_eisenstein():
    E = closed_form_E_chi(QUAD3, 40 * 49)
    assert oldform_quadratic_check(E, 7, 40)


@settings(max_examples=15)
@given(st.lists(st.integers(-1000, 1000), min_size=30 * 25 + 1, max_size=30 * 25 + 1),
       st.sampled_from([1, 3, 5]))
def test_oldform_on_random_sequences(seq, level):
    g = QExpansion.from_sequence(level, seq)
    assert oldform_quadratic_check(g, 5, 30)


def test_oldform_detects_mismatch():
    g = QExpansion.from_sequence(1, list(range(200)))
    # prec too large for the data
    with pytest.raises(ValueError):
        oldform_quadratic_check(g, 5, 30)


def test_u_of_degeneracy():
    g = QExpansion.from_sequence(7, list(range(101)))
    assert U(7, degeneracy(7, g)).truncate(100) == g.truncate(100).with_level(49)


def test_dirichlet_factorization():
    assert dirichlet_factorization_check(ONE, 7, 1, DirichletCharacter.trivial(), 200)
    assert dirichlet_factorization_check(QUAD3, 1, 1, primitive_characters(5)[1], 300)
    assert dirichlet_factorization_check(ONE, 3, 5, legendre_character(7), 150)
    with pytest.raises(ValueError):
        dirichlet_factorization_check(ONE, 5, 1, primitive_characters(5)[0], 50)


def test_closed_form_values_in_character_field():
    chi = [c for c in primitive_characters(5) if c.order == 4][0]
    E = closed_form_E_chi(chi, 10)
    assert E[2] == chi(2).inverse() + chi(2) * 2
    assert E[6] == sigma_chi(chi, 6)
