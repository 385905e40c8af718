from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from eisenlab.characters import DirichletCharacter, primitive_characters
from eisenlab.congruence import (congruence_check, format_poly, parse_eigen_table,
                                 parse_poly, read_eigen_table, table_from_series,
                                 write_eigen_table)

FIXTURES = Path(__file__).parent / "fixtures"
ONE = DirichletCharacter.trivial()


def test_parse_poly():
    assert parse_poly("x^2-x-1") == [-1, -1, 1]
    assert parse_poly("x") == [0, 1]
    assert parse_poly("3*x^3 + 2") == [2, 0, 0, 3]
    assert parse_poly("-7") == [-7]
    for bad in ("", "x^", "2x*", "x+-", "y^2"):
        with pytest.raises(ValueError):
            parse_poly(bad)


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6))
def test_poly_round_trip(coeffs):
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    assert parse_poly(format_poly(coeffs)) == coeffs


def _eta_product_coefficients(bound):
    """q prod (1-q^n)^2 (1-q^{11n})^2."""
    c = [0] * (bound + 1)
    c[0] = 1
    for step in (1, 11):
        for n in range(1, bound // step + 1):
            for _ in range(2):
                for i in range(bound, step * n - 1, -1):
                    c[i] -= c[i - step * n]
    return [0] + c[:bound]


def test_level11_fixture_matches_eta_product():
    table = read_eigen_table(str(FIXTURES / "level11.csv"))
    a = _eta_product_coefficients(100)
    assert not table.diagnostics
    assert [r.ell for r in table.rows][:5] == [2, 3, 5, 7, 11]
    for row in table.rows:
        assert row.coeffs == (a[row.ell],) or (row.coeffs == () and a[row.ell] == 0)


def test_level11_passes():
    rep = congruence_check(read_eigen_table(str(FIXTURES / "level11.csv")), ONE, 5, 11)
    assert rep.passed
    cases = {r["ell"]: r["case"] for r in rep.rows}
    assert cases[5] == "ell=q" and cases[11] == "p||N" and cases[2] == "good"


def test_corrupted_row_flagged():
    rep = congruence_check(read_eigen_table(str(FIXTURES / "level11_corrupt.csv")), ONE, 5, 11)
    assert not rep.passed
    assert rep.failed_primes() == [7]


def test_other_primes_do_not_see_the_congruence():
    rep = congruence_check(read_eigen_table(str(FIXTURES / "level11.csv")), ONE, 7, 11)
    assert not rep.passed


def test_empty_table_vacuous_pass():
    rep = congruence_check(parse_eigen_table("ell,coeff0,minpoly\n"), ONE, 5, 11)
    assert rep.passed and rep.warnings


def test_malformed_rows():
    text = "\n".join(["ell,coeff0,coeff1,minpoly", "2,1,0,x^2+1", "4,1,0,x^2+1", "3,1,x^2+1",
                      "2,0,1,x^2+1", "5,1,1,2*x^2-1", "7,1,1,x^2-3", "11,a,0,x^2+1",
                      "13,0,0,0,x^2+1"])
    table = parse_eigen_table(text)
    assert [r.ell for r in table.rows] == [2]
    assert [d["line"] for d in table.diagnostics] == [3, 4, 5, 6, 7, 8, 9]
    rep = congruence_check(table, ONE, 5, 11)
    assert not rep.passed


def test_generator_without_root_mod_q():
    table = parse_eigen_table("ell,coeff0,coeff1,minpoly\n2,3,0,x^2-2\n")
    with pytest.raises(ValueError, match="no root"):
        congruence_check(table, ONE, 5, 11)


def test_bad_header():
    with pytest.raises(ValueError):
        parse_eigen_table("p,a,minpoly\n2,1,x\n")


def test_rejects_bad_q():
    table = read_eigen_table(str(FIXTURES / "level11.csv"))
    for q in (4, 2, 3, 11):
        with pytest.raises(ValueError):
            congruence_check(table, ONE, q, 11)
    chi4 = [c for c in primitive_characters(5) if c.order == 4][0]
    with pytest.raises(ValueError):
        congruence_check(table, chi4, 7, 11)


@pytest.mark.parametrize("chi,Mbar,Lbar,q,N", [
    (ONE, 11, 1, 5, 11),
    (primitive_characters(3)[0], 5, 1, 7, 45),
    ([c for c in primitive_characters(5) if c.order == 4][0], 1, 3, 13, 75),
])
def test_self_test_mode(tmp_path, chi, Mbar, Lbar, q, N):
    table = table_from_series(chi, Mbar, Lbar, 40)
    path = tmp_path / "t.csv"
    write_eigen_table(table, str(path))
    rep = congruence_check(read_eigen_table(str(path)), chi, q, N)
    bad = [r for r in rep.rows if not r["passed"]]
    # the series itself satisfies every congruence away from the conductor
    assert all(r["ell"] % chi.modulus == 0 for r in bad)
