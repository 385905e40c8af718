from math import gcd

import pytest

from eisenlab.cusps import (cusp_at_infinity, enumerate_cusps, make_cusp, orbit_oracle, psi,
                            width)


def test_small_levels():
    assert len(enumerate_cusps(1)) == 1
    assert [c.d for c in enumerate_cusps(11)] == [1, 11]
    c9 = enumerate_cusps(9)
    assert [(c.d, c.x) for c in c9] == [(1, 1), (3, 1), (3, 2), (9, 1)]


def test_widths_at_11_and_9():
    inf, zero = enumerate_cusps(11)   # d=1 is the class of infinity
    assert width(zero) == 11 and width(inf) == 1
    assert cusp_at_infinity(11) == inf
    assert all(width(c) == 1 for c in enumerate_cusps(9) if c.d == 3)


@pytest.mark.parametrize("N", [1, 2, 4, 9, 12, 25, 36, 45, 60, 72, 100, 121, 144])
def test_sigma_is_in_sl2_and_maps_infinity_to_cusp(N):
    for c in enumerate_cusps(N):
        (a, b), (cc, d) = c.sigma
        assert a * d - b * cc == 1
        assert cc == N // c.d and a == c.x


def test_representatives_coprime_to_level():
    # gcd(d, N/d) = 5 while 2 and 3 divide N, so x = r may not be coprime to N
    for c in enumerate_cusps(150):
        assert gcd(c.x, 150) == 1


@pytest.mark.parametrize("N", [1, 11, 45, 60, 98, 200])
def test_oracle_agrees(N):
    cusps = enumerate_cusps(N)
    res = orbit_oracle(N)
    assert res.count == len(cusps)
    assert sorted(res.labels) == sorted(c.label for c in cusps)
    assert len(set(res.labels.values())) == len(cusps)
    for c in cusps:
        assert res.orbit_sizes[res.labels[c.label]] == c.width
    assert sum(c.width for c in cusps) == psi(N)


def test_oracle_bound():
    with pytest.raises(ValueError):
        orbit_oracle(201)


def test_gamma1_widths():
    for c in enumerate_cusps(45):
        assert c.gamma1_width % c.width == 0


def test_field_of_definition():
    c = make_cusp(9, 3, 2)
    assert c.field_conductor == 3 and not c.is_rational
    assert make_cusp(9, 9, 1).is_rational
