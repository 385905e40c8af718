from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eisenlab.bernoulli import bernoulli2, gauss_sum, gen_bernoulli1
from eisenlab.characters import DirichletCharacter, primitive_characters
from eisenlab.cyclotomic import CycNum


def test_bernoulli2_values():
    assert bernoulli2(0) == Fraction(1, 6)
    assert bernoulli2(Fraction(1, 2)) == Fraction(-1, 12)
    assert bernoulli2(Fraction(7, 3)) == Fraction(-1, 18)


@given(st.fractions(max_denominator=50), st.integers(-10, 10))
def test_bernoulli2_periodic_and_even(t, k):
    assert bernoulli2(t + k) == bernoulli2(t)
    assert bernoulli2(-t) == bernoulli2(t)


@given(st.integers(1, 12), st.fractions(max_denominator=30))
def test_bernoulli2_distribution(n, t):
    # sum_{j<n} B2((t+j)/n) = B2(t)/n
    s = sum(bernoulli2((t + j) / n) for j in range(n))
    assert s == bernoulli2(t) / n


def test_gauss_sum_examples():
    assert gauss_sum(DirichletCharacter.trivial()) == 1
    quad3 = primitive_characters(3)[0]
    z = CycNum.root_of_unity(1, 3)
    assert gauss_sum(quad3) == 1 + 2 * z
    assert gauss_sum(quad3) == z - z * z


@pytest.mark.parametrize("f", [3, 4, 5, 7, 8, 9, 11, 12, 13, 15])
def test_gauss_sum_norm(f):
    for chi in primitive_characters(f):
        assert gauss_sum(chi) * gauss_sum(chi.conj()) == chi.parity() * f


def test_gauss_sum_rejects_imprimitive():
    with pytest.raises(ValueError):
        gauss_sum(primitive_characters(3)[0].induce(9))


def test_gen_bernoulli1():
    assert gen_bernoulli1(primitive_characters(3)[0]) == Fraction(-1, 3)
    assert gen_bernoulli1(primitive_characters(4)[0]) == Fraction(-1, 2)
    for chi in primitive_characters(5):
        if chi.is_even():
            assert gen_bernoulli1(chi) == 0
        else:
            assert gen_bernoulli1(chi) != 0
    with pytest.raises(ValueError):
        gen_bernoulli1(DirichletCharacter.trivial())
