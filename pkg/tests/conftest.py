from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from eisenlab.cyclotomic import CycNum, euler_phi

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 15]

small_fraction = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cycnums(draw, m=None):
    if m is None:
        m = draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(small_fraction, min_size=euler_phi(m), max_size=euler_phi(m)))
    return CycNum.make(m, coeffs)


def frac(a, b=1):
    return Fraction(a, b)
