"""Bernoulli polynomials, Gauss sums and first generalised Bernoulli numbers."""
from __future__ import annotations

from fractions import Fraction
from math import floor, lcm

from .characters import DirichletCharacter
from .cyclotomic import CycNum, natural_conductor


def frac_part(t) -> Fraction:
    t = Fraction(t)
    return t - floor(t)


def bernoulli2(t) -> Fraction:
    """B_2 of the fractional part of t."""
    x = frac_part(t)
    return x * x - x + Fraction(1, 6)


def gauss_sum(chi: DirichletCharacter, m: int | None = None) -> CycNum:
    """sum_t chi(t) exp(2 pi i t / f) for a primitive character of modulus f."""
    if not chi.is_primitive():
        raise ValueError("Gauss sum requires a primitive character")
    f = chi.modulus
    m = natural_conductor(lcm(f, chi.order) if m is None else m)
    total = CycNum.zero(m)
    for t in range(f):
        k = chi.exponent(t)
        if k is None:
            continue
        # chi(t) * zeta_f^t = exp(2 pi i (k/ord + t/f))
        ph = Fraction(k, chi.order) + Fraction(t, f)
        total = total + CycNum.root_of_unity(ph.numerator, ph.denominator, m)
    return total


def gen_bernoulli1(chi: DirichletCharacter, m: int | None = None) -> CycNum:
    """B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a for non-trivial primitive chi."""
    if chi.is_trivial():
        raise ValueError("B_1 of the trivial character is not defined here")
    if not chi.is_primitive():
        raise ValueError("generalised Bernoulli number requires a primitive character")
    f = chi.modulus
    m = chi.field_conductor if m is None else m
    coeffs: dict[int, int] = {}
    for a in range(1, f + 1):
        k = chi.exponent(a)
        if k is not None:
            coeffs[k] = coeffs.get(k, 0) + a
    total = CycNum.zero(m)
    for k, c in coeffs.items():
        total = total + CycNum.root_of_unity(k, chi.order, m) * c
    return total / f
