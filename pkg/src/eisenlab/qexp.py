"""Truncated q-expansions with exact cyclotomic coefficients.

A QExpansion stores coefficients of q^(i/D) for i = 0..B*D as integer rows in
the power basis of Q(zeta_m), all over one common positive denominator.  The
term i/(2 pi (z - zbar)) that appears in weight-two Eisenstein series is kept
as a separate scalar (the "rider").
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .characters import DirichletCharacter
from .cyclotomic import CycNum, common_conductor, euler_phi, field, natural_conductor


class InsufficientPrecision(ValueError):
    pass


def _obj_zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def _as_object(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return a
    return np.array(a.tolist(), dtype=object).reshape(a.shape)


def scalar_matrix(c: CycNum) -> tuple[np.ndarray, int]:
    """Integer matrix A and denominator s with (row vector v) -> v @ A / s = v * c."""
    rows = c.multiplication_matrix()
    s = lcm(1, *(x.denominator for r in rows for x in r))
    A = np.array([[int(x * s) for x in r] for r in rows], dtype=object)
    return A, s


def embedding_matrix(m_from: int, m_to: int) -> np.ndarray:
    return np.array(field(m_to).embedding(m_from), dtype=object)


class QExpansion:
    __slots__ = ("level", "den", "prec", "m", "num", "scale", "rider")

    def __init__(self, level: int, den: int, prec: int, m: int, num: np.ndarray,
                 scale: int = 1, rider: CycNum | None = None, *, normalize: bool = True):
        m = natural_conductor(m)
        if num.shape != (prec * den + 1, euler_phi(m)):
            raise ValueError(f"coefficient array has shape {num.shape}")
        if scale <= 0:
            raise ValueError("scale must be positive")
        self.level = level
        self.den = den
        self.prec = prec
        self.m = m
        self.num = _as_object(num)
        self.scale = int(scale)
        self.rider = CycNum.zero(m) if rider is None else rider.to_field(m)
        if normalize:
            self._normalize()

    def _normalize(self):
        g = gcd(int(np.gcd.reduce(self.num.ravel())) if self.num.size else 0, self.scale)
        if g > 1:
            self.num = self.num // g
            self.scale //= g

    # construction
    @classmethod
    def from_coefficients(cls, level: int, prec: int, coeffs: dict, rider: CycNum | None = None,
                          den: int | None = None, m: int | None = None) -> QExpansion:
        """Build from {exponent: CycNum or rational}; exponents may be fractions."""
        items = [(Fraction(t), c if isinstance(c, CycNum) else CycNum.rational(c))
                 for t, c in coeffs.items()]
        if den is None:
            den = lcm(1, *(t.denominator for t, _ in items))
        if m is None:
            m = common_conductor(1, *(c.m for _, c in items),
                                 *([rider.m] if rider is not None else []))
        items = [(t, c.to_field(m)) for t, c in items if t <= prec]
        s = lcm(1, *(x.denominator for _, c in items for x in c.coeffs))
        num = _obj_zeros(prec * den + 1, euler_phi(m))
        for t, c in items:
            i = t * den
            if i.denominator != 1 or i < 0:
                raise ValueError(f"exponent {t} not on the 1/{den} grid")
            num[int(i)] += np.array([int(x * s) for x in c.coeffs], dtype=object)
        return cls(level, den, prec, m, num, s, rider)

    @classmethod
    def zero(cls, level: int, prec: int, den: int = 1, m: int = 1) -> QExpansion:
        return cls(level, den, prec, m, _obj_zeros(prec * den + 1, euler_phi(natural_conductor(m))))

    @classmethod
    def from_sequence(cls, level: int, seq, m: int = 1) -> QExpansion:
        """Integer-exponent expansion from a list of rationals a_0, a_1, ..."""
        return cls.from_coefficients(level, len(seq) - 1, dict(enumerate(seq)), m=m)

    # coercions
    def to_field(self, m: int) -> QExpansion:
        m = natural_conductor(m)
        if m == self.m:
            return self
        num = self.num.dot(embedding_matrix(self.m, m))
        return QExpansion(self.level, self.den, self.prec, m, num, self.scale,
                          self.rider.to_field(m), normalize=False)

    def regrid(self, den: int) -> QExpansion:
        if den == self.den:
            return self
        if den % self.den:
            raise ValueError("new denominator must be a multiple of the old one")
        k = den // self.den
        num = _obj_zeros(self.prec * den + 1, self.num.shape[1])
        num[::k] = self.num
        return QExpansion(self.level, den, self.prec, self.m, num, self.scale, self.rider,
                          normalize=False)

    def truncate(self, prec: int) -> QExpansion:
        if prec > self.prec:
            raise InsufficientPrecision(f"cannot extend precision {self.prec} to {prec}")
        if prec == self.prec:
            return self
        return QExpansion(self.level, self.den, prec, self.m,
                          self.num[: prec * self.den + 1].copy(), self.scale, self.rider)

    def with_level(self, level: int) -> QExpansion:
        return QExpansion(level, self.den, self.prec, self.m,
                          self.num, self.scale, self.rider, normalize=False)

    def _aligned(self, other: QExpansion):
        m = common_conductor(self.m, other.m)
        den = lcm(self.den, other.den)
        prec = min(self.prec, other.prec)
        a = self.to_field(m).regrid(den).truncate(prec)
        b = other.to_field(m).regrid(den).truncate(prec)
        return a, b

    # linear structure
    def _combine(self, other: QExpansion, sign: int) -> QExpansion:
        a, b = self._aligned(other)
        num = a.num * b.scale + sign * b.num * a.scale
        rider = a.rider + b.rider * sign
        return QExpansion(lcm(a.level, b.level), a.den, a.prec, a.m, num,
                          a.scale * b.scale, rider)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return QExpansion(self.level, self.den, self.prec, self.m, -self.num, self.scale,
                          -self.rider, normalize=False)

    def scaled(self, c) -> QExpansion:
        if not isinstance(c, CycNum):
            c = Fraction(c)
            num = self.num * c.numerator
            return QExpansion(self.level, self.den, self.prec, self.m, num,
                              self.scale * c.denominator, self.rider * c)
        m = common_conductor(self.m, c.m)
        g = self.to_field(m)
        A, s = scalar_matrix(c.to_field(m))
        return QExpansion(self.level, self.den, self.prec, m, g.num.dot(A), g.scale * s,
                          g.rider * c)

    def __mul__(self, c):
        return self.scaled(c)

    __rmul__ = __mul__

    # inspection
    def coefficient(self, t) -> CycNum:
        i = Fraction(t) * self.den
        if i.denominator != 1:
            return CycNum.zero(self.m)
        i = int(i)
        if not 0 <= i < self.num.shape[0]:
            raise InsufficientPrecision(f"exponent {t} beyond precision {self.prec}")
        return CycNum(self.m, tuple(Fraction(int(v), self.scale) for v in self.num[i]))

    def __getitem__(self, n) -> CycNum:
        return self.coefficient(n)

    def support(self) -> list[Fraction]:
        rows = np.nonzero(np.any(self.num != 0, axis=1))[0]
        return [Fraction(int(i), self.den) for i in rows]

    def is_zero(self) -> bool:
        return not np.any(self.num != 0) and not self.rider

    def is_holomorphic(self) -> bool:
        return not self.rider

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        terms = []
        for t in self.support()[:6]:
            terms.append(f"({self.coefficient(t)})q^{t}")
        more = " + ..." if len(self.support()) > 6 else ""
        return (f"QExpansion(level={self.level}, D={self.den}, prec={self.prec}, m={self.m}: "
                + " + ".join(terms) + more + f"; rider={self.rider})")

    def to_json(self) -> dict:
        coeffs = []
        for i in np.nonzero(np.any(self.num != 0, axis=1))[0]:
            t = Fraction(int(i), self.den)
            c = self.coefficient(t)
            coeffs.append([t.numerator, t.denominator] + [str(x) for x in c.coeffs])
        return {"level": self.level, "denominator": self.den, "precision": self.prec,
                "field": self.m, "coefficients": coeffs,
                "nonholomorphic": [str(x) for x in self.rider.coeffs]}


# operators

def gamma_p(g, p: int):
    """g -> p * g(pz), i.e. the slash action of diag(p, 1)."""
    if hasattr(g, "gamma"):
        return g.gamma(p)
    num = _obj_zeros(g.prec * p * g.den + 1, g.num.shape[1])
    num[::p] = g.num * p
    return QExpansion(g.level * p, g.den, g.prec * p, g.m, num, g.scale, g.rider)


def degeneracy(d: int, g: QExpansion) -> QExpansion:
    """g(z) -> g(dz)."""
    if d < 1:
        raise ValueError("degeneracy index must be positive")
    if d == 1:
        return g
    num = _obj_zeros(g.prec * d * g.den + 1, g.num.shape[1])
    num[::d] = g.num
    return QExpansion(g.level * d, g.den, g.prec * d, g.m, num, g.scale, g.rider / d)


def _check_plus_minus(chi: DirichletCharacter, p: int):
    if chi.modulus % p == 0:
        raise ValueError(f"p={p} divides the conductor {chi.modulus}")


def op_plus(chi: DirichletCharacter, p: int, g):
    """1 - chi(p) gamma_p."""
    _check_plus_minus(chi, p)
    return g - gamma_p(g, p) * chi(p)


def op_minus(chi: DirichletCharacter, p: int, g):
    """1 - gamma_p / (p chi(p))."""
    _check_plus_minus(chi, p)
    return g - gamma_p(g, p) * (chi(p).inverse() / p)


def hecke(N: int, ell: int, g: QExpansion, min_prec: int = 1) -> QExpansion:
    """T_ell at level N (U_ell when ell | N) on an integral-exponent expansion."""
    if g.den != 1:
        raise ValueError("Hecke operators need integral exponents")
    if N % g.level:
        raise ValueError(f"expansion of level {g.level} is not of level dividing {N}")
    out_prec = g.prec // ell
    if out_prec < min_prec:
        raise InsufficientPrecision(
            f"T_{ell} of a precision-{g.prec} expansion keeps only {out_prec} coefficients")
    num = g.num[: ell * out_prec + 1: ell].copy()
    if N % ell:
        num[::ell] += ell * g.num[: out_prec // ell + 1]
        rider = g.rider * (ell + 1)
    else:
        rider = g.rider * ell
    return QExpansion(N, 1, out_prec, g.m, num, g.scale, rider)


def U(p: int, g: QExpansion) -> QExpansion:
    return hecke(g.level if g.level % p == 0 else g.level * p, p, g)
