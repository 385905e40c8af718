"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, z, ..., z^(phi(m)-1) where z is a
primitive m-th root of unity, reduced modulo the m-th cyclotomic polynomial.
The conductor is always normalised so that m is not 2 mod 4 (Q(zeta_2m) equals
Q(zeta_m) for odd m), which makes equality a plain tuple comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

from ._linalg import solve_rational


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


def natural_conductor(m: int) -> int:
    """Smallest m' with Q(zeta_m') = Q(zeta_m)."""
    if m <= 0:
        raise ValueError("conductor must be positive")
    return m // 2 if m % 4 == 2 else m


def common_conductor(*ms: int) -> int:
    return natural_conductor(lcm(1, *ms))


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            q[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicField:
    """Shared tables for one Q(zeta_m); use :func:`field` to get a cached instance."""

    def __init__(self, m: int):
        if natural_conductor(m) != m:
            raise ValueError(f"{m} is not a normalised conductor")
        self.m = m
        self.degree = euler_phi(m)
        phi_poly = cyclotomic_polynomial(m)
        n = self.degree
        # powers[j] = z^j in the power basis, j = 0..m-1
        powers = []
        cur = [1] + [0] * (n - 1)
        for _ in range(m):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(n):
                    cur[i] -= top * phi_poly[i]
        self.powers: tuple[tuple[int, ...], ...] = tuple(powers)

    def __repr__(self):
        return f"CyclotomicField({self.m})"

    def root_of_unity(self, k: int, n: int) -> tuple[int, ...]:
        """Power-basis vector of exp(2 pi i k / n), if it lies in this field."""
        m = self.m
        if m % n == 0:
            return self.powers[(k * (m // n)) % m]
        if m % 2 == 1 and (2 * m) % n == 0:
            # zeta_2m = -zeta_m^((m+1)/2)
            j = (k * (2 * m // n)) % (2 * m)
            vec = self.powers[(j * ((m + 1) // 2)) % m]
            return tuple(-c for c in vec) if j % 2 else vec
        raise ValueError(f"exp(2 pi i/{n}) is not in Q(zeta_{m})")

    @lru_cache(maxsize=None)
    def embedding(self, m_from: int) -> tuple[tuple[int, ...], ...]:
        """Images of zeta_{m_from}^i, i < phi(m_from), in this field."""
        if self.m % m_from:
            raise ValueError(f"Q(zeta_{m_from}) is not a subfield of Q(zeta_{self.m})")
        step = self.m // m_from
        return tuple(self.powers[i * step] for i in range(euler_phi(m_from)))


@lru_cache(maxsize=None)
def field(m: int) -> CyclotomicField:
    return CyclotomicField(natural_conductor(m))


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class CycNum:
    """An element of Q(zeta_m) with rational power-basis coordinates."""

    m: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if natural_conductor(self.m) != self.m:
            raise ValueError("CycNum conductor must be normalised; use CycNum.make")
        if len(self.coeffs) != euler_phi(self.m):
            raise ValueError("coefficient vector has the wrong length")

    # construction
    @classmethod
    def make(cls, m: int, coeffs) -> CycNum:
        m0 = natural_conductor(m)
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if m0 != m:
            # Q(zeta_2k) = Q(zeta_k) for odd k: reinterpret the basis
            if len(coeffs) != euler_phi(m):
                raise ValueError("coefficient vector has the wrong length")
            F = field(m0)
            out = [Fraction(0)] * F.degree
            for i, c in enumerate(coeffs):
                if c:
                    for j, v in enumerate(F.root_of_unity(i, m)):
                        if v:
                            out[j] += c * v
            return cls(m0, tuple(out))
        return cls(m, coeffs)

    @classmethod
    def zero(cls, m: int = 1) -> CycNum:
        m = natural_conductor(m)
        return cls(m, (Fraction(0),) * euler_phi(m))

    @classmethod
    def rational(cls, r, m: int = 1) -> CycNum:
        m = natural_conductor(m)
        return cls(m, (_as_fraction(r),) + (Fraction(0),) * (euler_phi(m) - 1))

    @classmethod
    def one(cls, m: int = 1) -> CycNum:
        return cls.rational(1, m)

    @classmethod
    def root_of_unity(cls, k: int, n: int, m: int | None = None) -> CycNum:
        """exp(2 pi i k/n), placed in Q(zeta_m) (default: the smallest field)."""
        m = natural_conductor(n if m is None else m)
        vec = field(m).root_of_unity(k, n)
        return cls(m, tuple(Fraction(v) for v in vec))

    # coercion
    def to_field(self, m: int) -> CycNum:
        m = natural_conductor(m)
        if m == self.m:
            return self
        F = field(m)
        emb = F.embedding(self.m)
        out = [Fraction(0)] * F.degree
        for c, vec in zip(self.coeffs, emb):
            if c:
                for j, v in enumerate(vec):
                    if v:
                        out[j] += c * v
        return CycNum(m, tuple(out))

    def descend(self, n: int) -> CycNum:
        """Rewrite in the subfield Q(zeta_n); ValueError if not contained there."""
        n = natural_conductor(n)
        if n == self.m:
            return self
        if self.m % n:
            raise ValueError(f"Q(zeta_{n}) is not a subfield of Q(zeta_{self.m})")
        emb = field(self.m).embedding(n)
        k = len(emb)
        rows = [[Fraction(emb[j][i]) for j in range(k)] for i in range(len(self.coeffs))]
        sol = solve_rational(rows, list(self.coeffs))
        if sol is None:
            raise ValueError(f"element does not lie in Q(zeta_{n})")
        return CycNum(n, tuple(sol))

    def minimal_conductor(self) -> int:
        """Smallest normalised m' such that this element lies in Q(zeta_m')."""
        for d in sorted(d for d in range(1, self.m + 1) if self.m % d == 0):
            if natural_conductor(d) != d:
                continue
            try:
                self.descend(d)
                return d
            except ValueError:
                continue
        return self.m

    def _lift(self, other) -> tuple[CycNum, CycNum]:
        if not isinstance(other, CycNum):
            if isinstance(other, (int, Rational)):
                other = CycNum.rational(other, self.m)
            else:
                return NotImplemented, NotImplemented
        if other.m == self.m:
            return self, other
        m = common_conductor(self.m, other.m)
        return self.to_field(m), other.to_field(m)

    # ring operations
    def __add__(self, other):
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.m, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNum):
            r = _as_fraction(other)
            return CycNum(self.m, tuple(x * r for x in self.coeffs))
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        F = field(a.m)
        n = F.degree
        if n == 1:
            return CycNum(a.m, (a.coeffs[0] * b.coeffs[0],))
        conv = [Fraction(0)] * (2 * n - 1)
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bnz:
                    conv[i + j] += x * y
        out = list(conv[:n])
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                for j, v in enumerate(F.powers[k % F.m]):
                    if v:
                        out[j] += c * v
        return CycNum(a.m, tuple(out))

    __rmul__ = __mul__

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Row i holds the coordinates of z^i * self."""
        F = field(self.m)
        rows = []
        for i in range(F.degree):
            rows.append(list((CycNum(self.m, tuple(Fraction(v) for v in F.powers[i])) * self).coeffs))
        return rows

    def inverse(self) -> CycNum:
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = len(self.coeffs)
        if n == 1:
            return CycNum(self.m, (1 / self.coeffs[0],))
        mat = self.multiplication_matrix()
        # x * self = 1, with x = sum x_i z^i:  sum_i x_i mat[i] = e_0
        cols = [[mat[i][j] for i in range(n)] for j in range(n)]
        sol = solve_rational(cols, [Fraction(1)] + [Fraction(0)] * (n - 1))
        return CycNum(self.m, tuple(sol))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNum):
            r = _as_fraction(other)
            return CycNum(self.m, tuple(x / r for x in self.coeffs))
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNum):
            other = CycNum.rational(other, self.m)
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.m == other.m:
            return self.coeffs == other.coeffs
        a, b = self._lift(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # hash on the minimal field so that equal elements hash equally
        c = self.descend(self.minimal_conductor()) if self.m > 1 else self
        return hash((c.m, c.coeffs))

    # Galois action
    def galois(self, a: int) -> CycNum:
        """Apply the automorphism z -> z^a (a coprime to m)."""
        m = self.m
        if gcd(a, m) != 1:
            raise ValueError(f"{a} is not a unit modulo {m}")
        F = field(m)
        out = [Fraction(0)] * F.degree
        for i, c in enumerate(self.coeffs):
            if c:
                for j, v in enumerate(F.powers[(a * i) % m]):
                    if v:
                        out[j] += c * v
        return CycNum(m, tuple(out))

    def conjugate(self) -> CycNum:
        return self.galois(-1)

    # inspection
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def denominator(self) -> int:
        return lcm(1, *(c.denominator for c in self.coeffs))

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> CycNum:
        return cls(int(data["m"]), tuple(Fraction(c) for c in data["coeffs"]))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                if not mon:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{c}*{mon}")
        body = " + ".join(terms) if terms else "0"
        return f"CycNum[{self.m}]({body})"
