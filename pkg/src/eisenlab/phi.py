"""Hecke's weight-two functions phi_x and their formal linear combinations.

phi_x (x in (Q/Z)^2) has the expansion

    1/2 B_2(x1) - P_x - P_{-x} - delta(x) * i/(2 pi (z - zbar)),
    P_x = sum_{k > 0, k = x1 mod 1} k sum_{m >= 1} exp(2 pi i m x2) q^(m k),

and g|alpha = det(alpha) (cz + d)^-2 g(alpha z).  The rider of phi_x is therefore
-delta(x), and slashing by diag(e, 1) multiplies the constant term by e.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .bernoulli import bernoulli2, frac_part
from .cyclotomic import CycNum, common_conductor, euler_phi, field
from .qexp import QExpansion, _as_object, scalar_matrix


def _canon(t) -> Fraction:
    return frac_part(Fraction(t))


@dataclass(frozen=True)
class PhiTerm:
    x1: Fraction
    x2: Fraction
    e: int
    coeff: CycNum

    @property
    def delta(self) -> int:
        return 1 if self.x1 == 0 and self.x2 == 0 else 0


class PhiVector:
    """sum of coeff * phi_x | diag(e, 1), with canonical term merging."""

    def __init__(self, terms: dict | None = None, level: int = 1, chi=None):
        self.level = level
        self.chi = chi
        self._terms: dict[tuple[Fraction, Fraction, int], CycNum] = {}
        for (x1, x2, e), c in (terms or {}).items():
            self._add_term(x1, x2, e, c)

    def _add_term(self, x1, x2, e, c):
        key = (_canon(x1), _canon(x2), int(e))
        c = c if isinstance(c, CycNum) else CycNum.rational(c)
        old = self._terms.get(key)
        new = c if old is None else old + c
        if new:
            self._terms[key] = new
        elif old is not None:
            del self._terms[key]

    @classmethod
    def phi(cls, x1, x2, e: int = 1, coeff=1, level: int = 1) -> PhiVector:
        return cls({(x1, x2, e): coeff}, level)

    def terms(self) -> list[PhiTerm]:
        return [PhiTerm(x1, x2, e, c) for (x1, x2, e), c in sorted(self._terms.items())]

    def __len__(self):
        return len(self._terms)

    @property
    def coefficient_field(self) -> int:
        return common_conductor(1, *(c.m for c in self._terms.values()))

    def _copy(self, level=None) -> PhiVector:
        out = PhiVector(level=self.level if level is None else level, chi=self.chi)
        out._terms = dict(self._terms)
        return out

    def __add__(self, other: PhiVector) -> PhiVector:
        out = self._copy(lcm(self.level, other.level))
        for (x1, x2, e), c in other._terms.items():
            out._add_term(x1, x2, e, c)
        return out

    def __neg__(self):
        out = self._copy()
        out._terms = {k: -c for k, c in self._terms.items()}
        return out

    def __sub__(self, other: PhiVector) -> PhiVector:
        return self + (-other)

    def __mul__(self, c) -> PhiVector:
        out = self._copy()
        out._terms = {}
        for (x1, x2, e), v in self._terms.items():
            out._add_term(x1, x2, e, v * c)
        return out

    __rmul__ = __mul__

    def gamma(self, p: int) -> PhiVector:
        """Slash by diag(p, 1): diag(e,1) becomes diag(ep,1)."""
        out = PhiVector(level=self.level * p, chi=self.chi)
        out._terms = {(x1, x2, e * p): c for (x1, x2, e), c in self._terms.items()}
        return out

    def rider(self) -> CycNum:
        total = CycNum.zero(self.coefficient_field)
        for (x1, x2, _), c in self._terms.items():
            if x1 == 0 and x2 == 0:
                total = total - c
        return total

    def constant_term(self) -> CycNum:
        total = CycNum.zero(self.coefficient_field)
        for (x1, _, e), c in self._terms.items():
            total = total + c * (Fraction(e, 2) * bernoulli2(x1))
        return total

    def expand(self, prec: int) -> QExpansion:
        return expand_phi_vector(self, prec)

    def __repr__(self):
        return f"PhiVector(level={self.level}, {len(self)} terms)"


def _hyperbola(X: int) -> tuple[np.ndarray, np.ndarray]:
    """All (K, m) with K, m >= 1 and K m <= X."""
    if X < 1:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    counts = X // np.arange(1, X + 1, dtype=np.int64)
    Ks = np.repeat(np.arange(1, X + 1, dtype=np.int64), counts)
    starts = np.cumsum(counts) - counts
    Ms = np.arange(Ks.size, dtype=np.int64) - np.repeat(starts, counts) + 1
    return Ks, Ms


_INT64_SAFE = 2 ** 62


def expand_phi_vector(vec: PhiVector, prec: int) -> QExpansion:
    """Vectorised expansion of a PhiVector to q-precision prec."""
    terms = vec.terms()
    mc = vec.coefficient_field
    if not terms:
        return QExpansion.zero(vec.level, prec, 1, mc)
    # every term splits into the P_y and P_{-y} halves
    halves = []
    for t in terms:
        for sgn in (1, -1):
            y1, y2 = _canon(sgn * t.x1), _canon(sgn * t.x2)
            halves.append((y1, y2, t.e, t.coeff))
    D = lcm(1, *((Fraction(e) * y1).denominator for y1, _, e, _ in halves))
    V = lcm(1, *(y1.denominator for y1, _, _, _ in halves))
    G = lcm(mc, *(y2.denominator for _, y2, _, _ in halves))
    mF = common_conductor(G)
    F = field(mF)
    nF = F.degree
    R = np.array([F.root_of_unity(j, G) for j in range(G)], dtype=np.int64)
    rows = prec * D + 1

    X = max(prec * y1.denominator // e for y1, _, e, _ in halves)
    Ks, Ms = _hyperbola(X)
    KM = Ks * Ms
    residues: dict[int, np.ndarray] = {}

    buckets: dict[tuple, list] = {}
    for h in halves:
        buckets.setdefault((h[3].m, h[3].coeffs), []).append(h)

    total = np.zeros((rows, nF), dtype=object)
    total_scale = 1
    parts = []
    for _, group in buckets.items():
        coeff = group[0][3]
        acc = np.zeros((rows, G), dtype=np.int64)
        wsum = 0
        for y1, y2, e, _ in group:
            v = y1.denominator
            u = y1.numerator
            if v not in residues:
                residues[v] = Ks % v
            mask = (residues[v] == u) & (KM <= prec * v // e)
            K, M = Ks[mask], Ms[mask]
            if K.size == 0:
                continue
            idx = (e * D // v) * K * M if (e * D) % v == 0 else (e * D * K * M) // v
            w = e * K * (V // v)
            ph = (M * (y2.numerator * (G // y2.denominator))) % G
            np.add.at(acc, (idx, ph), -w)
            wsum += int(w.sum())
        if wsum == 0:
            continue
        A, s = scalar_matrix(coeff.to_field(mF))
        amax = max(1, max(abs(int(a)) for a in A.ravel()))
        rmax = max(1, int(np.abs(R).max()))
        if wsum * rmax * G * amax * nF < _INT64_SAFE:
            part = (acc @ R) @ A.astype(np.int64)
            part = _as_object(part)
        else:
            part = _as_object(acc).dot(_as_object(R)).dot(A)
        parts.append((part, s))
    total_scale = lcm(1, *(s for _, s in parts)) * V
    for part, s in parts:
        total = total + part * (total_scale // (s * V))
    const = vec.constant_term().to_field(mF)
    cden = const.denominator()
    lcm_scale = lcm(total_scale, cden)
    total = total * (lcm_scale // total_scale)
    total[0] += np.array([int(c * lcm_scale) for c in const.coeffs], dtype=object)
    return QExpansion(vec.level, D, prec, mF, total, lcm_scale, vec.rider())


# --- direct (slow) expansions, used as an independent path -----------------

def _slash_upper(y1: Fraction, y2: Fraction, a: int, b: int, d: int, prec: int):
    """phi_y | (a b; 0 d) as {exponent: {phase: coefficient}} plus constant and rider."""
    series: dict[Fraction, dict[Fraction, Fraction]] = {}
    factor = Fraction(a, d)
    for sgn in (1, -1):
        z1, z2 = _canon(sgn * y1), _canon(sgn * y2)
        v = z1.denominator
        K = z1.numerator if z1.numerator else v
        while Fraction(K, v) * factor <= prec:
            k = Fraction(K, v)
            m = 1
            while m * k * factor <= prec:
                t = m * k * factor
                ph = _canon(m * z2 + m * k * Fraction(b, d))
                slot = series.setdefault(t, {})
                slot[ph] = slot.get(ph, 0) - factor * k
                m += 1
            K += v
    const = factor * bernoulli2(y1) / 2
    rider = -1 if (_canon(y1) == 0 and _canon(y2) == 0) else 0
    return series, const, rider


def _to_expansion(series, const, rider, prec, level=1) -> QExpansion:
    dens = [ph.denominator for slot in series.values() for ph in slot]
    m = common_conductor(1, *dens)
    coeffs = {}
    for t, slot in series.items():
        c = CycNum.zero(m)
        for ph, r in slot.items():
            if r:
                c = c + CycNum.root_of_unity(ph.numerator, ph.denominator, m) * r
        coeffs[t] = c
    coeffs[Fraction(0)] = coeffs.get(Fraction(0), CycNum.zero(m)) + const
    return QExpansion.from_coefficients(level, prec, coeffs, rider=CycNum.rational(rider, m), m=m)


def phi_expansion(x, prec: int) -> QExpansion:
    """Expansion of a single phi_x by direct summation."""
    x1, x2 = Fraction(x[0]), Fraction(x[1])
    return _to_expansion(*_slash_upper(x1, x2, 1, 0, 1, prec), prec)


def phi_slash_expansion(x, alpha, prec: int) -> QExpansion:
    """phi_x | alpha for an upper-triangular integral alpha of positive determinant."""
    (a, b), (c, d) = alpha
    if c != 0:
        raise ValueError("only upper-triangular matrices have expansions at infinity")
    if a * d <= 0:
        raise ValueError("determinant must be positive")
    if a < 0:
        a, b, d = -a, -b, -d   # weight two: alpha and -alpha act identically
    return _to_expansion(*_slash_upper(Fraction(x[0]), Fraction(x[1]), a, b, d, prec), prec)


def preimages(x, alpha) -> list[tuple[Fraction, Fraction]]:
    """All y in (Q/Z)^2 with y alpha = x, alpha upper triangular."""
    (a, b), (c, d) = alpha
    x1, x2 = Fraction(x[0]), Fraction(x[1])
    out = []
    for i in range(abs(a)):
        y1 = (x1 + i) / a
        for j in range(abs(d)):
            y2 = (x2 - b * y1 + j) / d
            out.append((_canon(y1), _canon(y2)))
    return sorted(set(out))


def _matmul2(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def phi_numeric(x, z, dps: int = 40):
    """Numerical value of phi_x at z (mpmath), including the non-holomorphic term."""
    import mpmath as mp

    with mp.workdps(dps):
        z = mp.mpc(z)
        x1, x2 = Fraction(x[0]), Fraction(x[1])
        eps = mp.mpf(10) ** (-dps)
        total = mp.mpf(bernoulli2(x1).numerator) / bernoulli2(x1).denominator / 2
        for sgn in (1, -1):
            z1, z2 = _canon(sgn * x1), _canon(sgn * x2)
            v = z1.denominator
            K = z1.numerator if z1.numerator else v
            while True:
                k = mp.mpf(K) / v
                w = mp.expj(2 * mp.pi * (k * z + mp.mpf(z2.numerator) / z2.denominator))
                term = k * w / (1 - w)
                total -= term
                if abs(w) * k < eps:
                    break
                K += v
        if _canon(x1) == 0 and _canon(x2) == 0:
            total -= 1j / (2 * mp.pi * (z - mp.conj(z)))
        return total


def _sl2_numeric_check(x, gamma, dps: int = 40) -> bool:
    import mpmath as mp

    (a, b), (c, d) = gamma
    x1, x2 = Fraction(x[0]), Fraction(x[1])
    y = (x1 * a + x2 * c, x1 * b + x2 * d)
    with mp.workdps(dps):
        tol = mp.mpf(10) ** (-(dps - 12))
        for t in (1, mp.mpf(3) / 2):
            z = mp.mpc(-mp.mpf(d) / c, t / abs(c))
            gz = (a * z + b) / (c * z + d)
            lhs = phi_numeric(x, gz, dps) / (c * z + d) ** 2
            rhs = phi_numeric(y, z, dps)
            if abs(lhs - rhs) > tol:
                return False
    return True


def distribution_check(x, alpha, prec: int) -> bool:
    """phi_x = sum over y alpha = x of phi_y | alpha.

    Upper-triangular alpha are compared as exact expansions to precision prec.
    For alpha in SL_2(Z) with nonzero lower-left entry there is no common
    expansion at infinity, so phi_x | alpha = phi_{x alpha} is compared numerically
    at two points where both sides converge quickly.
    """
    (a, b), (c, d) = alpha
    if a * d - b * c <= 0:
        raise ValueError("alpha must have positive determinant")
    if c != 0:
        if a * d - b * c != 1:
            raise ValueError("non-triangular alpha must lie in SL_2(Z)")
        return _sl2_numeric_check(x, alpha)
    lhs = phi_expansion(x, prec)
    rhs = None
    for y in preimages(x, alpha):
        term = phi_slash_expansion(y, alpha, prec)
        rhs = term if rhs is None else rhs + term
    return lhs == rhs
