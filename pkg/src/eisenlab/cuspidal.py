"""Constant terms at cusps, residue divisors, and cuspidal group orders."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .bernoulli import bernoulli2, gauss_sum, gen_bernoulli1
from .characters import DirichletCharacter, EtaCharacter
from .cusps import Cusp, enumerate_cusps
from .cyclotomic import CycNum, common_conductor, euler_phi, factorize
from .eisenstein import E_MLchi_phi, prime_divisors
from .lattice import Lattice, lattice_index, relative_index
from .phi import PhiVector


class NonHolomorphicError(ValueError):
    """The aggregated i/(z - zbar) coefficient at a cusp is nonzero."""


def hermite_factor(e: int, sigma) -> tuple[tuple, tuple]:
    """Write diag(e,1) sigma = gamma (A B; 0 D) with gamma in SL_2(Z), D > 0, 0 <= B < D."""
    (x, u), (c, v) = sigma
    a0, b0, c0, d0 = e * x, e * u, c, v
    A = gcd(a0, c0)
    p, r = a0 // A, c0 // A
    # complete (p, r) to an SL_2(Z) matrix (p s; r t)
    g, s_, t_ = _xgcd(p, r)
    s, t = -t_, s_          # p*s_ + r*t_ = 1  ->  p*t - s*r = 1
    D = e // A
    # gamma^-1 = (t -s; -r p)
    B = t * b0 - s * d0
    k = B // D
    B -= k * D
    s, t = s + k * p, t + k * r
    gamma = ((p, s), (r, t))
    upper = ((A, B), (0, D))
    return gamma, upper


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def constant_term(E: PhiVector, c: Cusp) -> CycNum:
    """Constant term of E | sigma_c."""
    if c.level % E.level:
        raise ValueError(f"series level {E.level} does not divide cusp level {c.level}")
    total = CycNum.zero(E.coefficient_field)
    rider = CycNum.zero(E.coefficient_field)
    for t in E.terms():
        gamma, ((A, _), (_, D)) = hermite_factor(t.e, c.sigma)
        w1 = t.x1 * gamma[0][0] + t.x2 * gamma[1][0]
        total = total + t.coeff * (Fraction(A, D) * bernoulli2(w1) / 2)
        if t.delta:
            rider = rider - t.coeff
    if rider:
        raise NonHolomorphicError(f"non-holomorphic term {rider} at {c}")
    return total


def n_chi(chi: DirichletCharacter) -> CycNum:
    """-(f/(4 g(chi))) sum_{a,b mod f} chi(a) chi(b) B_2((a+b)/f)."""
    f = chi.modulus
    mc = common_conductor(f, chi.order)
    inv_g = gauss_sum(chi.conj(), mc) * Fraction(chi.parity(), f)
    sums: dict[int, Fraction] = {}
    for a in range(f):
        ka = chi.exponent(a)
        if ka is None:
            continue
        for b in range(f):
            kb = chi.exponent(b)
            if kb is None:
                continue
            k = (ka + kb) % chi.order
            sums[k] = sums.get(k, Fraction(0)) + bernoulli2(Fraction(a + b, f))
    total = CycNum.zero(mc)
    for k, s in sums.items():
        total = total + CycNum.root_of_unity(k, chi.order, mc) * s
    return total * inv_g * Fraction(-f, 4)


@dataclass(frozen=True)
class CuspDivisor:
    level: int
    entries: tuple[tuple[Cusp, CycNum], ...]

    def total(self) -> CycNum:
        out = CycNum.zero()
        for _, v in self.entries:
            out = out + v
        return out

    def __getitem__(self, cusp: Cusp) -> CycNum:
        for c, v in self.entries:
            if c == cusp:
                return v
        raise KeyError(cusp)

    def support(self) -> list[Cusp]:
        return [c for c, v in self.entries if v]

    def to_json(self) -> list[dict]:
        return [{"d": c.d, "x": c.x, "width": c.width, "coefficient": v.to_json()}
                for c, v in self.entries]


def delta_divisor(E: PhiVector, N: int, gamma1: bool = False) -> CuspDivisor:
    """sum over cusps of width * constant term; gamma1 selects Gamma_1(N) widths."""
    entries = []
    for c in enumerate_cusps(N):
        h = c.gamma1_width if gamma1 else c.width
        entries.append((c, constant_term(E, c) * h))
    return CuspDivisor(N, tuple(entries))


def bad_primes(N: int) -> frozenset[int]:
    return frozenset(factorize(6 * N))


def _normalizer(chi: DirichletCharacter, m: int) -> CycNum:
    """1 / g(chi^-1) = chi(-1) g(chi) / f."""
    return gauss_sum(chi, m) * Fraction(chi.parity(), chi.modulus)


def normalized_coordinates(values, chi: DirichletCharacter) -> list[CycNum]:
    """Divide by g(chi^-1) and rewrite in Q(chi) = Q(zeta_ord chi)."""
    m = common_conductor(chi.modulus, chi.order, *(v.m for v in values))
    k = _normalizer(chi, m)
    n = chi.field_conductor
    out = []
    for v in values:
        try:
            out.append((v * k).descend(n))
        except ValueError:
            raise ArithmeticError(
                f"{v} / g(chi^-1) does not lie in Q(zeta_{n}); Gauss-sum normalisation failed")
    return out


def _module_lattice(elems: list[CycNum], n: int, primes) -> Lattice:
    """Z[zeta_n]-span of elems as a Z-lattice in the power basis."""
    rank = euler_phi(n)
    gens = []
    for v in elems:
        if not v:
            continue
        for j in range(rank):
            gens.append((v * CycNum.root_of_unity(j, n, n)).to_field(n).coeffs)
    return Lattice.make(rank, gens, primes)


@dataclass(frozen=True)
class CuspidalOrder:
    order: int
    generators: tuple[CycNum, ...]     # delta coefficients divided by g(chi^-1)
    rank: int

    @property
    def eisenstein_primes(self) -> list[int]:
        return sorted(factorize(self.order)) if self.order > 1 else []


def cuspidal_order(E: PhiVector, N: int) -> CuspidalOrder:
    chi = E.chi if E.chi is not None else DirichletCharacter.trivial()
    div = delta_divisor(E, N)
    gens = normalized_coordinates([v for _, v in div.entries], chi)
    n = chi.field_conductor
    lat = _module_lattice(gens, n, bad_primes(N))
    return CuspidalOrder(lattice_index(lat, euler_phi(n)), tuple(gens), euler_phi(n))


def period_order(chi: DirichletCharacter, Mbar: int, Lbar: int, N: int) -> int:
    """[P : R] away from 6N, P = (g(chi^-1)/L) Z[chi] + R, R from Gamma_1(N) residues."""
    E = E_MLchi_phi(chi, Mbar, Lbar)
    div = delta_divisor(E, N, gamma1=True)
    gens = normalized_coordinates([v for _, v in div.entries], chi)
    n = chi.field_conductor
    primes = bad_primes(N)
    R = _module_lattice(gens, n, primes)
    L = chi.modulus * Lbar
    P = _module_lattice([CycNum.rational(Fraction(1, L), n)], n, primes) + R
    return relative_index(R, P)


# --- the closed formula for Lambda_pm --------------------------------------

def eta_tilde(chi: DirichletCharacter, eta: EtaCharacter) -> DirichletCharacter:
    return eta.eta if (chi * eta.eta).parity() == -1 else eta.twist


def lambda_pm(chi: DirichletCharacter, Mbar: int, Lbar: int, eta: EtaCharacter, sign: int,
              N: int | None = None) -> CycNum:
    """Closed finite formula for Lambda_pm(E_{M,L,chi}, eta, 1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    level = chi.modulus ** 2 * Mbar * Lbar if N is None else N
    if gcd(eta.prime, level) != 1:
        raise ValueError("conductor of eta must be prime to N")
    et = eta_tilde(chi, eta)
    f, p = chi.modulus, eta.prime
    m = common_conductor(f, chi.order, et.order)
    val = CycNum.rational(sign * et.parity(), m)
    val = val * chi(p, m).inverse() * et(f, m)
    val = val * gauss_sum(chi.conj(), m) / (f * Lbar)
    val = val * gen_bernoulli1(chi * et.conj(), m) / 2
    val = val * gen_bernoulli1(chi * et, m) / 2
    for q in prime_divisors(Lbar):
        val = val * (CycNum.rational(q, m) - chi(q, m).inverse() * et(q, m))
    for q in prime_divisors(Mbar):
        val = val * (CycNum.rational(1, m) - chi(q, m) * et(q, m))
    return val


def _supported_on(x: Fraction, primes) -> bool:
    d = x.denominator
    for p in primes:
        while d % p == 0:
            d //= p
    return d == 1


def stevens_membership(chi, Mbar, Lbar, N, eta: EtaCharacter) -> bool:
    """Lambda_pm * L / g(chi^-1) is integral away from 6 N p_eta, for both signs."""
    primes = set(bad_primes(N)) | {eta.prime}
    L = chi.modulus * Lbar
    for sign in (1, -1):
        v = lambda_pm(chi, Mbar, Lbar, eta, sign, N)
        w = v * _normalizer(chi, v.m) * L
        if not all(_supported_on(c, primes) for c in w.coeffs):
            return False
    return True
