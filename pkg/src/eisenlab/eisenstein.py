"""The series E_chi and E_{M,L,chi}: construction, Hecke eigenvalues, L-series shape."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .bernoulli import gauss_sum
from .characters import DirichletCharacter
from .cyclotomic import CycNum, common_conductor, factorize, field
from .phi import PhiVector
from .qexp import QExpansion, degeneracy, hecke, op_minus, op_plus


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n)) if n > 1 else []


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(k == 1 for k in factorize(n).values())


def sigma_chi(chi: DirichletCharacter, n: int) -> CycNum:
    """sum over d | n of d chi(d) chi^-1(n/d)."""
    if n < 1:
        raise ValueError("n must be positive")
    total = CycNum.zero(chi.field_conductor)
    for d in range(1, n + 1):
        if n % d == 0:
            a, b = chi.exponent(d), chi.exponent(n // d)
            if a is None or b is None:
                continue
            total = total + CycNum.root_of_unity(a - b, chi.order, chi.field_conductor) * d
    return total


def _sigma_table(chi: DirichletCharacter, prec: int) -> np.ndarray:
    """Rows n = 0..prec of sigma_chi(n) in the power basis of Q(chi), integer entries."""
    n_ord, f = chi.order, chi.modulus
    mF = chi.field_conductor
    F = field(mF)
    tab = np.array([-1 if k is None else k for k in chi.table], dtype=np.int64)
    acc = np.zeros((prec + 1, n_ord), dtype=np.int64)
    for d in range(1, prec + 1):
        td = tab[d % f]
        if td < 0:
            continue
        k = np.arange(1, prec // d + 1, dtype=np.int64)
        tk = tab[k % f]
        ok = tk >= 0
        k, tk = k[ok], tk[ok]
        np.add.at(acc, (d * k, (td - tk) % n_ord), d)
    R = np.array([F.root_of_unity(j, n_ord) for j in range(n_ord)], dtype=np.int64)
    return acc @ R


@lru_cache(maxsize=64)
def closed_form_E_chi(chi: DirichletCharacter, prec: int) -> QExpansion:
    """E_chi from its divisor-sum description."""
    if not chi.is_primitive():
        raise ValueError("E_chi needs a primitive character")
    body = _sigma_table(chi, prec).astype(object)
    if chi.is_trivial():
        num = body * 24
        num[0, 0] = -1
        return QExpansion(1, 1, prec, chi.field_conductor, num, 24, CycNum.rational(Fraction(1, 2)))
    return QExpansion(chi.modulus ** 2, 1, prec, chi.field_conductor, body, 1)


def E_chi_phi(chi: DirichletCharacter) -> PhiVector:
    """-1/(2 g(chi)) sum_{a, b} chi(a) chi(b) phi_(a/f, b/f^2)."""
    if not chi.is_primitive():
        raise ValueError("E_chi needs a primitive character")
    f = chi.modulus
    mc = common_conductor(f, chi.order)
    g = gauss_sum(chi, mc)
    # 1/g(chi) = chi(-1) g(chi^-1) / f
    inv_g = gauss_sum(chi.conj(), mc) * Fraction(chi.parity(), f)
    assert inv_g * g == 1
    base = inv_g * Fraction(-1, 2)
    coeffs = [base * CycNum.root_of_unity(k, chi.order, mc) for k in range(chi.order)]
    terms = {}
    for a in range(f):
        ka = chi.exponent(a)
        if ka is None:
            continue
        for b in range(f * f):
            kb = chi.exponent(b)
            if kb is None:
                continue
            terms[(Fraction(a, f), Fraction(b, f * f), 1)] = coeffs[(ka + kb) % chi.order]
    return PhiVector(terms, level=f * f, chi=chi)


def build_E_chi(chi: DirichletCharacter, prec: int) -> tuple[PhiVector, QExpansion]:
    return E_chi_phi(chi), closed_form_E_chi(chi, prec)


def validate_ML(chi: DirichletCharacter, Mbar: int, Lbar: int):
    f = chi.modulus
    if not chi.is_primitive():
        raise ValueError("character must be primitive")
    for name, v in (("Mbar", Mbar), ("Lbar", Lbar)):
        if not is_squarefree(v):
            raise ValueError(f"{name}={v} is not squarefree")
        if gcd(v, f) != 1:
            raise ValueError(f"{name}={v} shares a factor with the conductor {f}")
    if f * Mbar == 1:
        raise ValueError("M = 1 is not allowed: for M = 1 the non-holomorphic term of E_1 "
                         "survives, so E_{1,L,1} is not a holomorphic modular form")


def apply_ML(chi: DirichletCharacter, Mbar: int, Lbar: int, g):
    """[Lbar]^- o [Mbar]^+ applied to a QExpansion or PhiVector."""
    for p in prime_divisors(Mbar):
        g = op_plus(chi, p, g)
    for p in prime_divisors(Lbar):
        g = op_minus(chi, p, g)
    return g


def series_level(chi: DirichletCharacter, Mbar: int, Lbar: int) -> int:
    return chi.modulus ** 2 * Mbar * Lbar


def closed_form_E_MLchi(chi, Mbar, Lbar, prec) -> QExpansion:
    validate_ML(chi, Mbar, Lbar)
    g = apply_ML(chi, Mbar, Lbar, closed_form_E_chi(chi, prec))
    return g.with_level(series_level(chi, Mbar, Lbar))


def E_MLchi_phi(chi, Mbar, Lbar) -> PhiVector:
    validate_ML(chi, Mbar, Lbar)
    return apply_ML(chi, Mbar, Lbar, E_chi_phi(chi))


def build_E_MLchi(chi, Mbar, Lbar, prec) -> tuple[PhiVector, QExpansion]:
    return E_MLchi_phi(chi, Mbar, Lbar), closed_form_E_MLchi(chi, Mbar, Lbar, prec)


def two_path_check(chi, Mbar, Lbar, prec) -> bool:
    """Expansion of the symbolic form equals the divisor-sum form."""
    if Mbar == 1 and Lbar == 1:
        pv, closed = build_E_chi(chi, prec)
    else:
        pv, closed = build_E_MLchi(chi, Mbar, Lbar, prec)
    return pv.expand(prec) == closed


# --- Hecke eigenvalues -----------------------------------------------------

@dataclass(frozen=True)
class EigenCheck:
    ell: int
    case: str
    level_used: int
    eigenvalue: CycNum
    passed: bool

    def to_json(self) -> dict:
        return {"ell": self.ell, "case": self.case, "level_used": self.level_used,
                "eigenvalue": self.eigenvalue.to_json(), "passed": self.passed}


@dataclass
class EigenReport:
    checks: list[EigenCheck] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def expected_eigenvalue(chi, Mbar, Lbar, ell, level=None) -> tuple[str, int, CycNum]:
    """(case, level the operator acts at, eigenvalue) for T_ell on E_{M,L,chi}."""
    f = chi.modulus
    own = series_level(chi, Mbar, Lbar)
    N = own if level is None else level
    M, L = f * Mbar, f * Lbar
    g = gcd(M, L)
    c = chi(ell)
    if N % ell:
        return "good", N, c.inverse() + c * ell
    if g % ell == 0:
        return "M_and_L", N, CycNum.zero(c.m)
    if (M // g) % ell == 0:
        return "M_only", N, c.inverse()
    if (L // g) % ell == 0:
        return "L_only", N, c * ell
    # ell divides N but not ML: the series is old at ell, use its own level
    return "good_at_series_level", own, c.inverse() + c * ell


def eigen_table_check(chi, Mbar, Lbar, ell_bound, prec, level=None,
                      E: QExpansion | None = None) -> EigenReport:
    ells = primes_up_to(ell_bound)
    if E is None:
        need = prec * (max(ells) if ells else 1)
        E = closed_form_E_MLchi(chi, Mbar, Lbar, need)
    target = E.truncate(prec)
    report = EigenReport()
    for ell in ells:
        case, N, lam = expected_eigenvalue(chi, Mbar, Lbar, ell, level)
        lhs = hecke(N, ell, E).truncate(prec)
        rhs = target.scaled(lam)
        report.checks.append(EigenCheck(ell, case, N, lam, lhs == rhs))
    return report


# --- old forms -------------------------------------------------------------

def oldform_quadratic_check(g: QExpansion, p: int, prec: int) -> bool:
    """U_p^2 - T_p U_p + p kills g(z) and g(pz) at level p * level(g).

    When p does not divide level(g), elements of the old space are tracked as
    pairs (A, B) meaning A(z) + B(pz), on which T_p acts componentwise at level
    N/p; the U_p computed on actual q-expansions must agree with the pair formula
    U_p(A, B) = (T_p A + B, -p A).  When p divides level(g) the relations are
    U_p(g(pz)) = g and U_p at level N agreeing with U_p at level N/p.
    """
    Np = g.level
    N = Np * p
    if g.den != 1:
        raise ValueError("integral exponents required")
    if g.prec < prec * p * p:
        raise ValueError(f"need precision {prec * p * p}, have {g.prec}")

    def T(x):
        return hecke(Np, p, x)

    def expand(pair):
        A, B = pair
        return (A + degeneracy(p, B)).with_level(N)

    if Np % p == 0:
        ok = hecke(N, p, degeneracy(p, g)).truncate(prec) == g.truncate(prec)
        return ok and hecke(N, p, g).truncate(prec) == hecke(Np, p, g).truncate(prec)

    zero = g.scaled(0)
    for h in ((g, zero), (zero, g)):
        X = expand(h)
        A, B = h
        UX = hecke(N, p, X)
        pair_U = (T(A) + B, A.scaled(-p))
        if expand(pair_U).truncate(prec) != UX.truncate(prec):
            return False
        U2X = hecke(N, p, UX)
        TU = expand((T(pair_U[0]), T(pair_U[1])))
        if not (U2X - TU + X.scaled(p)).truncate(prec).is_zero():
            return False
    return True


# --- L-series ---------------------------------------------------------------

def _char_series(chi: DirichletCharacter, n_bound: int, m: int, weight: int) -> list[CycNum]:
    out = [CycNum.zero(m)]
    for n in range(1, n_bound + 1):
        out.append(chi(n, m) * (n ** weight))
    return out


def _dirichlet_mul(a: list[CycNum], b: list[CycNum]) -> list[CycNum]:
    n_bound = len(a) - 1
    m = common_conductor(a[0].m, b[0].m)
    out = [CycNum.zero(m) for _ in range(n_bound + 1)]
    for i in range(1, n_bound + 1):
        if not a[i]:
            continue
        for j in range(1, n_bound // i + 1):
            if b[j]:
                out[i * j] = out[i * j] + a[i] * b[j]
    return out


def dirichlet_factorization_check(chi, Mbar, Lbar, eta: DirichletCharacter, n_bound: int) -> bool:
    """a_n(E) eta(n) against the Euler-factor times L(chi^-1 eta, s) L(chi eta, s-1) product."""
    level = series_level(chi, Mbar, Lbar)
    if gcd(eta.modulus, level) != 1:
        raise ValueError("conductor of eta must be prime to the level")
    E = closed_form_E_MLchi(chi, Mbar, Lbar, n_bound)
    m = common_conductor(E.m, chi.field_conductor, eta.field_conductor)
    lhs = [E.coefficient(n).to_field(m) * eta(n, m) for n in range(n_bound + 1)]
    one = [CycNum.zero(m) for _ in range(n_bound + 1)]
    one[1] = CycNum.one(m)
    rhs = _dirichlet_mul(_char_series(chi.conj() * eta, n_bound, m, 0),
                         _char_series(chi * eta, n_bound, m, 1))
    for p in prime_divisors(Lbar):
        fac = list(one)
        if p <= n_bound:
            fac[p] = -(chi(p, m).inverse() * eta(p, m))
        rhs = _dirichlet_mul(fac, rhs)
    for p in prime_divisors(Mbar):
        fac = list(one)
        if p <= n_bound:
            fac[p] = -(chi(p, m) * eta(p, m) * p)
        rhs = _dirichlet_mul(fac, rhs)
    return all(lhs[n] == rhs[n] for n in range(1, n_bound + 1))
