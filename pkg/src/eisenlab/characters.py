"""Dirichlet characters via exponent vectors on a cyclic decomposition of (Z/f)^x."""
from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, lcm, prod

from .cyclotomic import CycNum, euler_phi, factorize, natural_conductor


def _mult_order(a: int, f: int) -> int:
    k, x = 1, a % f
    while x != 1 % f:
        x = x * a % f
        k += 1
    return k


def _primitive_root(pk: int, p: int) -> int:
    phi = euler_phi(pk)
    primes = list(factorize(phi))
    for g in range(2, pk):
        if g % p and all(pow(g, phi // q, pk) != 1 for q in primes):
            return g
    return 1


def _crt_lift(r: int, mod: int, f: int) -> int:
    """The residue mod f congruent to r mod `mod` and to 1 modulo f/mod."""
    other = f // mod
    if other == 1:
        return r % f
    # x = r + mod*t, x = 1 (mod other)
    t = ((1 - r) * pow(mod, -1, other)) % other
    return (r + mod * t) % f


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    @cached_property
    def dlog(self) -> dict[int, tuple[int, ...]]:
        """Exponent vector of every unit."""
        f = self.modulus
        table = {}
        for vec in itertools.product(*(range(o) for o in self.orders)):
            a = 1 % f
            for g, e in zip(self.generators, vec):
                a = a * pow(g, e, f) % f
            table[a] = vec
        return table

    def exponents(self, a: int) -> tuple[int, ...] | None:
        return self.dlog.get(a % self.modulus)

    @property
    def size(self) -> int:
        return prod(self.orders)


@lru_cache(maxsize=None)
def unit_group(f: int) -> UnitGroup:
    if f < 1:
        raise ValueError("modulus must be positive")
    gens, ords = [], []
    for p, k in sorted(factorize(f).items()):
        pk = p ** k
        if p == 2:
            if k >= 2:
                gens.append(_crt_lift(pk - 1, pk, f))
                ords.append(2)
            if k >= 3:
                gens.append(_crt_lift(5, pk, f))
                ords.append(2 ** (k - 2))
        else:
            gens.append(_crt_lift(_primitive_root(pk, p), pk, f))
            ords.append(euler_phi(pk))
    for g, o in zip(gens, ords):
        assert _mult_order(g, f) == o
    return UnitGroup(f, tuple(gens), tuple(ords))


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(g_i) = exp(2 pi i e_i / o_i) on the generators g_i of unit_group(modulus)."""

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        ug = unit_group(self.modulus)
        if len(self.exponents) != len(ug.orders):
            raise ValueError(f"modulus {self.modulus} needs {len(ug.orders)} exponents")
        object.__setattr__(self, "exponents",
                           tuple(e % o for e, o in zip(self.exponents, ug.orders)))

    @classmethod
    def trivial(cls, modulus: int = 1) -> DirichletCharacter:
        return cls(modulus, (0,) * len(unit_group(modulus).orders))

    @classmethod
    def from_function(cls, modulus: int, phase) -> DirichletCharacter:
        """Build from phase(a) = t with chi(a) = exp(2 pi i t), t a Fraction."""
        ug = unit_group(modulus)
        exps = []
        for g, o in zip(ug.generators, ug.orders):
            t = phase(g) * o
            if t.denominator != 1:
                raise ValueError("phase data is not a character")
            exps.append(int(t))
        return cls(modulus, tuple(exps))

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @cached_property
    def order(self) -> int:
        return lcm(1, *(o // gcd(e, o) for e, o in zip(self.exponents, self.group.orders)))

    @property
    def field_conductor(self) -> int:
        return natural_conductor(self.order)

    @cached_property
    def table(self) -> tuple[int | None, ...]:
        """table[a] = k with chi(a) = zeta_order^k, or None for non-units."""
        n = self.order
        ug = self.group
        weights = [e * n // o for e, o in zip(self.exponents, ug.orders)]
        out: list[int | None] = [None] * self.modulus
        for a, vec in ug.dlog.items():
            out[a] = sum(w * v for w, v in zip(weights, vec)) % n
        return tuple(out)

    def exponent(self, a: int) -> int | None:
        return self.table[a % self.modulus]

    def __call__(self, a: int, m: int | None = None) -> CycNum:
        """chi(a) as a CycNum in Q(zeta_m) (default: the value field)."""
        m = self.field_conductor if m is None else m
        k = self.exponent(a)
        if k is None:
            return CycNum.zero(m)
        return CycNum.root_of_unity(k, self.order, m)

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        k = self.exponent(-1)
        return 1 if k == 0 else -1

    def is_even(self) -> bool:
        return self.parity() == 1

    def conj(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        F = lcm(self.modulus, other.modulus)

        def phase(a):
            k1, k2 = self.exponent(a), other.exponent(a)
            return Fraction(k1, self.order) + Fraction(k2, other.order)

        return DirichletCharacter.from_function(F, phase)

    def induce(self, F: int) -> DirichletCharacter:
        if F % self.modulus:
            raise ValueError("can only induce to a multiple of the modulus")
        return DirichletCharacter.from_function(
            F, lambda a: Fraction(self.exponent(a), self.order))

    @cached_property
    def conductor(self) -> int:
        units = list(self.group.dlog)
        for d in sorted(d for d in range(1, self.modulus + 1) if self.modulus % d == 0):
            if all(self.table[a] == 0 for a in units if a % d == 1 % d):
                return d
        return self.modulus

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def primitive_part(self) -> DirichletCharacter:
        d = self.conductor
        f = self.modulus

        def phase(a):
            b = a % d
            while gcd(b, f) != 1:
                b += d
            return Fraction(self.table[b % f], self.order)

        return DirichletCharacter.from_function(d, phase)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "generators": list(self.group.generators),
                "exponents": list(self.exponents), "order": self.order}

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, exps={list(self.exponents)}, order {self.order})"


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    return chi.primitive_part()


def all_characters(f: int) -> list[DirichletCharacter]:
    ug = unit_group(f)
    return [DirichletCharacter(f, vec)
            for vec in itertools.product(*(range(o) for o in ug.orders))]


@lru_cache(maxsize=None)
def primitive_characters(f: int) -> tuple[DirichletCharacter, ...]:
    """Primitive characters of conductor f in canonical (lexicographic exponent) order."""
    return tuple(c for c in all_characters(f) if c.conductor == f)


def character_by_index(conductor: int, index: int) -> DirichletCharacter:
    chars = primitive_characters(conductor)
    if not 0 <= index < len(chars):
        raise IndexError(f"conductor {conductor} has {len(chars)} primitive characters")
    return chars[index]


def character_index(chi: DirichletCharacter) -> int:
    return primitive_characters(chi.modulus).index(chi)


@dataclass(frozen=True)
class ModQCharacter:
    """A character of (Z/f)^x into F_q^x, given by exponents against a fixed generator w of F_q^x.

    chi_bar(g_i) = w^(exponents[i]) on the generators of unit_group(modulus).
    """

    modulus: int
    q: int
    exponents: tuple[int, ...]


def _is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def teichmuller_lift(data: ModQCharacter) -> DirichletCharacter:
    q = data.q
    if q == 2:
        raise ValueError("characteristic 2 is not allowed")
    if not _is_prime(q):
        raise ValueError(f"{q} is not prime")
    ug = unit_group(data.modulus)
    if len(data.exponents) != len(ug.orders):
        raise ValueError("exponent vector has the wrong length")
    exps = []
    for e, o in zip(data.exponents, ug.orders):
        if (e * o) % (q - 1):
            raise ValueError("exponent data does not define a homomorphism")
        exps.append(e * o // (q - 1))
    return DirichletCharacter(data.modulus, tuple(exps))


def reduce_mod_q(chi: DirichletCharacter, q: int, w: int | None = None) -> dict[int, int]:
    """Values of chi reduced at the prime above q sending zeta_{q-1} to w."""
    if (q - 1) % chi.order:
        raise ValueError("order of chi does not divide q-1")
    if w is None:
        w = _primitive_root(q, q)
    root = pow(w, (q - 1) // chi.order, q)
    return {a: pow(root, k, q) for a, k in enumerate(chi.table) if k is not None}


def legendre_character(p: int) -> DirichletCharacter:
    """The quadratic character mod an odd prime p."""
    ug = unit_group(p)
    return DirichletCharacter(p, (ug.orders[0] // 2,))


@dataclass(frozen=True)
class EtaCharacter:
    eta: DirichletCharacter
    prime: int
    twist: DirichletCharacter  # eta times the Legendre symbol mod prime


def enumerate_eta(N: int, bound: int) -> list[EtaCharacter]:
    """Non-quadratic characters of prime conductor p <= bound with p = -1 mod 4N."""
    out = []
    for p in range(3, bound + 1):
        if not _is_prime(p) or (p + 1) % (4 * N):
            continue
        leg = legendre_character(p)
        for chi in all_characters(p):
            if chi.order <= 2:
                continue
            out.append(EtaCharacter(chi, p, chi * leg))
    return out
