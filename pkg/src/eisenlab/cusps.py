"""Cusps of X_0(N): representatives [dx/N], widths, and an orbit-counting oracle."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .cyclotomic import factorize


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def psi(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z)."""
    r = N
    for p in factorize(N):
        r = r // p * (p + 1)
    return r


@dataclass(frozen=True)
class Cusp:
    level: int
    d: int
    residue: int          # class modulo gcd(d, N/d)
    x: int                # representative coprime to N
    sigma: tuple[tuple[int, int], tuple[int, int]]

    @property
    def denominator(self) -> int:
        return self.level // self.d

    @property
    def width(self) -> int:
        c = self.denominator
        return self.level // gcd(c * c, self.level)

    @property
    def gamma1_width(self) -> int:
        return self.level // gcd(self.denominator, self.level)

    @property
    def ramification(self) -> int:
        return self.width

    @property
    def field_conductor(self) -> int:
        return gcd(self.d, self.level // self.d)

    @property
    def is_rational(self) -> bool:
        return self.field_conductor == 1

    @property
    def label(self) -> tuple[int, int]:
        return (self.d, self.residue)

    def to_json(self) -> dict:
        return {"d": self.d, "x": self.x, "width": self.width,
                "field_conductor": self.field_conductor,
                "sigma": [list(self.sigma[0]), list(self.sigma[1])]}

    def __repr__(self):
        return f"Cusp([{self.d}*{self.x}/{self.level}])"


def _representative(r: int, g: int, N: int) -> int:
    x = r
    while gcd(x, N) != 1:
        x += g
    return x


def make_cusp(N: int, d: int, residue: int) -> Cusp:
    g = gcd(d, N // d)
    x = _representative(residue, g, N)
    c = N // d
    if c == 1:
        v, u = 0, -1
    else:
        v = pow(x, -1, c)
        u = (x * v - 1) // c
    return Cusp(N, d, residue, x, ((x, u), (c, v)))


def enumerate_cusps(N: int) -> list[Cusp]:
    if N < 1:
        raise ValueError("level must be positive")
    out = []
    for d in divisors(N):
        g = gcd(d, N // d)
        for r in range(1, g + 1):
            if gcd(r, g) == 1:
                out.append(make_cusp(N, d, r))
    return out


def width(c: Cusp) -> int:
    return c.width


def cusp_at_infinity(N: int) -> Cusp:
    return make_cusp(N, 1, 1)


@dataclass(frozen=True)
class OrbitResult:
    count: int
    labels: dict[tuple[int, int], int]    # cusp label -> orbit id
    orbit_sizes: dict[int, int]


def _p1_canonical(N: int):
    """All points of P^1(Z/N), each paired with its canonical key."""
    cs, ds = np.meshgrid(np.arange(N, dtype=np.int64), np.arange(N, dtype=np.int64), indexing="ij")
    cs, ds = cs.ravel(), ds.ravel()
    ok = np.gcd(np.gcd(cs, ds), N) == 1
    cs, ds = cs[ok], ds[ok]
    units = np.array([u for u in range(N) if gcd(u, N) == 1] or [0], dtype=np.int64)
    keys = ((units[:, None] * cs[None, :]) % N) * N + (units[:, None] * ds[None, :]) % N
    return cs, ds, keys.min(axis=0)


def orbit_oracle(N: int, bound: int = 200) -> OrbitResult:
    """Orbits of (c:d) -> (c:c+d) on P^1(Z/N), matched against enumerate_cusps."""
    if N > bound:
        raise ValueError(f"oracle is limited to N <= {bound}")
    if N == 1:
        return OrbitResult(1, {(1, 1): 0}, {0: 1})
    cs, ds, canon = _p1_canonical(N)
    lookup = dict(zip((cs * N + ds).tolist(), canon.tolist()))
    points = sorted(set(canon.tolist()))
    index = {k: i for i, k in enumerate(points)}
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k in points:
        c, d = divmod(k, N)
        image = lookup[c * N + (c + d) % N]
        a, b = find(index[k]), find(index[image])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(i) for i in range(len(points))})
    rid = {r: j for j, r in enumerate(roots)}
    sizes: dict[int, int] = {}
    for i in range(len(points)):
        j = rid[find(i)]
        sizes[j] = sizes.get(j, 0) + 1
    labels = {}
    for cusp in enumerate_cusps(N):
        (_, _), (c, v) = cusp.sigma
        labels[cusp.label] = rid[find(index[lookup[(c % N) * N + v % N]])]
    return OrbitResult(len(roots), labels, sizes)
