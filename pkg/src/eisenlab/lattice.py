"""Integer lattices: Smith invariants and indices away from a set of primes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod


class InfiniteIndexError(ValueError):
    """The generators do not span a full-rank sublattice."""


def smith_invariants(rows: list[list[int]], ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), ncols if ncols is not None else len(A[0])
    invs = []
    t = 0
    while t < min(m, n):
        # pick the smallest nonzero entry in the trailing block as pivot
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                A[t], A[i] = A[i], A[t]
                if j != t:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            # divisibility of the trailing block by the pivot
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][k] % p for k in range(t + 1, n))), None)
            if bad is None:
                break
            rt, rb = A[t], A[bad]
            for k in range(t, n):
                rt[k] += rb[k]
        invs.append(abs(A[t][t]))
        t += 1
    return invs


def strip_primes(x: int, primes) -> int:
    for p in primes:
        while x % p == 0:
            x //= p
    return x


@dataclass(frozen=True)
class Lattice:
    """Z-span of rational vectors in Q^rank, with a set of inverted primes."""

    rank: int
    generators: tuple[tuple[Fraction, ...], ...]
    inverted_primes: frozenset[int] = field(default_factory=frozenset)

    @classmethod
    def make(cls, rank, generators, inverted_primes=()):
        gens = []
        for g in generators:
            g = tuple(Fraction(c) for c in g)
            if len(g) != rank:
                raise ValueError("generator of wrong length")
            gens.append(g)
        return cls(rank, tuple(gens), frozenset(inverted_primes))

    def covolume(self) -> Fraction:
        """Index of the span in Z^rank as a rational number (before stripping)."""
        den = lcm(1, *(c.denominator for g in self.generators for c in g))
        rows = [[int(c * den) for c in g] for g in self.generators]
        invs = smith_invariants(rows, self.rank)
        if len(invs) < self.rank:
            raise InfiniteIndexError(
                f"generators span rank {len(invs)} < {self.rank}; infinite index")
        return Fraction(prod(invs), den ** self.rank)

    def __add__(self, other: Lattice) -> Lattice:
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return Lattice(self.rank, self.generators + other.generators,
                       self.inverted_primes | other.inverted_primes)


def _strip_fraction(x: Fraction, primes) -> Fraction:
    return Fraction(strip_primes(x.numerator, primes), strip_primes(x.denominator, primes))


def lattice_index(sub: Lattice, ambient_rank: int | None = None) -> int:
    """[Z^r : span] with every factor of an inverted prime removed."""
    if ambient_rank is not None and ambient_rank != sub.rank:
        raise ValueError("ambient rank does not match the lattice")
    idx = _strip_fraction(sub.covolume(), sub.inverted_primes)
    if idx.denominator != 1:
        raise ValueError(
            f"span is not contained in Z^{sub.rank} after inverting {sorted(sub.inverted_primes)}")
    return idx.numerator


def relative_index(sub: Lattice, sup: Lattice) -> int:
    """[sup : sub] away from the inverted primes; sub must lie in sup."""
    primes = sub.inverted_primes | sup.inverted_primes
    vs = sup.covolume()
    if (sup + sub).covolume() != vs:
        raise ValueError("sublattice is not contained in the superlattice")
    idx = _strip_fraction(sub.covolume() / vs, primes)
    if idx.denominator != 1:
        raise ArithmeticError("relative index is not integral")
    return idx.numerator
