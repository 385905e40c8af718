"""Acceptance gate: one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or ``python3 tests/test_acceptance.py``.
"""
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from eisenlab.characters import DirichletCharacter, primitive_characters
from eisenlab.congruence import congruence_check, read_eigen_table
from eisenlab.cuspidal import cuspidal_order, delta_divisor, period_order
from eisenlab.cusps import enumerate_cusps, orbit_oracle, psi
from eisenlab.eisenstein import (E_MLchi_phi, build_E_chi, dirichlet_factorization_check,
                                 eigen_table_check, oldform_quadratic_check)
from eisenlab.phi import distribution_check
from eisenlab.qexp import QExpansion
from eisenlab.scanner import enumerate_admissible

FIXTURES = Path(__file__).parent / "fixtures"
SCAN_LEVELS = (9, 11, 15, 25, 33, 45, 63, 99)
ONE = DirichletCharacter.trivial()


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def test_criterion_01_eigenvalue_suite(verdict):
    t0 = time.perf_counter()
    failures, checked = [], 0
    for N in SCAN_LEVELS:
        for cfg in enumerate_admissible(N):
            rep = eigen_table_check(cfg.chi, cfg.Mbar, cfg.Lbar, 50, 200, level=N)
            checked += len(rep.checks)
            failures += [(N, cfg.f, cfg.Mbar, cfg.Lbar, c.ell) for c in rep.checks if not c.passed]
    elapsed = time.perf_counter() - t0
    verdict(1, "Hecke eigenvalues, all admissible configs, l <= 50, precision 200",
            not failures and elapsed < 120,
            f"{checked} checks, {len(failures)} failed, {elapsed:.1f}s")


def test_criterion_02_two_path_construction(verdict):
    bad, count = [], 0
    for f in (1, 3, 5, 7, 9):
        for i, chi in enumerate(primitive_characters(f)):
            pv, closed = build_E_chi(chi, 500)
            count += 1
            if pv.expand(500) != closed:
                bad.append((f, i))
    verdict(2, "phi-vector expansion equals closed form to precision 500", not bad,
            f"{count} characters, mismatches {bad}")


def test_criterion_03_residue_sum(verdict):
    bad, count = [], 0
    for N in SCAN_LEVELS:
        for cfg in enumerate_admissible(N):
            count += 1
            if delta_divisor(E_MLchi_phi(cfg.chi, cfg.Mbar, cfg.Lbar), N).total() != 0:
                bad.append((N, cfg.f, cfg.Mbar, cfg.Lbar))
    verdict(3, "sum over cusps of e_x a_0 vanishes", not bad, f"{count} series, nonzero {bad}")


@pytest.mark.parametrize("p,expected", [(11, 5), (37, 3), (67, 11), (73, 1)])
def test_criterion_04_prime_level_golden_values(verdict, p, expected):
    got = cuspidal_order(E_MLchi_phi(ONE, p, 1), p).order
    verdict(4, f"cuspidal order at prime level p={p}", got == expected,
            f"expected {expected}, computed {got}")


def test_criterion_05_order_cross_check(verdict):
    bad, count = [], 0
    for N in (9, 11, 15, 45, 99):
        for cfg in enumerate_admissible(N):
            count += 1
            a = cuspidal_order(E_MLchi_phi(cfg.chi, cfg.Mbar, cfg.Lbar), N).order
            b = period_order(cfg.chi, cfg.Mbar, cfg.Lbar, N)
            if a != b:
                bad.append((N, cfg.f, cfg.Mbar, cfg.Lbar, a, b))
    verdict(5, "cuspidal_order equals period_order", not bad, f"{count} configs, mismatches {bad}")


def test_criterion_06_cusp_enumeration(verdict):
    t0 = time.perf_counter()
    bad = []
    for N in range(1, 201):
        cusps = enumerate_cusps(N)
        res = orbit_oracle(N)
        labels_ok = (sorted(res.labels) == sorted(c.label for c in cusps)
                     and len(set(res.labels.values())) == len(cusps))
        if res.count != len(cusps) or not labels_ok or sum(c.width for c in cusps) != psi(N):
            bad.append(N)
    elapsed = time.perf_counter() - t0
    verdict(6, "cusps agree with the orbit oracle and widths sum to psi(N), N <= 200",
            not bad and elapsed < 30, f"bad levels {bad}, {elapsed:.1f}s")


def test_criterion_07_oldform_quadratic_relation(verdict):
    rng = np.random.default_rng(20240607)
    bad, count = [], 0
    for p in (3, 5, 7, 11):
        levels = [n for n in (1, 5, 7, 13, 25) if n % p]
        for _ in range(20):
            seq = [int(v) for v in rng.integers(-10 ** 6, 10 ** 6, size=300 * p * p + 1)]
            level = int(rng.choice(levels))
            count += 1
            if not oldform_quadratic_check(QExpansion.from_sequence(level, seq), p, 300):
                bad.append((p, level))
    verdict(7, "U_p^2 - T_p U_p + p kills g(z) and g(pz), precision 300", not bad,
            f"{count} sequences, failures {bad}")


def _samples_for_criterion_8(rng, k):
    configs = [c for N in SCAN_LEVELS for c in enumerate_admissible(N)]
    etas = [eta for f in (1, 4, 5, 7, 8, 11, 13) for eta in primitive_characters(f)]
    out = []
    while len(out) < k:
        cfg = configs[rng.integers(len(configs))]
        eta = etas[rng.integers(len(etas))]
        if np.gcd(eta.modulus, cfg.level) == 1 and (cfg, eta) not in out:
            out.append((cfg, eta))
    return out


def test_criterion_08_dirichlet_factorization(verdict):
    rng = np.random.default_rng(8)
    bad = []
    samples = _samples_for_criterion_8(rng, 10)
    for cfg, eta in samples:
        if not dirichlet_factorization_check(cfg.chi, cfg.Mbar, cfg.Lbar, eta, 300):
            bad.append((cfg.f, cfg.Mbar, cfg.Lbar, eta.modulus))
    verdict(8, "L-series factorisation up to n = 300", not bad,
            f"{len(samples)} samples, failures {bad}")


def _random_alpha(rng):
    kind = rng.integers(3)
    if kind == 0:
        return ((int(rng.integers(1, 7)), 0), (0, 1))
    if kind == 1:
        a, d = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        return ((a, int(rng.integers(-6, 7))), (0, d))
    s = int(rng.choice([1, -1]))
    return ((s, s * int(rng.integers(-9, 10))), (0, s))


def test_criterion_09_distribution_law(verdict):
    rng = np.random.default_rng(9)
    bad = []
    for _ in range(50):
        n = int(rng.integers(1, 13))
        x = (Fraction(int(rng.integers(n)), n), Fraction(int(rng.integers(n)), n))
        alpha = _random_alpha(rng)
        if not distribution_check(x, alpha, 40):
            bad.append((x, alpha))
    verdict(9, "distribution law on 50 random instances, precision 40", not bad,
            f"failures {bad}")


def test_criterion_10_congruence_ingestion(verdict):
    good = congruence_check(read_eigen_table(str(FIXTURES / "level11.csv")), ONE, 5, 11)
    bad = congruence_check(read_eigen_table(str(FIXTURES / "level11_corrupt.csv")), ONE, 5, 11)
    ok = good.passed and not bad.passed and bad.failed_primes() == [7]
    verdict(10, "level-11 table passes at q=5, corrupted row flagged alone", ok,
            f"clean passed={good.passed}, corrupted failures at {bad.failed_primes()}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
