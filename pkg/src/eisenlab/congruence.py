"""Ingest external Hecke eigenvalue tables and test Eisenstein congruences mod q."""
from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .characters import DirichletCharacter, _is_prime, _primitive_root
from .cyclotomic import cyclotomic_polynomial

_TERM = re.compile(r"([+-]?)(\d*)(\*?x(?:\^(\d+))?)?")


def parse_poly(text: str, var: str = "x") -> list[int]:
    """Integer polynomial such as 'x^2-x-1' as coefficients, lowest degree first."""
    s = text.replace(" ", "").replace(var, "x")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if mt is None or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign, digits, mono, power = mt.groups()
        if not digits and not mono:
            raise ValueError(f"dangling sign in {text!r}")
        if mono and mono.startswith("*") and not digits:
            raise ValueError(f"stray '*' in {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        deg = (int(power) if power else 1) if mono else 0
        coeffs[deg] = coeffs.get(deg, 0) + c
        pos = mt.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"unexpected {s[pos]!r} in {text!r}")
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def format_poly(coeffs, var: str = "x") -> str:
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if not c:
            continue
        mag = abs(c)
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        body = str(mag) if (mag != 1 or not mono) else ""
        body += mono
        parts.append(("-" if c < 0 else "+") + body)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


@dataclass(frozen=True)
class EigenRow:
    ell: int
    coeffs: tuple[int, ...]
    minpoly: tuple[int, ...]
    line: int


@dataclass
class EigenTable:
    label: str
    rows: list[EigenRow] = field(default_factory=list)
    diagnostics: list[dict] = field(default_factory=list)   # malformed rows

    @property
    def minpoly(self) -> tuple[int, ...] | None:
        return self.rows[0].minpoly if self.rows else None


def read_eigen_table(path: str) -> EigenTable:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read eigenvalue table {path}: {exc.strerror}") from exc
    return parse_eigen_table(text, label=str(path))


def parse_eigen_table(text: str, label: str = "<memory>") -> EigenTable:
    reader = csv.reader(line for line in text.splitlines() if line.strip())
    table = EigenTable(label)
    header = next(reader, None)
    if header is None:
        return table
    header = [h.strip() for h in header]
    ncoef = len(header) - 2
    if (len(header) < 3 or header[0] != "ell" or header[-1] != "minpoly"
            or header[1:-1] != [f"coeff{i}" for i in range(ncoef)]):
        raise ValueError(f"{label}: header must be ell,coeff0,...,coeffK,minpoly")
    seen = set()
    for lineno, raw in enumerate(reader, start=2):
        try:
            if len(raw) != len(header):
                raise ValueError(f"expected {len(header)} fields, got {len(raw)}")
            ell = int(raw[0])
            if not _is_prime(ell):
                raise ValueError(f"ell={ell} is not prime")
            if ell in seen:
                raise ValueError(f"duplicate row for ell={ell}")
            coeffs = tuple(int(c) for c in raw[1:-1])
            mp = tuple(parse_poly(raw[-1]))
            if len(mp) < 2 or mp[-1] != 1:
                raise ValueError(f"minimal polynomial {raw[-1]!r} must be monic of degree >= 1")
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
            if len(coeffs) >= len(mp):
                raise ValueError("eigenvalue polynomial degree must be below the minimal polynomial's")
            if table.rows and mp != table.rows[0].minpoly:
                raise ValueError("all rows must share one minimal polynomial")
        except ValueError as exc:
            table.diagnostics.append({"line": lineno, "error": str(exc), "raw": raw})
            continue
        seen.add(ell)
        table.rows.append(EigenRow(ell, coeffs, mp, lineno))
    return table


def _poly_eval(coeffs, x: int, q: int) -> int:
    r = 0
    for c in reversed(coeffs):
        r = (r * x + c) % q
    return r


def _roots_mod(poly, q: int) -> list[int]:
    return [r for r in range(q) if _poly_eval(poly, r, q) == 0]


def _classify(ell: int, q: int, N: int) -> str:
    if ell == q:
        return "ell=q"
    if N % ell:
        return "good"
    if N % (ell * ell):
        return "p||N"
    return "p^2|N"


def _allowed(case: str, ell: int, q: int, f: int, chibar: dict[int, int]) -> dict[str, int]:
    c = chibar.get(ell % f)
    if c is None:
        return {"0": 0}
    if case == "ell=q":
        return {"chi^-1(q)": pow(c, -1, q)}
    if case == "good":
        return {"chi^-1+ell*chi": (pow(c, -1, q) + ell * c) % q}
    if case == "p||N":
        return {"chi^-1(p)": pow(c, -1, q), "p*chi(p)": ell * c % q}
    return {"0": 0, "chi^-1(p)": pow(c, -1, q), "p*chi(p)": ell * c % q}


@dataclass
class CongruenceReport:
    q: int
    N: int
    root: int | None
    chi_root: int | None
    rows: list[dict]
    diagnostics: list[dict]
    warnings: list[str]

    @property
    def passed(self) -> bool:
        return not self.diagnostics and all(r["passed"] for r in self.rows)

    def failed_primes(self) -> list[int]:
        return [r["ell"] for r in self.rows if not r["passed"]]

    def to_json(self) -> dict:
        return {"q": self.q, "level": self.N, "generator_root": self.root,
                "chi_root": self.chi_root, "rows": self.rows,
                "diagnostics": self.diagnostics, "warnings": self.warnings,
                "passed": self.passed}


def congruence_check(table: EigenTable, chi: DirichletCharacter, q: int, N: int) -> CongruenceReport:
    """Test every row against the Eisenstein congruences at a prime above q."""
    if not _is_prime(q) or q == 2:
        raise ValueError(f"q={q} must be an odd prime")
    if (6 * N) % q == 0:
        raise ValueError(f"q={q} divides 6N={6 * N}")
    n = chi.order
    if (q - 1) % n:
        raise ValueError(f"order {n} of chi does not divide q-1={q - 1}")
    warnings = []
    if not table.rows:
        warnings.append("empty eigenvalue table: nothing to check")
        return CongruenceReport(q, N, None, None, [], list(table.diagnostics), warnings)
    f = chi.modulus
    roots = _roots_mod(table.minpoly, q)
    if not roots:
        raise ValueError(f"minimal polynomial has no root modulo {q}")
    w = _primitive_root(q, q)
    omegas = sorted({pow(w, (q - 1) // n * k, q) for k in range(n) if gcd(k, n) == 1})
    best = None
    for r in roots:
        for om in omegas:
            chibar = {a: pow(om, k, q) for a, k in enumerate(chi.table) if k is not None}
            rows = []
            for row in table.rows:
                case = _classify(row.ell, q, N)
                allowed = _allowed(case, row.ell, q, f, chibar)
                obs = _poly_eval(row.coeffs, r, q)
                match = sorted(k for k, v in allowed.items() if v == obs)
                rows.append({"ell": row.ell, "line": row.line, "case": case, "observed": obs,
                             "allowed": sorted(set(allowed.values())),
                             "branch": match[0] if match else None, "passed": bool(match)})
            score = sum(r_["passed"] for r_ in rows)
            if best is None or score > best[0]:
                best = (score, r, om, rows)
    _, r, om, rows = best
    return CongruenceReport(q, N, r, om, rows, list(table.diagnostics), warnings)


def table_from_series(chi: DirichletCharacter, Mbar: int, Lbar: int, bound: int) -> EigenTable:
    """Eigenvalue table of E_{M,L,chi} itself, in the generator zeta_ord(chi)."""
    from .eisenstein import expected_eigenvalue, primes_up_to

    n = chi.field_conductor
    mp = cyclotomic_polynomial(n)
    table = EigenTable(f"E_(M={chi.modulus * Mbar},L={chi.modulus * Lbar})")
    for i, ell in enumerate(primes_up_to(bound)):
        _, _, lam = expected_eigenvalue(chi, Mbar, Lbar, ell)
        vec = lam.to_field(n).coeffs
        if any(c.denominator != 1 for c in vec):
            raise ArithmeticError("eigenvalue is not integral")
        table.rows.append(EigenRow(ell, tuple(int(c) for c in vec), tuple(mp), i + 2))
    return table


def write_eigen_table(table: EigenTable, path: str) -> None:
    width = max(len(r.coeffs) for r in table.rows) if table.rows else 1
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["ell"] + [f"coeff{i}" for i in range(width)] + ["minpoly"])
        for r in table.rows:
            w.writerow([r.ell] + list(r.coeffs) + [0] * (width - len(r.coeffs))
                       + [format_poly(r.minpoly)])
