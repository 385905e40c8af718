"""Enumerate admissible (chi, Mbar, Lbar) for a level and run every check on each."""
from __future__ import annotations

import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from pathlib import Path

from .characters import DirichletCharacter, character_index, primitive_characters
from .cuspidal import cuspidal_order, delta_divisor, period_order
from .cusps import divisors
from .cyclotomic import factorize
from .eisenstein import (E_MLchi_phi, closed_form_E_MLchi, eigen_table_check, is_squarefree,
                         primes_up_to, series_level)

FORMAT_VERSION = "1"


@dataclass(frozen=True)
class AdmissibleConfig:
    chi: DirichletCharacter
    Mbar: int
    Lbar: int

    @property
    def f(self) -> int:
        return self.chi.modulus

    @property
    def M(self) -> int:
        return self.f * self.Mbar

    @property
    def L(self) -> int:
        return self.f * self.Lbar

    @property
    def level(self) -> int:
        return series_level(self.chi, self.Mbar, self.Lbar)

    def covers(self, N: int) -> bool:
        """Every prime of N divides M L."""
        return all((self.M * self.L) % p == 0 for p in factorize(N))

    def to_json(self, N: int) -> dict:
        chi = self.chi.to_json()
        chi["conductor"] = self.f
        chi["index"] = character_index(self.chi)
        return {"chi": chi, "Mbar": self.Mbar, "Lbar": self.Lbar, "M": self.M, "L": self.L,
                "series_level": self.level, "level": N, "covers_level": self.covers(N)}


def enumerate_admissible(N: int, q: int | None = None,
                         chi_filter: tuple[int, int] | None = None) -> list[AdmissibleConfig]:
    if N < 1 or N % 2 == 0:
        raise ValueError(f"N={N}: the level must be an odd positive integer")
    out = []
    for f in divisors(N):
        if N % (f * f):
            continue
        for idx, chi in enumerate(primitive_characters(f)):
            if chi_filter is not None and chi_filter != (f, idx):
                continue
            if q is not None and (q - 1) % chi.order:
                continue
            rest = N // (f * f)
            for Mbar in divisors(rest):
                if not is_squarefree(Mbar) or gcd(Mbar, f) != 1:
                    continue
                for Lbar in divisors(rest // Mbar):
                    if not is_squarefree(Lbar) or gcd(Lbar, f) != 1:
                        continue
                    if f * Mbar == 1:
                        continue
                    out.append(AdmissibleConfig(chi, Mbar, Lbar))
    return out


@dataclass(frozen=True)
class ScanConfig:
    N: int
    precision: int
    prime_bound: int
    fmt: str = "json"
    out: str = "-"
    chi_filter: tuple[int, int] | None = None
    jobs: int = 1
    timing: bool = False

    def __post_init__(self):
        if self.N < 1 or self.N % 2 == 0:
            raise ValueError(f"N={self.N}: the level must be an odd positive integer")
        if self.precision < 2 * self.prime_bound:
            raise ValueError("precision must be at least twice the prime bound")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    def to_json(self) -> dict:
        return {"level": self.N, "precision": self.precision, "prime_bound": self.prime_bound,
                "chi_filter": list(self.chi_filter) if self.chi_filter else None}


def run_config(cfg: AdmissibleConfig, N: int, precision: int, prime_bound: int,
               timing: bool = False) -> dict:
    """All checks for one configuration; failures become report entries."""
    t0 = time.perf_counter()
    report = {"config": cfg.to_json(N), "delta_divisor": [], "residue_sum_zero": None,
              "ideal_generators": [], "cuspidal_order": None, "period_order": None,
              "orders_agree": None, "eisenstein_primes": [], "two_path": None,
              "eigen_checks": [], "errors": []}
    chi, Mbar, Lbar = cfg.chi, cfg.Mbar, cfg.Lbar
    try:
        E = E_MLchi_phi(chi, Mbar, Lbar)
        ells = primes_up_to(prime_bound)
        closed = closed_form_E_MLchi(chi, Mbar, Lbar, precision * max(ells or [1]))
        report["two_path"] = E.expand(precision) == closed.truncate(precision)
        eig = eigen_table_check(chi, Mbar, Lbar, prime_bound, precision, level=N, E=closed)
        report["eigen_checks"] = [c.to_json() for c in eig.checks]
        div = delta_divisor(E, N)
        report["delta_divisor"] = div.to_json()
        report["residue_sum_zero"] = not div.total()
        co = cuspidal_order(E, N)
        report["ideal_generators"] = [g.to_json() for g in co.generators]
        report["cuspidal_order"] = co.order
        report["eisenstein_primes"] = [p for p in co.eisenstein_primes if gcd(p, 6 * N) == 1]
        po = period_order(chi, Mbar, Lbar, N)
        report["period_order"] = po
        report["orders_agree"] = po == co.order
    except Exception as exc:  # recorded, never aborts the scan
        report["errors"].append(f"{type(exc).__name__}: {exc}")
    ok = (not report["errors"] and report["two_path"] and report["residue_sum_zero"]
          and report["orders_agree"] and all(c["passed"] for c in report["eigen_checks"]))
    report["status"] = "pass" if ok else "fail"
    report["timing"] = round(time.perf_counter() - t0, 3) if timing else None
    return report


def _job(args):
    cfg, N, precision, prime_bound, timing = args
    return run_config(cfg, N, precision, prime_bound, timing)


def scan(config: ScanConfig) -> list[dict]:
    cfgs = enumerate_admissible(config.N, chi_filter=config.chi_filter)
    args = [(c, config.N, config.precision, config.prime_bound, config.timing) for c in cfgs]
    if config.jobs == 1 or len(args) <= 1:
        return [_job(a) for a in args]
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(_job, args))   # map keeps submission order


def document(config: ScanConfig, reports: list[dict]) -> dict:
    return {"version": FORMAT_VERSION, "config": config.to_json(), "reports": reports}


CSV_COLUMNS = ["row", "chi_conductor", "chi_index", "chi_order", "Mbar", "Lbar", "level",
               "d", "x", "width", "field", "coefficient", "cuspidal_order", "period_order",
               "eisenstein_primes", "status"]


def _csv_rows(reports: list[dict]):
    for r in reports:
        c = r["config"]
        base = {"chi_conductor": c["chi"]["conductor"], "chi_index": c["chi"]["index"],
                "chi_order": c["chi"]["order"], "Mbar": c["Mbar"], "Lbar": c["Lbar"],
                "level": c["level"]}
        for entry in r["delta_divisor"]:
            yield dict(base, row="cusp", d=entry["d"], x=entry["x"], width=entry["width"],
                       field=entry["coefficient"]["m"],
                       coefficient=" ".join(entry["coefficient"]["coeffs"]))
        yield dict(base, row="summary", cuspidal_order=r["cuspidal_order"],
                   period_order=r["period_order"],
                   eisenstein_primes=" ".join(map(str, r["eisenstein_primes"])),
                   status=r["status"])


def render(reports: list[dict], fmt: str, config: ScanConfig) -> str:
    if fmt == "json":
        return json.dumps(document(config, reports), indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in _csv_rows(reports):
        w.writerow(row)
    return buf.getvalue()


def emit(reports: list[dict], fmt: str, path: str, config: ScanConfig) -> None:
    text = render(reports, fmt, config)
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror}") from exc


def load_document(path: str) -> dict:
    return json.loads(Path(path).read_text())
