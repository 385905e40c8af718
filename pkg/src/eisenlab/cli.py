"""eisenlab command line: scan, expand, cusps, congruence."""
from __future__ import annotations

import argparse
import json
import sys

from .characters import character_by_index
from .congruence import congruence_check, read_eigen_table
from .cusps import enumerate_cusps
from .eisenstein import closed_form_E_MLchi, series_level
from .scanner import ScanConfig, emit, scan

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eisenlab",
                                description="Eisenstein series, cusps and cuspidal group orders")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", help="run every check for all admissible (chi, Mbar, Lbar)")
    s.add_argument("--level", type=_positive, required=True)
    s.add_argument("--precision", type=_positive, required=True)
    s.add_argument("--prime-bound", type=_positive, required=True)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--out", default="-", help="output path ('-' for stdout)")
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--chi-conductor", type=_positive)
    s.add_argument("--chi-index", type=_nonneg)
    s.add_argument("--timing", action="store_true", help="record wall time per configuration")

    e = sub.add_parser("expand", help="q-expansion of E_{M,L,chi} as JSON")
    e.add_argument("--level", type=_positive, required=True)
    e.add_argument("--chi-conductor", type=_positive, required=True)
    e.add_argument("--chi-index", type=_nonneg, required=True)
    e.add_argument("--mbar", type=_positive, required=True)
    e.add_argument("--lbar", type=_positive, required=True)
    e.add_argument("--precision", type=_positive, required=True)

    c = sub.add_parser("cusps", help="cusps of X_0(N) as JSON")
    c.add_argument("--level", type=_positive, required=True)

    g = sub.add_parser("congruence", help="check an eigenvalue table against the congruences")
    g.add_argument("--table", required=True)
    g.add_argument("--level", type=_positive, required=True)
    g.add_argument("--q", type=_positive, required=True)
    g.add_argument("--chi-conductor", type=_positive, default=1)
    g.add_argument("--chi-index", type=_nonneg, default=0)
    return p


def _usage(msg: str) -> int:
    print(f"eisenlab: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _cmd_scan(a) -> int:
    if (a.chi_conductor is None) != (a.chi_index is None):
        return _usage("--chi-conductor and --chi-index go together")
    chi_filter = (a.chi_conductor, a.chi_index) if a.chi_conductor else None
    if chi_filter:
        character_by_index(*chi_filter)
    cfg = ScanConfig(a.level, a.precision, a.prime_bound, a.format, a.out, chi_filter,
                     a.jobs, a.timing)
    reports = scan(cfg)
    emit(reports, cfg.fmt, cfg.out, cfg)
    return EXIT_OK if all(r["status"] == "pass" for r in reports) else EXIT_FAIL


def _cmd_expand(a) -> int:
    chi = character_by_index(a.chi_conductor, a.chi_index)
    level = series_level(chi, a.mbar, a.lbar)
    if a.level % level:
        return _usage(f"series level {level} does not divide --level {a.level}")
    E = closed_form_E_MLchi(chi, a.mbar, a.lbar, a.precision)
    doc = E.to_json()
    doc["ambient_level"] = a.level
    doc["chi"] = chi.to_json()
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if E.is_holomorphic() else EXIT_FAIL


def _cmd_cusps(a) -> int:
    json.dump([c.to_json() for c in enumerate_cusps(a.level)], sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_congruence(a) -> int:
    chi = character_by_index(a.chi_conductor, a.chi_index)
    table = read_eigen_table(a.table)
    rep = congruence_check(table, chi, a.q, a.level)
    json.dump(rep.to_json(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    for w in rep.warnings:
        print(f"eisenlab: warning: {w}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {"scan": _cmd_scan, "expand": _cmd_expand, "cusps": _cmd_cusps,
            "congruence": _cmd_congruence}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, IndexError, OSError) as exc:
        return _usage(str(exc))


if __name__ == "__main__":
    sys.exit(main())
