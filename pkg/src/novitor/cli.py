"""Command-line front end.

Commands:

* ``zeta {orbits|primes|homology|descent} FILE`` -- the zeta series of the
  file's data, by the named route;
* ``novikov FILE {validate|ranks|tower}`` -- build the Novikov complex of an
  instance file and validate it, report homology ranks, or check the
  truncation tower;
* ``torsion FILE {complex|map|descent-closed|descent-generic}`` -- torsion
  of a complex file, of an instance's comparison map, or of its descent
  system by either algorithm;
* ``verify FILE`` -- the central identity: comparison torsion equals the
  inverse zeta series;
* ``oracle cat-map --matrix a,b,c,d --iterates K`` -- fixed-point counts of
  a hyperbolic 2x2 toral map by literal lattice enumeration;
* ``expand EXPR`` -- Laurent expansion of an exact rational expression.

Exit codes: 0 all verdicts pass, 1 a verification failed, 2 bad input.
Machine output (``--json FILE``) is deterministic: identical inputs give
byte-identical reports.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .complexes import torsion, validate_complex
from .descent import torsion_closed_form, torsion_generic, verify_instance
from .errors import InputError, NovitorError
from .instances import (
    load_complex,
    load_homology,
    load_instance,
    load_orbits,
    load_primes,
)
from .morse import novikov_homology_ranks, novikov_tower
from .complexes import tower_check
from .parsing import parse_rational, render_series, series_coefficient_strings
from .rational import rf_expand
from .series import DEFAULT_ORDER, is_integral
from .zeta import (
    cat_map_oracle,
    zeta_from_descent,
    zeta_from_homology,
    zeta_from_orbits,
    zeta_from_primes,
)


class Report:
    """Accumulates results and verdicts; serializes deterministically."""

    def __init__(self, command):
        self.command = list(command)
        self.input = None
        self.results = {}
        self.verdicts = []

    def set_input(self, path, payload: bytes):
        self.input = {"path": str(path), "sha256": hashlib.sha256(payload).hexdigest()}

    def add_series(self, name, series):
        self.results[name] = {
            "text": render_series(series),
            "coefficients": series_coefficient_strings(series),
            "order": series.order,
            "integral": is_integral(series),
        }

    def add(self, name, value):
        self.results[name] = value

    def verdict(self, name, passed):
        self.verdicts.append({"name": name, "pass": bool(passed)})

    @property
    def exit_code(self):
        return 0 if all(v["pass"] for v in self.verdicts) else 1

    def to_dict(self):
        return {
            "command": self.command,
            "input": self.input,
            "results": self.results,
            "verdicts": self.verdicts,
            "exit_code": self.exit_code,
        }

    def dump(self, json_path=None):
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if json_path:
            with open(json_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        return text

    def print_human(self):
        for name, value in self.results.items():
            if isinstance(value, dict) and "text" in value:
                flag = "" if value.get("integral", True) else "   [non-integral]"
                print(f"{name}: {value['text']}{flag}")
            else:
                print(f"{name}: {value}")
        for v in self.verdicts:
            print(f"{'PASS' if v['pass'] else 'FAIL'} {v['name']}")


def _read_json(report, path):
    with open(path, "rb") as fh:
        payload = fh.read()
    report.set_input(path, payload)
    try:
        return json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(path, f"invalid JSON: {exc}") from exc


def _cmd_zeta(args, report):
    obj = _read_json(report, args.file)
    order = args.order
    if args.source == "orbits":
        orbit_set = load_orbits(obj, args.file)
        series = zeta_from_orbits(orbit_set, order)
    elif args.source == "primes":
        series = zeta_from_primes(load_primes(obj, args.file), order)
    elif args.source == "homology":
        series = zeta_from_homology(load_homology(obj, args.file), order)
    else:
        from .instances import load_descent

        descent = load_descent(obj, args.file, n_data=max(order, DEFAULT_ORDER))
        series = zeta_from_descent(
            [descent.h(k) for k in range(descent.r_complex.top_degree + 1)], order
        )
    report.add_series("zeta", series)
    report.verdict("zeta_integral", is_integral(series))


def _cmd_novikov(args, report):
    obj = _read_json(report, args.file)
    inst = load_instance(obj, args.file)
    order = args.order  # beyond-N_data requests must fail, not clamp
    complex_ = inst.novikov_complex(order)
    if args.action == "validate":
        rep = validate_complex(complex_)
        report.add("validate", str(rep))
        report.verdict("boundary_square_zero", rep.ok)
    elif args.action == "ranks":
        ranks = novikov_homology_ranks(complex_)
        report.add("homology_ranks", ranks)
        if inst.simplicial is not None:
            report.verdict("ranks_match_simplicial", inst.first_iso_check(order))
    else:
        levels = args.levels or min(5, order)
        tower = novikov_tower(complex_, levels)
        rep = tower_check(tower)
        report.add("tower", str(rep))
        report.verdict("tower_compatible", rep.ok)


def _cmd_torsion(args, report):
    obj = _read_json(report, args.file)
    order = args.order
    if args.mode == "complex":
        complex_ = load_complex(obj, args.file)
        result = torsion(complex_, order)
        report.add("raw", str(result.raw))
        report.add_series("torsion", result.witt.series)
        report.add("stripped", f"{'+' if result.sign > 0 else '-'}t^{result.power}")
        return
    inst = load_instance(obj, args.file)
    if args.mode == "map":
        from .complexes import torsion_of_map

        result = torsion_of_map(inst.comparison_map(order), order)
        report.add("raw", str(result.raw))
        report.add_series("torsion", result.witt.series)
        return
    if inst.descent is None:
        raise InputError(args.file, "instance has no descent system")
    if args.mode == "descent-closed":
        witt = torsion_closed_form(inst.descent, order)
        report.add_series("torsion", witt.series)
    else:
        result = torsion_generic(inst.descent, order)
        report.add_series("torsion", result.witt.series)
        closed = torsion_closed_form(inst.descent, order)
        report.verdict("matches_closed_form", result.witt.series == closed.series)


def _cmd_verify(args, report):
    obj = _read_json(report, args.file)
    inst = load_instance(obj, args.file)
    outcome = verify_instance(inst, args.order)
    report.add_series("torsion", outcome.torsion_series)
    report.add_series("zeta_inverse", outcome.zeta_inverse)
    report.add("torsion_route", outcome.torsion_route)
    report.add("zeta_route", outcome.zeta_route)
    report.verdict("torsion_equals_inverse_zeta", outcome.match)
    if outcome.closed_form_agrees is not None:
        report.verdict("generic_equals_closed_form", outcome.closed_form_agrees)
    if outcome.telescoping_ok is not None:
        report.verdict("torsion_times_zeta_is_one", outcome.telescoping_ok)
    report.verdict("zeta_integral", outcome.zeta_integral)


def _cmd_oracle(args, report):
    try:
        entries = [int(x) for x in args.matrix.split(",")]
    except ValueError as exc:
        raise InputError("--matrix", f"expected four integers: {exc}") from exc
    if len(entries) != 4:
        raise InputError("--matrix", "expected four integers a,b,c,d")
    a = [[entries[0], entries[1]], [entries[2], entries[3]]]
    counts = cat_map_oracle(a, args.iterates)
    report.add("lefschetz_numbers", counts)


def _cmd_expand(args, report):
    value = parse_rational(args.expr, "<expr>")
    series = rf_expand(value, args.order)
    report.add_series("expansion", series)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="novitor",
        description="Exact Novikov-complex, zeta-function and torsion computations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order N")
        p.add_argument("--json", dest="json_out", metavar="OUT", help="write machine report")

    p = sub.add_parser("zeta", help="zeta series from orbits, primes, homology or descent data")
    p.add_argument("source", choices=["orbits", "primes", "homology", "descent"])
    p.add_argument("file")
    common(p)

    p = sub.add_parser("novikov", help="build and inspect the Novikov complex of an instance")
    p.add_argument("file")
    p.add_argument("action", choices=["validate", "ranks", "tower"])
    p.add_argument("--levels", type=int, help="tower height (default min(5, order))")
    common(p)

    p = sub.add_parser("torsion", help="torsion of a complex, comparison map or descent system")
    p.add_argument("file")
    p.add_argument(
        "mode", choices=["complex", "map", "descent-closed", "descent-generic"]
    )
    common(p)

    p = sub.add_parser("verify", help="comparison torsion equals the inverse zeta series")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("oracle", help="fixed-point counting oracles")
    p.add_argument("kind", choices=["cat-map"])
    p.add_argument("--matrix", required=True, help="a,b,c,d entries of the 2x2 integer matrix")
    p.add_argument("--iterates", type=int, default=8)
    common(p)

    p = sub.add_parser("expand", help="Laurent expansion of an exact rational expression")
    p.add_argument("expr")
    common(p)
    return parser


_HANDLERS = {
    "zeta": _cmd_zeta,
    "novikov": _cmd_novikov,
    "torsion": _cmd_torsion,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "expand": _cmd_expand,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    # the output path is not an input: keep machine reports byte-identical
    echoed = []
    skip = False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok == "--json":
            skip = True
            continue
        if tok.startswith("--json="):
            continue
        echoed.append(tok)
    report = Report(["novitor"] + echoed)
    try:
        _HANDLERS[args.command](args, report)
    except NovitorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.print_human()
    if getattr(args, "json_out", None):
        report.dump(args.json_out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
