"""Command-line front end.

Exit codes: 0 on success, 1 when the input is rejected for a mathematical or
schema reason, 2 on a malformed command line.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache
from importlib import resources

import jsonschema

from . import cohomology, gauge, hilton, homotopy_tables, splitter
from .errors import SixSplitError
from .spaces import Atom, Localization, atoms_of, normalize, parse, to_text

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class InputError(SixSplitError):
    """Unreadable or schema-invalid input document."""


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("sixsplit").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


@lru_cache(maxsize=None)
def _validator(name: str):
    schema = load_schema(name)
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    return cls(schema)


def check_document(doc) -> None:
    try:
        _validator("invariants").validate(doc)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {exc.message}", "invariants.schema.json") from None


def check_report(report: dict) -> None:
    _validator("report").validate(report)


def read_invariants(path: str) -> splitter.ManifoldInvariants:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None
    check_document(doc)
    return splitter.validate(doc)


# ------------------------------------------------------------------ commands


def _group_entry(degree, value) -> dict:
    entry = {"degree": degree, "text": str(value)}
    if hasattr(value, "to_json"):
        entry["value"] = value.to_json()
    return entry


def cmd_validate(args):
    inv = read_invariants(args.file)
    table = splitter.homology_table(inv)
    report = {
        "case": inv.case,
        "invariants": inv.to_document(),
        "groups": [_group_entry(i, g) for i, g in enumerate(table)],
        "warnings": list(inv.warnings),
        "citations": [splitter.CITE_TABLE],
    }
    lines = [f"valid; case {inv.case}", f"invariants: {json.dumps(inv.to_document())}"]
    lines += [f"H_{i}(M) = {g}" for i, g in enumerate(table)]
    return report, lines


def cmd_split(args):
    inv = read_invariants(args.file)
    rep = splitter.splitting_report(inv)
    report = rep.to_json()
    lines = [f"case {rep.case}", f"Sigma M ~ {rep.space}  (away from 2)"]
    lines += [f"  {a}    [{c}]" for a, c in rep.summands]
    return report, lines


def cmd_cohomology(args):
    inv = read_invariants(args.file)
    th = cohomology.theory_from_name(args.theory)
    degrees = [args.degree] if args.degree is not None else list(range(0, 7))
    groups, lines = [], [f"case {inv.case}; theory {th.name}; reduced, away from 2"]
    for n in degrees:
        value = cohomology.evaluate_manifold(th, inv, n)
        contribs = cohomology.manifold_contributions(th, inv, n)
        entry = _group_entry(n, value)
        entry["contributions"] = [c.to_json() for c in contribs]
        groups.append(entry)
        lines.append(f"h^{n}(M) = {value}")
        if args.degree is not None:
            lines += [f"  h^{n}({c.name}) = {c.value}" for c in contribs]
    report = {
        "case": inv.case,
        "theory": th.name,
        "groups": groups,
        "warnings": list(inv.warnings),
        "citations": [cohomology.CITE_WEDGE + f", case {inv.case}"],
    }
    return report, lines


def cmd_gauge(args):
    inv = read_invariants(args.file)
    if args.trivial:
        prod = gauge.gauge_trivial(inv, args.lie)
        cites = [gauge.CITE_T13 + f", case {inv.case}", gauge.CITE_L51]
    else:
        prod = gauge.gauge_su(inv, args.su, args.c3)
        cites = [gauge.CITE_T58 + f", case {inv.case}", gauge.CITE_L510]
    report = prod.to_json()
    report["warnings"] = list(inv.warnings)
    report["citations"] = cites
    lines = [f"case {inv.case}", f"gauge group ~ {prod}  (away from 2)"]
    lines += [f"  {f}    [{f.citation}]" for f in prod.factors]
    if args.pi is not None:
        value = gauge.pi_factors(prod, args.pi)
        report["pi"] = _group_entry(args.pi, value)
        lines.append(f"pi_{args.pi} = {value}")
    return report, lines


def cmd_pi(args):
    if args.table:
        rows = homotopy_tables.table_entries()
        lines = [f"pi_{r['degree']}({r['space']}) = {r['group']}    [{r['citation']}]" for r in rows]
        return {"case": None, "groups": [], "table": rows, "warnings": [], "citations": []}, lines
    if args.degree is None or (args.atom is None and args.wedge is None):
        raise _Usage("pi needs --degree and one of --atom / --wedge (or --table)")
    n = args.degree
    if args.atom is not None:
        x = parse(args.atom)
        if not isinstance(x, Atom):
            atoms = atoms_of(normalize(x, Localization.AWAY_FROM_2))
            if len(atoms) != 1:
                raise homotopy_tables.NotCatalogued(f"{args.atom} is not a single atom; use --wedge")
            x = atoms[0]
        g = homotopy_tables.pi(x, n)
        entry = _group_entry(n, g)
        entry["space"] = str(x)
        report = {"case": None, "groups": [entry], "warnings": [], "citations": [g.citation]}
        gens = ", ".join(f"{lab} (order {o or 'inf'})" for lab, o in zip(g.generators, g.orders))
        lines = [f"pi_{n}({x}) = {g}    [{g.citation}]"] + ([f"  generators: {gens}"] if gens else [])
        return report, lines
    res = hilton.pi_wedge(parse(args.wedge), n)
    groups, lines, cites = [], [], []
    for bp, g in res.summands:
        entry = _group_entry(n, g)
        entry["basic_product"] = bp.label(res.letter_names)
        entry["smash"] = to_text(bp.normalized)
        groups.append(entry)
        cites.append(g.citation)
        lines.append(f"  {bp.label(res.letter_names)}: pi_{n}({to_text(bp.normalized)}) = {g}    [{g.citation}]")
    total = res.group
    lines.insert(0, f"pi_{n}({args.wedge}) = {total}  (away from 2, Hilton-Milnor)")
    report = {
        "case": None,
        "total": {"text": str(total), "group": total.to_json()},
        "groups": groups,
        "warnings": [],
        "citations": sorted(set(cites)),
    }
    return report, lines


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sixsplit",
        description="Suspension splittings, cohomology and gauge groups of simply connected 6-manifolds.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="invariants JSON document")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        return sp

    with_file("validate", "check an invariants document and print the homology table")
    with_file("split", "print the wedge decomposition of Sigma M")

    c = with_file("cohomology", "evaluate a cohomology theory on M")
    c.add_argument("--theory", required=True, help="HZ, HZmod:<q> or KU")
    deg = c.add_mutually_exclusive_group()
    deg.add_argument("--degree", type=int)
    deg.add_argument("--all", action="store_true", help="degrees 0..6 (default)")

    g = with_file("gauge", "decompose a gauge group")
    mode = g.add_mutually_exclusive_group(required=True)
    mode.add_argument("--trivial", action="store_true", help="trivial bundle")
    mode.add_argument("--su", type=int, metavar="N", help="SU(N)-bundle with c2 = 0")
    g.add_argument("--lie", help="group label for --trivial")
    g.add_argument("--c3", type=int, help="third Chern class for --su")
    g.add_argument("--pi", type=int, metavar="I", help="also compute pi_I of the product")

    q = sub.add_parser("pi", help="odd-primary homotopy groups")
    src = q.add_mutually_exclusive_group()
    src.add_argument("--atom", help="catalogue atom, e.g. 'P4(27)'")
    src.add_argument("--wedge", help="wedge of suspensions, e.g. 'S3 v S3'")
    q.add_argument("--degree", type=int)
    q.add_argument("--table", action="store_true", help="print the catalogued table")
    q.add_argument("--json", action="store_true")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "split": cmd_split,
    "cohomology": cmd_cohomology,
    "gauge": cmd_gauge,
    "pi": cmd_pi,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "gauge":
        if args.trivial and not args.lie:
            parser.print_usage(err)
            print("sixsplit gauge: --trivial needs --lie <label>", file=err)
            return EXIT_USAGE
        if args.su is not None and args.c3 is None:
            parser.print_usage(err)
            print("sixsplit gauge: --su needs --c3 <l>", file=err)
            return EXIT_USAGE
    try:
        report, lines = COMMANDS[args.command](args)
    except _Usage as exc:
        parser.print_usage(err)
        print(f"sixsplit {args.command}: {exc}", file=err)
        return EXIT_USAGE
    except SixSplitError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    if getattr(args, "json", False):
        check_report(report)
        print(json.dumps(report, indent=2), file=out)
    else:
        for w in report.get("warnings", []):
            print(f"warning: {w}", file=err)
        print("\n".join(lines), file=out)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
