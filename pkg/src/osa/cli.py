"""Command-line front end.

Subcommands: circuits, gb, dims, torsion, search, verify, report.  Every
command assembles a ReportDocument; the text rendering goes to stdout and
``--json PATH`` writes the canonical JSON form (sorted keys, LF endings), so
identical inputs produce byte-identical files.

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .domains import QQ, Domain, domain_from_tag
from .errors import InternalInvariantError
from .exterior import VariableOrder, elements_of, initial_monomial
from .matroid import Arrangement, Matroid, MatroidError
from .osideal import forge_basis, graded_dims
from .search import Exhaustive, RandomSampling, minimize_forge_count, minimize_total_gb_size
from .torsion import torsion_report
from .search import verify_proposition

DEFAULT_MAX_N = 12


class ParseError(ValueError):
    pass


@dataclass
class ParsedInput:
    """A matroid plus the display labels and normalized echo of its source."""

    matroid: Matroid
    labels: tuple[str, ...]
    format: str
    echo: dict


@dataclass
class ReportDocument:
    command: str
    input: dict
    matroid: dict
    payload: dict
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "input": self.input,
            "matroid": self.matroid,
            "payload": self.payload,
            "meta": self.meta,
            "tool": {"name": "osa", "version": __version__},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


# -- input parsing -----------------------------------------------------------


def _content_lines(path: str) -> list[tuple[int, str]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    out = []
    for lineno, line in enumerate(raw, start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            out.append((lineno, stripped))
    return out


def _max_n() -> int:
    value = os.environ.get("OSA_MAX_N", "")
    try:
        return int(value) if value else DEFAULT_MAX_N
    except ValueError:
        raise ParseError(f"OSA_MAX_N={value!r} is not an integer")


def _check_size(n: int, path: str) -> None:
    cap = _max_n()
    if n > cap:
        raise ParseError(
            f"{path}: ground-set size {n} exceeds OSA_MAX_N={cap}"
        )


def _take_labels(lines: list[tuple[int, str]], n: int, path: str):
    """Split off an optional 'labels:' line; returns (labels or None, rest)."""
    labels = None
    rest = []
    for lineno, text in lines:
        if text.startswith("labels:"):
            if labels is not None:
                raise ParseError(f"{path}:{lineno}: duplicate labels line")
            labels = tuple(text[len("labels:"):].split())
            if len(labels) != n:
                raise ParseError(
                    f"{path}:{lineno}: expected {n} labels, got {len(labels)}"
                )
            if len(set(labels)) != n:
                raise ParseError(f"{path}:{lineno}: labels must be distinct")
        else:
            rest.append((lineno, text))
    return labels, rest


def parse_input(path: str, fmt: str | None = None) -> ParsedInput:
    """Parse a circuits, matrix, or graph file into a validated matroid."""
    if fmt is None:
        suffix = os.path.splitext(path)[1].lstrip(".").lower()
        if suffix in ("circuits", "matrix", "graph"):
            fmt = suffix
        else:
            raise ParseError(
                f"{path}: cannot infer format from extension; pass --format"
            )
    if fmt not in ("circuits", "matrix", "graph"):
        raise ParseError(f"unknown input format {fmt!r}")
    lines = _content_lines(path)
    if not lines:
        raise ParseError(f"{path}: empty input")
    try:
        if fmt == "circuits":
            return _parse_circuits(path, lines)
        if fmt == "matrix":
            return _parse_matrix(path, lines)
        return _parse_graph(path, lines)
    except MatroidError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse_circuits(path: str, lines) -> ParsedInput:
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise ParseError(f"{path}:{lineno}: expected header 'n <N>'")
    n = int(parts[1])
    _check_size(n, path)
    labels, rest = _take_labels(lines[1:], n, path)
    if labels is None:
        labels = tuple(str(i) for i in range(1, n + 1))
    circuits = []
    for lineno, text in rest:
        try:
            members = [int(tok) for tok in text.split()]
        except ValueError:
            raise ParseError(f"{path}:{lineno}: circuit entries must be integers")
        if any(e < 1 or e > n for e in members):
            raise ParseError(f"{path}:{lineno}: element out of range 1..{n}")
        circuits.append(members)
    matroid = Matroid.from_circuits(n, circuits)
    echo = {
        "format": "circuits",
        "n": n,
        "circuits": [
            [labels[e - 1] for e in elements_of(c)] for c in matroid.circuits
        ],
    }
    return ParsedInput(matroid, labels, "circuits", echo)


def _parse_matrix(path: str, lines) -> ParsedInput:
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"{path}:{lineno}: expected header '<n> <d>'")
    n, d = int(parts[0]), int(parts[1])
    _check_size(n, path)
    labels, rest = _take_labels(lines[1:], n, path)
    if labels is None:
        labels = tuple(str(i) for i in range(1, n + 1))
    if len(rest) != n:
        raise ParseError(f"{path}: expected {n} normal rows, got {len(rest)}")
    rows = []
    for lineno, text in rest:
        entries = text.split()
        if len(entries) != d:
            raise ParseError(f"{path}:{lineno}: expected {d} entries")
        try:
            rows.append([Fraction(tok) for tok in entries])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{path}:{lineno}: entries must be exact rationals")
    matroid = Matroid.from_matrix(Arrangement(rows))
    echo = {
        "format": "matrix",
        "n": n,
        "ncols": d,
        "rows": [[str(v) for v in row] for row in rows],
        "labels": list(labels),
    }
    return ParsedInput(matroid, labels, "matrix", echo)


def _parse_graph(path: str, lines) -> ParsedInput:
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"{path}:{lineno}: expected header '<V> <E>'")
    vertices, nedges = int(parts[0]), int(parts[1])
    _check_size(nedges, path)
    labels, rest = _take_labels(lines[1:], nedges, path)
    if len(rest) != nedges:
        raise ParseError(f"{path}: expected {nedges} edges, got {len(rest)}")
    edges = []
    for lineno, text in rest:
        parts = text.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: vertices must be integers")
        edges.append((u, v))
    matroid = Matroid.from_graph(vertices, edges)
    if labels is None:
        labels = tuple(f"{u}-{v}" for u, v in edges)
    echo = {
        "format": "graph",
        "vertices": vertices,
        "edges": [[u, v] for u, v in edges],
        "labels": list(labels),
    }
    return ParsedInput(matroid, labels, "graph", echo)


# -- shared rendering helpers ------------------------------------------------


def _matroid_summary(parsed: ParsedInput) -> dict:
    m = parsed.matroid
    return {
        "n": m.n,
        "rank": m.full_rank,
        "circuit_census": {str(k): v for k, v in sorted(m.circuit_census().items())},
        "circuits": [
            [parsed.labels[e - 1] for e in elements_of(c)] for c in m.circuits
        ],
    }


def _labelled(parsed: ParsedInput, mask: int) -> list[str]:
    return [parsed.labels[e - 1] for e in elements_of(mask)]


def _parse_order(parsed: ParsedInput, text: str | None) -> VariableOrder:
    n = parsed.matroid.n
    if text is None:
        return VariableOrder.natural(n)
    tokens = text.split()
    index = {label: i for i, label in enumerate(parsed.labels, start=1)}
    sequence = []
    for tok in tokens:
        if tok not in index:
            raise ParseError(f"unknown element label {tok!r} in --order")
        sequence.append(index[tok])
    if len(sequence) != n or len(set(sequence)) != n:
        raise ParseError(f"--order must list all {n} elements exactly once")
    return VariableOrder.from_sequence(sequence)


def _parse_fields(text: str) -> list[Domain]:
    out = []
    for tag in text.split(","):
        tag = tag.strip()
        if not tag:
            continue
        try:
            dom = domain_from_tag(tag)
        except ValueError as exc:
            raise ParseError(str(exc))
        if not dom.is_field():
            raise ParseError(f"tag {tag!r} is not a field tag")
        out.append(dom)
    if not out:
        raise ParseError("no field tags given")
    return out


def _element_json(parsed: ParsedInput, order: VariableOrder, g) -> dict:
    terms = sorted(g.terms.items(), key=lambda t: order.monomial_key(t[0]), reverse=True)
    return {
        "leading_monomial": _labelled(parsed, initial_monomial(order, g)),
        "terms": [
            {"monomial": _labelled(parsed, m), "coeff": str(c)} for m, c in terms
        ],
    }


def _element_text(parsed: ParsedInput, order: VariableOrder, g) -> str:
    terms = sorted(g.terms.items(), key=lambda t: order.monomial_key(t[0]), reverse=True)
    bits = []
    for m, c in terms:
        name = "e{%s}" % ",".join(_labelled(parsed, m)) if m else "1"
        if c == 1:
            bits.append(f"+ {name}" if bits else name)
        elif c == -1:
            bits.append(f"- {name}" if bits else f"-{name}")
        else:
            sign = "- " if str(c).startswith("-") else "+ "
            mag = str(c).lstrip("-")
            bits.append(f"{sign}{mag}*{name}" if bits else f"{c}*{name}")
    return " ".join(bits)


def _dims_payload(parsed: ParsedInput, domains: list[Domain], max_degree) -> dict:
    tables = {}
    for dom in domains:
        table = graded_dims(parsed.matroid, dom, max_degree=max_degree)
        tables[dom.tag] = [
            {
                "degree": row.degree,
                "ideal": row.ideal,
                "decomposable_ideal": row.decomposable_ideal,
                "algebra": row.algebra,
                "decomposable_algebra": row.decomposable_algebra,
                "quotient": row.quotient,
            }
            for row in table.rows
        ]
    agree = all(tables[d.tag] == tables[domains[0].tag] for d in domains)
    return {"tables": tables, "fields_agree": agree}


# -- subcommands ---------------------------------------------------------------


def _cmd_circuits(parsed: ParsedInput, args) -> tuple[ReportDocument, str]:
    m = parsed.matroid
    payload = {
        "homotopy_degree": m.homotopy_degree(),
    }
    doc = ReportDocument(
        "circuits", parsed.echo, _matroid_summary(parsed), payload, {}
    )
    lines = [
        f"n={m.n} rank={m.full_rank} circuits={len(m.circuits)}",
    ]
    for c in m.circuits:
        lines.append(f"  ({', '.join(_labelled(parsed, c))})")
    hd = payload["homotopy_degree"]
    lines.append(f"homotopy degree (min |C|>3 minus 2): {hd if hd is not None else 'none'}")
    return doc, "\n".join(lines) + "\n"


def _cmd_gb(parsed: ParsedInput, args) -> tuple[ReportDocument, str]:
    order = _parse_order(parsed, args.order)
    domain = domain_from_tag(args.field)
    if not domain.is_field():
        raise ParseError(f"--field {args.field!r} is not a field")
    basis = forge_basis(parsed.matroid, order, domain)
    # Each forge element is the monic boundary of one circuit, so the circuit
    # is the union of its term monomials.
    circuits = []
    for g in basis.elements:
        mask = 0
        for m in g.terms:
            mask |= m
        circuits.append(mask)
    payload = {
        "source": basis.source,
        "field": domain.tag,
        "size": len(basis),
        "elements": [_element_json(parsed, order, g) for g in basis.elements],
        "circuits": [_labelled(parsed, c) for c in circuits],
    }
    meta = {
        "order": [parsed.labels[e - 1] for e in order.sequence],
        "field": domain.tag,
    }
    doc = ReportDocument("gb", parsed.echo, _matroid_summary(parsed), payload, meta)
    lines = [
        "order: " + " < ".join(meta["order"]),
        f"reduced Groebner basis ({basis.source}, field {domain.tag}): "
        f"{len(basis)} elements",
    ]
    for c, g in zip(circuits, basis.elements):
        lines.append(
            f"  d(e{{{','.join(_labelled(parsed, c))}}}) = "
            + _element_text(parsed, order, g)
        )
    return doc, "\n".join(lines) + "\n"


def _cmd_dims(parsed: ParsedInput, args) -> tuple[ReportDocument, str]:
    domains = _parse_fields(args.fields)
    max_degree = args.max_degree if args.max_degree is not None else parsed.matroid.n
    payload = _dims_payload(parsed, domains, max_degree)
    meta = {"fields": [d.tag for d in domains], "max_degree": max_degree}
    doc = ReportDocument("dims", parsed.echo, _matroid_summary(parsed), payload, meta)
    lines = []
    for tag, table in payload["tables"].items():
        lines.append(f"field {tag}:")
        lines.append("  q | dim I^q | dim L+I^q | dim A^q | dim A+^q | dim (I/L+I)^q")
        for row in table:
            lines.append(
                f"  {row['degree']} | {row['ideal']:7d} | {row['decomposable_ideal']:9d} |"
                f" {row['algebra']:7d} | {row['decomposable_algebra']:8d} |"
                f" {row['quotient']:13d}"
            )
    lines.append(
        "field tables agree" if payload["fields_agree"] else "FIELD TABLES DISAGREE"
    )
    return doc, "\n".join(lines) + "\n"


def _cmd_torsion(parsed: ParsedInput, args) -> tuple[ReportDocument, str]:
    report = torsion_report(parsed.matroid)
    payload = {
        "torsion_free": report.torsion_free,
        "field_dims_agree": report.field_dims_agree,
        "fields": [t.field for t in report.dims],
        "degrees": [
            {
                "degree": d.degree,
                "aplus_divisors": list(d.aplus.divisors),
                "aplus_free_rank": d.aplus_free_rank,
                "aplus_torsion_free": d.aplus_torsion_free,
                "quotient_divisors": list(d.quotient.divisors),
                "quotient_free_rank": d.quotient_free_rank,
                "quotient_torsion_free": d.quotient_torsion_free,
            }
            for d in report.degrees
        ],
    }
    doc = ReportDocument("torsion", parsed.echo, _matroid_summary(parsed), payload, {})
    lines = ["q | A+ divisors | A+ free rank | I/L+I divisors | I/L+I free rank"]
    for d in payload["degrees"]:
        lines.append(
            f"{d['degree']} | {d['aplus_divisors']} | {d['aplus_free_rank']:4d} | "
            f"{d['quotient_divisors']} | {d['quotient_free_rank']:4d}"
        )
    lines.append(
        "torsion free in all degrees"
        if payload["torsion_free"]
        else "TORSION DETECTED"
    )
    lines.append(
        "field dimension tables agree"
        if payload["field_dims_agree"]
        else "FIELD DIMENSIONS DISAGREE"
    )
    return doc, "\n".join(lines) + "\n"


def _strategy_from_args(args):
    if args.exhaustive:
        return Exhaustive()
    if args.samples is None or args.seed is None:
        raise ParseError(
            "random search needs both --samples and --seed (or pass --exhaustive)"
        )
    return RandomSampling(seed=args.seed, samples=args.samples)


def _cmd_search(parsed: ParsedInput, args) -> tuple[ReportDocument, str]:
    strategy = _strategy_from_args(args)
    if args.total:
        result = minimize_total_gb_size(parsed.matroid, strategy)
        objective = "total-gb-size"
    else:
        if args.degree is None:
            raise ParseError("search needs --degree Q (or --total)")
        result = minimize_forge_count(parsed.matroid, args.degree, strategy)
        objective = "forge-count"
    payload = {
        "objective": objective,
        "degree": result.degree,
        "best_order": [parsed.labels[e - 1] for e in result.best_order.sequence],
        "best_count": result.best_count,
        "orders_examined": result.orders_examined,
        "histogram": {str(k): v for k, v in result.histogram},
    }
    meta = {"strategy": result.strategy}
    doc = ReportDocument("search", parsed.echo, _matroid_summary(parsed), payload, meta)
    lines = [
        f"objective: {objective}"
        + (f" at degree {result.degree}" if result.degree is not None else ""),
        f"strategy: {result.strategy}",
        f"orders examined: {result.orders_examined}",
        f"best count: {result.best_count}",
        "best order: " + " < ".join(payload["best_order"]),
        "histogram (count: orders): "
        + ", ".join(f"{k}: {v}" for k, v in result.histogram),
    ]
    return doc, "\n".join(lines) + "\n"


def _cmd_verify(parsed: ParsedInput, args) -> tuple[ReportDocument, str]:
    domains = _parse_fields(args.fields)
    verified = verify_proposition(parsed.matroid, args.degree, domains)
    result = minimize_forge_count(parsed.matroid, args.degree, Exhaustive())
    dims = {}
    for dom in domains:
        if args.degree > parsed.matroid.n:
            dims[dom.tag] = 0
        else:
            dims[dom.tag] = graded_dims(
                parsed.matroid, dom, max_degree=args.degree
            ).quotient_dim(args.degree)
    payload = {
        "degree": args.degree,
        "fields": [d.tag for d in domains],
        "minimum": result.best_count,
        "dims": dims,
        "orders_examined": result.orders_examined,
        "proposition_verified": verified,
    }
    doc = ReportDocument(
        "verify", parsed.echo, _matroid_summary(parsed), payload,
        {"fields": payload["fields"]},
    )
    lines = [
        f"degree {args.degree}: exhaustive minimum of forge count = {result.best_count}",
        "quotient dimensions: "
        + ", ".join(f"{tag}: {value}" for tag, value in dims.items()),
        f"proposition verified: {str(verified).lower()}",
    ]
    return doc, "\n".join(lines) + "\n"


def _cmd_report(parsed: ParsedInput, args) -> tuple[ReportDocument, str]:
    m = parsed.matroid
    dims_payload = _dims_payload(parsed, _parse_fields("q,f2,f3,f5"), m.n)
    report = torsion_report(m)
    payload = {
        "homotopy_degree": m.homotopy_degree(),
        "dims": dims_payload,
        "torsion": {
            "torsion_free": report.torsion_free,
            "field_dims_agree": report.field_dims_agree,
            "degrees": [
                {
                    "degree": d.degree,
                    "aplus_divisors": list(d.aplus.divisors),
                    "quotient_divisors": list(d.quotient.divisors),
                    "quotient_free_rank": d.quotient_free_rank,
                }
                for d in report.degrees
            ],
        },
    }
    doc = ReportDocument("report", parsed.echo, _matroid_summary(parsed), payload, {})
    lines = [
        f"n={m.n} rank={m.full_rank} circuits={len(m.circuits)}",
        f"torsion free: {str(report.torsion_free).lower()}",
        f"field dims agree: {str(report.field_dims_agree).lower()}",
    ]
    return doc, "\n".join(lines) + "\n"


_COMMANDS = {
    "circuits": _cmd_circuits,
    "gb": _cmd_gb,
    "dims": _cmd_dims,
    "torsion": _cmd_torsion,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def run_command(command: str, args) -> ReportDocument:
    """Programmatic entry: parse the input file and execute one subcommand."""
    parsed = parse_input(args.file, args.format)
    doc, _ = _COMMANDS[command](parsed, args)
    return doc


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; for this tool usage errors are input
    # errors (exit 1), and 2 is reserved for internal invariant violations.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="osa", description=__doc__)
    parser.add_argument("--version", action="version", version=f"osa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="input file (.circuits, .matrix, or .graph)")
        p.add_argument(
            "--format", choices=("circuits", "matrix", "graph"), default=None,
            help="input format (default: from file extension)",
        )
        p.add_argument("--json", metavar="PATH", default=None,
                       help="also write the canonical JSON report to PATH")
        return p

    add("circuits", "list circuits and the matroid summary")

    p = add("gb", "reduced Groebner basis for a variable order")
    p.add_argument("--order", default=None,
                   help="all element labels, order-smallest first")
    p.add_argument("--field", default="q", help="coefficient field tag (q, f2, ...)")

    p = add("dims", "graded dimension tables over one or more fields")
    p.add_argument("--fields", default="q", help="comma-separated field tags")
    p.add_argument("--max-degree", type=int, default=None, dest="max_degree")

    add("torsion", "Smith-normal-form torsion certificates")

    p = add("search", "minimize forge-basis counts over variable orders")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--total", action="store_true",
                   help="minimize total basis size instead of one degree")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = add("verify", "verify the counting isomorphism in one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--fields", default="q,f2,f3")

    add("report", "full JSON-oriented report (dims + torsion)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        parsed = parse_input(args.file, args.format)
        doc, text = _COMMANDS[args.command](parsed, args)
    except (ParseError, MatroidError, ValueError) as exc:
        print(f"osa: error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"osa: internal invariant violation: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(doc.to_json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
