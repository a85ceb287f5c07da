"""Command line front end.

Subcommands operate on the text formats of `fileformat`; every report prints
exact rationals as p/q together with a 12-significant-digit decimal, and
`--json` switches to one JSON object per computed quantity with the fields
{command, inputs, exact, decimal, warnings}.  Exit codes: 0 success, 2 input
error, 3 mathematical precondition violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings as _warnings
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from . import fibers as fibers_mod
from . import oracle as oracle_mod
from .errors import InputError, PreconditionError, UnknownVertex
from .fileformat import parse_fiber_file, parse_graph_file, parse_rational
from .green import e_invariant, green_system
from .resistance import effective_resistance


def decimal12(x) -> str:
    """Positional decimal with 12 significant digits, round half up."""
    fr = Fraction(x)
    if fr == 0:
        return "0.00000000000"
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    e = 0
    while 10**e > fr:
        e -= 1
    while fr >= 10 ** (e + 1):
        e += 1
    scaled = fr / Fraction(10) ** (e - 11)
    digits = int(scaled)
    if scaled - digits >= Fraction(1, 2):
        digits += 1
    if digits >= 10**12:
        digits //= 10
        e += 1
    s = str(digits)
    if e < 0:
        return f"{sign}0.{'0' * (-e - 1)}{s}"
    if e >= 11:
        return f"{sign}{s}{'0' * (e - 11)}"
    return f"{sign}{s[: e + 1]}.{s[e + 1 :]}"


def exact_str(x: Fraction) -> str:
    return str(Fraction(x))


class Report:
    """Accumulates plain-text lines and JSON records side by side."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.lines: list[str] = []
        self.records: list[dict] = []

    def value(self, name: str, value: Fraction, warnings=(), label=None, extra=None):
        exact = exact_str(value)
        dec = decimal12(value)
        self.lines.append(f"{label or name} = {exact} ({dec})")
        for w in warnings:
            self.lines.append(f"warning: {w}")
        inputs = dict(self.inputs)
        inputs["quantity"] = name
        if extra:
            inputs.update(extra)
        self.records.append(
            {
                "command": self.command,
                "inputs": inputs,
                "exact": exact,
                "decimal": dec,
                "warnings": list(warnings),
            }
        )

    def text(self, name: str, content: str, label=None):
        self.lines.append(f"{label or name} = {content}")
        inputs = dict(self.inputs)
        inputs["quantity"] = name
        self.records.append(
            {
                "command": self.command,
                "inputs": inputs,
                "exact": content,
                "decimal": None,
                "warnings": [],
            }
        )

    def float_value(self, name: str, value: float, label=None):
        dec = decimal12(Fraction(value))
        self.lines.append(f"{label or name} ~= {dec}")
        inputs = dict(self.inputs)
        inputs["quantity"] = name
        self.records.append(
            {
                "command": self.command,
                "inputs": inputs,
                "exact": None,
                "decimal": dec,
                "warnings": [],
            }
        )


def _resolve(names: dict, label: str):
    if label not in names:
        raise UnknownVertex(f"unknown point or vertex {label!r}")
    return names[label]


def _cmd_resistance(args) -> Report:
    graph, names, _ = parse_graph_file(Path(args.file).read_text())
    p = _resolve(names, args.p)
    q = _resolve(names, args.q)
    rep = Report("resistance", {"file": args.file, "p": args.p, "q": args.q})
    rep.value("r", effective_resistance(graph, p, q), label=f"r({args.p},{args.q})")
    return rep


def _cmd_green(args) -> Report:
    graph, names, divisor = parse_graph_file(Path(args.file).read_text())
    x = _resolve(names, args.x)
    y = _resolve(names, args.y)
    s = green_system(graph, divisor)
    rep = Report("green", {"file": args.file, "x": args.x, "y": args.y})
    rep.value("g", s.eval(x, y), label=f"g({args.x},{args.y})")
    return rep


def _original_edge(edge_id):
    while isinstance(edge_id, tuple) and edge_id and edge_id[0] == "split":
        edge_id = edge_id[1]
    return edge_id


def _cmd_measure(args) -> Report:
    graph, names, divisor = parse_graph_file(Path(args.file).read_text())
    system = green_system(graph, divisor)
    mu = system.measure
    rep = Report("measure", {"file": args.file})
    rep.value("mass", mu.total_mass())
    labels = {}
    for name, p in names.items():
        sp = system._to_solver(p)
        if sp.is_vertex:
            labels.setdefault(sp.vertex, name)
    for v in mu.graph.vertex_list:
        label = labels.get(v) or str(v)
        rep.value("atom", mu.atoms.get(v, Fraction(0)), label=f"atom {label}",
                  extra={"site": label})
    by_edge: dict[str, Fraction] = {}
    for e in mu.graph.edges:
        root = str(_original_edge(e.id))
        by_edge.setdefault(root, mu.densities.get(e.id, Fraction(0)))
    for root in by_edge:
        rep.value("density", by_edge[root], label=f"density {root}",
                  extra={"site": root})
    return rep


def _cmd_e_invariant(args) -> Report:
    graph, _, divisor = parse_graph_file(Path(args.file).read_text())
    rep = Report("e-invariant", {"file": args.file})
    rep.value("e", e_invariant(graph, divisor))
    return rep


def _cmd_fiber_analyze(args) -> Report:
    cfg = parse_fiber_file(Path(args.file).read_text())
    report = fibers_mod.fiber_report(cfg)
    rep = Report("fiber-analyze", {"file": args.file})
    rep.text("g", str(report.genus))
    rep.text("delta", ",".join(str(d) for d in report.delta))
    for comp in sorted(report.omega, key=str):
        rep.text("omega", exact_str(report.omega[comp]), label=f"omega {comp}")
    rep.text("chain", "true" if report.is_chain else "false")
    rep.value("e_y", report.e, warnings=report.warnings)
    if report.e_closed_form is not None:
        rep.value("e_y_closed_form", report.e_closed_form, label="e_y closed form")
    return rep


def _parse_delta(raw: str, g: int):
    return [parse_rational(tok) for tok in raw.split(",")] if raw else [0] * (g // 2 + 1)


def _cmd_bounds(args) -> Report:
    g = args.genus
    delta = _parse_delta(args.delta, g)
    lam = parse_rational(args.lambda_deg) if args.lambda_deg is not None else Fraction(0)
    stats = bounds_mod.FibrationStats(
        g=g,
        lambda_deg=lam,
        delta=delta,
        hyperelliptic=args.hyperelliptic,
        smooth=args.smooth,
    )
    inputs = {
        "genus": g,
        "lambda": str(lam),
        "delta": ",".join(str(d) for d in delta),
        "hyperelliptic": args.hyperelliptic,
        "smooth": args.smooth,
        "irreducible": args.irreducible,
    }
    rep = Report(f"bounds-{args.which}", inputs)
    if args.which == "slope":
        check = bounds_mod.slope_check(stats)
        rep.value("lhs", check.lhs)
        rep.value("rhs", check.rhs)
        rep.value("slack", check.slack)
        rep.text("holds", "true" if check.holds else "false")
    elif args.which == "radius":
        rsq = bounds_mod.radius_sq_closed_form(g, delta)
        rep.value("radius^2", rsq)
        rep.float_value("radius", math.sqrt(rsq))
        rep.text(
            "flags",
            f"hyperelliptic={str(args.hyperelliptic).lower()} "
            f"smooth={str(args.smooth).lower()} "
            f"irreducible={str(args.irreducible).lower()}",
        )
    else:  # reference
        rsq = bounds_mod.reference_radius_sq(stats, irreducible=args.irreducible)
        rep.value("radius^2", rsq)
        rep.float_value("radius", math.sqrt(rsq))
    return rep


def _cmd_oracle_green(args) -> Report:
    graph, names, divisor = parse_graph_file(Path(args.file).read_text())
    x = _resolve(names, args.x)
    y = _resolve(names, args.y)
    h = parse_rational(args.h)
    value = oracle_mod.numeric_green(graph, divisor, x, y, h)
    rep = Report(
        "oracle-green",
        {"file": args.file, "x": args.x, "y": args.y, "h": str(h)},
    )
    rep.float_value("g", value, label=f"g({args.x},{args.y})")
    rep.lines[-1] += f" (h = {h})"
    return rep


def _cmd_batch(args) -> tuple[list[str], list[dict], int]:
    root = Path(args.dir)
    if not root.is_dir():
        raise InputError(f"not a directory: {args.dir}")
    lines: list[str] = []
    records: list[dict] = []
    code = 0
    for path in sorted(root.iterdir()):
        if path.suffix not in (".mg", ".fib"):
            continue
        ns = argparse.Namespace(file=str(path))
        lines.append(f"== {path.name} ==")
        try:
            if path.suffix == ".mg":
                rep = _cmd_e_invariant(ns)
            else:
                rep = _cmd_fiber_analyze(ns)
        except InputError as exc:
            lines.append(f"error: {type(exc).__name__}: {exc}")
            records.append(_error_record("batch", str(path), exc))
            code = code or 2
        except PreconditionError as exc:
            lines.append(f"error: {type(exc).__name__}: {exc}")
            records.append(_error_record("batch", str(path), exc))
            code = code or 3
        else:
            lines.extend(rep.lines)
            records.extend(rep.records)
        lines.append("")
    return lines, records, code


def _error_record(command: str, file: str, exc: Exception) -> dict:
    return {
        "command": command,
        "inputs": {"file": file},
        "exact": None,
        "decimal": None,
        "warnings": [f"{type(exc).__name__}: {exc}"],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mg",
        description="exact invariants of metrized graphs and semistable fibers",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON records")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resistance", help="effective resistance between two points")
    p.add_argument("file")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(handler=_cmd_resistance)

    p = sub.add_parser("green", help="Green function value g(x, y)")
    p.add_argument("file")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(handler=_cmd_green)

    p = sub.add_parser("measure", help="admissible measure of the file's (G, D)")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("e-invariant", help="the invariant e(G, D)")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_e_invariant)

    p = sub.add_parser("fiber", help="fiber configuration commands")
    fiber_sub = p.add_subparsers(dest="fiber_command", required=True)
    q = fiber_sub.add_parser("analyze", help="genus, node types, e_y")
    q.add_argument("file")
    q.set_defaults(handler=_cmd_fiber_analyze)

    p = sub.add_parser("bounds", help="slope and Bogomolov bound arithmetic")
    p.add_argument("which", choices=["slope", "radius", "reference"])
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--lambda", dest="lambda_deg", default=None)
    p.add_argument("--delta", default="")
    p.add_argument("--hyperelliptic", action="store_true")
    p.add_argument("--smooth", action="store_true")
    p.add_argument("--irreducible", action="store_true")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("oracle", help="floating-point cross checks")
    oracle_sub = p.add_subparsers(dest="oracle_command", required=True)
    q = oracle_sub.add_parser("green", help="discretized Green value")
    q.add_argument("file")
    q.add_argument("x")
    q.add_argument("y")
    q.add_argument("--h", required=True, help="grid size (rational)")
    q.set_defaults(handler=_cmd_oracle_green)

    p = sub.add_parser("batch", help="evaluate every .mg/.fib file in a directory")
    p.add_argument("dir")
    p.set_defaults(handler=_cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore")
            if args.command == "batch":
                lines, records, code = args.handler(args)
            else:
                rep = args.handler(args)
                lines, records, code = rep.lines, rep.records, 0
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        if len(records) == 1:
            payload = records[0]
        else:
            payload = records
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
