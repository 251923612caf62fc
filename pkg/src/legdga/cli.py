"""Command line front end: ``legdga <subcommand> ...``.

Exit codes: 0 success, 1 a requested check failed, 2 invalid input,
64 usage or I/O error.  Diagram arguments may be file paths or built-in
fixture names such as ``unknot-fig4`` or ``fixtures/fig8-fig5:reversed``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .algebra import AlgebraError, abelianize, dga_to_data
from .dga import (
    Check,
    DgaError,
    KnotDga,
    build_dga,
    check_dga,
    deserialize,
    serialize,
    unit_boundary_witness,
)
from .diagram import (
    DiagramError,
    KnotDiagram,
    PlaneCurve,
    parse_curve,
    reverse_orientation,
    validation_report,
)
from .equivalence import (
    EquivalenceError,
    abelian_homotopy,
    load_certificate,
    stabilization_maps,
    verify_abelian_homotopy,
    verify_certificate,
    verify_chain_homotopy,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# Input helpers


def _read_text(spec: str) -> tuple[str, bool]:
    """Text of a diagram or DGA file plus whether to reverse it afterwards."""
    p = Path(spec)
    if p.is_file():
        try:
            return p.read_text(encoding="utf-8"), False
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc}") from exc
    found = fixtures.resolve_name(spec)
    if found is None:
        raise UsageError(f"no such file or built-in fixture: {spec}")
    name, reverse = found
    return fixtures.path(name + ".json").read_text(encoding="utf-8"), reverse


def _is_dga_doc(text: str) -> bool:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return False
    return isinstance(doc, dict) and "differential" in doc


def _curve(spec: str, reverse: bool = False) -> PlaneCurve:
    text, rev = _read_text(spec)
    try:
        curve = parse_curve(text)
    except DiagramError as exc:
        raise InputError(str(exc)) from exc
    return reverse_orientation(curve) if (rev != reverse) else curve


def _diagram(args) -> KnotDiagram:
    curve = _curve(args.diagram, args.reverse)
    try:
        return KnotDiagram(curve, corrupt_signs=getattr(args, "corrupt_signs", False))
    except DiagramError as exc:
        raise InputError("; ".join(exc.violations)) from exc


def _dga(args, verify: bool = True) -> KnotDga:
    """Build from a diagram, or read a serialized DGA file."""
    text, _rev = _read_text(args.diagram)
    if _is_dga_doc(text):
        try:
            return deserialize(text)
        except DgaError as exc:
            raise InputError(str(exc)) from exc
    diagram = _diagram(args)
    return build_dga(diagram, jobs=args.jobs, verify=verify, oracle=False)


def _emit_presentation(pres, name: str, fmt: str) -> None:
    if fmt == "json":
        doc = {"format": 1, "name": name}
        doc.update(dga_to_data(pres))
        print(json.dumps(doc, indent=1, ensure_ascii=False))
    else:
        print(pres.to_text(latex=fmt == "latex"))


def _report(checks: list[Check], stream=None) -> int:
    stream = stream or sys.stdout
    for c in checks:
        print(c.line(), file=stream)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_CHECK


# ---------------------------------------------------------------------------
# Subcommands


def cmd_validate(args) -> int:
    curve = _curve(args.diagram, args.reverse)
    problems = validation_report(curve)
    if problems:
        for p in problems:
            print(f"INVALID {p}")
        return EXIT_INPUT
    diagram = KnotDiagram(curve)
    print(f"OK {curve.name}: {len(curve)} vertices, {len(diagram.crossings)} crossings")
    return EXIT_OK


def cmd_info(args) -> int:
    d = _diagram(args)
    inv = d.invariants
    rows = [d.crossing(lab) for lab in d.labels]
    if args.format == "json":
        doc = {
            "name": d.name,
            "tb": inv.tb,
            "r": inv.r,
            "crossings": [
                {
                    "label": c.label,
                    "grading": c.grading,
                    "height": str(c.height),
                    "point": [str(c.point[0]), str(c.point[1])],
                }
                for c in rows
            ],
        }
        print(json.dumps(doc, indent=1))
        return EXIT_OK
    degrees = " ".join(f"|{c.label}|={c.grading}" for c in rows)
    print(f"tb={inv.tb} r={inv.r} {degrees}")
    for c in rows:
        print(f"  {c.label}: height {c.height} at ({c.point[0]}, {c.point[1]})")
    return EXIT_OK


def cmd_dga(args) -> int:
    try:
        dga = _dga(args)
    except DgaError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        _report(exc.report, sys.stderr)
        return EXIT_CHECK
    if args.format == "json":
        sys.stdout.write(serialize(dga))
    else:
        print(dga.to_text(latex=args.format == "latex"))
    return EXIT_OK


def cmd_check(args) -> int:
    dga = _dga(args, verify=False)
    checks = check_dga(dga, oracle=not args.skip_oracle)
    code = _report(checks)
    if args.witness:
        x = unit_boundary_witness(dga)
        print(f"witness: d({x.to_text()}) = 1" if x is not None else "witness: none found")
    return code


def cmd_abelianize(args) -> int:
    dga = _dga(args)
    _emit_presentation(abelianize(dga.presentation), dga.name, args.format)
    return EXIT_OK


def cmd_stabilize(args) -> int:
    dga = _dga(args)
    if args.abelian:
        stab = abelian_homotopy(dga, args.degree)
        check = verify_abelian_homotopy(stab, args.max_len)
    else:
        stab = stabilization_maps(dga, args.degree)
        check = verify_chain_homotopy(stab, args.max_len)
    _emit_presentation(stab.stabilized, dga.name, args.format)
    return _report([check], sys.stderr if args.format == "json" else sys.stdout)


def cmd_verify_move(args) -> int:
    spec = args.cert
    p = Path(spec)
    if not p.is_file():
        name = spec[len("fixtures/"):] if spec.startswith("fixtures/") else spec
        try:
            p = fixtures.path(name)
        except KeyError:
            raise UsageError(f"no such certificate: {spec}") from None
    cert = load_certificate(p, jobs=args.jobs)
    print(f"move {cert.move}: {cert.source.name} -> {cert.target.name}")
    return _report(verify_certificate(cert))


def cmd_examples(args) -> int:
    if args.out is None:
        for name in fixtures.names():
            stem = name.rsplit(".", 1)[0]
            print(f"{name:24s} {fixtures.DESCRIPTIONS.get(stem, '')}".rstrip())
        return EXIT_OK
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name in fixtures.names():
            (out / name).write_text(fixtures.path(name).read_text(encoding="utf-8"), encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write to {out}: {exc}") from exc
    print(f"wrote {len(fixtures.names())} fixtures to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="legdga", description="Chekanov-Eliashberg DGAs of Legendrian knot diagrams.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def diagram_cmd(name, func, help_text, formats=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("diagram", help="diagram file, DGA file or built-in fixture name")
        p.add_argument("--reverse", action="store_true", help="reverse the orientation")
        p.add_argument("--jobs", type=int, default=1, help="parallel disk enumeration workers")
        if formats:
            p.add_argument("--format", choices=formats, default="text")
        p.set_defaults(func=func)
        return p

    diagram_cmd("validate", cmd_validate, "check the curve invariants")
    diagram_cmd("info", cmd_info, "tb, r, gradings and heights", ["text", "json"])
    diagram_cmd("dga", cmd_dga, "build and print the DGA", ["text", "json", "latex"])
    p = diagram_cmd("check", cmd_check, "full verification report")
    p.add_argument("--skip-oracle", action="store_true", help="omit the oracle disk enumeration")
    p.add_argument("--corrupt-signs", action="store_true", help="debug: flip one orientation sign per crossing")
    p.add_argument("--witness", action="store_true", help="also search for x with dx = 1")
    diagram_cmd("abelianize", cmd_abelianize, "supercommutative quotient", ["text", "json", "latex"])
    p = diagram_cmd("stabilize", cmd_stabilize, "stabilize and verify the homotopy", ["text", "json", "latex"])
    p.add_argument("--degree", type=int, required=True, help="degree of the new generator e1")
    p.add_argument("--abelian", action="store_true", help="stabilize the abelianization instead")
    p.add_argument("--max-len", type=int, default=4, help="longest basis word checked")

    p = sub.add_parser("verify-move", help="verify a Reidemeister move certificate")
    p.add_argument("--cert", required=True, help="certificate file or built-in name")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_move)

    p = sub.add_parser("examples", help="list built-in fixtures or write them to a directory")
    p.add_argument("--out", help="directory to write every fixture into")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "jobs", 1) < 1:
        print("legdga: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"legdga: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, DiagramError, AlgebraError, EquivalenceError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DgaError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
