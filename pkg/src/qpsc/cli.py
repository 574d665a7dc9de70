"""Command line interface.

Usage::

    qpsc spectrum --degenerate --max 3 3 --format json
    qpsc tables --potential "1.0*cos(theta)" --beta 0.1
    qpsc admissibility --potential "1.0*sin(1.5*theta)"
    qpsc verify --potential "1.0*theta^1" --check-complexity

Exit codes: 0 success, 1 verification failure, 2 bad flags, 3 potential
parse error, 4 inadmissible potential.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .core import CylinderGeometry, QuantumNumbers, degeneracy_groups, spectrum
from .errors import DomainError, InadmissiblePotentialError, PotentialParseError
from .oracle import TruncatedBasis
from .perturbation import paper_tables
from .potential import admissibility, format_potential, parse_potential
from .verify import VerifyConfig, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INADMISSIBLE = 4

OUTPUT_DIR_ENV = "QPSC_OUTPUT_DIR"
DEFAULT_POTENTIAL = "1.0*cos(theta)"

FORMAT_HELP = (
    "output format; json floats round-trip exactly (shortest repr), "
    "text tables show 6 significant digits (default: %(default)s)"
)


class _Usage(Exception):
    pass


def _g6(x: float) -> str:
    return format(x, ".6g")


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)
    return "\n".join(lines) + "\n"


def _csv(headers: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _complex_text(z: complex) -> str:
    if z.imag == 0.0:
        return _g6(z.real)
    return f"{_g6(z.real)}{'+' if z.imag >= 0 else '-'}{_g6(abs(z.imag))}i"


# -- geometry and shared flags ------------------------------------------------

def _add_output(p: argparse.ArgumentParser, formats=("json", "csv", "text")):
    p.add_argument("--format", choices=formats, default="text", help=FORMAT_HELP)
    p.add_argument("--output", "-o", help=f"output file (default: stdout, or ${OUTPUT_DIR_ENV}/<command>.<format>)")


def _add_geometry(p: argparse.ArgumentParser):
    p.add_argument("--L", type=float, default=1.0, help="cylinder length (default 1)")
    p.add_argument("--R", type=float, default=None, help="cylinder radius; excludes --degenerate")
    p.add_argument("--degenerate", action="store_true",
                   help="use R = L/pi (the default when --R is not given)")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)


def _geometry(args) -> CylinderGeometry:
    if args.R is not None and args.degenerate:
        raise _Usage("--R and --degenerate are mutually exclusive")
    try:
        if args.R is None:
            return CylinderGeometry.degenerate(args.L, args.mass, args.hbar)
        return CylinderGeometry(args.R, args.L, args.mass, args.hbar)
    except DomainError as exc:
        raise _Usage(str(exc)) from None


def _geometry_dict(geom: CylinderGeometry) -> dict:
    return {"radius": geom.radius, "length": geom.length, "mass": geom.mass, "hbar": geom.hbar}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


# -- commands ---------------------------------------------------------------------

def cmd_spectrum(args) -> tuple[int, str]:
    geom = _geometry(args)
    levels = spectrum(geom, *args.max)
    groups = degeneracy_groups(levels, args.rel_tol)
    group_index = {}
    for gi, group in enumerate(groups):
        for qn in group.members:
            group_index[qn] = gi
    rows = [
        (lv.qn.n_z, lv.qn.n_theta, lv.energy, group_index[lv.qn], groups[group_index[lv.qn]].multiplicity)
        for lv in levels
    ]
    headers = ["n_z", "n_theta", "energy", "group", "multiplicity"]
    if args.format == "json":
        return EXIT_OK, _json({
            "geometry": _geometry_dict(geom),
            "levels": [dict(zip(headers, r)) for r in rows],
            "groups": [
                {"members": [[q.n_z, q.n_theta] for q in g.members], "energy": g.energy,
                 "multiplicity": g.multiplicity}
                for g in groups
            ],
        })
    if args.format == "csv":
        return EXIT_OK, _csv(headers, [list(r) for r in rows])
    return EXIT_OK, _table(headers, [[str(a), str(b), _g6(e), str(g), str(k)] for a, b, e, g, k in rows])


def _parse(text: str):
    return parse_potential(text)


def _admissibility_text(rep) -> str:
    return _table(
        ["quantity", "value"],
        [["I1 = I(-1)", _complex_text(rep.I1)], ["I2 = I(+1)", _complex_text(rep.I2)],
         ["real", str(rep.is_real)], ["nonzero", str(rep.is_nonzero)],
         ["admissible", str(rep.admissible)]],
    )


def cmd_admissibility(args) -> tuple[int, str]:
    spec = _parse(args.potential)
    rep = admissibility(spec)
    code = EXIT_OK if rep.admissible else EXIT_INADMISSIBLE
    if args.format == "json":
        return code, _json({"potential": format_potential(spec), **rep.to_dict()})
    return code, _admissibility_text(rep)


def cmd_tables(args) -> tuple[int, str]:
    spec = _parse(args.potential)
    if args.L <= 0:
        raise _Usage("--L must be positive")
    try:
        report = paper_tables(spec, args.beta, args.L)
    except InadmissiblePotentialError as exc:
        rep = exc.report
        if args.format == "json":
            return EXIT_INADMISSIBLE, _json({"potential": format_potential(spec), **rep.to_dict()})
        return EXIT_INADMISSIBLE, _admissibility_text(rep)
    if args.format == "json":
        return EXIT_OK, _json(report.to_rows())
    if args.format == "csv":
        return EXIT_OK, _csv(["label", "E0", "E0_plus_E1_minus", "E0_plus_E1_plus"],
                             [list(r) for r in report.splitting_rows()])
    out = [
        f"potential: {format_potential(spec)}",
        f"beta: {_g6(args.beta)}   L: {_g6(args.L)}   R: L/pi",
        f"I0 = {_complex_text(report.I0)}   I1 = {_complex_text(report.I1)}   I2 = {_complex_text(report.I2)}",
        "",
        "Perturbation matrix elements",
    ]
    t1 = []
    for r in report.rows:
        if r.degenerate:
            t1.append([r.label, "yes", _complex_text(r.H[0, 0]), _complex_text(r.H[-1, -1]),
                       _complex_text(r.H[0, -1]), _complex_text(r.H[-1, 0])])
        else:
            t1.append([r.label, "no", _complex_text(r.H[0, 0]), "", "", ""])
    out.append(_table(["states", "degenerate", "H_aa", "H_bb", "H_ab", "H_ba"], t1))
    out.append("First-order energy corrections")
    out.append(_table(["states", "E1"], [[r.label, ", ".join(_g6(e) for e in r.E1)] for r in report.rows]))
    out.append("Level shifts")
    out.append(_table(["states", "E0", "E0+E1_minus", "E0+E1_plus"],
                      [[lab, _g6(a), _g6(b), _g6(c)] for lab, a, b, c in report.splitting_rows()]))
    notes = [f"{r.label}: {n}" for r in report.rows for n in r.notes]
    if notes:
        out.append("Notes")
        out.extend(notes)
        out.append("")
    return EXIT_OK, "\n".join(out)


def cmd_verify(args) -> tuple[int, str]:
    spec = _parse(args.potential)
    geom = _geometry(args)
    betas = tuple(args.betas)
    if any(b <= 0 for b in betas) or list(betas) != sorted(betas, reverse=True):
        raise _Usage("--betas must be positive and descending")
    try:
        state = QuantumNumbers(*args.state)
    except DomainError as exc:
        raise _Usage(str(exc)) from None
    cfg = VerifyConfig(
        spec=spec,
        geom=geom,
        state=state,
        basis=TruncatedBasis(*args.oracle_basis),
        betas=betas,
        quadrature_nodes=args.quadrature_nodes,
        check_complexity=args.check_complexity,
    )
    report = run_verification(cfg)
    code = EXIT_OK if report.passed else EXIT_VERIFY_FAILED
    if args.format == "json":
        return code, _json(report.to_dict())
    headers = ["check", "passed", "predicted", "observed", "tolerance"]
    rows = [[c.name, c.passed, c.predicted, c.observed, c.tolerance] for c in report.checks]
    if args.format == "csv":
        return code, _csv(headers, rows)

    def cell(x):
        return "" if x is None else _g6(x) if isinstance(x, float) else str(x)

    text = _table(headers, [[cell(v) for v in r] for r in rows])
    details = [f"{c.name}: {c.detail}" for c in report.checks if c.detail and not c.passed]
    return code, text + "".join(d + "\n" for d in details) + f"overall: {'PASS' if report.passed else 'FAIL'}\n"


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpsc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="sorted levels with degeneracy groups")
    _add_geometry(p)
    p.add_argument("--max", nargs=2, type=_positive_int, default=[3, 3], metavar=("NZ", "NTHETA"))
    p.add_argument("--rel-tol", type=float, default=1e-9, help="degeneracy grouping tolerance")
    _add_output(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("tables", help="matrix elements, corrections and level shifts at R = L/pi")
    p.add_argument("--potential", default=DEFAULT_POTENTIAL)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--degenerate", action="store_true", help="accepted for clarity; tables always use R = L/pi")
    _add_output(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("admissibility", help="reality and non-vanishing of I(-1), I(+1)")
    p.add_argument("--potential", default=DEFAULT_POTENTIAL)
    _add_output(p, ("json", "text"))
    p.set_defaults(func=cmd_admissibility)

    p = sub.add_parser("verify", help="oracle cross-checks at one configuration")
    _add_geometry(p)
    p.add_argument("--potential", default=DEFAULT_POTENTIAL)
    p.add_argument("--state", nargs=2, type=int, default=[1, 2], metavar=("NZ", "NTHETA"))
    p.add_argument("--oracle-basis", nargs=2, type=_positive_int, default=[12, 12], metavar=("NZ", "NTHETA"))
    p.add_argument("--betas", nargs="+", type=float, default=[1e-2, 1e-3, 1e-4])
    p.add_argument("--quadrature-nodes", type=int, default=256)
    p.add_argument("--check-complexity", action="store_true",
                   help="also require I(+-1) to be complex (for monomial potentials)")
    _add_output(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _write(text: str, args) -> None:
    target = args.output
    if target is None and os.environ.get(OUTPUT_DIR_ENV):
        ext = {"json": "json", "csv": "csv", "text": "txt"}[args.format]
        target = str(Path(os.environ[OUTPUT_DIR_ENV]) / f"{args.command}.{ext}")
    if target is None:
        sys.stdout.write(text)
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"qpsc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PotentialParseError as exc:
        print(f"qpsc: {exc}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.offset}^", file=sys.stderr)
        return EXIT_PARSE
    _write(text, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
