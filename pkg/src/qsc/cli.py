"""Command-line entry point.

Subcommands: catalog, build, design, kl, symmetries, ideal, css, perf, table.
All subcommands accept --json for machine-readable output; computation
results go to stdout, progress and errors to stderr.  Exit codes: 0 success,
1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import catalog as catalog_mod
from . import css as css_mod
from . import fock as fock_mod
from .constellation import QSCode, QscError, code_from_json, code_to_json, min_separation
from .kl import detection_report
from .moments import design_strength, moment_indices, monte_carlo_sphere_average, sphere_average
from .symmetries import enumerate_phase_symmetries, vanishing_ideal, verify_jump_annihilates


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _load_code(path: str) -> QSCode:
    with open(path) as fh:
        return code_from_json(fh.read())


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _print_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    print(line)
    print("-" * len(line))
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))


def _csv(headers: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(headers)]
    lines.extend(",".join(r) for r in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_catalog(args: argparse.Namespace) -> int:
    entries = catalog_mod.list_catalog()
    if args.json:
        doc = [{
            "id": e.entry_id, "name": e.name, "modes": e.modes,
            "points": e.num_points, "codewords": e.num_codewords,
            "params": e.params, "description": e.description,
            "expected_properties": e.expected_properties,
        } for e in entries]
        print(json.dumps(doc, indent=2))
        return 0
    rows = [[e.entry_id, str(e.modes), str(e.num_points), str(e.num_codewords),
             e.description] for e in entries]
    _print_table(["id", "modes", "points", "K", "description"], rows)
    return 0


def _builder_options(args: argparse.Namespace) -> dict:
    options = {}
    for key in ("S", "K", "n", "q"):
        value = getattr(args, key, None)
        if value is not None:
            options[key] = value
    if getattr(args, "partition", None) is not None:
        options["partition"] = args.partition
    return options


def cmd_build(args: argparse.Namespace) -> int:
    code = catalog_mod.build(args.name, args.energy, **_builder_options(args))
    _write_output(code_to_json(code), args.out)
    if args.out and args.out != "-":
        print(f"wrote {args.out}: {code.modes} modes, K={code.K}, "
              f"{sum(len(c) for c in code.codewords)} points", file=sys.stderr)
    return 0


def cmd_design(args: argparse.Namespace) -> int:
    code = _load_code(args.infile)
    report = design_strength(code, args.tmax, tol=args.tol)
    if args.mc_samples:
        _mc_check(code.modes, args.mc_samples, args.seed)
    if args.json:
        print(json.dumps({
            "t_sphere": report.sphere_strength,
            "t_match": report.matching_strength,
            "tol": report.tol,
            "sphere_residual_per_degree": {str(d): v for d, v in
                                           sorted(report.sphere_residual_per_degree.items())},
            "match_residual_per_degree": {str(d): v for d, v in
                                          sorted(report.match_residual_per_degree.items())},
        }, indent=2))
        return 0
    rows = [[str(d), f"{rs:.3e}", f"{rm:.3e}"] for d, rs, rm in report.rows()]
    print(f"t_sphere = {report.sphere_strength}   t_match = {report.matching_strength}"
          f"   (tol {report.tol:g})")
    _print_table(["degree", "sphere residual", "match residual"], rows)
    if args.csv:
        _write_output(_csv(["degree", "sphere_residual", "match_residual"],
                           [[str(d), _fmt(rs), _fmt(rm)] for d, rs, rm in report.rows()]),
                      args.csv)
    return 0


def _mc_check(n: int, samples: int, seed: int) -> None:
    """Cross-check the closed-form sphere average against Monte Carlo."""
    worst = 0.0
    for idx in moment_indices(n, 4):
        est, se = monte_carlo_sphere_average(idx, n, samples=samples, seed=seed)
        diff = abs(est - sphere_average(idx, n))
        sigmas = diff / se if se > 0 else 0.0
        worst = max(worst, sigmas)
    print(f"monte-carlo check: worst deviation {worst:.2f} standard errors "
          f"({samples} samples, seed {seed})", file=sys.stderr)


def cmd_kl(args: argparse.Namespace) -> int:
    code = _load_code(args.infile)
    report = detection_report(code, args.max_degree, args.tol,
                              include_dephasing_to=args.dephasing)
    headers = ["error", "r", "s", "lambda", "delta", "pass"]
    rows = []
    for row in report.rows:
        if row.kind == "monomial":
            r, s = str(list(row.error.r)), str(list(row.error.s))
        else:
            r = s = "-"
        rows.append([row.label(), r, s,
                     f"{row.lam.real:+.6e}{row.lam.imag:+.6e}j",
                     f"{row.delta:.6e}",
                     "pass" if row.delta <= args.tol else "FAIL"])
    if args.json:
        print(json.dumps({
            "detection_degree": report.detection_degree,
            "tol": report.tol,
            "rows": [{"label": row.label(), "kind": row.kind,
                      "degree": row.degree,
                      "lambda": [row.lam.real, row.lam.imag],
                      "delta": row.delta,
                      "pass": row.delta <= args.tol}
                     for row in report.rows],
        }, indent=2))
        return 0
    print(f"detection degree = {report.detection_degree} at tol {args.tol:g}")
    _print_table(headers, [[c.replace(",", ";") for c in r] for r in rows])
    if args.csv:
        csv_rows = [[r[0].replace(",", ";"), r[1].replace(",", ";").replace(" ", ""),
                     r[2].replace(",", ";").replace(" ", ""), r[3], r[4], r[5]]
                    for r in rows]
        _write_output(_csv(headers, csv_rows), args.csv)
    return 0


def cmd_symmetries(args: argparse.Namespace) -> int:
    code = _load_code(args.infile)
    actions = enumerate_phase_symmetries(code, args.max_order)
    rows = []
    for act in actions:
        phases = act.unitary.per_mode_phases or ()
        rows.append(["(" + ", ".join(f"{t:.6g}" for t in phases) + ")",
                     act.classification,
                     str(list(act.codeword_permutation))])
    if args.json:
        print(json.dumps([{
            "phases": list(act.unitary.per_mode_phases or ()),
            "classification": act.classification,
            "codeword_permutation": list(act.codeword_permutation),
        } for act in actions], indent=2))
        return 0
    print(f"{len(actions)} phase-rotation symmetries up to order {args.max_order}")
    _print_table(["phases", "type", "codeword permutation"],
                 [[c.replace(",", ";") for c in r] for r in rows])
    return 0


def cmd_ideal(args: argparse.Namespace) -> int:
    code = _load_code(args.infile)
    polys = vanishing_ideal(code, args.max_degree, tol_ideal=args.tol)
    if args.json:
        print(json.dumps([{
            "degree": g.degree,
            "residual": verify_jump_annihilates(code, g),
            "terms": {" ".join(map(str, d)): [c.real, c.imag]
                      for d, c in sorted(g.terms.items())},
        } for g in polys], indent=2))
        return 0
    print(f"{len(polys)} vanishing polynomials up to degree {args.max_degree}")
    rows = [[str(g.degree), f"{verify_jump_annihilates(code, g):.3e}", g.describe()]
            for g in polys]
    _print_table(["degree", "residual", "polynomial"],
                 [[c.replace(",", ";") for c in r] for r in rows])
    return 0


def cmd_css(args: argparse.Namespace) -> int:
    gen_x = css_mod.read_generator_file(args.gx) if args.gx else []
    gen_z = css_mod.read_generator_file(args.gz) if args.gz else []
    length = args.length
    if length is None:
        if gen_x:
            length = len(gen_x[0])
        elif gen_z:
            length = len(gen_z[0])
        else:
            raise QscError("--length is required when both generator files are empty")
    spec = css_mod.ClassicalCodeSpec(args.q, length, gen_x, gen_z)
    code = css_mod.compile_css(spec, complex(args.alpha))
    _write_output(code_to_json(code), args.out)
    props = css_mod.css_properties(spec, alpha=complex(args.alpha))
    msg = (f"K={props.K}, {props.points_per_codeword} points per codeword, "
           f"d_x={props.d_x}, d_z={props.d_z}, separation={props.min_separation:.6g}")
    print(msg, file=sys.stderr)
    return 0


def cmd_perf(args: argparse.Namespace) -> int:
    code = _load_code(args.infile)
    cfg = fock_mod.FockConfig(cutoff=args.cutoff, modes=code.modes)
    start, stop, count = _parse_range(args.gammas if args.channel == "loss" else args.sigmas)
    levels = np.linspace(start, stop, count)
    rows = []
    for level in levels:
        if args.channel == "loss":
            f = fock_mod.loss_channel_fidelity(code, float(level), cfg)
        else:
            f = fock_mod.dephasing_channel_fidelity(code, float(level), cfg,
                                                    nodes=args.nodes)
        rows.append([_fmt(level), _fmt(f)])
        print(f"{args.channel} {level:g}: F = {f:.12g}", file=sys.stderr)
    header = ["gamma" if args.channel == "loss" else "sigma", "fidelity"]
    text = _csv(header, rows)
    if args.json:
        print(json.dumps([{header[0]: float(a), "fidelity": float(b)}
                          for a, b in rows], indent=2))
        return 0
    _write_output(text, args.csv)
    return 0


def _parse_range(spec: str) -> tuple[float, float, int]:
    parts = spec.split(":")
    if len(parts) == 1:
        return float(parts[0]), float(parts[0]), 1
    if len(parts) != 3:
        raise QscError(f"range must be start:stop:count, got {spec!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def cmd_table(args: argparse.Namespace) -> int:
    headers = ["code", "modes", "K", "points_per_codeword", "min_separation",
               "t_sphere", "t_match", "detection_degree", "jump_degrees"]
    rows = []
    for entry in catalog_mod.list_catalog():
        code = entry.build(args.energy)
        sizes = sorted({len(c) for c in code.codewords})
        size_text = "|".join(map(str, sizes))
        sep = _fmt(min_separation(code)[0]) if code.K >= 2 else "-"
        design = design_strength(code, args.tmax)
        det = detection_report(code, args.max_degree, args.tol)
        polys = vanishing_ideal(code, args.ideal_degree)
        degrees = sorted({g.degree for g in polys})
        rows.append([entry.entry_id, str(code.modes), str(code.K), size_text, sep,
                     str(design.sphere_strength), str(design.matching_strength),
                     str(det.detection_degree),
                     "|".join(map(str, degrees)) if degrees else "-"])
        print(f"table: {entry.entry_id} done", file=sys.stderr)
    if args.json:
        print(json.dumps([dict(zip(headers, r)) for r in rows], indent=2))
        return 0
    if args.markdown:
        lines = ["| " + " | ".join(headers) + " |",
                 "|" + "|".join("---" for _ in headers) + "|"]
        lines.extend("| " + " | ".join(r) + " |" for r in rows)
        print("\n".join(lines))
    else:
        _print_table(headers, rows)
    if args.csv:
        _write_output(_csv(headers, rows), args.csv)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsc",
        description="Construct and verify quantum spherical codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the built-in constellation catalog")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("build", help="build a catalog code and write its JSON")
    p.add_argument("--name", required=True)
    p.add_argument("--energy", type=float, default=4.0,
                   help="squared sphere radius E (mean photon number)")
    p.add_argument("--S", type=int, default=None)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--partition", default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--json", action="store_true",
                   help="(output is already JSON; accepted for uniformity)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("design", help="design strengths of a code")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tmax", type=int, default=6)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--csv", default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--mc-samples", type=int, default=0,
                   help="also cross-check the sphere averages by Monte Carlo")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("kl", help="error-detection (KL) report")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--dephasing", type=int, default=0,
                   help="also include dephasing powers n^k up to this k")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--csv", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kl)

    p = sub.add_parser("symmetries", help="classify phase-rotation symmetries")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_symmetries)

    p = sub.add_parser("ideal", help="vanishing ideal (jump operators)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("css", help="compile a CSS pair into a code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gx", default=None, help="generator file for C_X")
    p.add_argument("--gz", default=None, help="generator file for C_Z")
    p.add_argument("--length", type=int, default=None,
                   help="number of modes (required if both files are empty)")
    p.add_argument("--alpha", default="2.0",
                   help="cat amplitude per mode (complex accepted)")
    p.add_argument("--out", default="-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_css)

    p = sub.add_parser("perf", help="channel fidelity with transpose recovery")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--channel", choices=["loss", "dephasing"], default="loss")
    p.add_argument("--gammas", default="0.001:0.05:10")
    p.add_argument("--sigmas", default="0.01:0.2:10")
    p.add_argument("--cutoff", type=int, default=60)
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--csv", default="-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_perf)

    p = sub.add_parser("table", help="summary table over the whole catalog")
    p.add_argument("--energy", type=float, default=16.0)
    p.add_argument("--tmax", type=int, default=6)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-3,
                   help="detection tolerance; finite-energy codes satisfy the "
                        "KL conditions only up to exp(-c E) residuals")
    p.add_argument("--ideal-degree", type=int, default=6)
    p.add_argument("--csv", default=None)
    p.add_argument("--markdown", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except QscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
