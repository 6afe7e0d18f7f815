"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when a mathematical verdict fails,
2 on I/O, parse or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import CATALOG, EntryRun, get_entry, verify_entry
from .errors import InputError, IsospecError, VerdictError
from .fileformats import (
    dumps,
    frame_to_json,
    gframe_to_json,
    matrix_to_json,
    parse_blocks_file,
    parse_frame_file,
    parse_gframe_file,
    parse_matrix_file,
    write_text,
)
from .frames import dual_frame, frame_bounds, is_tight
from .gframes import block_hamiltonian, g_dual, g_frame_bounds, g_tight_bound, gframe_partner, stacked_analysis_matrix
from .intertwining import (
    PartnerInput,
    PartnerResult,
    SpectralReport,
    build_partner,
    build_reverse_partner,
    map_eigenpairs,
    spectral_inclusion,
)
from .numerics import Tolerances, adjoint, norm, relative

EXIT_OK, EXIT_VERDICT, EXIT_INPUT = 0, 1, 2

TOL_FLAGS = {
    "tol_herm": "hermiticity_tol",
    "tol_comm": "commutator_tol",
    "tol_inv": "invertibility_tol",
    "tol_eigen": "eigen_match_tol",
    "tol_zero": "zero_vector_tol",
}


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _global_flags(parser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    g = parser.add_argument_group("global options")
    g.add_argument("--tol-herm", type=float, default=default, help="relative hermiticity tolerance")
    g.add_argument("--tol-comm", type=float, default=default, help="relative commutator tolerance")
    g.add_argument("--tol-inv", type=float, default=default, help="invertibility ratio threshold")
    g.add_argument("--tol-eigen", type=float, default=default, help="absolute eigenvalue matching gap")
    g.add_argument("--tol-zero", type=float, default=default, help="relative zero-vector threshold")
    g.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS if suppress else "text")
    g.add_argument("--out", default=default, help="write the report to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isospec", description="Almost-isospectral partners from frames and g-frames.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name, help):
        return sub.add_parser(name, help=help, parents=[common])

    frame = groups.add_parser("frame", help="classical frames").add_subparsers(dest="action", required=True)
    for name, help in (("bounds", "optimal frame bounds"), ("dual", "canonical dual frame"),
                       ("tight", "tightness test")):
        leaf(frame, name, help).add_argument("frame", help="frame JSON file")

    partner = groups.add_parser("partner", help="partner operators").add_subparsers(dest="action", required=True)
    for name, help in (("build", "construct h2 from h1 and X"), ("verify", "construct h2 and map eigenpairs")):
        p = leaf(partner, name, help)
        p.add_argument("--h1", required=True, help="matrix JSON for h1 (d1 x d1)")
        p.add_argument("--x", required=True, help="matrix JSON for X (d1 x d2)")
    p = leaf(partner, "reverse", "reconstruct h1 from h2 and X")
    p.add_argument("--h2", required=True, help="matrix JSON for h2 (d2 x d2)")
    p.add_argument("--x", required=True, help="matrix JSON for X (d1 x d2)")

    gframe = groups.add_parser("gframe", help="g-frames").add_subparsers(dest="action", required=True)
    leaf(gframe, "bounds", "g-frame bounds").add_argument("gframe", help="g-frame JSON file")
    leaf(gframe, "dual", "canonical dual g-frame").add_argument("gframe", help="g-frame JSON file")
    p = leaf(gframe, "partner", "partner of a block-diagonal h1")
    p.add_argument("gframe", help="g-frame JSON file")
    p.add_argument("--h1-blocks", required=True, help='JSON file {"blocks": [matrix, ...]}')

    catalog = groups.add_parser("catalog", help="worked examples").add_subparsers(dest="action", required=True)
    leaf(catalog, "list", "list scenario names")
    leaf(catalog, "run", "run and verify a scenario").add_argument("name", choices=sorted(CATALOG))
    p = leaf(catalog, "export", "write a scenario's inputs as JSON files")
    p.add_argument("name", choices=sorted(CATALOG))
    p.add_argument("directory")
    return parser


def tolerances_from_args(args, environ=None) -> Tolerances:
    tol = Tolerances.from_env(environ)
    overrides = {field: getattr(args, flag) for flag, field in TOL_FLAGS.items() if getattr(args, flag, None) is not None}
    try:
        return Tolerances(**{**asdict(tol), **overrides})
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- report pieces ------------------------------------------------------------

def spectral_report_json(report: SpectralReport) -> dict:
    return {
        "spectrum_h1": [float(v) for v in report.spectrum_h1],
        "spectrum_h2": [float(v) for v in report.spectrum_h2],
        "matched": [{"eigenvalue": e, "multiplicity_h1": a, "multiplicity_h2": b} for e, a, b in report.matched],
        "unmatched_h2": list(report.unmatched_h2),
        "kept_eigenvectors": [{"eigenvalue": e, "index": n, "image_norm": r} for e, n, r in report.kept_eigenvectors],
        "dropped_eigenvectors": [{"eigenvalue": e, "index": n} for e, n in report.dropped_eigenvectors],
        "included": report.included,
    }


def partner_json(result: PartnerResult) -> dict:
    return {
        "h2": matrix_to_json(result.h2),
        "residual_alpha": result.residual_alpha,
        "residual_beta": result.residual_beta,
        "residual_beta_strong": result.residual_beta_strong,
        "residual_h2n2": result.residual_h2n2,
    }


def _document(args, tol, scenario, inputs, results, verdicts, audits=None, error=None) -> dict:
    return {
        "scenario": scenario,
        "command": f"{args.group} {args.action}",
        "inputs": inputs,
        "tolerances": asdict(tol),
        "results": results,
        "verdicts": verdicts,
        "audits": audits or {},
        "passed": error is None and all(verdicts.values()),
        "error": error,
    }


# -- subcommands ----------------------------------------------------------------

def _frame(args, tol):
    frame = parse_frame_file(args.frame)
    inputs = {"frame": args.frame, "dim": frame.dim, "vectors": len(frame)}
    if args.action == "bounds":
        lo, hi = frame_bounds(frame, tol)
        return inputs, {"lower": lo, "upper": hi}, {"is_frame": True}
    if args.action == "tight":
        A = is_tight(frame, tol)
        return inputs, {"tight_bound": A}, {"tight": A is not None}
    lo, hi = frame_bounds(frame, tol)
    dual = dual_frame(frame, tol)
    dlo, dhi = frame_bounds(dual, tol)
    ok = abs(dlo - 1 / hi) <= tol.eigen_match_tol and abs(dhi - 1 / lo) <= tol.eigen_match_tol
    results = {"dual": frame_to_json(dual), "bounds": [lo, hi], "dual_bounds": [dlo, dhi]}
    return inputs, results, {"dual_bounds_inverted": ok}


def _partner(args, tol):
    X = parse_matrix_file(args.x)
    if args.action == "reverse":
        h2 = parse_matrix_file(args.h2)
        h1 = build_reverse_partner(h2, X, tol)
        n1 = X @ adjoint(X)
        Xd = adjoint(X)
        weak = relative(norm(X @ (Xd @ h1 - h2 @ Xd)), norm(X) ** 2 * norm(h2))
        comm = relative(norm(h1 @ n1 - n1 @ h1), norm(h1) * norm(n1))
        results = {"h1": matrix_to_json(h1), "residual_weak_reverse": weak, "residual_h1n1": comm}
        verdicts = {"weak_reverse_intertwining": weak <= tol.commutator_tol, "h1_commutes_with_n1": comm <= tol.commutator_tol}
        return {"h2": args.h2, "x": args.x}, results, verdicts
    inp = PartnerInput(parse_matrix_file(args.h1), X)
    result = build_partner(inp, tol)
    results = partner_json(result)
    verdicts = result.verdicts(tol)
    if args.action == "build":
        report = spectral_inclusion(inp.h1, result.h2, tol)
    else:
        report = map_eigenpairs(inp, result, tol)
        results["norm_eigenvalues"] = [{"index": n, "n1": a, "n2": b} for n, a, b in report.norm_eigenvalues]
    results["spectral_report"] = spectral_report_json(report)
    verdicts["spectral_inclusion"] = report.included
    return {"h1": args.h1, "x": args.x}, results, verdicts


def _gframe(args, tol):
    g = parse_gframe_file(args.gframe)
    inputs = {"gframe": args.gframe, "dim_h": g.dim_h, "dim_ht": g.dim_ht, "members": len(g)}
    if args.action == "bounds":
        lo, hi = g_frame_bounds(g, tol)
        return inputs, {"lower": lo, "upper": hi, "tight_bound": g_tight_bound(g, tol)}, {"is_gframe": True}
    if args.action == "dual":
        lo, hi = g_frame_bounds(g, tol)
        dual = g_dual(g, tol)
        dlo, dhi = g_frame_bounds(dual, tol)
        ok = abs(dlo - 1 / hi) <= tol.eigen_match_tol and abs(dhi - 1 / lo) <= tol.eigen_match_tol
        results = {"dual": gframe_to_json(dual), "bounds": [lo, hi], "dual_bounds": [dlo, dhi]}
        return inputs, results, {"dual_bounds_inverted": ok}
    blocks = parse_blocks_file(args.h1_blocks)
    inputs["h1_blocks"] = args.h1_blocks
    result = gframe_partner(g, blocks, tol)
    inp = PartnerInput(block_hamiltonian(blocks), stacked_analysis_matrix(g))
    report = map_eigenpairs(inp, result, tol)
    results = partner_json(result)
    results["spectral_report"] = spectral_report_json(report)
    verdicts = result.verdicts(tol)
    verdicts["spectral_inclusion"] = report.included
    return inputs, results, verdicts


def catalog_document_parts(run: EntryRun):
    checks = [
        {"name": c.name, "passed": c.passed, "deviation": c.deviation, "tolerance": c.tolerance,
         "locator": c.locator, "audit": c.audit}
        for c in run.checks
    ]
    results = partner_json(run.partner)
    results["spectral_report"] = spectral_report_json(run.report)
    results["checks"] = checks
    results["notes"] = list(run.entry.notes)
    verdicts = {c.name: c.passed for c in run.checks if not c.audit}
    audits = {c.name: c.passed for c in run.checks if c.audit}
    return results, verdicts, audits


def _catalog(args, tol):
    if args.action == "list":
        return {}, {"entries": sorted(CATALOG)}, {}, {}
    entry = get_entry(args.name)
    if args.action == "export":
        out = Path(args.directory)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise InputError(f"cannot create {out}: {exc.strerror}") from None
        files = {"h1": out / "h1.json", "x": out / "x.json"}
        write_text(files["h1"], dumps(matrix_to_json(entry.h1)) + "\n")
        write_text(files["x"], dumps(matrix_to_json(entry.X)) + "\n")
        if hasattr(entry.construction, "vectors"):
            files["frame"] = out / "frame.json"
            write_text(files["frame"], dumps(frame_to_json(entry.construction)) + "\n")
        else:
            g = entry.construction
            files["gframe"] = out / "gframe.json"
            write_text(files["gframe"], dumps(gframe_to_json(g)) + "\n")
            m = g.dim_ht
            blocks = [matrix_to_json(entry.h1[k * m:(k + 1) * m, k * m:(k + 1) * m]) for k in range(len(g))]
            files["h1_blocks"] = out / "h1_blocks.json"
            write_text(files["h1_blocks"], dumps({"blocks": blocks}) + "\n")
        return {"name": args.name}, {"files": {k: str(v) for k, v in files.items()}}, {}, {}
    results, verdicts, audits = catalog_document_parts(verify_entry(entry, tol))
    return {"name": args.name}, results, verdicts, audits


def _text(doc: dict) -> str:
    lines = [f"scenario: {doc['scenario']}", f"command: {doc['command']}"]
    if doc["error"]:
        lines.append(f"error: {doc['error']['type']}: {doc['error']['message']}")
    results = doc["results"]
    for key, value in results.items():
        if key in ("checks", "dual", "h2", "h1"):
            continue
        if key == "spectral_report":
            lines.append(f"spectrum_h1: {_fmt(value['spectrum_h1'])}")
            lines.append(f"spectrum_h2: {_fmt(value['spectrum_h2'])}")
            lines.append(f"unmatched_h2: {_fmt(value['unmatched_h2'])}")
            lines.append("kept eigenvectors: " + ", ".join(
                f"#{k['index']} ({k['eigenvalue']:.12g})" for k in value["kept_eigenvectors"]))
            lines.append("dropped eigenvectors: " + ", ".join(
                f"#{k['index']} ({k['eigenvalue']:.12g})" for k in value["dropped_eigenvectors"]))
        elif key == "notes":
            lines.extend(f"note: {n}" for n in value)
        else:
            lines.append(f"{key}: {_fmt(value)}")
    for key in ("h1", "h2"):
        if key in results:
            M = np.array([complex(*e) for e in results[key]["entries"]]).reshape(results[key]["rows"], -1)
            lines.append(f"{key} =")
            lines.extend("  " + "  ".join(_cfmt(z) for z in row) for row in M)
    for check in results.get("checks", []):
        if check["audit"]:
            tag = "AUDIT-OK" if check["passed"] else "AUDIT-MISMATCH"
            lines.append(f"{tag} {check['name']}: deviation {check['deviation']:.3e} ({check['locator']})")
    for name, ok in doc["verdicts"].items():
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
    lines.append("RESULT: " + ("PASS" if doc["passed"] else "FAIL"))
    return "\n".join(lines)


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list) and all(isinstance(v, float) for v in value):
        return "[" + ", ".join(f"{v:.12g}" for v in value) + "]"
    return str(value)


def _cfmt(z: complex) -> str:
    if abs(z.imag) <= 1e-15 * max(1.0, abs(z.real)):
        return f"{z.real:>12.8f}"
    return f"{z.real:.8f}{z.imag:+.8f}j"


HANDLERS = {"frame": _frame, "partner": _partner, "gframe": _gframe}


def run(argv=None, environ=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        tol = tolerances_from_args(args, environ)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    scenario = getattr(args, "name", None) or args.group
    audits = {}
    code = EXIT_OK
    error = None
    try:
        if args.group == "catalog":
            inputs, results, verdicts, audits = _catalog(args, tol)
        else:
            inputs, results, verdicts = HANDLERS[args.group](args, tol)
    except VerdictError as exc:
        inputs, results, verdicts = {}, {}, {}
        error = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_VERDICT
    except IsospecError as exc:
        inputs, results, verdicts = {}, {}, {}
        error = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
    doc = _document(args, tol, scenario, inputs, results, verdicts, audits, error)
    if code == EXIT_OK and not doc["passed"]:
        code = EXIT_VERDICT
    text = dumps(doc) if args.format == "json" else _text(doc)
    if args.out:
        try:
            write_text(args.out, text + "\n")
        except InputError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_INPUT
    else:
        print(text, file=stdout)
    if error and args.format == "text":
        print(f"{error['type']}: {error['message']}", file=sys.stderr)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
