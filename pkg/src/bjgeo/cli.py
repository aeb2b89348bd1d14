"""Command-line front end: ``bjgeo <command> [options]``.

Exit status is 0 on success or a passing check, 1 when a check fails, and 2
on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import os
import sys

from . import attain as at
from . import io
from . import norm_core as nc
from . import verify
from .bj_ortho import is_bj_orthogonal
from .exceptions import BJGeoError, InputError, NotAttainedError
from .norm_core import TOL
from .sip import certify_attainment_via_sip

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _default_tol():
    raw = os.environ.get("BJGEO_TOL")
    if raw is None:
        return TOL
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"BJGEO_TOL must be a number, got {raw!r}") from None


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _vector(s):
    """'1,0.5' or '[1, 0.5]'."""
    text = s.strip()
    if not text.startswith("["):
        text = f"[{text}]"
    try:
        return io.parse_vector(io.load_json(text))
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance (default 1e-9, or $BJGEO_TOL)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)

    parser = argparse.ArgumentParser(
        prog="bjgeo", description="Norm attainment sets and Birkhoff-James orthogonality.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("attain", parents=[common], help="||T||, m(T), M_T and m_T")
    p.add_argument("--operator", required=True, help="operator JSON file")
    p.add_argument("--mode", choices=["max", "min", "both"], default="both")
    p.add_argument("--restarts", type=_positive_int, default=32)

    p = sub.add_parser("bj-check", parents=[common], help="decide x ⊥_B y")
    p.add_argument("--space", required=True, help="space JSON file")
    p.add_argument("x", type=_vector, help="comma-separated coordinates")
    p.add_argument("y", type=_vector)

    p = sub.add_parser("sip-certify", parents=[common], help="certify x in M_T or m_T")
    p.add_argument("--operator", required=True)
    p.add_argument("x", type=_vector)
    p.add_argument("--mode", choices=["max", "min"], required=True)
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("verify", parents=[common], help="run theorem checks")
    p.add_argument("--theorem", required=True, choices=sorted(verify.THEOREM_IDS) + ["all"])
    p.add_argument("--space", default=None)
    p.add_argument("--operator", default=None)
    p.add_argument("--trials", type=_positive_int, default=None)

    p = sub.add_parser("profile", parents=[common], help="||Tx|| around the unit circle")
    p.add_argument("--operator", required=True)
    p.add_argument("--samples", type=int, default=360)

    p = sub.add_parser("search", parents=[common], help="hunt for M_T/m_T orthogonality failures")
    p.add_argument("--space", required=True)
    p.add_argument("--trials", type=_positive_int, default=200)
    p.add_argument("--operator", default=None, help="operator to test first")
    p.add_argument("--restarts", type=_positive_int, default=16)
    return parser


# --- commands ---------------------------------------------------------------

def cmd_attain(args, tol):
    T = io.load_operator(args.operator)
    modes = [at.MAX, at.MIN] if args.mode == "both" else [args.mode]
    out = {"operator": io.operator_to_dict(T)}
    for m in modes:
        out[m] = at.solve(T, m, tol=tol, restarts=args.restarts, seed=args.seed).to_dict()
    lines = []
    for m in modes:
        d = out[m]
        name = "||T||" if m == at.MAX else "m(T)"
        lines.append(f"{name} = {d['value']!r} ({d['form']})")
        for key in ("points", "segments", "basis"):
            for v in d.get(key, []):
                lines.append(f"  {key[:-1] if key != 'basis' else 'basis'}: {v}")
    return EXIT_OK, out, lines, None


def cmd_bj_check(args, tol):
    X = io.load_space(args.space)
    for name in ("x", "y"):
        if len(getattr(args, name)) != X.dim:
            raise InputError(f"expected {X.dim} coordinates", name)
    # orthogonality is homogeneous in x, so any nonzero x is put on the sphere
    x = nc.normalize(X, args.x)
    cert = is_bj_orthogonal(X, x, args.y, tol)
    out = {"space": io.space_to_dict(X), "x": x.tolist(), "y": args.y.tolist(),
           "certificate": cert.to_dict()}
    word = "ORTHOGONAL" if cert else "NOT ORTHOGONAL"
    return (EXIT_OK if cert else EXIT_FAIL), out, [word], None


def cmd_sip_certify(args, tol):
    T = io.load_operator(args.operator)
    if len(args.x) != T.domain.dim:
        raise InputError(f"expected {T.domain.dim} coordinates", "x")
    if args.samples < 0:
        raise InputError("must be >= 0", "samples")
    out = {"operator": io.operator_to_dict(T), "x": args.x.tolist(), "mode": args.mode}
    try:
        cert = certify_attainment_via_sip(T, args.x, args.mode, samples=args.samples,
                                          seed=args.seed, tol=tol)
    except NotAttainedError as e:
        out["certificate"] = None
        out["error"] = str(e)
        return EXIT_FAIL, out, [f"FAIL: {e}"], None
    out["certificate"] = cert.to_dict()
    line = f"{'PASS' if cert else 'FAIL'} residual_max={cert.residual_max:.3e}"
    if cert.notes:
        line += f" ({cert.notes})"
    return (EXIT_OK if cert else EXIT_FAIL), out, [line], None


def _report_rows(reports):
    return [[r.theorem_id, "pass" if r.passed else "fail", "yes" if r.applicable else "no",
             repr(r.max_residual), r.notes] for r in reports]


def cmd_verify(args, tol):
    space = io.load_space(args.space) if args.space else None
    op = io.load_operator(args.operator) if args.operator else None
    if args.theorem == "all":
        if space is not None or op is not None:
            raise InputError("--space/--operator need a single --theorem")
        reports = verify.run_all(trials=args.trials, seed=args.seed, tol=tol)
    else:
        reports = [verify.run_theorem(args.theorem, space, op, args.trials, args.seed, tol)]
    ok = all(r.passed for r in reports)
    out = {"reports": [r.to_dict() for r in reports], "pass": ok}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.theorem_id}: {r.notes}" for r in reports]
    header = ["theorem_id", "pass", "applicable", "max_residual", "notes"]
    return (EXIT_OK if ok else EXIT_FAIL), out, lines, (header, _report_rows(reports))


def cmd_profile(args, tol):
    T = io.load_operator(args.operator)
    if T.domain.dim != 2:
        raise InputError("profile needs a planar domain", "operator.domain")
    if args.samples < 100:
        raise InputError("must be >= 100", "samples")
    prof = at.oracle_profile(T, args.samples)
    rows = [[repr(float(a)), repr(float(p[0])), repr(float(p[1])), repr(float(v))]
            for a, p, v in zip(prof.angles[:, 0], prof.points, prof.values)]
    out = {"operator": io.operator_to_dict(T), "angle": prof.angles[:, 0].tolist(),
           "points": prof.points.tolist(), "norm_Tx": prof.values.tolist()}
    lines = [f"max {prof.max!r} at {prof.argmax().tolist()}",
             f"min {prof.min!r} at {prof.argmin().tolist()}"]
    return EXIT_OK, out, lines, (["angle", "x1", "x2", "norm_Tx"], rows)


def cmd_search(args, tol):
    X = io.load_space(args.space)
    pinned = []
    if args.operator:
        T = io.load_operator(args.operator)
        if T.domain != X or T.codomain != X:
            raise InputError("operator must act on the searched space", "operator")
        pinned = [T]
    r = verify.euclidean_dichotomy(X, args.trials, args.seed, pinned, tol, restarts=args.restarts)
    out = {"space": io.space_to_dict(X), "report": r.to_dict()}
    line = f"{'PASS' if r.passed else 'FAIL'} {r.theorem_id}: {r.notes}"
    return (EXIT_OK if r.passed else EXIT_FAIL), out, [line], (
        ["theorem_id", "pass", "applicable", "max_residual", "notes"], _report_rows([r]))


COMMANDS = {"attain": cmd_attain, "bj-check": cmd_bj_check, "sip-certify": cmd_sip_certify,
            "verify": cmd_verify, "profile": cmd_profile, "search": cmd_search}
DEFAULT_FORMAT = {"bj-check": "text", "profile": "csv"}


def _render(fmt, out, lines, table):
    if fmt == "json":
        return io.dumps(out)
    if fmt == "text":
        return "\n".join(lines) + "\n"
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table[0])
    w.writerows(table[1])
    return buf.getvalue()


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        tol = _default_tol() if args.tol is None else args.tol
        if not (tol > 0):
            raise InputError("must be > 0", "tol")
        fmt = args.format or DEFAULT_FORMAT.get(args.command, "json")
        code, out, lines, table = COMMANDS[args.command](args, tol)
        if fmt == "csv" and table is None:
            raise InputError(f"csv output is not available for {args.command}", "format")
        text = _render(fmt, out, lines, table)
    except (BJGeoError, ValueError, TypeError) as e:
        print(f"bjgeo: error: {e}", file=stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
