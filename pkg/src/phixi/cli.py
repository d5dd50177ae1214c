"""Command-line front end: list, check, sweep, selftest.

Exit codes: 0 all checks pass, 1 a check failed numerically, 2 domain
error in the parameters, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence

from . import identities as ids
from .errors import DomainError

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "text"), default=None)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--tol", type=float, help="override the default tolerance")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--id", required=True, help="identity id, e.g. I1")
    for flag in ("alpha", "n", "a", "t", "x", "mu", "nu"):
        params.add_argument(f"--{flag}", type=float)
    params.add_argument("--z-re", dest="z_re", type=float)
    params.add_argument("--z-im", dest="z_im", type=float)

    parser = _Parser(prog="phixi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("list", parents=[common], help="print the identity catalog")
    sub.add_parser("check", parents=[common, params], help="check one identity at one point")
    sw = sub.add_parser("sweep", parents=[common, params], help="check one identity over a grid")
    sw.add_argument("--min", dest="lo", type=float, required=True)
    sw.add_argument("--max", dest="hi", type=float, required=True)
    sw.add_argument("--points", type=int, required=True)
    sw.add_argument("--log-spaced", action="store_true")
    sw.add_argument("--workers", type=int, default=1, help="threads for evaluating grid points")
    sub.add_parser("selftest", parents=[common], help="run every identity on its canonical set")
    return parser


# ---------------------------------------------------------------------------
# parameter assembly


def params_from_args(desc: ids.IdentityDescriptor, args) -> ids.IdentityParams:
    pt = desc.param_type

    def need(name, flag=None):
        v = getattr(args, name)
        if v is None:
            raise UsageError(f"{desc.id} needs --{flag or name}")
        return v

    if pt is ids.NoParams:
        return ids.NoParams()
    if pt is ids.Pair:
        return ids.Pair(need("mu"), need("nu"))
    if pt is ids.Z:
        re = need("z_re", "z-re")
        im = args.z_im or 0.0
        return ids.Z(complex(re, im) if im else re)
    field = {ids.Alpha: "alpha", ids.N: "n", ids.A: "a", ids.T: "t", ids.X: "x"}[pt]
    return pt(need(field))


def sweep_fixed(args) -> dict:
    return {"mu": args.mu if args.mu is not None else 1.0, "z_im": args.z_im or 0.0}


# ---------------------------------------------------------------------------
# rendering


def render_csv(reports: Sequence[ids.IdentityReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ids.CSV_HEADER)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def render_json(reports, single: bool) -> str:
    payload = reports[0].to_json_dict() if single else [r.to_json_dict() for r in reports]
    return json.dumps(payload, indent=2) + "\n"


def render_text(report: ids.IdentityReport) -> str:
    desc = ids.get(report.id)
    lines = [f"{report.id}  {desc.title}", f"  params        {report.params.label() or '-'}"]
    for name, s in zip(desc.side_names, report.side_values):
        if s is None:
            lines.append(f"  {name:<32s} failed")
        else:
            lines.append(f"  {name:<32s} {ids.fmt_number(s.value)}  (err {s.err_estimate:.2e})")
    lines.append(f"  max_abs_diff  {ids.fmt_number(report.max_abs_diff)}  tol {report.tol:.1e}")
    lines.append(f"  result        {'PASS' if report.passed else 'FAIL'}  ({report.seconds:.3f} s)")
    if report.diagnostics:
        lines.append(f"  diagnostics   {report.diagnostics}")
    return "\n".join(lines) + "\n"


def emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_list(args) -> int:
    rows = [(d.id, d.default_tol, d.param_domain, d.title, d.anchor) for d in ids.CATALOG.values()]
    fmt = args.format or "text"
    if fmt == "json":
        text = json.dumps(
            [dict(zip(("id", "default_tol", "domain", "title", "anchor"), r)) for r in rows], indent=2
        ) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "default_tol", "domain", "title", "anchor"])
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = "".join(
            f"{i:<5s} tol={tol:<7.0e} {dom:<26s} {title}  [{anchor}]\n" for i, tol, dom, title, anchor in rows
        )
    emit(text, args.out)
    return EXIT_OK


def _descriptor(identity_id: str) -> ids.IdentityDescriptor:
    if identity_id not in ids.CATALOG:
        raise UsageError(f"unknown identity {identity_id!r}; known: {', '.join(ids.CATALOG)}")
    return ids.CATALOG[identity_id]


def cmd_check(args) -> int:
    desc = _descriptor(args.id)
    params = params_from_args(desc, args)
    report = ids.check(desc.id, params, args.tol)
    fmt = args.format or "text"
    if fmt == "json":
        text = render_json([report], single=True)
    elif fmt == "csv":
        text = render_csv([report])
    else:
        text = render_text(report)
    emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    desc = _descriptor(args.id)
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if not args.lo < args.hi:
        raise UsageError("--min must be smaller than --max")
    if args.log_spaced and args.lo <= 0:
        raise UsageError("--log-spaced needs --min > 0")
    if desc.param_type is ids.NoParams:
        raise UsageError(f"{desc.id} has no parameter to sweep")
    grid = ids.make_grid(desc, args.lo, args.hi, args.points, args.log_spaced, sweep_fixed(args))
    reports = ids.sweep(desc.id, grid, tol=args.tol, max_workers=args.workers)
    fmt = args.format or "csv"
    if fmt == "json":
        text = render_json(reports, single=False)
    elif fmt == "text":
        text = "".join(render_text(r) for r in reports)
    else:
        text = render_csv(reports)
    emit(text, args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def selftest_table(reports, divergence) -> str:
    by_id = {}
    for r in reports:
        by_id.setdefault(r.id, []).append(r)
    lines = [f"{'id':<5s} {'points':>6s} {'worst diff':>11s} {'tol':>8s} {'seconds':>8s}  result"]
    for i, rs in by_id.items():
        worst = max(r.max_abs_diff for r in rs)
        ok = all(r.passed for r in rs)
        secs = sum(r.seconds for r in rs)
        lines.append(
            f"{i:<5s} {len(rs):>6d} {worst:>11.3e} {rs[0].tol:>8.0e} {secs:>8.3f}  {'PASS' if ok else 'FAIL'}"
        )
        for r in rs:
            if not r.passed:
                lines.append(f"      {r.params.label()}: {r.diagnostics}")
    lines.append(divergence.line())
    n_ok = sum(all(r.passed for r in rs) for rs in by_id.values())
    verdict = "all pass" if n_ok == len(by_id) and divergence.passed else "FAILURES"
    lines.append(f"{n_ok}/{len(by_id)} identities pass; negative test "
                 f"{'confirms divergence' if divergence.passed else 'FAILED'}; {verdict}")
    return "\n".join(lines) + "\n"


def cmd_selftest(args) -> int:
    reports, divergence = ids.selftest(tol=args.tol)
    fmt = args.format or "text"
    if fmt == "csv":
        text = render_csv(reports)
    elif fmt == "json":
        text = json.dumps(
            {
                "reports": [r.to_json_dict() for r in reports],
                "divergence": {"N": divergence.N, "ratio": divergence.ratio, "pass": divergence.passed},
            },
            indent=2,
        ) + "\n"
    else:
        text = selftest_table(reports, divergence)
    emit(text, args.out)
    ok = all(r.passed for r in reports) and divergence.passed
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"list": cmd_list, "check": cmd_check, "sweep": cmd_sweep, "selftest": cmd_selftest}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"phixi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"phixi: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
