"""Command-line front end: ``potts-atlas <command> [--format table|csv|json]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import classify, criticality, duality
from .exactnum import CycloNumber
from .sheets import Case, ThetaParam, closed_form_table, sheet_table

JOBS_ENV = "POTTS_ATLAS_JOBS"
FORMATS = ("table", "csv", "json")


class VerificationFailure(Exception):
    pass


# ---- rendering ----------------------------------------------------------------


def _exact_text(x: Any) -> str:
    if isinstance(x, CycloNumber):
        r = x.as_rational()
        return str(r) if r is not None else str(x)
    return str(x)


def _approx(x: Any) -> Any:
    if isinstance(x, CycloNumber):
        z = x.to_complex()
        return float(f"{z.real:.12g}")
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return float(f"{float(x):.12g}")
    return float(f"{x:.12g}")


def _cell_text(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.12g}"
    return _exact_text(x)


def _cell_json(x: Any) -> Any:
    if isinstance(x, CycloNumber):
        return x.to_json()
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def render(
    command: str,
    params: dict,
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    fmt: str,
) -> str:
    if fmt == "json":
        doc = {
            "command": command,
            "parameters": params,
            "rows": [{c: _cell_json(v) for c, v in zip(columns, row)} for row in rows],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    text_rows = [[_cell_text(v) for v in row] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        writer.writerows(text_rows)
        return buf.getvalue()
    widths = [len(c) for c in columns]
    for row in text_rows:
        widths = [max(w, len(v)) for w, v in zip(widths, row)]
    lines = ["  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip()
             for line in [list(columns)] + text_rows]
    return "\n".join(lines) + "\n"


# ---- commands -----------------------------------------------------------------


def _param(parser: argparse.ArgumentParser, n: int, m: int) -> ThetaParam:
    try:
        return ThetaParam(n, m)
    except ValueError as exc:
        parser.error(str(exc))


def cmd_allowed_q(args, parser) -> str:
    if args.max_m < 2:
        parser.error("max-m must be ≥ 2")
    rows = [
        [e.param.n, e.param.m, e.param.case.value, e.q, e.q_approx]
        for e in classify.allowed_q(args.max_m)
    ]
    return render(
        "allowed-q", {"max_m": args.max_m},
        ["n", "m", "case", "q", "q_approx"], rows, args.format,
    )


def cmd_allowed_p(args, parser) -> str:
    param = _param(parser, args.n, args.m)
    sols = [s for s in classify.allowed_p(param) if args.all or s.physical]
    sols.sort(key=lambda s: (s.p_approx, s.series.rank, s.M))
    rows = [
        [s.series.value, s.M, s.p, s.p_approx, s.physical, s.termination_pos, s.termination_neg]
        for s in sols
    ]
    return render(
        "allowed-p", {"n": args.n, "m": args.m, "all": args.all},
        ["series", "M", "p", "p_approx", "physical", "K_pos", "K_neg"], rows, args.format,
    )


def _parse_range(parser, text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(".."))
    except ValueError:
        parser.error(f"bad --range {text!r}, expected LO..HI")
    if lo > 0 or hi < 0 or lo > hi:
        parser.error("--range must satisfy LO <= 0 <= HI")
    return lo, hi


def cmd_coeffs(args, parser) -> str:
    param = _param(parser, args.n, args.m)
    series = classify.Series(args.series)
    if (series is classify.Series.C2) != (param.case is Case.CASE2):
        parser.error("C2 requires Case 2" if series is classify.Series.C2 else
                     f"{series.value} requires Case 1")
    Ms = dict(classify.series_for(param))[series]
    if args.M not in Ms:
        parser.error(f"M must lie in {Ms.start}..{Ms.stop - 1} for {series.value}")
    p = classify.series_value(param, series, args.M)
    if args.range:
        lo, hi = _parse_range(parser, args.range)
        table = closed_form_table(param, p, lo, hi)
    else:
        table = sheet_table(param, p)
    rows = []
    for K in table.labels:
        e = table[K]
        rows.append([K, e.kind.value, e.value, _approx(e.value), e.alpha, _approx(e.alpha)])
    params = {"n": args.n, "m": args.m, "series": series.value, "M": args.M,
              "p": _cell_json(p), "range": [table.lo, table.hi]}
    return render(
        "coeffs", params,
        ["K", "kind", "value", "value_approx", "alpha", "alpha_approx"], rows, args.format,
    )


def cmd_exponents(args, parser) -> str:
    r = criticality.exponents(_param(parser, args.n, args.m))
    row = [r.param.n, r.param.m, r.param.case.value, r.sheet_count, r.disc_degree,
           r.sqrt_cut_count, r.collided_pairs, r.critical_exponent, r.string_exponent]
    return render(
        "exponents", {"n": args.n, "m": args.m},
        ["n", "m", "case", "sheets", "disc_degree", "sqrt_cuts", "collided_pairs",
         "r/s", "gamma_s"],
        [row], args.format,
    )


def _default_jobs(parser) -> int:
    raw = os.environ.get(JOBS_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        parser.error(f"{JOBS_ENV} must be an integer")


def cmd_scan(args, parser) -> str:
    if args.max_m < 2:
        parser.error("max-m must be ≥ 2")
    if args.target < 2:
        parser.error("target must be ≥ 2")
    jobs = args.jobs if args.jobs is not None else _default_jobs(parser)
    if jobs < 1:
        parser.error("jobs must be ≥ 1")
    start = time.perf_counter()
    hits = classify.scan_integer_p(args.max_m, args.target, jobs=jobs)
    elapsed = time.perf_counter() - start
    # wall time goes to stderr so stdout stays byte-stable
    print(
        f"scanned {classify.count_pairs(args.max_m)} pairs, {len(hits)} hits, "
        f"{elapsed:.2f} s",
        file=sys.stderr,
    )
    rows = [[h.n, h.m, h.series.value, h.M] for h in hits]
    return render(
        "scan", {"max_m": args.max_m, "target": args.target},
        ["n", "m", "series", "M"], rows, args.format,
    )


def cmd_duality_words(args, parser) -> str:
    cap = duality.EXPANSION_CAP if args.verify else duality.WORD_CAP
    if args.length < 0 or args.length > cap:
        parser.error(
            f"length cap is {duality.WORD_CAP} for listing, "
            f"length cap is {duality.EXPANSION_CAP} for --verify"
        )
    if not args.verify:
        rows = [[i, " ".join(w)] for i, w in enumerate(duality.allowed_words(args.length))]
        return render("duality words", {"length": args.length}, ["index", "word"], rows,
                      args.format)
    check = duality.verify_words(args.length)
    status = "PASS" if check.ok else "FAIL"
    if args.format == "table":
        out = f"{status} {check.strings} strings"
        if not check.ok:
            out += f", first mismatch at {''.join(map(str, check.first_mismatch))}"
        out += "\n"
    else:
        mismatch = "".join(map(str, check.first_mismatch)) if check.first_mismatch else None
        out = render(
            "duality words", {"length": args.length, "verify": True},
            ["status", "strings", "first_mismatch"],
            [[status, check.strings, mismatch]], args.format,
        )
    if not check.ok:
        sys.stdout.write(out)
        raise VerificationFailure(status)
    return out


def cmd_duality_beta(args, parser) -> str:
    try:
        dm = duality.coupling_map(args.model, args.beta)
    except ValueError as exc:
        parser.error(str(exc))
    back = duality.dual_beta(dm.model, dm.beta_dual)
    row = [dm.model.value, dm.beta, dm.beta_dual, abs(back - dm.beta), dm.lam,
           dm.coupling_scale, dm.c]
    return render(
        "duality beta", {"model": dm.model.value, "beta": args.beta},
        ["model", "beta", "beta_dual", "residual", "lambda", "coupling_scale", "c"],
        [row], args.format,
    )


# ---- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default="table")
    parser = argparse.ArgumentParser(
        prog="potts-atlas",
        description="Exact sheet structure, boundary values and exponents of the "
        "Potts model on random surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("allowed-q", parents=[fmt], help="list q = 2(1 + cos n pi/m)")
    p.add_argument("--max-m", type=int, required=True)
    p.set_defaults(func=cmd_allowed_q)

    p = sub.add_parser("allowed-p", parents=[fmt], help="boundary values p for one theta")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--all", action="store_true", help="include non-positive p")
    p.set_defaults(func=cmd_allowed_p)

    p = sub.add_parser("coeffs", parents=[fmt], help="sheet coefficient table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--series", choices=[s.value for s in classify.Series], required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--range", metavar="LO..HI", help="label range, e.g. --range=-3..7")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("exponents", parents=[fmt], help="discriminant degree and exponents")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("scan", parents=[fmt], help="search for an integer boundary value")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes (default ${JOBS_ENV} or 1)")
    p.set_defaults(func=cmd_scan)

    d = sub.add_parser("duality", help="Kramers-Wannier maps and word algebra")
    dsub = d.add_subparsers(dest="duality_command", required=True)
    p = dsub.add_parser("words", parents=[fmt], help="list or verify allowed words")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_duality_words)
    p = dsub.add_parser("beta", parents=[fmt], help="dual temperature and coupling scale")
    p.add_argument("--model", choices=[m.value for m in duality.Model], required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_duality_beta)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args, parser)
    except VerificationFailure:
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
