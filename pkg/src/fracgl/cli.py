"""Command-line front end: ``fracgl {gl,rl,solveq,sweep}``.

Vectors are passed comma-separated, one flag per quantity.  Results go to
``--out`` (default stdout) as CSV or JSON.  Failures print one JSON line on
stderr and exit with 1 (usage), 2 (domain/validation) or 3 (numeric).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections.abc import Sequence

from .characteristic import (
    CharEqProblem,
    CharForm,
    LinkageReport,
    char_residual,
    solve_q,
    verify_gl_rl_linkage,
    verify_polynomial_linkage,
)
from .errors import DomainError, NumericError
from .gl_engine import (
    DEFAULT_TERM_CAP,
    GLScheme,
    gl_factorized,
    gl_multivariate,
    gl_univariate,
    power_function,
)
from .rl_principal import rl_power_value

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3

TERM_CAP_ENV = "FRACGL_TERM_CAP"
SWEEP_HEADER = ["N", "h", "gl_value", "rl_value", "abs_err", "rel_err"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _num(v: float) -> str:
    return format(v, ".17g")


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(x) for x in v)
    if isinstance(v, float):
        return _num(v)
    if v is None:
        return ""
    return str(v)


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated list of numbers: {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated list of integers: {text!r}") from None


def _broadcast(name: str, values: list, n: int) -> list:
    if len(values) == 1 and n > 1:
        return values * n
    if len(values) != n:
        raise DomainError(f"--{name} has {len(values)} entries, expected {n}")
    return values


def _term_cap(args) -> int:
    if args.term_cap is not None:
        return args.term_cap
    env = os.environ.get(TERM_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{TERM_CAP_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_TERM_CAP


def _write(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit_record(args, record: dict) -> None:
    if args.format == "json":
        _write(args, _json(record))
    else:
        _write(args, _csv(list(record), [list(record.values())]))


def cmd_gl(args) -> int:
    p = _floats(args.p)
    n = len(p)
    r = _broadcast("r", _floats(args.r), n)
    x = _broadcast("x", _floats(args.x), n)
    N = _broadcast("N", _ints(args.N), n)
    if args.q is not None:
        scheme = GLScheme(x, r, N, q=_broadcast("q", _floats(args.q), n))
    else:
        scheme = GLScheme(x, r, N, h=_broadcast("h", _floats(args.h), n))
    f = power_function(p)
    if args.method == "factorized":
        value = gl_factorized(p, scheme)
    elif n == 1:
        value = gl_univariate(f, scheme)
    else:
        value = gl_multivariate(f, scheme, term_cap=_term_cap(args))
    record = {
        "p": p,
        "r": list(scheme.r),
        "x": list(scheme.x),
        "N": list(scheme.N),
        "q": list(scheme.q) if scheme.q is not None else None,
        "h": list(scheme.steps),
        "method": args.method,
        "value": value,
    }
    _emit_record(args, record)
    return EXIT_OK


def cmd_rl(args) -> int:
    p = _floats(args.p)
    n = len(p)
    r = _broadcast("r", _floats(args.r), n)
    x = _broadcast("x", _floats(args.x), n)
    _emit_record(args, {"p": p, "r": r, "x": x, "value": rl_power_value(p, r, x)})
    return EXIT_OK


def cmd_solveq(args) -> int:
    p = _floats(args.p)
    r = _broadcast("r", _floats(args.r), len(p))
    search = _floats(args.search)
    if len(search) != 2:
        raise UsageError("--search takes exactly two numbers: lo,hi")
    problem = CharEqProblem(p, r, CharForm(args.form))
    axes = []
    for axis in range(1, problem.axis_count + 1):
        roots = solve_q(problem, axis, (search[0], search[1]), args.grid)
        single = CharEqProblem((p[axis - 1],), (r[axis - 1],), problem.form)
        axes.append(
            {
                "axis": axis,
                "roots": [{"q": q, "residual": char_residual(single, q)} for q in roots],
            }
        )
    if args.format == "json":
        _write(args, _json({"p": p, "r": r, "form": problem.form.value, "axes": axes}))
    else:
        rows = [(a["axis"], root["q"], root["residual"]) for a in axes for root in a["roots"]]
        _write(args, _csv(["axis", "q", "residual"], rows))
    return EXIT_OK


def cmd_sweep(args) -> int:
    schedule = _ints(args.schedule)
    if not schedule:
        raise UsageError("--schedule must list at least one N")
    if args.taylor is not None:
        coeffs = _floats(args.taylor)
        if not coeffs:
            raise UsageError("--taylor must list at least one coefficient")
        r, x, q = _floats(args.r), _floats(args.x), _floats(args.q)
        if len(r) != 1 or len(x) != 1 or len(q) != 1:
            raise DomainError("--taylor sweeps are univariate: give scalar --r, --x, --q")
        report = verify_polynomial_linkage(coeffs, r[0], x[0], q[0], schedule)
    else:
        p = _floats(args.p)
        n = len(p)
        r = _broadcast("r", _floats(args.r), n)
        x = _broadcast("x", _floats(args.x), n)
        q = _broadcast("q", _floats(args.q), n)
        report = verify_gl_rl_linkage(p, r, x, q, schedule)
    if args.summary:
        with open(args.summary, "w", newline="") as fh:
            fh.write(_json(_summary(report)))
    if args.format == "json":
        _write(args, _json(report.to_dict()))
    else:
        rows = [
            (row.N[0] if len(set(row.N)) == 1 else row.N, row.h, row.gl_value,
             row.rl_value, row.abs_err, row.rel_err)
            for row in report.schedule
        ]
        _write(args, _csv(SWEEP_HEADER, rows))
    return EXIT_OK


def _summary(report: LinkageReport) -> dict:
    last = report.schedule[-1]
    out = {
        "p": list(report.p),
        "r": list(report.r),
        "x": list(report.x),
        "q": list(report.q),
        "slope": report.slope,
        "strictly_decreasing": report.strictly_decreasing,
        "final_rel_err": last.rel_err,
    }
    if report.taylor is not None:
        out["taylor"] = list(report.taylor)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracgl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_format):
        sp.add_argument("--format", choices=["csv", "json"], default=default_format)
        sp.add_argument("--out", default="-", help="output path, '-' for stdout")

    gl = sub.add_parser("gl", help="GL derivative of a power product")
    gl.add_argument("--p", required=True, help="exponents p_1,...,p_n")
    gl.add_argument("--r", required=True, help="orders r_1,...,r_n")
    gl.add_argument("--x", required=True, help="evaluation point")
    step = gl.add_mutually_exclusive_group(required=True)
    step.add_argument("--q", help="linkage parameters, h_i = q_i x_i / N_i")
    step.add_argument("--h", help="explicit steps")
    gl.add_argument("--N", required=True, help="truncation per axis")
    gl.add_argument("--method", choices=["box", "factorized"], default="box")
    gl.add_argument("--term-cap", type=int, default=None,
                    help=f"box size limit (default ${TERM_CAP_ENV} or {DEFAULT_TERM_CAP})")
    common(gl, "json")
    gl.set_defaults(handler=cmd_gl)

    rl = sub.add_parser("rl", help="Riemann-Liouville value of a power product")
    rl.add_argument("--p", required=True)
    rl.add_argument("--r", required=True)
    rl.add_argument("--x", required=True)
    common(rl, "json")
    rl.set_defaults(handler=cmd_rl)

    sq = sub.add_parser("solveq", help="roots in q of the characteristic equation, per axis")
    sq.add_argument("--p", required=True)
    sq.add_argument("--r", required=True)
    sq.add_argument("--search", default="0.01,1")
    sq.add_argument("--grid", type=int, default=1000)
    sq.add_argument("--form", choices=[f.value for f in CharForm], default="hypergeometric")
    common(sq, "json")
    sq.set_defaults(handler=cmd_solveq)

    sw = sub.add_parser("sweep", help="GL vs RL error along an N schedule under linkage")
    src = sw.add_mutually_exclusive_group(required=True)
    src.add_argument("--p")
    src.add_argument("--taylor", help="coefficients c0,c1,...,cd of sum c_j x^j")
    sw.add_argument("--r", required=True)
    sw.add_argument("--x", required=True)
    sw.add_argument("--q", default="1")
    sw.add_argument("--schedule", required=True, help="increasing N values, e.g. 100,1000")
    sw.add_argument("--summary", help="also write a JSON summary with the fitted slope")
    common(sw, "csv")
    sw.set_defaults(handler=cmd_sweep)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": " ".join(str(message).split())}) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except DomainError as exc:
        return _fail("domain", str(exc), EXIT_DOMAIN)
    except (NumericError, AssertionError, OverflowError, ZeroDivisionError) as exc:
        return _fail("numeric", str(exc), EXIT_NUMERIC)
    except OSError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
