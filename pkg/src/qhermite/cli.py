"""Command-line front end.

Subcommands: table, cf, hankel, oracle, verify, export.  Exit status is 0 on
success, 1 when a verification fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, Optional, Sequence

from . import identities
from .families import FAMILIES, family
from .matchoracle import MAX_ENUM_N, OracleCapError, c_table
from .momentengine import JSPECS, XSFraction, hankel_det, moments, named_jspec
from .mpoly import XSPoly, xs_latex, xs_text

FORMATS = ("text", "json", "csv", "latex")


class UsageError(Exception):
    pass


def _value_json(v) -> dict:
    if isinstance(v, XSFraction):
        return {"num": v.num.to_json(), "den": v.den.to_json()}
    return v.to_json()


def _value_text(v) -> str:
    if isinstance(v, XSFraction):
        return str(v)
    return xs_text(v)


def _value_latex(v) -> str:
    if isinstance(v, XSFraction):
        return r"\frac{%s}{%s}" % (xs_latex(v.num), xs_latex(v.den))
    return xs_latex(v)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _rows_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _poly_csv_rows(label, p: XSPoly):
    for (i, j), c in p.items():
        yield [label, i, j, str(c)]


# -- validation -------------------------------------------------------------

def _need(args, flag: str):
    v = getattr(args, flag.lstrip("-").replace("-", "_"))
    if v is None:
        raise UsageError(f"{args.command}: missing required flag {flag}")
    return v


def _nonneg(value: int, flag: str) -> int:
    if value < 0:
        raise UsageError(f"{flag} must be nonnegative, got {value}")
    return value


def _family_name(name: str) -> str:
    if name not in FAMILIES:
        raise UsageError(f"--family: unknown family {name!r}; valid names: {', '.join(FAMILIES)}")
    return name


def _spec_name(name: str, m: Optional[int] = None) -> str:
    if name == "w":
        if m is None:
            raise UsageError("--spec w needs --m")
        name = f"w{_nonneg(m, '--m')}"
    elif m is not None:
        raise UsageError("--m only applies to --spec w")
    try:
        named_jspec(name)
    except KeyError:
        raise UsageError(f"--spec: unknown spec {name!r}; valid names: {', '.join(JSPECS)} (or w<m>)") from None
    return name


def _format(args, allowed: Sequence[str], default: str) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} is not supported by {args.command}; use one of {', '.join(allowed)}")
    return fmt


# -- subcommands ------------------------------------------------------------

def _render_table(name: str, entries: Sequence[XSPoly], fmt: str) -> str:
    if fmt == "json":
        return _dump({"family": name, "entries": [p.to_json() for p in entries]})
    if fmt == "csv":
        rows = [r for n, p in enumerate(entries) for r in _poly_csv_rows(n, p)]
        return _rows_csv(["n", "x", "s", "coef"], rows)
    if fmt == "latex":
        return "\n".join(f"{n} & {xs_latex(p)} \\\\" for n, p in enumerate(entries))
    return "\n".join(f"{n}: {xs_text(p)}" for n, p in enumerate(entries))


def cmd_table(args) -> tuple[int, str]:
    name = _family_name(_need(args, "--family"))
    n = _nonneg(_need(args, "--n"), "--n")
    fmt = _format(args, FORMATS, "text")
    entries = family(name, n).entries
    if args.only_last:
        if fmt == "latex":
            return 0, xs_latex(entries[n])
        if fmt == "text":
            return 0, xs_text(entries[n])
    return 0, _render_table(name, entries, fmt)


def cmd_cf(args) -> tuple[int, str]:
    name = _spec_name(_need(args, "--spec"), args.m)
    n = _nonneg(_need(args, "--n"), "--n")
    fmt = _format(args, FORMATS, "text")
    spec = named_jspec(name)
    mu = moments(spec, n)
    b = [spec.b(i) for i in range(n + 1)]
    lam = [spec.lam(i) for i in range(1, n + 1)]
    if fmt == "json":
        return 0, _dump({
            "spec": name,
            "b": [_value_json(v) for v in b],
            "lam": [_value_json(v) for v in lam],
            "moments": [_value_json(v) for v in mu],
        })
    if fmt == "csv":
        rows = []
        for i in range(n + 1):
            rows.append([i, _value_text(b[i]), _value_text(lam[i - 1]) if i else "", _value_text(mu[i])])
        return 0, _rows_csv(["n", "b", "lam", "moment"], rows)
    if fmt == "latex":
        lines = [f"b_{{{i}}} &= {_value_latex(b[i])} \\\\" for i in range(n + 1)]
        lines += [f"\\lambda_{{{i}}} &= {_value_latex(lam[i - 1])} \\\\" for i in range(1, n + 1)]
        lines += [f"\\mu_{{{i}}} &= {_value_latex(mu[i])} \\\\" for i in range(n + 1)]
        return 0, "\n".join(lines)
    lines = [f"spec {name}"]
    for i in range(n + 1):
        lam_s = f"  lam_{i} = {_value_text(lam[i - 1])}" if i else ""
        lines.append(f"b_{i} = {_value_text(b[i])}{lam_s}")
    lines += [f"mu_{i} = {_value_text(v)}" for i, v in enumerate(mu)]
    return 0, "\n".join(lines)


def cmd_hankel(args) -> tuple[int, str]:
    n = _nonneg(_need(args, "--n"), "--n")
    if n == 0:
        raise UsageError("--n must be at least 1 for a Hankel determinant")
    shift = args.shift
    if shift not in (0, 1):
        raise UsageError(f"--shift must be 0 or 1, got {shift}")
    fmt = _format(args, ("text", "json", "latex"), "text")
    need = 2 * n - 2 + shift
    if (args.family is None) == (args.spec is None):
        raise UsageError("hankel: give exactly one of --family or --spec")
    if args.family is not None:
        source = _family_name(args.family)
        mu = list(family(source, need).entries)
    else:
        source = _spec_name(args.spec, args.m)
        mu = moments(named_jspec(source), need)
    det = hankel_det(mu, n, shift)
    if fmt == "json":
        return 0, _dump({"source": source, "n": n, "shift": shift, "det": det.to_json()})
    if fmt == "latex":
        return 0, xs_latex(det)
    return 0, xs_text(det)


def cmd_oracle(args) -> tuple[int, str]:
    n = _nonneg(_need(args, "--n"), "--n")
    fmt = _format(args, ("text", "json", "csv"), "json")
    if n > MAX_ENUM_N:
        raise OracleCapError(f"oracle: enumeration is capped at n <= {MAX_ENUM_N}, got --n {n}")
    row = c_table(n)
    if args.k is not None:
        k = _nonneg(args.k, "--k")
        if k > n:
            raise UsageError(f"--k must satisfy k <= n, got k={k}, n={n}")
        c = row.get(k)
        coeffs = c.numerator_coeffs() if c is not None else []
        if fmt == "json":
            return 0, _dump({"c": coeffs})
        if fmt == "csv":
            return 0, _rows_csv(["power", "count"], list(enumerate(coeffs)))
        return 0, f"c({n},{k},q) = {c if c is not None else 0}"
    if fmt == "json":
        return 0, _dump({"n": n, "c": {str(k): v.numerator_coeffs() for k, v in row.items()}})
    if fmt == "csv":
        rows = [[k, i, a] for k, v in row.items() for i, a in enumerate(v.numerator_coeffs())]
        return 0, _rows_csv(["k", "power", "count"], rows)
    return 0, "\n".join(f"c({n},{k},q) = {v}" for k, v in row.items())


def cmd_verify(args) -> tuple[int, str]:
    max_n = _nonneg(args.max_n, "--max-n")
    seed = args.seed
    if seed < 0:
        raise UsageError(f"--seed must be a nonnegative integer, got {seed}")
    fmt = _format(args, ("text", "json"), "text")
    if args.all and args.identity:
        raise UsageError("verify: --all and --identity are exclusive")
    if not args.all and not args.identity:
        raise UsageError("verify: give --all or at least one --identity")
    only = None
    if args.identity:
        names = identities.identity_names()
        for nm in args.identity:
            if nm not in names:
                raise UsageError(f"--identity: unknown identity {nm!r}; valid names: {', '.join(names)}")
        only = list(args.identity)
    reports = identities.run_all(max_n, seed, only)
    ok = all(r.passed for r in reports)
    if fmt == "json":
        out = _dump({"max_n": max_n, "seed": seed, "status": "pass" if ok else "fail",
                     "reports": [r.to_json() for r in reports]})
    else:
        lines = [r.text() for r in reports]
        passed = sum(r.passed for r in reports)
        lines.append(f"{passed}/{len(reports)} identities pass")
        out = "\n".join(lines)
    return (0 if ok else 1), out


def cmd_export(args) -> tuple[int, str]:
    name = args.family or "all"
    n = _nonneg(_need(args, "--n"), "--n")
    fmt = _format(args, ("json", "csv", "latex", "text"), "json")
    names = list(FAMILIES) if name == "all" else [_family_name(name)]
    if fmt == "json":
        return 0, _dump({"n": n, "families": {nm: [p.to_json() for p in family(nm, n).entries] for nm in names}})
    if fmt == "csv":
        rows = [[nm] + r for nm in names for i, p in enumerate(family(nm, n).entries) for r in _poly_csv_rows(i, p)]
        return 0, _rows_csv(["family", "n", "x", "s", "coef"], rows)
    blocks = []
    for nm in names:
        blocks.append(f"# {nm}")
        blocks.append(_render_table(nm, family(nm, n).entries, fmt))
    return 0, "\n".join(blocks)


COMMANDS: dict[str, Callable] = {
    "table": cmd_table,
    "cf": cmd_cf,
    "hankel": cmd_hankel,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "export": cmd_export,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    p = _Parser(prog="qhermite", description="Exact q-Hermite tables, continued fractions and identity checks.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    t = sub.add_parser("table", parents=[common], help="print p_0..p_n of a family")
    t.add_argument("--family")
    t.add_argument("--n", "--max-n", dest="n", type=int)
    t.add_argument("--only-last", action="store_true", help="print only p_n")

    c = sub.add_parser("cf", parents=[common], help="J-fraction coefficients and moments of a named spec")
    c.add_argument("--spec")
    c.add_argument("--n", "--max-n", dest="n", type=int)
    c.add_argument("--m", type=int, help="parameter of the w spec (--spec w --m 2 means w2)")

    h = sub.add_parser("hankel", parents=[common], help="Hankel determinant of a family or of spec moments")
    h.add_argument("--family")
    h.add_argument("--spec")
    h.add_argument("--n", type=int)
    h.add_argument("--shift", type=int, default=0)
    h.add_argument("--m", type=int, help="parameter of the w spec")

    o = sub.add_parser("oracle", parents=[common], help="c(n,k,q) by enumerating matchings")
    o.add_argument("--n", type=int)
    o.add_argument("--k", type=int)

    v = sub.add_parser("verify", parents=[common], help="run the identity checks")
    v.add_argument("--all", action="store_true")
    v.add_argument("--identity", action="append")
    v.add_argument("--max-n", "--n", dest="max_n", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("export", parents=[common], help="dump one family (or all) in a machine format")
    e.add_argument("--family")
    e.add_argument("--n", "--max-n", dest="n", type=int)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        if args.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        code, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except OracleCapError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())
