"""Subcommand front end.

Usage: odetk [--json] [--tol T] [--trunc N] GROUP [ACTION] ARGS... [key=value ...]

Positional arguments are operator expressions, rational functions, matrices
written as [[a, b], [c, d]], or series. An argument of the form @path reads
one input per line from a file and emits one record per line.

Exit codes: 0 ok, 2 parse error, 3 unsupported input, 4 empty result.
"""

from __future__ import annotations

import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .. import asymptotics as asy
from .. import diffop as dop
from .. import kovacic as kov
from .. import linsys as ls
from .. import singular as sg
from .. import solve as sv
from ..arith import Poly, RatFunc, frac_str, poly_str, ratfunc_str
from ..errors import OdetkError, ParseError, UnsupportedInput
from .parser import parse, parse_ratfunc
from .printer import format_matrix, format_op

EXIT = {"ok": 0, "parse_error": 2, "unsupported": 3, "not_found": 4}

USAGE = """usage: odetk [--json] [--tol T] [--trunc N] COMMAND ARGS... [key=value ...]

commands:
  dop mul|divr|gcrd|lclm L1 L2      dop adjoint L      dop apply L f
  sys companion L                   sys cyclic A       sys gauge A B
  sys dsum|tensor|hom A1 A2         sys dual A
  sing points L                     sing fuchs|indicial|exponents L at=<a|inf>
  solve poly L N=<deg>              solve exp L
  sympow <s or order-2 L> m=<m>     kovacic L
  sum borel S k=<k>                 sum pade S p=<p> q=<q>
  sum laplace h k= d= x=            sum bpl S k= d= x=
  sum jump S k= d= x= delta=        sum directions c:k[,c:k...]

series S: 'euler', a list [c0, c1, ...], or a rational function in x
(expanded to --trunc terms, default 20). Complex numbers as a+bi; angles
may use pi (e.g. d=pi, d=2*pi/3).
"""

GROUPS = {
    "dop": {"mul", "divr", "gcrd", "lclm", "adjoint", "apply"},
    "sys": {"companion", "cyclic", "gauge", "dsum", "tensor", "hom", "dual"},
    "sing": {"points", "fuchs", "indicial", "exponents"},
    "solve": {"poly", "exp"},
    "sum": {"borel", "pade", "laplace", "bpl", "jump", "directions"},
    "sympow": None,
    "kovacic": None,
}


@dataclass
class JobResult:
    status: str
    payload: dict
    text: str = ""
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


@dataclass
class Options:
    json: bool = False
    tol: float = 1e-10
    trunc: int = 20


class UsageError(ParseError):
    def __init__(self, message):
        super().__init__(message, 0, ())


# ---------------------------------------------------------------- value parsing

def _split_top(src: str, sep: str = ",") -> list[str]:
    """Split on sep outside brackets and parentheses."""
    out, depth, cur = [], 0, []
    for ch in src:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out]


def _strip_brackets(src: str) -> str:
    src = src.strip()
    if not (src.startswith("[") and src.endswith("]")):
        raise ParseError("expected a bracketed list", 0, ("[",))
    return src[1:-1]


def parse_matrix(src: str) -> list[list[RatFunc]]:
    rows = [_split_top(_strip_brackets(r)) for r in _split_top(_strip_brackets(src))]
    return [[parse_ratfunc(e) for e in r] for r in rows]


def parse_complex(src: str) -> complex:
    try:
        return complex(src.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ParseError(f"bad complex number {src!r}", 0, ("a+bi",)) from None


_PI = re.compile(r"^([+-]?)(?:(\d+(?:\.\d*)?(?:/\d+)?)\*)?pi(?:/(\d+(?:\.\d*)?))?$")


def parse_angle(src: str) -> float:
    s = src.replace(" ", "")
    m = _PI.match(s)
    if m:
        coef = float(Fraction(m.group(2))) if m.group(2) else 1.0
        den = float(m.group(3)) if m.group(3) else 1.0
        return (-1 if m.group(1) == "-" else 1) * coef * math.pi / den
    try:
        return float(s)
    except ValueError:
        raise ParseError(f"bad angle {src!r}", 0, ("radians", "pi multiple")) from None


def parse_rational(src: str) -> Fraction:
    try:
        return Fraction(src.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {src!r}", 0, ("p/q",)) from None


def parse_series(src: str, trunc: int) -> asy.TruncSeries:
    s = src.strip()
    if s.lower() == "euler":
        return asy.euler_series(trunc)
    if s.startswith("["):
        return asy.TruncSeries([parse_rational(e) for e in _split_top(_strip_brackets(s)) if e])
    f = parse_ratfunc(s)
    try:
        return asy.TruncSeries.from_ratfunc(f, trunc)
    except ValueError as e:
        raise ParseError(str(e), 0, ("function regular at 0",)) from None


def parse_terms(src: str) -> list[asy.EigenTerm]:
    out = []
    for part in _split_top(src):
        if not part:
            continue
        if ":" not in part:
            raise ParseError(f"expected c:k, got {part!r}", 0, ("c:k",))
        c, k = part.rsplit(":", 1)
        try:
            out.append(asy.EigenTerm(parse_complex_rational(c), parse_rational(k)))
        except ValueError as e:
            raise ParseError(str(e), 0, ("nonzero c", "positive k")) from None
    return out


def parse_complex_rational(src: str) -> complex:
    try:
        return complex(Fraction(src.strip()))
    except (ValueError, ZeroDivisionError):
        return parse_complex(src)


# ---------------------------------------------------------------- formatting

def loc_str(a) -> str:
    return "inf" if a is sg.INF else frac_str(Fraction(a))


def matrix_json(a) -> list[list[str]]:
    return [[ratfunc_str(v) for v in row] for row in a]


def complex_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _series_coeff(v):
    return frac_str(v) if isinstance(v, Fraction) else (complex(v).real if complex(v).imag == 0 else str(v))


# ---------------------------------------------------------------- commands

def _need(args: list[str], n: int, what: str) -> list[str]:
    if len(args) != n:
        raise UsageError(f"expected {n} argument(s): {what}")
    return args


def _kw(kw: dict, key: str, conv: Callable, default=None):
    if key in kw:
        return conv(kw[key])
    if default is None:
        raise UsageError(f"missing {key}=")
    return default


def _op_result(cmd, l) -> JobResult:
    s = format_op(l)
    return JobResult("ok", {"command": cmd, "status": "ok", "operator": s}, s)


def cmd_dop(action, args, kw, opt):
    cmd = f"dop {action}"
    if action == "adjoint":
        (a,) = _need(args, 1, "L")
        return _op_result(cmd, dop.adjoint(parse(a)))
    if action == "apply":
        a, f = _need(args, 2, "L f")
        r = ratfunc_str(dop.apply(parse(a), parse_ratfunc(f)))
        return JobResult("ok", {"command": cmd, "status": "ok", "result": r}, r)
    a, b = _need(args, 2, "L1 L2")
    l1, l2 = parse(a), parse(b)
    if action == "mul":
        return _op_result(cmd, dop.multiply(l1, l2))
    if action == "divr":
        q, r = dop.right_divide(l1, l2)
        text = f"quotient: {format_op(q)}\nremainder: {format_op(r)}"
        return JobResult("ok", {"command": cmd, "status": "ok",
                                "quotient": format_op(q), "remainder": format_op(r)}, text)
    if action == "gcrd":
        return _op_result(cmd, dop.gcrd(l1, l2))
    return _op_result(cmd, dop.lclm(l1, l2))


def _sys_result(cmd, s: ls.LinearSystem) -> JobResult:
    return JobResult("ok", {"command": cmd, "status": "ok", "matrix": matrix_json(s.a)}, format_matrix(s.a))


def cmd_sys(action, args, kw, opt):
    cmd = f"sys {action}"
    if action == "companion":
        (a,) = _need(args, 1, "L")
        l = parse(a)
        if l.order < 1:
            raise UsageError("companion needs an operator of order >= 1")
        return _sys_result(cmd, ls.companion(l))
    if action in ("cyclic", "dual"):
        (a,) = _need(args, 1, "A")
        s = ls.LinearSystem(parse_matrix(a))
        if action == "dual":
            return _sys_result(cmd, ls.dual(s))
        l, g = ls.cyclic_vector(s)
        text = f"operator: {format_op(l)}\ngauge: {format_matrix(g.b)}"
        return JobResult("ok", {"command": cmd, "status": "ok", "operator": format_op(l),
                                "gauge": matrix_json(g.b)}, text)
    a, b = _need(args, 2, "A B")
    s1 = ls.LinearSystem(parse_matrix(a))
    if action == "gauge":
        return _sys_result(cmd, ls.gauge(s1, ls.GaugeMap(parse_matrix(b))))
    s2 = ls.LinearSystem(parse_matrix(b))
    fn = {"dsum": ls.direct_sum, "tensor": ls.tensor, "hom": ls.hom}[action]
    return _sys_result(cmd, fn(s1, s2))


def _exps(vals) -> list[str]:
    return [frac_str(v) for v in sorted(vals)]


def cmd_sing(action, args, kw, opt):
    cmd = f"sing {action}"
    (a,) = _need(args, 1, "L")
    l = parse(a)
    if l.order < 1:
        raise UsageError("expected an operator of order >= 1")
    if action == "points":
        pts = []
        lines = []
        for r in sg.singular_points(l):
            ind = poly_str(r.indicial, "a") if r.indicial is not None else None
            pts.append({"location": loc_str(r.location), "classification": r.classification.value,
                        "indicial": ind, "exponents": _exps(r.exponents), "complete": r.complete})
            lines.append(f"{loc_str(r.location)}: {r.classification.value}"
                         + (f", exponents {{{', '.join(_exps(r.exponents))}}}" if ind else ""))
        return JobResult("ok", {"command": cmd, "status": "ok", "points": pts}, "\n".join(lines))
    at = _kw(kw, "at", lambda v: sg.as_location(v if v.lower() in ("inf", "oo", "infinity")
                                                 else parse_rational(v)))
    loc = loc_str(at)
    if action == "fuchs":
        c = sg.fuchs_test(l, at).value
        return JobResult("ok", {"command": cmd, "status": "ok", "location": loc, "classification": c}, c)
    if action == "indicial":
        p = poly_str(sg.indicial_polynomial(l, at), "a")
        return JobResult("ok", {"command": cmd, "status": "ok", "location": loc, "indicial": p}, p)
    r = sg.analyze_point(l, at)
    if r.classification is sg.Classification.IRREGULAR:
        sg.exponents(l, at)  # raises IrregularPoint
    ex = _exps(r.exponents)
    text = "{" + ", ".join(ex) + "}" + ("" if r.complete else f"  (non-rational factor {poly_str(r.residual, 'a')})")
    return JobResult("ok", {"command": cmd, "status": "ok", "location": loc, "exponents": ex,
                            "complete": r.complete}, text)


def cmd_solve(action, args, kw, opt):
    cmd = f"solve {action}"
    (a,) = _need(args, 1, "L")
    l = parse(a)
    if action == "poly":
        n = _kw(kw, "N", int)
        sols = [poly_str(p) for p in sv.polynomial_solutions(l, n)]
        status = "ok" if sols else "not_found"
        return JobResult(status, {"command": cmd, "status": status, "degree_bound": n, "solutions": sols},
                         "\n".join(sols) if sols else "no polynomial solutions")
    st = sv.exponential_solutions(l)
    sols = [{"u": ratfunc_str(s.u), "p": poly_str(s.p),
             "exponents": [frac_str(e) for _, e in s.exponent_choice]} for s in st.solutions]
    status = "ok" if st.found else "not_found"
    text = "\n".join(f"u = {s['u']}" for s in sols) or f"no exponential solutions ({st.outcome.value})"
    diag = [f"skipped: {r}" for r in st.skipped]
    return JobResult(status, {"command": cmd, "status": status, "outcome": st.outcome.value,
                              "solutions": sols, "skipped": list(st.skipped)}, text, diag)


def _normal_form_input(src: str) -> RatFunc:
    l = parse(src)
    if l.order <= 0:
        return l[0] if l else RatFunc()
    if l.order != 2:
        raise UsageError("expected s or a second-order operator")
    return kov.reduce_to_normal_form(l)[0]


def cmd_sympow(action, args, kw, opt):
    (a,) = _need(args, 1, "s or L")
    m = _kw(kw, "m", int)
    s = _normal_form_input(a)
    l = kov.symmetric_power(s, m)
    return JobResult("ok", {"command": "sympow", "status": "ok", "m": m, "s": ratfunc_str(s),
                            "operator": format_op(l)}, format_op(l))


def cmd_kovacic(action, args, kw, opt):
    (a,) = _need(args, 1, "L")
    out = kov.decide_normal_form(_normal_form_input(a))
    cert = out.certificate
    cj = None
    lines = [out.decision.value]
    if cert is not None:
        coeffs = [ratfunc_str(c) for c in cert.coefficients()]
        cj = {"t": cert.t, "u": ratfunc_str(cert.u), "coefficients": coeffs, "label": cert.group_label.value}
        lines.append(f"t = {cert.t}, group {cert.group_label.value}")
        lines.append(f"u = {cj['u']}")
        terms = []
        for c, i in zip(coeffs, range(cert.t, -1, -1)):
            mono = "" if i == 0 else ("Y" if i == 1 else f"Y^{i}")
            if c == "1" and mono:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}" if mono else f"({c})")
        lines.append("P(Y) = " + " + ".join(terms))
    label = out.group_label.value if out.group_label is not None else None
    status = "not_found" if out.decision is kov.Decision.INCONCLUSIVE else "ok"
    return JobResult(status, {"command": "kovacic", "status": status, "decision": out.decision.value,
                              "label": label, "s": ratfunc_str(out.s), "certificate": cj,
                              "reasons": list(out.reasons)}, "\n".join(lines),
                     [f"inconclusive: {r}" for r in out.reasons])


def _value_result(cmd, v, e) -> JobResult:
    return JobResult("ok", {"command": cmd, "status": "ok", "value": complex_json(v), "error": float(e)},
                     f"{v.real:.15g} {v.imag:+.15g}i  (error <= {e:.2g})")


def cmd_sum(action, args, kw, opt):
    cmd = f"sum {action}"
    if action == "directions":
        (a,) = _need(args, 1, "c:k[,c:k...]")
        r = asy.stokes_directions(parse_terms(a))
        text = (f"stokes: {list(r.stokes)}\nnegative pairs: {[list(p) for p in r.negative_pairs]}\n"
                f"singular: {list(r.singular)}")
        return JobResult("ok", {"command": cmd, "status": "ok", "stokes": list(r.stokes),
                                "negative_pairs": [list(p) for p in r.negative_pairs],
                                "singular": list(r.singular)}, text)
    (a,) = _need(args, 1, "series or h")
    k = _kw(kw, "k", parse_rational, Fraction(1))
    if action == "laplace":
        h = parse_ratfunc(a)
        v, e = asy.laplace_along_ray(h, k, _kw(kw, "d", parse_angle, 0.0), _kw(kw, "x", parse_complex), opt.tol)
        return _value_result(cmd, v, e)
    y = parse_series(a, opt.trunc)
    if action == "borel":
        c = [_series_coeff(v) for v in asy.formal_borel(y, k).coeffs]
        return JobResult("ok", {"command": cmd, "status": "ok", "k": frac_str(k), "coefficients": c},
                         ", ".join(str(v) for v in c))
    if action == "pade":
        p, q = _kw(kw, "p", int), _kw(kw, "q", int)
        r = asy.pade(y, p, q)
        if not isinstance(r, RatFunc):
            raise UsageError("pade from the CLI needs exact coefficients")
        return JobResult("ok", {"command": cmd, "status": "ok", "p": p, "q": q,
                                "numerator": poly_str(r.num), "denominator": poly_str(r.den)}, ratfunc_str(r))
    d = _kw(kw, "d", parse_angle, 0.0)
    x = _kw(kw, "x", parse_complex)
    if action == "bpl":
        return _value_result(cmd, *asy.borel_pade_laplace(y, k, d, x, opt.tol))
    delta = _kw(kw, "delta", parse_angle)
    return _value_result(cmd, *asy.stokes_jump(y, k, d, x, delta, opt.tol))


HANDLERS = {"dop": cmd_dop, "sys": cmd_sys, "sing": cmd_sing, "solve": cmd_solve,
            "sympow": cmd_sympow, "kovacic": cmd_kovacic, "sum": cmd_sum}


# ---------------------------------------------------------------- driver

_KW = re.compile(r"^([A-Za-z]+)=(.*)$")


def _split_argv(argv: list[str]) -> tuple[Options, list[str]]:
    # argparse would read expressions such as "-x*D" or "-4/3:3/2" as options
    opt = Options()
    rest = []
    it = iter(argv)
    for a in it:
        if a == "--":
            rest.extend(it)
            break
        if a == "--json":
            opt.json = True
        elif a in ("--tol", "--trunc") or a.startswith(("--tol=", "--trunc=")):
            name, _, val = a.partition("=")
            if not val:
                val = next(it, None)
                if val is None:
                    raise UsageError(f"{name} needs a value")
            try:
                if name == "--tol":
                    opt.tol = float(val)
                else:
                    opt.trunc = int(val)
            except ValueError:
                raise UsageError(f"bad value for {name}: {val!r}") from None
        else:
            rest.append(a)
    return opt, rest


def _command(rest: list[str]) -> tuple[str, str | None, list[str]]:
    if not rest:
        raise UsageError("missing command")
    group = rest[0]
    if group not in GROUPS:
        raise UsageError(f"unknown command {group!r}")
    actions = GROUPS[group]
    if actions is None:
        return group, None, rest[1:]
    if len(rest) < 2 or rest[1] not in actions:
        raise UsageError(f"{group} needs one of: {', '.join(sorted(actions))}")
    return group, rest[1], rest[2:]


def _run_one(group, action, args, kw, opt) -> JobResult:
    cmd = group if action is None else f"{group} {action}"
    try:
        return HANDLERS[group](action, args, kw, opt)
    except ParseError as e:
        payload = {"command": cmd, "status": "parse_error", "error": str(e), "position": e.position}
        return JobResult("parse_error", payload, f"parse error: {e}", [str(e)])
    except (UnsupportedInput, OdetkError) as e:
        payload = {"command": cmd, "status": "unsupported", "error": f"{type(e).__name__}: {e}"}
        return JobResult("unsupported", payload, payload["error"], [payload["error"]])
    except ValueError as e:
        payload = {"command": cmd, "status": "parse_error", "error": str(e)}
        return JobResult("parse_error", payload, f"error: {e}", [str(e)])


def run(argv: list[str]) -> list[JobResult]:
    """Run one command line; returns one JobResult per input record."""
    try:
        opt, rest = _split_argv(argv)
        group, action, tail = _command(rest)
    except ParseError as e:
        return [JobResult("parse_error", {"command": "", "status": "parse_error", "error": str(e)},
                          str(e), [str(e), USAGE])]
    args, kw = [], {}
    for a in tail:
        m = _KW.match(a)
        if m and not a.startswith("["):
            kw[m.group(1)] = m.group(2)
        else:
            args.append(a)
    file_args = [i for i, a in enumerate(args) if a.startswith("@")]
    if not file_args:
        return [_run_one(group, action, args, kw, opt)]
    i = file_args[0]
    try:
        with open(args[i][1:], encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as e:
        cmd = group if action is None else f"{group} {action}"
        return [JobResult("parse_error", {"command": cmd, "status": "parse_error", "error": str(e)},
                          str(e), [str(e)])]
    return [_run_one(group, action, args[:i] + [ln] + args[i + 1:], kw, opt) for ln in lines]


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv and argv[0] in ("-h", "--help"):
        print(USAGE)
        return 0
    opt = _split_argv(argv)[0] if argv else Options()
    results = run(argv)
    for r in results:
        for d in r.diagnostics:
            print(d, file=sys.stderr)
        if opt.json:
            print(json.dumps(r.payload))
        elif r.status not in ("parse_error", "unsupported"):
            print(r.text)  # error text already went to stderr
    return max(r.exit_code for r in results)


if __name__ == "__main__":
    sys.exit(main())
