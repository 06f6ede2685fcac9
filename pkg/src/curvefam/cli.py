"""Expression parser, pipeline orchestration, JSON output, and SVG rendering.

Grammar: integers, rationals a/b, declared identifiers, + - * / ^ and
parentheses; implicit multiplication is not accepted and division requires
a constant divisor. Parsed coefficients are cleared to integers with the
positive rational unit recorded.

The emitted JSON is deterministic (sorted keys, fixed separators) and
serializes algebraic numbers exactly: defining coefficients low-to-high
plus a rational isolating interval. SVG rendering is display-only and
never certified.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .polycore import MPoly, specialize
from .family1d import HypothesisError, critical_set, partition_line
from . import family2d
from .family2d import decompose, normalize_family
from .realalg import AlgebraicNumber


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1)
        super().__init__(f"{message} at offset {pos} (line {line}, column {col + 1})")
        self.pos = pos
        self.line = line
        self.col = col + 1


@dataclass
class AnalysisRequest:
    mode: str  # "two_param" | "one_param"
    curve_vars: tuple
    param_vars: tuple
    input_text: str
    topology: bool = False
    json_path: str | None = None
    svg_path: str | None = None
    refine_width: Fraction = Fraction(1, 1024)
    window: tuple = (Fraction(-2), Fraction(2), Fraction(-2), Fraction(2))
    verbose: bool = False

    def __post_init__(self):
        names = tuple(self.curve_vars) + tuple(self.param_vars)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        arity = {"two_param": 2, "one_param": 1}[self.mode]
        if len(self.param_vars) != arity:
            raise ValueError(f"{self.mode} mode needs {arity} parameter(s)")


# -- tokenizer / parser -------------------------------------------------------


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError("float literals are not exact; use a rational a/b", text, j)
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if c in "+-*/^()":
            tokens.append((c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", text, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", self.text, tok[2])
        return tok

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", self.text, tok[2])
        return poly

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            if self.next()[0] == "-":
                sign = -1
        acc = self.term()
        if sign < 0:
            acc = {k: -v for k, v in acc.items()}
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            for k, v in rhs.items():
                acc[k] = acc.get(k, Fraction(0)) + (v if op == "+" else -v)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _val, pos = self.next()
            rhs = self.factor()
            if op == "*":
                acc = self._mul(acc, rhs)
            else:
                if len(rhs) > 1 or (rhs and next(iter(rhs)) != ()):
                    raise ParseError("division by non-constant", self.text, pos)
                c = rhs.get((), Fraction(0))
                if c == 0:
                    raise ParseError("division by zero", self.text, pos)
                acc = {k: v / c for k, v in acc.items()}
        return acc

    def factor(self):
        if self.peek()[0] == "-":
            _tok = self.next()
            base = self.factor()
            return {k: -v for k, v in base.items()}
        base = self.atom()
        if self.peek()[0] == "^":
            _op, _val, pos = self.next()
            tok = self.next()
            if tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer", self.text, tok[2])
            e = tok[1]
            out = {(): Fraction(1)}
            for _ in range(e):
                out = self._mul(out, base)
            return out
        return base

    def atom(self):
        tok = self.next()
        kind, val, pos = tok
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "int":
            if self.peek()[0] == "/":
                save = self.pos
                self.next()
                den = self.peek()
                if den[0] == "int":
                    self.next()
                    if den[1] == 0:
                        raise ParseError("division by zero", self.text, den[2])
                    return {(): Fraction(val, den[1])}
                self.pos = save  # the '/' belongs to the enclosing term
            return {(): Fraction(val)}
        if kind == "name":
            if val not in self.variables:
                raise ParseError(f"undeclared variable {val!r}", self.text, pos)
            i = self.variables.index(val)
            e = tuple(1 if j == i else 0 for j in range(len(self.variables)))
            return {e: Fraction(1)}
        raise ParseError(f"unexpected token {val!r}", self.text, pos)

    def _mul(self, a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                if ea == ():
                    key = eb
                elif eb == ():
                    key = ea
                else:
                    key = tuple(u + v for u, v in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return {k: v for k, v in out.items() if v}


def parse_polynomial(text, variables):
    """Exact MPoly from an expression; returns (poly, positive unit)."""
    variables = tuple(variables)
    raw = _Parser(text, variables).parse()
    raw = {(k if k != () else (0,) * len(variables)): v for k, v in raw.items()}
    fixed = {}
    for e, c in raw.items():
        if len(e) != len(variables):
            e = e + (0,) * (len(variables) - len(e))
        fixed[e] = fixed.get(e, Fraction(0)) + c
    fixed = {e: c for e, c in fixed.items() if c}
    if not fixed:
        return MPoly.zero(variables), Fraction(1)
    from math import gcd as _gcd, lcm as _lcm

    num_gcd, den_lcm = 0, 1
    for c in fixed.values():
        num_gcd = _gcd(num_gcd, abs(c.numerator))
        den_lcm = _lcm(den_lcm, c.denominator)
    unit = Fraction(num_gcd, den_lcm)
    terms = {e: int(c / unit) for e, c in fixed.items()}
    return MPoly(variables, terms), unit


# -- JSON serialization --------------------------------------------------------


def _frac_str(q):
    return str(Fraction(q))


def _algnum_json(a, refine_width):
    if isinstance(a, Fraction):
        a = AlgebraicNumber.from_rational(a)
    if a.rational_value is None and refine_width is not None:
        a = a.refined(refine_width)
    out = {
        "defining": list(a.defining),
        "interval": [_frac_str(a.interval[0]), _frac_str(a.interval[1])],
    }
    if a.rational_value is not None:
        out["rational"] = _frac_str(a.rational_value)
    return out


def _value_json(v, width):
    if isinstance(v, Fraction):
        return {"rational": _frac_str(v)}
    return _algnum_json(v, width)


def _interval_json(iv, width):
    lo, hi = iv
    return [
        None if lo is None else _value_json(lo, width),
        None if hi is None else _value_json(hi, width),
    ]


def _cell_json(cell, width):
    desc = {}
    for k, v in cell.description.items():
        if k in ("t", "s", "line"):
            desc[k] = _value_json(v, width)
        elif k == "interval":
            desc[k] = _interval_json(v, width)
        elif k == "bands":
            desc[k] = v
        else:
            desc[k] = v if isinstance(v, (int, str, list)) else str(v)
    out = {
        "dim": cell.dim,
        "kind": cell.kind,
        "description": desc,
        "sample": [_value_json(cell.sample[0], width), _value_json(cell.sample[1], width)],
    }
    if cell.topology_status is not None:
        out["topology_status"] = cell.topology_status
    if cell.topology is not None:
        out["canonical_code"] = cell.topology.canonical_code.decode()
        out["components"] = cell.topology.components
        out["unbounded_branches"] = list(cell.topology.unbounded)
    return out


def decomposition_json(dec, width=None):
    dd = dec.data
    polys = {
        "M": str(dd.M),
        "R": str(dd.R),
        "Gtilde": None if dd.Gtilde is None else str(dd.Gtilde),
        "G": None if dd.G is None else str(dd.G),
    }
    for extra in ("P", "J", "K", "t_line_factors", "Rs_content"):
        val = getattr(dd, extra)
        if val is not None:
            polys[extra] = str(val)
    return {
        "schema": 1,
        "branch": dec.branch,
        "polynomials": polys,
        "A_set": [_algnum_json(a, width) for a in dec.A_set.roots],
        "cells": [_cell_json(c, width) for c in dec.cells],
        "diagnostics": list(dec.diagnostics),
    }


def _json_bytes(obj):
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")).encode()


# -- SVG rendering (display only, never certified) ------------------------------


def render_svg(dec, window, width=720, height=720, columns=240):
    """Plot the parameter-plane curve, cells, and samples of a decomposition.

    Branch points are found by float sign scanning per column; the output
    is for human inspection only and carries no exactness guarantees.
    """
    tmin, tmax, smin, smax = (float(w) for w in window)
    C = family2d._curve_of(dec)

    def X(tv):
        return (tv - tmin) / (tmax - tmin) * width

    def Y(sv):
        return height - (sv - smin) / (smax - smin) * height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#fcfcf8"/>',
    ]
    warnings = []
    t, s = dec.param_vars
    if C is not None and not C.is_constant():
        coeff_rows = C.coeffs_in(s)
        exps = [c for c in coeff_rows]

        def curve_vals(tv):
            # float coefficients of C(tv, s)
            cs = []
            for c in coeff_rows:
                if c.is_zero:
                    cs.append(0.0)
                else:
                    acc = 0.0
                    for e, k in c.terms.items():
                        acc += k * (tv ** e[0] if e else 1.0)
                    cs.append(acc)
            return cs

        rows = 240
        pts = []
        for i in range(columns + 1):
            tv = tmin + (tmax - tmin) * i / columns
            cs = curve_vals(tv)

            def val(sv):
                acc = 0.0
                for c in reversed(cs):
                    acc = acc * sv + c
                return acc

            prev_s = smin
            prev_v = val(smin)
            for j in range(1, rows + 1):
                sv = smin + (smax - smin) * j / rows
                v = val(sv)
                if prev_v == 0.0:
                    pts.append((tv, prev_s))
                elif v * prev_v < 0:
                    a, b = prev_s, sv
                    for _ in range(24):
                        m = (a + b) / 2
                        if val(a) * val(m) <= 0:
                            b = m
                        else:
                            a = m
                    pts.append((tv, (a + b) / 2))
                prev_s, prev_v = sv, v
        for tv, sv in pts:
            parts.append(f'<circle cx="{X(tv):.2f}" cy="{Y(sv):.2f}" r="1.1" fill="#335"/>')
    for cell in dec.cells:
        tv, sv = cell.sample
        ftv = float(tv if isinstance(tv, Fraction) else tv.__float__())
        fsv = float(sv if isinstance(sv, Fraction) else sv.__float__())
        if not (tmin <= ftv <= tmax and smin <= fsv <= smax):
            warnings.append(f"sample of a dim-{cell.dim} cell outside the window")
            continue
        if cell.dim == 0:
            parts.append(
                f'<circle cx="{X(ftv):.2f}" cy="{Y(fsv):.2f}" r="4" fill="#c22" stroke="#600"/>'
            )
        elif cell.dim == 1:
            parts.append(
                f'<rect x="{X(ftv)-2.4:.2f}" y="{Y(fsv)-2.4:.2f}" width="4.8" height="4.8" '
                f'fill="#2a2" stroke="#050"/>'
            )
        else:
            parts.append(
                f'<path d="M {X(ftv)-4:.2f} {Y(fsv):.2f} L {X(ftv)+4:.2f} {Y(fsv):.2f} '
                f'M {X(ftv):.2f} {Y(fsv)-4:.2f} L {X(ftv):.2f} {Y(fsv)+4:.2f}" stroke="#888" fill="none"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts), warnings


# -- orchestration ---------------------------------------------------------------


def run(req):
    """Execute an analysis request; returns (exit_status, artifacts dict)."""
    artifacts = {}
    try:
        variables = tuple(req.curve_vars) + tuple(req.param_vars)
        poly, unit = parse_polynomial(req.input_text, variables)
    except ParseError as exc:
        return 2, {"error": {"kind": "parse", "message": str(exc)}}
    try:
        if req.mode == "one_param":
            result = _run_one_param(req, poly)
        else:
            fi = normalize_family(poly, tuple(req.curve_vars), tuple(req.param_vars))
            dec = decompose(fi, topology=req.topology)
            result = decomposition_json(dec, req.refine_width)
            if req.svg_path:
                svg, warn = render_svg(dec, req.window)
                with open(req.svg_path, "w") as fh:
                    fh.write(svg)
                result["diagnostics"].extend(f"svg: {w}" for w in warn)
                artifacts["svg"] = req.svg_path
    except HypothesisError as exc:
        return 3, {"error": {"kind": "hypothesis", "message": str(exc)}}
    payload = _json_bytes(result)
    if req.json_path:
        with open(req.json_path, "wb") as fh:
            fh.write(payload)
        artifacts["json"] = req.json_path
    artifacts["result"] = result
    return 0, artifacts


def _run_one_param(req, poly):
    param = req.param_vars[0]
    cs = critical_set(poly, tuple(req.curve_vars), param)
    cells = []
    for cell in partition_line(cs):
        entry = {"kind": cell.kind}
        if cell.kind == "point":
            entry["value"] = _algnum_json(cell.sample, req.refine_width)
        else:
            entry["sample"] = _frac_str(cell.sample)
            entry["interval"] = [
                None if cell.lower is None else _algnum_json(cell.lower, req.refine_width),
                None if cell.upper is None else _algnum_json(cell.upper, req.refine_width),
            ]
        if req.topology:
            value = cell.sample if cell.kind == "interval" else cell.sample.rational_value
            if value is not None:
                member, _ = specialize(poly, {param: value})
                if not member.is_zero:
                    from .curvetopo import curve_topology

                    g = curve_topology(member, *req.curve_vars)
                    entry["canonical_code"] = g.canonical_code.decode()
                    entry["components"] = g.components
                    entry["topology_status"] = "labeled"
                else:
                    entry["topology_status"] = "skipped_degenerate_member"
            else:
                entry["topology_status"] = "skipped_algebraic_sample"
        cells.append(entry)
    return {
        "schema": 1,
        "branch": f"one_param_{cs.source}",
        "polynomials": {"M": str(cs.M), "R": str(cs.R)},
        "A_set": [_algnum_json(a, req.refine_width) for a in cs.points.roots],
        "cells": cells,
        "diagnostics": [],
    }


def _parse_fraction(text):
    if "/" in text:
        n, d = text.split("/", 1)
        return Fraction(int(n), int(d))
    return Fraction(int(text))


def main(argv=None):
    parser = argparse.ArgumentParser(prog="curvefam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="decompose the parameter plane of a curve family")
    an.add_argument("--vars", required=True, help="curve variables, e.g. x,y")
    an.add_argument("--params", help="parameter variables, e.g. t,s")
    an.add_argument("-i", "--input", required=True, help="polynomial file (UTF-8, # comments)")
    an.add_argument("-o", "--output", help="JSON output path")
    an.add_argument("--topology", action="store_true", help="label cells with curve topology")
    an.add_argument("--svg", help="SVG output path")
    an.add_argument("--refine-width", default="1/1024", help="interval width for reported roots")
    an.add_argument("--one-param", metavar="NAME", help="single-parameter mode for this parameter")
    an.add_argument("--window", default="-2,2,-2,2", help="SVG window tmin,tmax,smin,smax")
    an.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    curve_vars = tuple(v.strip() for v in args.vars.split(","))
    if args.one_param:
        mode = "one_param"
        param_vars = (args.one_param.strip(),)
    else:
        if not args.params:
            parser.error("--params is required unless --one-param is given")
        mode = "two_param"
        param_vars = tuple(v.strip() for v in args.params.split(","))
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        print(json.dumps({"error": {"kind": "io", "message": str(exc)}}), file=sys.stderr)
        return 1
    try:
        req = AnalysisRequest(
            mode=mode,
            curve_vars=curve_vars,
            param_vars=param_vars,
            input_text=text,
            topology=args.topology,
            json_path=args.output,
            svg_path=args.svg,
            refine_width=_parse_fraction(args.refine_width),
            window=tuple(_parse_fraction(w) for w in args.window.split(",")),
            verbose=args.verbose,
        )
    except ValueError as exc:
        print(json.dumps({"error": {"kind": "request", "message": str(exc)}}), file=sys.stderr)
        return 1
    status, artifacts = run(req)
    if status != 0:
        print(json.dumps(artifacts["error"]), file=sys.stderr)
    elif not args.output:
        sys.stdout.write(_json_bytes(artifacts["result"]).decode() + "\n")
    elif args.verbose:
        print(f"wrote {args.output}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
