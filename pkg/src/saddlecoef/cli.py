"""Command line entry point.

Exit codes: 0 success, 2 invalid input, 3 computation refused,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import ast
import math
import operator
import sys

from . import __version__
from .asymptotics import (MAX_EXPANSION_TERMS, prop9_gammas, prop9_profile, psi,
                          t0_coefficients, t1_estimate)
from .errors import ComputationRefused, InputError, InvariantViolation
from .examples import EXACT_BUDGET_K, run_example
from .oracle import contour_coefficient, exact_coefficient
from .profile import analyze
from .report import Table, render_csv, render_text
from .specfile import load_spec, parse_rational

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REFUSED = 3
EXIT_INVARIANT = 4

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Pow: operator.pow, ast.FloorDiv: operator.floordiv}


def eval_int_formula(text: str, m: int | None = None) -> int:
    """Evaluate an integer expression such as ``m^25`` or ``3*(m^6//3)``."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse formula {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "m":
            if m is None:
                raise InputError(f"formula {text!r} uses m but no --m grid was given")
            return m
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow) and (right < 0 or right > 64):
                raise InputError("exponents in formulas must lie in 0..64")
            return _OPS[type(node.op)](left, right)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        raise InputError(f"unsupported element in formula {text!r}")

    return ev(tree)


def parse_m_grid(text: str | None) -> list:
    if text is None:
        return [None]
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise InputError("empty m range")
        return list(range(lo, hi + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _grid(args):
    pts = []
    for m in parse_m_grid(args.m):
        n = eval_int_formula(args.n, m)
        k = eval_int_formula(args.k, m)
        if n <= 0 or k <= 0:
            raise InputError(f"n and k must be positive (got n={n}, k={k})")
        pts.append((m, n, k))
    return pts


def cmd_analyze(args):
    f = load_spec(args.spec)
    p = analyze(f)
    t = Table("exponent profile", ["field", "value"])
    t.add("f", str(f))
    t.add("d", p.d)
    t.add("l", p.l)
    t.add("m", p.m)
    t.add("l_j", " ".join("?" if x is None else str(x) for x in p.lj))
    t.add("l'_j", " ".join("?" if x is None else str(x) for x in p.lj_prime))
    t.add("theta_j", " ".join(f"2pi*{j}/{l}" for j, l in p.thetaj))
    t.add("eps0", p.eps0)
    t.add("strongly_positive", p.strongly_positive)
    t.add("degenerate_l1", p.degenerate)
    return [t]


def _check_budget(f, pts, force=False):
    limit = EXACT_BUDGET_K * analyze(f).d
    for _, _, k in pts:
        if k > limit and not force:
            raise ComputationRefused(
                f"k = {k} exceeds the exact budget {limit}; pass --force to run anyway")


def cmd_exact(args):
    f = load_spec(args.spec)
    pts = _grid(args)
    _check_budget(f, pts, args.force)
    t = Table("exact coefficient", ["m", "n", "k", "method", "log_value", "sign", "value"])
    for m, n, k in pts:
        res = exact_coefficient(f, n, k)
        text = str(res.exact)
        if len(text) > 200 and not args.full:
            text = f"<{len(text)} characters; use --full>"
        t.add(m, n, k, res.method, res.log_value, res.sign, text)
    return [t]


def cmd_estimate(args):
    f = load_spec(args.spec)
    delta = parse_rational(args.delta) if args.delta else None
    tables = []
    for m, n, k in _grid(args):
        rep = t1_estimate(f, n, k, expand=args.expand, delta=delta)
        t = Table(f"estimate n={n} k={k}" + (f" (m={m})" if m is not None else ""),
                  ["field", "value"])
        t.add("d", rep.d)
        if rep.exactly_zero:
            t.add("exactly_zero", True)
            tables.append(t)
            continue
        sp = rep.saddle
        t.add("r", sp.r)
        t.add("mu", sp.mu)
        t.add("sigma", sp.sigma)
        t.add("lambda", sp.lam)
        t.add("delta_log_ratio", rep.delta)
        t.add("log_dominant", rep.log_dominant)
        t.add("gamma_mode", rep.gamma_mode)
        t.add("s", rep.correction.s)
        for j, (g, p) in enumerate(zip(rep.correction.gammaj, rep.correction.psij), 1):
            t.add(f"gamma_{j}", g)
            t.add(f"psi_{j}", p)
        t.add("correction", rep.correction.total)
        t.add("upper_bound_only", rep.upper_bound_only)
        t.add("estimate_log", rep.estimate_log)
        if rep.expansion_c is not None:
            for i, c in enumerate(rep.expansion_c, 1):
                t.add(f"c_{i}", c)
            t.add("expansion_valid", rep.expansion_valid)
            t.add("expansion_log", rep.expansion_log)
        tables.append(t)
    return tables


def cmd_expand(args):
    f = load_spec(args.spec)
    if not 1 <= args.N <= MAX_EXPANSION_TERMS:
        raise InputError(f"N must be between 1 and {MAX_EXPANSION_TERMS}")
    pts = _grid(args)
    t = Table("expansion coefficients of 1 + sum c_nu / k^nu",
              ["m", "n", "k", "r", "nu", "c_nu", "valid"])
    profile = analyze(f)
    for m, n, k in pts:
        rep = t1_estimate(f, n, k)
        if rep.exactly_zero:
            t.add(m, n, k, None, None, None, None)
            continue
        valid = profile.eps0 is None or rep.delta > float(profile.eps0)
        for nu, c in enumerate(t0_coefficients(profile.reduced, rep.saddle.r, args.N), 1):
            t.add(m, n, k, rep.saddle.r, nu, float(c), valid)
    return [t]


def cmd_verify(args):
    f = load_spec(args.spec)
    pts = _grid(args)
    _check_budget(f, pts)
    for _, _, k in pts:
        if args.quadrature is not None and args.quadrature < 4 * k:
            raise InputError(f"--quadrature must be at least 4k = {4 * k}")
    t = Table("verification", ["m", "n", "k", "exact_log", "contour_log", "contour_rel_err",
                               "estimate_log", "exact_over_estimate", "exact_over_dominant",
                               "upper_bound_only"])
    for m, n, k in pts:
        ex = exact_coefficient(f, n, k)
        rep = t1_estimate(f, n, k)
        if rep.exactly_zero:
            t.add(m, n, k, ex.log_value, None, None, None, None, None, False)
            continue
        # quadrature on the reduced series, at the saddle radius
        g = analyze(f).reduced
        kk = k // rep.d
        q = contour_coefficient(g, n, kk, rep.saddle.r, args.quadrature)
        rel = abs(q.sign * math.exp(q.log_value - ex.log_value) - ex.sign) if ex.sign else None
        est = rep.estimate_log
        t.add(m, n, k, ex.log_value, q.log_value, rel, est,
              None if est is None else math.exp(ex.log_value - est),
              math.exp(ex.log_value - rep.log_dominant), rep.upper_bound_only)
    return [t]


def cmd_psi_scan(args):
    f = load_spec(args.spec)
    profile = prop9_profile(analyze(f).reduced.exponents)
    if args.t_step <= 0 or args.t_max < 0:
        raise InputError("need t-step > 0 and t-max >= 0")
    count = int(round(args.t_max / args.t_step))
    if count * profile.l > 2_000_000:
        raise ComputationRefused("psi-scan grid too large")
    grid = [i * args.t_step for i in range(count + 1)]
    t = Table(f"g(s,t) scan: L = {list(profile.reduced.exponents)}, u = {args.u}",
              ["s", "min_g", "argmin_t", "max_g"])
    overall = math.inf
    for s in range(profile.l):
        vals = [(psi(profile, prop9_gammas(profile, args.u, tt), s).total, tt) for tt in grid]
        lo = min(vals)
        hi = max(v for v, _ in vals)
        t.add(s, lo[0], lo[1], hi)
        overall = min(overall, lo[0])
    t.notes.append(f"overall min = {overall:.12g}")
    return [t]


def cmd_example(args):
    b = parse_rational(args.b)
    c = parse_rational(args.c)
    return run_example(args.id, b, c, args.scale)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="saddlecoef",
        description="Asymptotics of coefficients of large powers of power series.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--csv", action="store_true", help="emit CSV instead of text tables")
    p.add_argument("-o", "--output", help="write the report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="exponent profile of f")
    a.add_argument("spec")
    a.set_defaults(func=cmd_analyze)

    def nk(sp):
        sp.add_argument("spec")
        sp.add_argument("--n", required=True, help="integer or formula in m, e.g. m^25")
        sp.add_argument("--k", required=True, help="integer or formula in m, e.g. m^16")
        sp.add_argument("--m", help="m grid: 'lo..hi' or comma list")

    e = sub.add_parser("exact", help="exact coefficient of z^k in f^n")
    nk(e)
    e.add_argument("--full", action="store_true", help="print very long rationals in full")
    e.add_argument("--force", action="store_true", help="ignore the exact-size budget")
    e.set_defaults(func=cmd_exact)

    s = sub.add_parser("estimate", help="saddle-point estimate and correction factor")
    nk(s)
    s.add_argument("--expand", type=int, default=0, metavar="N",
                   help="also compute expansion coefficients c_1..c_N")
    s.add_argument("--delta", help="exact regime exponent p/q: use limiting gamma_j")
    s.set_defaults(func=cmd_estimate)

    x = sub.add_parser("expand", help="expansion coefficients c_1..c_N at the saddle")
    nk(x)
    x.add_argument("--N", type=int, default=2, help=f"number of terms (1..{MAX_EXPANSION_TERMS})")
    x.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", help="compare exact, quadrature and estimate")
    nk(v)
    v.add_argument("--quadrature", type=int, default=None, metavar="Q")
    v.set_defaults(func=cmd_verify)

    ps = sub.add_parser("psi-scan", help="scan g(s,t) over s and a t grid")
    ps.add_argument("spec")
    ps.add_argument("--u", type=int, required=True)
    ps.add_argument("--t-max", type=float, default=50.0)
    ps.add_argument("--t-step", type=float, default=0.1)
    ps.set_defaults(func=cmd_psi_scan)

    x = sub.add_parser("example", help="reproduce worked examples 1-4")
    x.add_argument("id", type=int, choices=[1, 2, 3, 4])
    x.add_argument("--b", default="1")
    x.add_argument("--c", default="1")
    x.add_argument("--scale", type=float, default=None,
                   help="ex1: max k; ex2: t max; ex3/ex4: max m")
    x.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tables = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComputationRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    text = render_csv(tables) if args.csv else render_text(tables)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
