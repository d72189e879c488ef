"""Reproducible fixtures for the four worked examples.

1. ``p = 1 + z^3/3 + b z^4`` with ``n = k^4``;
2. the exponent set ``{15, 20, 21}`` and the non-negative function ``g(s, t)``;
3. ``p = 1 + z^9/9 + b z^15 + c z^25`` with ``n = m^25, k = m^16``;
4. the same ``p`` with ``n = m^15, k = m^6``, where the factor can vanish.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .asymptotics import prop9_g, prop9_profile, prop9_gammas, psi, t1_estimate
from .errors import ComputationRefused, InputError
from .oracle import exact_coefficient
from .profile import SeriesSpec
from .report import Table
from .saddle import mu_series
from .series import revert_saddle

EXACT_BUDGET_K = 1000
EX1_MAX_K = 60
EX2_MAX_POINTS = 200_000
EX34_MAX_M = 6

EX2_L = (15, 20, 21)
EX2_U = 21


def ex1_spec(b) -> SeriesSpec:
    return SeriesSpec(((3, Fraction(1, 3)), (4, Fraction(b))))


def ex3_spec(b, c) -> SeriesSpec:
    return SeriesSpec(((9, Fraction(1, 9)), (15, Fraction(b)), (25, Fraction(c))))


def ex2_displayed(s: int, t: float) -> float:
    """The two-cosine closed form of ``g(s, t)`` for ``L = {15, 20, 21}``, ``u = 21``."""
    r5 = math.sqrt(5)
    return (1 + 2 * math.exp(-t * (5 - r5) / 4)
            * math.cos(2 * math.pi * s / 5 - t * math.sqrt((5 + r5) / 8))
            + 2 * math.exp(-t * (5 + r5) / 4)
            * math.cos(4 * math.pi * s / 5 - t * math.sqrt((5 - r5) / 8)))


def ex3_expected_rho(b, c) -> dict:
    """Known coefficients of ``m r`` in powers of ``1/m``."""
    b, c = Fraction(b), Fraction(c)
    return {6: -5 * b / 3, 9: Fraction(1, 81), 12: 275 * b * b / 9,
            15: -53 * b / 243, 16: -25 * c / 9}


def ex3_reversion(b, c, order: int = 16):
    f = ex3_spec(b, c)
    return revert_saddle(mu_series(f, 9 + order), 9, order)


def ex1_closed_form_log(k: int, b) -> float:
    b = float(b)
    fac = 1 + 2 * math.exp(-1.5 * b) * math.cos(2 * math.pi * k / 3 - b * math.sqrt(3) / 2)
    if fac <= 0:
        return None
    return k * math.log(k) + k / 3 - 0.5 * math.log(6 * math.pi * k) + b + math.log(fac)


def ex3_closed_form_log(m: int, b, c) -> float | None:
    b, c = float(b), float(c)
    k = m ** 16
    P = m ** 16 / 9 + b * m ** 10 - m ** 7 / 162 - 12.5 * b * b * m ** 4 + 2 * b * m / 27 + c
    fac = 1 + 2 * math.exp(-1.5 * c) * math.cos(2 * math.pi * (k % 3) / 3 - math.sqrt(3) / 2 * c)
    if fac <= 0:
        return None
    return k * math.log(m) - math.log(3 * math.sqrt(2 * math.pi * k)) + P + math.log(fac)


def ex4_closed_form_log(m: int, b) -> float | None:
    """Closed form for ``k = m^6`` divisible by 3; None otherwise (upper bound only)."""
    k = m ** 6
    if k % 3:
        return None
    b = float(b)
    fac = 1 + 2 * math.exp(-1.5 * b) * math.cos(2 * math.pi * (k % 9) / 9 + b * math.sqrt(3) / 2)
    if fac <= 0:
        return None
    return k * math.log(m) + k / 9 - 0.5 * math.log(2 * math.pi * k) + b + math.log(fac)


def _exact_log(f, n, k):
    if k > EXACT_BUDGET_K:
        return None
    return exact_coefficient(f, n, k).log_value


def _ratio(exact_log, est_log):
    if exact_log is None or est_log is None:
        return None
    return math.exp(exact_log - est_log)


def run_example_1(b=1, scale=None) -> list:
    top = 15 if scale is None else int(scale)
    if top > EX1_MAX_K:
        raise ComputationRefused(f"example 1 budget is k <= {EX1_MAX_K}; try --scale {EX1_MAX_K}")
    if top < 9:
        raise InputError("example 1 needs scale >= 9")
    f = ex1_spec(b)
    t = Table(f"example 1: p = 1 + z^3/3 + ({Fraction(b)}) z^4, n = k^4",
              ["k", "n", "r", "exact_log", "estimate_log", "ratio", "correction",
               "gamma_1", "upper_bound_only", "closed_form_log"])
    for k in range(9, top + 1, 3):
        n = k ** 4
        rep = t1_estimate(f, n, k)
        ex = _exact_log(f, n, k)
        t.add(k, n, rep.saddle.r, ex, rep.estimate_log, _ratio(ex, rep.estimate_log),
              rep.correction.total, rep.correction.gammaj[0], rep.upper_bound_only,
              ex1_closed_form_log(k, b))
    t.notes.append("ratio = exact / estimate; gamma_1 = fhat(4) n r^4 at finite n")
    return [t]


def ex2_grid(t_max: float = 50.0, t_step: float = 0.1):
    count = int(round(t_max / t_step))
    return [i * t_step for i in range(count + 1)]


def run_example_2(scale=None, t_step: float = 0.1) -> list:
    t_max = 50.0 if scale is None else float(scale)
    grid = ex2_grid(t_max, t_step)
    if len(grid) * 15 > EX2_MAX_POINTS:
        raise ComputationRefused(
            f"example 2 grid too large; try --scale {EX2_MAX_POINTS // 15 * t_step:g}")
    profile = prop9_profile(EX2_L)
    t = Table(f"example 2: L = {{15, 20, 21}}, u = 21, t in [0, {t_max:g}] step {t_step:g}",
              ["s", "min_g_general", "argmin_t", "min_g_displayed", "max_abs_diff"])
    overall = math.inf
    worst = 0.0
    for s in range(15):
        best = (math.inf, None)
        best_disp = math.inf
        diff = 0.0
        for tt in grid:
            g = psi(profile, prop9_gammas(profile, EX2_U, tt), s).total
            h = ex2_displayed(s, tt)
            diff = max(diff, abs(g - h))
            if g < best[0]:
                best = (g, tt)
            best_disp = min(best_disp, h)
        t.add(s, best[0], best[1], best_disp, diff)
        overall = min(overall, best[0])
        worst = max(worst, diff)
    t.notes.append(f"overall min g = {overall:.12g}; max |general - displayed| = {worst:.3g}")
    return [t]


def run_example_3(b=1, c=1, scale=None) -> list:
    top = 3 if scale is None else int(scale)
    if top > EX34_MAX_M:
        raise ComputationRefused(f"example 3 budget is m <= {EX34_MAX_M}; try --scale {EX34_MAX_M}")
    rho = ex3_reversion(b, c)
    expected = ex3_expected_rho(b, c)
    rev = Table(f"example 3: m r = rho(1/m) for b = {Fraction(b)}, c = {Fraction(c)}",
                ["power", "computed", "expected", "match"])
    for p in range(1, rho.order + 1):
        if rho[p] != 0 or p in expected:
            rev.add(p, rho[p], expected.get(p), rho[p] == expected.get(p, 0))
    f = ex3_spec(b, c)
    est = Table("example 3: n = m^25, k = m^16 (delta = 16/25)",
                ["m", "n", "k", "r", "log_dominant", "correction", "estimate_log",
                 "exact_log", "ratio", "upper_bound_only", "closed_form_log"])
    for m in range(2, top + 1):
        n, k = m ** 25, m ** 16
        rep = t1_estimate(f, n, k, delta=Fraction(16, 25))
        ex = _exact_log(f, n, k)
        est.add(m, n, k, rep.saddle.r, rep.log_dominant, rep.correction.total,
                rep.estimate_log, ex, _ratio(ex, rep.estimate_log), rep.upper_bound_only,
                ex3_closed_form_log(m, b, c))
    est.notes.append(f"exact coefficients are computed only for k <= {EXACT_BUDGET_K}")
    return [rev, est]


def run_example_4(b=1, c=1, scale=None) -> list:
    top = 3 if scale is None else int(scale)
    if top > EX34_MAX_M:
        raise ComputationRefused(f"example 4 budget is m <= {EX34_MAX_M}; try --scale {EX34_MAX_M}")
    f = ex3_spec(b, c)
    t = Table("example 4: n = m^15, k = m^6 (delta = 2/5)",
              ["m", "n", "k", "k_mod_3", "correction", "estimate_log", "exact_log",
               "ratio", "upper_bound_only", "log_dominant", "closed_form_log"])
    for m in range(2, top + 1):
        n = m ** 15
        ks = [m ** 6]
        if m ** 6 % 3:
            ks.append(3 * (m ** 6 // 3))
        for k in ks:
            rep = t1_estimate(f, n, k, delta=Fraction(2, 5))
            ex = _exact_log(f, n, k)
            t.add(m, n, k, k % 3, rep.correction.total, rep.estimate_log, ex,
                  _ratio(ex, rep.estimate_log), rep.upper_bound_only, rep.log_dominant,
                  ex4_closed_form_log(m, b) if k == m ** 6 else None)
    t.notes.append("when m^6 is not a multiple of 3 the row k = 3*floor(m^6/3) is added")
    t.notes.append("upper_bound_only rows: the dominant term is only an upper bound")
    return [t]


def run_example(which: int, b=1, c=1, scale=None) -> list:
    if which == 1:
        return run_example_1(b, scale)
    if which == 2:
        return run_example_2(scale)
    if which == 3:
        return run_example_3(b, c, scale)
    if which == 4:
        return run_example_4(b, c, scale)
    raise InputError(f"unknown example {which}; choose 1-4")
