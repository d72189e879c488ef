"""Saddle-point estimates for ``[z**k] f(z)**n`` when ``k/n -> 0`` and ``f'(0) = 0``.

The estimate is the Gaussian dominant term

    f(r)**n / (r**k * sqrt(2 pi n sigma)),     k = n mu_f(r),

times a correction factor ``1 + sum_j psi_j(s)`` that collects the secondary
maxima of ``|f(r e^{i theta})|`` near ``theta_j = 2 pi j / l``; here
``s = k mod l``.  Each ``psi_j`` depends on a decay rate ``gamma_j``.  By
default ``gamma_j`` is the finite-n quantity ``fhat(l_j) n r**l_j``; passing
an exact regime exponent ``delta`` (``k ~ n**delta``) switches to the
limiting values 0, ``fhat(l_j)`` or infinity.

When ``log k / log n`` exceeds ``eps0`` the dominant term also has a full
expansion ``1 + sum c_nu / k**nu``; :func:`t0_coefficients` computes the
``c_nu`` from the z-expansion of ``phi(r, z)`` defined by

    log(f(r e^z) / f(r)) = mu z + sigma z**2 phi(r, z) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ComputationRefused, InputError
from .profile import ExponentProfile, SeriesSpec, analyze
from .saddle import SaddlePoint, log_f, solve_saddle
from .series import (EXACT, FLOAT, TruncatedSeries, exp_substitution, log_series,
                     power_series)

VANISH_RELATIVE = 1e-9
MAX_EXPANSION_TERMS = 6


@dataclass(frozen=True)
class CorrectionFactor:
    gammaj: tuple
    psij: tuple
    s: int
    total: float
    vanishes: bool
    threshold: float


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    k: int
    d: int
    saddle: SaddlePoint | None
    log_dominant: float
    correction: CorrectionFactor
    gamma_mode: str                 # "finite" or "limit"
    delta: float                    # log k / log n, diagnostics only
    expansion_c: tuple | None
    expansion_valid: bool | None    # delta > eps0, when an expansion was requested
    upper_bound_only: bool
    exactly_zero: bool = False

    @property
    def estimate_log(self) -> float | None:
        """``log`` of dominant term times correction; None if the factor is not positive."""
        if self.exactly_zero:
            return -math.inf
        if self.correction.vanishes or self.correction.total <= 0:
            return None
        return self.log_dominant + math.log(self.correction.total)

    @property
    def expansion_log(self) -> float | None:
        """``log`` of the dominant term times ``1 + sum c_nu / k**nu``."""
        if self.expansion_c is None:
            return None
        kk = self.k // self.d
        s = 1.0 + sum(float(c) / kk ** (i + 1) for i, c in enumerate(self.expansion_c))
        return self.log_dominant + math.log(s) if s > 0 else None


# -- dominant term -----------------------------------------------------------------

def log_dominant(f: SeriesSpec, saddle: SaddlePoint) -> float:
    """``n log f(r) - k log r - log(2 pi n sigma) / 2``."""
    n, k, r = saddle.n, saddle.k, saddle.r
    return (n * log_f(f, r) - k * math.log(r)
            - 0.5 * math.log(2 * math.pi * n * saddle.sigma))


# -- correction factor -------------------------------------------------------------

def gamma_finite(profile: ExponentProfile, f: SeriesSpec, saddle: SaddlePoint) -> tuple:
    """``gamma_j = fhat(l_j) n r**l_j`` for ``j = 1..m``.

    ``f`` and ``saddle`` refer to the gcd-reduced series (any rescaling
    ``f(a z)`` gives the same values).
    """
    if not profile.strongly_positive:
        raise InputError("gamma_j is only defined for strongly positive profiles")
    out = []
    for lj in profile.lj:
        if lj is None:
            raise InputError("l_j lies beyond the trusted degree of the series")
        c = float(f.coefficient(lj))
        out.append(c * saddle.n * saddle.r ** lj)
    return tuple(out)


def gamma_limit(profile: ExponentProfile, f: SeriesSpec, delta: Fraction) -> tuple:
    """Limiting ``gamma_j`` for ``k ~ n**delta``: 0, ``fhat(l_j)`` or infinity."""
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise InputError("delta must lie in (0, 1)")
    edge = Fraction(profile.l) / (1 - delta)
    out = []
    for lj in profile.lj:
        if lj is None:
            raise InputError("l_j lies beyond the trusted degree of the series")
        if lj > edge:
            out.append(0.0)
        elif lj == edge:
            out.append(float(f.coefficient(lj)))
        else:
            out.append(math.inf)
    return tuple(out)


def _two_pi_frac(num: int, l: int) -> float:
    # 2*pi*num/l reduced mod 2*pi before rounding to float
    return 2 * math.pi * (num % l) / l


def psi(profile: ExponentProfile, gammaj: Sequence[float], s: int) -> CorrectionFactor:
    """The terms ``psi_j(s)`` and the factor ``1 + sum_j psi_j(s)``.

    ``gamma_j = inf`` gives ``psi_j = 0``.
    """
    l, m = profile.l, profile.m
    if len(gammaj) != m:
        raise InputError(f"expected {m} gamma values, got {len(gammaj)}")
    psij = []
    for j in range(1, m + 1):
        g = float(gammaj[j - 1])
        if g < 0:
            raise InputError("gamma_j must be non-negative")
        if math.isinf(g):
            psij.append(0.0)
            continue
        if l % 2 == 0 and j == m:
            psij.append((-1) ** (s % 2) * math.exp(-2 * g))
            continue
        lj = profile.lj[j - 1]
        alpha = _two_pi_frac(lj * j, l)     # l_j theta_j
        beta = _two_pi_frac(s * j, l)       # s theta_j
        psij.append(2 * math.exp(-g * (1 - math.cos(alpha)))
                    * math.cos(beta - g * math.sin(alpha)))
    total = 1.0 + math.fsum(psij)
    threshold = VANISH_RELATIVE * (1 + math.fsum(abs(p) for p in psij))
    return CorrectionFactor(tuple(float(g) for g in gammaj), tuple(psij), s % l if l else s,
                            total, total < threshold, threshold)


def _unit_spec(L) -> SeriesSpec:
    L = sorted(set(int(x) for x in L))
    if not L or L[0] <= 0:
        raise InputError("L must be a non-empty set of positive integers")
    return SeriesSpec(tuple((e, Fraction(1)) for e in L))


def prop9_profile(L) -> ExponentProfile:
    f = _unit_spec(L)
    profile = analyze(f)
    if profile.d != 1:
        raise InputError("gcd of L must be 1")
    if profile.l <= 1:
        raise InputError("min L must exceed 1")
    return profile


def prop9_gammas(profile: ExponentProfile, u: int, t: float) -> tuple:
    if u not in profile.lj:
        raise InputError(f"u = {u} is not among the l_j {sorted(set(profile.lj))}")
    return tuple(0.0 if lj > u else (float(t) if lj == u else math.inf)
                 for lj in profile.lj)


def prop9_g(L, u: int, s: int, t: float) -> float:
    """``1 + sum_j psi_j(s, t)`` with ``gamma_j(t)`` equal to 0, ``t`` or infinity
    according to ``l_j > u``, ``l_j = u`` or ``l_j < u``."""
    if t < 0:
        raise InputError("t must be non-negative")
    profile = prop9_profile(L)
    return psi(profile, prop9_gammas(profile, u, t), s).total


# -- expansion coefficients --------------------------------------------------------

def phi_series(f: SeriesSpec, r, order: int):
    """``(phi, mu, sigma)`` where ``phi`` is the z-series of ``phi(r, z)`` to ``order``.

    Exact when ``r`` is rational and ``f`` an exact polynomial; a float ``r``
    is converted to the rational it represents so the series algebra itself
    introduces no rounding.
    """
    if not r > 0:
        raise InputError("r must be positive")
    exact = f.is_exact and f.is_polynomial
    if exact:
        r = Fraction(r)
        flavor = EXACT
    else:
        r = float(r)
        flavor = FLOAT
    fr = 1 + f.minus_one(r)
    if fr <= 0:
        raise InputError("f(r) <= 0: phi(r, z) is undefined")
    weights = {e: c * r ** e / fr for e, c in f.terms}
    weights[0] = 1 / fr
    if flavor == FLOAT:
        weights = {e: float(w) for e, w in weights.items()}
    E = exp_substitution(weights, order + 2, flavor)
    # f(r e^z)/f(r) has constant term 1 by construction; pin it against rounding
    E = TruncatedSeries((1,) + E.coeffs[1:], flavor)
    L = log_series(E)
    mu = L[1]
    sigma = 2 * L[2]
    if not sigma > 0:
        raise InputError("sigma_f(r) <= 0")
    phi = TruncatedSeries(tuple(2 * L[i + 2] / sigma for i in range(order + 1)), flavor)
    return phi, mu, sigma


def phi_limit(l: int, order: int) -> TruncatedSeries:
    """Coefficients of ``2 (e^{lz} - 1 - lz) / (lz)**2``, i.e. ``2 l**i / (i+2)!``."""
    return TruncatedSeries(tuple(Fraction(2 * l ** i, math.factorial(i + 2))
                                 for i in range(order + 1)), EXACT)


def a_coefficients(phi: TruncatedSeries, N: int) -> tuple:
    """``a_nu = (-1)**nu / (4**nu nu!) * [d^{2nu}/dz^{2nu} phi**(-nu-1/2)]_{z=0}``."""
    if phi.order < 2 * N:
        raise InputError(f"phi must have order >= {2 * N}")
    half = Fraction(1, 2) if phi.flavor == EXACT else 0.5
    out = []
    for nu in range(1, N + 1):
        p = power_series(phi.truncate(2 * nu), -nu - half)
        deriv = p[2 * nu] * math.factorial(2 * nu)
        out.append((-1) ** nu * deriv / (4 ** nu * math.factorial(nu)))
    return tuple(out)


def expansion_coefficients(phi: TruncatedSeries, mu, sigma, N: int) -> tuple:
    """``c_nu = a_nu (2 mu / sigma)**nu``, so that ``c_nu / k**nu = a_nu / lambda**(2 nu)``."""
    ratio = 2 * mu / sigma
    return tuple(a * ratio ** (i + 1) for i, a in enumerate(a_coefficients(phi, N)))


def t0_coefficients(f: SeriesSpec, r, N: int) -> tuple:
    """``c_1 .. c_N`` of the expansion ``1 + sum c_nu / k**nu`` at radius ``r``."""
    if not 1 <= N <= MAX_EXPANSION_TERMS:
        raise InputError(f"N must be between 1 and {MAX_EXPANSION_TERMS}")
    phi, mu, sigma = phi_series(f, r, 2 * N)
    return expansion_coefficients(phi, mu, sigma, N)


# -- full report -------------------------------------------------------------------

def _zero_report(n, k, d, profile):
    cf = CorrectionFactor((), (), 0, 0.0, True, 0.0)
    return AsymptoticReport(n, k, d, None, -math.inf, cf, "finite",
                            math.log(k) / math.log(n) if n > 1 and k > 0 else math.nan,
                            None, None, False, exactly_zero=True)


def t1_estimate(f: SeriesSpec, n: int, k: int, expand: int = 0,
                delta: Fraction | None = None) -> AsymptoticReport:
    """Estimate ``[z**k] f(z)**n``.

    ``expand`` requests that many expansion coefficients; ``delta`` (exact)
    selects the limiting ``gamma_j`` instead of the finite-n ones.
    """
    if not isinstance(k, int) or k <= 0:
        raise InputError("k must be a positive integer")
    profile = analyze(f)
    d = profile.d
    if k % d:
        return _zero_report(n, k, d, profile)
    if not profile.strongly_positive:
        raise ComputationRefused("f is not strongly positive near 0; the estimate does not apply")
    g = profile.reduced
    kk = k // d
    saddle = solve_saddle(g, n, kk)
    logdom = log_dominant(g, saddle)
    if profile.m == 0:
        gammas = ()
        mode = "finite"
    elif delta is None:
        gammas = gamma_finite(profile, g, saddle)
        mode = "finite"
    else:
        gammas = gamma_limit(profile, g, delta)
        mode = "limit"
    corr = psi(profile, gammas, kk % profile.l)
    ratio = math.log(kk) / math.log(n) if n > 1 and kk > 1 else math.nan
    exp_c = None
    valid = None
    if expand:
        exp_c = tuple(float(c) for c in t0_coefficients(g, saddle.r, expand))
        valid = profile.eps0 is not None and ratio > float(profile.eps0)
        if profile.m == 0:
            valid = True
    return AsymptoticReport(n, k, d, saddle, logdom, corr, mode, ratio, exp_c, valid,
                            corr.vanishes)
