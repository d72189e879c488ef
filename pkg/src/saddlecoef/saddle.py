"""The logarithmic derivative ``mu_f(r) = r f'(r)/f(r)``, its companion
``sigma_f(r) = r mu_f'(r)``, and the saddle equation ``k = n mu_f(r)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import ComputationRefused, InputError
from .profile import SeriesSpec
from .series import EXACT, FLOAT, TruncatedSeries, inverse, mul

# The float path refuses radii where the unknown tail exceeds this share of f(r).
TAIL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SaddlePoint:
    r: float
    mu: float
    sigma: float
    lam: float
    n: int
    k: float

    @property
    def lam_sq(self) -> float:
        return self.n * self.sigma / 2


def _is_rational(x) -> bool:
    return isinstance(x, (Fraction, int, Rational)) and not isinstance(x, (bool, float))


def _moments(f: SeriesSpec, r):
    # f(r), r f'(r), (r d/dr)^2 f(r)
    F0 = 1 + f.minus_one(r)
    F1 = sum(e * c * r ** e for e, c in f.terms)
    F2 = sum(e * e * c * r ** e for e, c in f.terms)
    return F0, F1, F2


def mu_sigma(f: SeriesSpec, r):
    """``(mu_f(r), sigma_f(r))``.

    Exact Fractions when ``r`` is rational and ``f`` is an exact polynomial;
    floats otherwise.
    """
    if not r > 0:
        raise InputError(f"r must be positive, got {r!r}")
    exact = _is_rational(r) and f.is_polynomial and f.is_exact
    if exact:
        r = Fraction(r)
    else:
        r = float(r)
        if not f.is_polynomial:
            _check_tail(f, r)
    F0, F1, F2 = _moments(f, r)
    if F0 <= 0:
        raise InputError(f"f(r) = {F0} <= 0 at r = {r}: outside the positivity domain")
    mu = F1 / F0
    sigma = F2 / F0 - mu * mu
    return mu, sigma


def _check_tail(f: SeriesSpec, r: float):
    fr = 1 + float(f.minus_one(r))
    if f.tail_bound(r) > TAIL_TOLERANCE * abs(fr):
        raise ComputationRefused(
            f"r = {r:.6g} is beyond the range where the truncated series is trusted"
        )


def log_f(f: SeriesSpec, r: float) -> float:
    """``log f(r)`` via ``log1p`` so small radii keep full relative precision."""
    return math.log1p(float(f.minus_one(float(r))))


def mu_series(f: SeriesSpec, order: int, flavor: str = EXACT) -> TruncatedSeries:
    """The power series of ``z f'(z)/f(z)`` up to ``order``."""
    if f.truncation_degree is not None and order > f.truncation_degree:
        raise InputError("order exceeds the trusted degree of f")
    num = TruncatedSeries.from_terms({e: e * c for e, c in f.terms}, order, flavor, "r")
    den = TruncatedSeries.from_terms(f.as_dict(), order, flavor, "r")
    return mul(num, inverse(den))


def sup_mu(f: SeriesSpec) -> float:
    """Supremum of ``mu_f`` over the trusted radii."""
    if f.is_polynomial:
        return float(f.degree)
    # largest trusted radius, by bisection on the tail criterion
    lo, hi = 0.0, f.radius
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        try:
            _check_tail(f, mid)
            lo = mid
        except ComputationRefused:
            hi = mid
    return float(mu_sigma(f, lo)[0]) if lo > 0 else 0.0


def _initial_radius(f: SeriesSpec, target: float) -> float:
    e0, c0 = f.terms[0]
    c0 = float(c0)
    if c0 > 0:
        return (target / (2 * e0 * c0)) ** (1.0 / e0)
    return 1.0


def solve_saddle(f: SeriesSpec, n: int, k, max_iter: int = 400) -> SaddlePoint:
    """Find ``r > 0`` with ``n mu_f(r) = k``.

    Brackets the root in ``log r`` starting from the small-radius law
    ``mu ~ l fhat(l) r**l``, then runs Newton steps (``d mu / d log r = sigma``)
    guarded by bisection.  Stops once ``|n mu - k| <= max(1e-12 k, 1e-15)``.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise InputError(f"n must be a positive integer, got {n!r}")
    k = float(k)
    target = k / n
    top = sup_mu(f)
    if not 0 < target < top:
        raise InputError(
            f"k/n = {target:.6g} is outside the attainable interval (0, {top:.6g})"
        )
    tol = max(1e-12 * k, 1e-15)

    def mu_at(u):
        mu, sigma = mu_sigma(f, math.exp(u))
        return float(mu), float(sigma)

    u = math.log(_initial_radius(f, target))
    lo = u
    while mu_at(lo)[0] >= target:
        lo -= math.log(2)
    hi = lo
    for _ in range(2000):
        try:
            if mu_at(hi)[0] > target:
                break
        except ComputationRefused:
            # shrink the step towards the trusted boundary
            hi = 0.5 * (hi + lo)
            continue
        lo = hi
        hi += math.log(2)
    else:
        raise ComputationRefused("failed to bracket the saddle point")

    u = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mu, sigma = mu_at(u)
        err = mu - target
        if abs(n * err) <= tol:
            break
        if err > 0:
            hi = u
        else:
            lo = u
        step = err / sigma if sigma > 0 else math.inf
        u_new = u - step
        if not lo < u_new < hi:
            u_new = 0.5 * (lo + hi)
        if u_new == u:
            break
        u = u_new
    mu, sigma = mu_at(u)
    if abs(n * mu - k) > tol:
        raise ComputationRefused(
            f"saddle solver stalled: |n mu - k| = {abs(n * mu - k):.3g} > {tol:.3g}"
        )
    if not sigma > 0:
        raise ComputationRefused("sigma_f(r) <= 0 at the saddle point")
    r = math.exp(u)
    return SaddlePoint(r, mu, sigma, math.sqrt(n * sigma / 2), n, k)
