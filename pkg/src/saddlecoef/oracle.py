"""Ground truth for coefficients of ``f(z)**n``.

Three independent routes:

* ``power-truncate``: exact binary exponentiation of ``f`` truncated at
  degree ``k``.  Coefficients are scaled to integers (``f(s z)`` with ``s``
  the lcm of the denominators) and products are done by packing each series
  into one big integer (Kronecker substitution), which keeps the cost
  dominated by one GMP multiplication per squaring (plain ``int`` when
  gmpy2 is missing).
* ``multinomial``: direct enumeration of the exponent combinations, for tiny
  instances only.
* ``quadrature``: trapezoidal rule on the Cauchy integral over the circle
  ``|z| = r``, accumulated as ``(f(r e^{i theta}) / f(r))**n`` so nothing
  overflows.

The module also locates the local maxima of ``theta -> |f(r e^{i theta})|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
from scipy.optimize import brentq

try:  # GMP multiplication is much faster than CPython's Karatsuba at these sizes
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int

from .errors import InputError, InvariantViolation
from .profile import SeriesSpec, analyze

MAXIMA_SAMPLES = 4096


@dataclass(frozen=True)
class OracleResult:
    exact: Fraction | None
    log_value: float        # log|value|; -inf for an exact zero
    sign: int               # -1, 0 or +1
    method: str             # "power-truncate" | "multinomial" | "quadrature"

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_value)


def _log_abs_fraction(q: Fraction) -> float:
    if q == 0:
        return -math.inf
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def _exact_result(q: Fraction, method: str) -> OracleResult:
    sign = (q > 0) - (q < 0)
    return OracleResult(q, _log_abs_fraction(q), sign, method)


def _check_exact_request(f: SeriesSpec, k: int):
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InputError(f"k must be a non-negative integer, got {k!r}")
    if not f.is_exact:
        raise InputError("exact coefficients need rational coefficients")
    if f.truncation_degree is not None and k > f.truncation_degree:
        raise InputError(
            f"k = {k} exceeds the trusted degree {f.truncation_degree} of the series"
        )


# -- packed integer polynomial products ------------------------------------------

def _pack(coeffs, nbytes):
    # coeffs are non-negative and fit in nbytes*8 bits
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in coeffs), "little")


def _pack_signed(coeffs, nbytes):
    pos = [c if c > 0 else 0 for c in coeffs]
    neg = [-c if c < 0 else 0 for c in coeffs]
    value = _pack(pos, nbytes)
    if any(neg):
        value -= _pack(neg, nbytes)
    return value


def _unpack_signed(value, nbytes, count):
    bits = 8 * nbytes
    full = 1 << bits
    half = full >> 1
    value &= (1 << (bits * count)) - 1
    raw = value.to_bytes(nbytes * count, "little")
    out = []
    carry = 0
    for i in range(count):
        x = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if x >= half:
            x -= full
            carry = 1
        else:
            carry = 0
        out.append(x)
    return out


def poly_mul_trunc(a: list, b: list, order: int) -> list:
    """Integer polynomial product truncated to degree ``order``."""
    a = a[: order + 1]
    b = b[: order + 1]
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * (order + 1)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _bigint(_pack_signed(a, nbytes)) * _bigint(_pack_signed(b, nbytes))
    return _unpack_signed(int(prod), nbytes, order + 1)


def exact_coefficient(f: SeriesSpec, n: int, k: int) -> OracleResult:
    """``[z**k] f(z)**n`` exactly, by truncated binary exponentiation."""
    _check_exact_request(f, k)
    if not isinstance(n, int) or n < 0:
        raise InputError(f"n must be a non-negative integer, got {n!r}")
    d, g = f.reduced()
    if k % d:
        return _exact_result(Fraction(0), "power-truncate")
    k //= d
    terms = [(e, c) for e, c in g.terms if e <= k]
    s = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for _, c in terms), 1)
    base = [0] * (k + 1)
    base[0] = 1
    for e, c in terms:
        base[e] = c.numerator * (s // c.denominator) * s ** (e - 1)
    result = [1] + [0] * k
    e = n
    while e:
        if e & 1:
            result = poly_mul_trunc(result, base, k)
        e >>= 1
        if e:
            base = poly_mul_trunc(base, base, k)
    return _exact_result(Fraction(result[k], s ** k), "power-truncate")


def multinomial_coefficient(f: SeriesSpec, n: int, k: int) -> OracleResult:
    """``[z**k] f(z)**n`` by enumerating how many times each term is used."""
    _check_exact_request(f, k)
    terms = [(e, c) for e, c in f.terms if e <= k]
    total = Fraction(0)

    def rec(i, remaining_k, remaining_n, weight):
        nonlocal total
        if remaining_k == 0:
            total += weight
            return
        if i == len(terms):
            return
        e, c = terms[i]
        w = 0
        wt = weight
        while w * e <= remaining_k and w <= remaining_n:
            rec(i + 1, remaining_k - w * e, remaining_n - w, wt)
            w += 1
            # choose one more slot among the remaining ones for this term
            wt = wt * c * (remaining_n - w + 1) / w

    rec(0, k, n, Fraction(1))
    return _exact_result(total, "multinomial")


# -- contour quadrature --------------------------------------------------------------

def default_nodes(f: SeriesSpec, n: int, k) -> int:
    """Node count: at least ``4k``; enough to be exact for moderate polynomial powers."""
    q = max(4 * int(math.ceil(k)), 64)
    if f.is_polynomial and n * f.degree + 1 <= 1 << 16:
        q = max(q, n * f.degree + 1)
    return q


def _complex_values(f: SeriesSpec, r: float, theta: np.ndarray) -> np.ndarray:
    z = r * np.exp(1j * theta)
    acc = np.zeros_like(z)
    for e, c in f.terms:
        acc += float(c) * z ** e
    return acc  # f(z) - 1


def contour_coefficient(f: SeriesSpec, n: int, k, r: float, Q: int | None = None) -> OracleResult:
    """Trapezoidal approximation of ``(1/2 pi r^k) int (f(r e^{it}))^n e^{-ikt} dt``."""
    if Q is None:
        Q = default_nodes(f, n, k)
    if Q < 4 * k:
        raise InputError(f"need at least 4k = {4 * k} quadrature nodes, got {Q}")
    r = float(r)
    if not r > 0:
        raise InputError("r must be positive")
    fr_m1 = float(f.minus_one(r))
    if 1 + fr_m1 <= 0:
        raise InputError("f(r) <= 0: outside the positivity domain")
    theta = 2 * np.pi * np.arange(Q) / Q
    ratio_m1 = (_complex_values(f, r, theta) - fr_m1) / (1 + fr_m1)
    logratio = np.log1p(ratio_m1)
    # continuous branch along the grid, anchored at theta = 0 where the ratio is 1
    imag = np.unwrap(logratio.imag)
    imag -= imag[0]
    expo = n * logratio.real + 1j * (n * imag - k * theta)
    shift = float(np.max(expo.real))
    terms = np.exp(expo - shift)
    if not np.all(np.isfinite(terms)):
        raise InvariantViolation("non-finite quadrature terms after scaling")
    mean = float(np.mean(terms).real)
    log_prefix = n * math.log1p(fr_m1) - k * math.log(r) + shift
    if mean == 0:
        return OracleResult(None, -math.inf, 0, "quadrature")
    return OracleResult(None, log_prefix + math.log(abs(mean)), 1 if mean > 0 else -1,
                        "quadrature")


# -- local maxima of |f(r e^{i theta})| ----------------------------------------------

@dataclass(frozen=True)
class MaximaProfile:
    r: float
    thetas: tuple
    values: tuple        # |f(r e^{i theta})| / f(r)
    expected: int        # m from the exponent profile
    residuals: tuple     # |d/dtheta log|f|| at each located maximum

    @property
    def count_matches(self) -> bool:
        return len(self.thetas) == self.expected


def _dlog_abs(f: SeriesSpec, r: float, theta: float) -> float:
    # d/dtheta log|f(r e^{i theta})| = -Im(z f'(z) / f(z))
    z = r * complex(math.cos(theta), math.sin(theta))
    fz = 1 + sum(float(c) * z ** e for e, c in f.terms)
    zf1 = sum(e * float(c) * z ** e for e, c in f.terms)
    return -(zf1 / fz).imag


def locate_maxima(f: SeriesSpec, r: float, samples: int = MAXIMA_SAMPLES) -> MaximaProfile:
    """Local maxima of ``theta -> |f(r e^{i theta})|`` on ``(0, pi]``.

    Works on the gcd-reduced series.  Candidates come from a uniform grid;
    each is refined to a zero of the analytic angular derivative, and
    ``theta = pi`` is reported exactly when it is a maximum.  A count
    different from ``m`` is reported through :attr:`MaximaProfile.count_matches`.
    """
    profile = analyze(f)
    g = profile.reduced
    r = float(r)
    fr = 1 + float(g.minus_one(r))
    theta = np.pi * np.arange(0, samples + 1) / samples
    vals = np.abs(1 + _complex_values(g, r, theta))
    found = []
    for i in range(1, samples):
        if vals[i] > vals[i - 1] and vals[i] >= vals[i + 1]:
            a, b = theta[i - 1], theta[i + 1]
            da, db = _dlog_abs(g, r, a), _dlog_abs(g, r, b)
            if da > 0 > db:
                t = brentq(lambda x: _dlog_abs(g, r, x), a, b, xtol=1e-15, rtol=1e-15)
            else:
                t = float(theta[i])
            found.append(t)
    if vals[samples] >= vals[samples - 1]:
        found.append(math.pi)
    values = []
    residuals = []
    for t in found:
        z = r * complex(math.cos(t), math.sin(t))
        values.append(abs(1 + sum(float(c) * z ** e for e, c in g.terms)) / fr)
        residuals.append(abs(_dlog_abs(g, r, t)))
    return MaximaProfile(r, tuple(found), tuple(values), profile.m, tuple(residuals))
