"""Truncated power series over the rationals or over floats.

A :class:`TruncatedSeries` of order ``M`` stores the coefficients of
``z**0 .. z**M``; everything above ``M`` is unknown rather than zero, so
binary operations return the smaller of the two orders.  Two coefficient
flavors are supported:

* ``"exact"``: :class:`fractions.Fraction` coefficients, every identity holds
  exactly;
* ``"float"``: Python floats (IEEE double, ~15.9 significant digits).

The operations needed downstream are products, ``exp``/``log`` of series,
real powers of series with unit constant term, the substitution
``z -> exp(k z)`` used to expand ``f(r e^z)``, and the reversion that
inverts the small-radius saddle equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

from .errors import InputError

EXACT = "exact"
FLOAT = "float"
FLAVORS = (EXACT, FLOAT)

# Tolerance used when a float series must have constant term exactly one.
_FLOAT_UNIT_TOL = 1e-12


def _coerce(value, flavor):
    if flavor == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, Rational)) and not isinstance(value, bool):
            return Fraction(value)
        if isinstance(value, float):
            raise InputError(
                f"float {value!r} in an exact series; convert it explicitly with Fraction"
            )
        raise InputError(f"cannot use {value!r} as an exact coefficient")
    return float(value)


@dataclass(frozen=True)
class TruncatedSeries:
    """Dense coefficients ``coeffs[0..order]`` of a power series."""

    coeffs: tuple
    flavor: str = EXACT
    name: str = "z"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise InputError(f"unknown flavor {self.flavor!r}")
        if len(self.coeffs) == 0:
            raise InputError("a series needs at least the constant coefficient")
        object.__setattr__(
            self, "coeffs", tuple(_coerce(c, self.flavor) for c in self.coeffs)
        )

    # construction helpers
    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int | None = None,
                    flavor: str = EXACT, name: str = "z") -> "TruncatedSeries":
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise InputError("order must be non-negative")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs), flavor, name)

    @classmethod
    def constant(cls, value, order: int, flavor: str = EXACT, name: str = "z"):
        return cls.from_coeffs([value], order, flavor, name)

    @classmethod
    def variable(cls, order: int, flavor: str = EXACT, name: str = "z"):
        return cls.from_coeffs([0, 1], order, flavor, name)

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], order: int,
                   flavor: str = EXACT, name: str = "z") -> "TruncatedSeries":
        """Dense series from sparse ``{exponent: coefficient}``; exponents above ``order`` are dropped."""
        coeffs = [0] * (order + 1)
        for e, c in terms.items():
            if e < 0:
                raise InputError("negative exponent")
            if e <= order:
                coeffs[e] += c
        return cls(tuple(coeffs), flavor, name)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _zero(self):
        return Fraction(0) if self.flavor == EXACT else 0.0

    def _one(self):
        return Fraction(1) if self.flavor == EXACT else 1.0

    def _like(self, coeffs, name=None):
        return TruncatedSeries(tuple(coeffs), self.flavor, name or self.name)

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise InputError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if other.flavor != self.flavor:
            raise InputError(
                f"flavor mismatch: {self.flavor} series combined with {other.flavor} series"
            )

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise InputError(
                f"cannot extend a series of order {self.order} to order {order}"
            )
        return self._like(self.coeffs[: order + 1])

    def to_float(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(float(c) for c in self.coeffs), FLOAT, self.name)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return self._like([self._zero()])
        return self._like([k * self.coeffs[k] for k in range(1, self.order + 1)])

    def evaluate(self, x):
        acc = self._zero() if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + _coerce(other, self.flavor)
            return self._like(coeffs)
        self._check(other)
        M = min(self.order, other.order)
        return self._like([self.coeffs[i] + other.coeffs[i] for i in range(M + 1)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        c = _coerce(other, self.flavor)
        return self._like([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, inverse(other))
        c = _coerce(other, self.flavor)
        if c == 0:
            raise InputError("division of a series by zero")
        return self._like([a / c for a in self.coeffs])

    def __pow__(self, exponent):
        return power_series(self, exponent)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"({c})*{self.name}")
            else:
                parts.append(f"({c})*{self.name}^{k}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.name}^{self.order + 1})"


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to ``min(a.order, b.order)``."""
    a._check(b)
    M = min(a.order, b.order)
    x, y = a.coeffs, b.coeffs
    out = [a._zero()] * (M + 1)
    for i in range(M + 1):
        xi = x[i]
        if xi == 0:
            continue
        for j in range(M + 1 - i):
            yj = y[j]
            if yj != 0:
                out[i + j] += xi * yj
    return a._like(out)


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    a0 = a.coeffs[0]
    if a0 == 0:
        raise InputError("series with zero constant term has no inverse")
    out = [a._one() / a0]
    for k in range(1, a.order + 1):
        s = sum((a.coeffs[j] * out[k - j] for j in range(1, k + 1)), a._zero())
        out.append(-s / a0)
    return a._like(out)


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """``exp(a)`` for a series with zero constant term."""
    if a.coeffs[0] != 0:
        raise InputError("exp_series needs a zero constant term")
    out = [a._one()]
    for k in range(1, a.order + 1):
        s = sum((j * a.coeffs[j] * out[k - j] for j in range(1, k + 1)), a._zero())
        out.append(s / k)
    return a._like(out)


def _require_unit(a: TruncatedSeries, what: str):
    c0 = a.coeffs[0]
    if a.flavor == EXACT:
        if c0 != 1:
            raise InputError(f"{what} needs constant term 1, got {c0}")
    elif abs(c0 - 1.0) > _FLOAT_UNIT_TOL:
        raise InputError(f"{what} needs constant term 1, got {c0!r}")


def log_series(a: TruncatedSeries) -> TruncatedSeries:
    """``log(a)`` for a series with constant term 1."""
    _require_unit(a, "log_series")
    b = a.coeffs
    out = [a._zero()]
    for k in range(1, a.order + 1):
        s = sum((j * out[j] * b[k - j] for j in range(1, k)), a._zero())
        out.append(b[k] - s / k)
    return a._like(out)


def power_series(a: TruncatedSeries, alpha) -> TruncatedSeries:
    """``a**alpha`` for real ``alpha`` and a series with constant term 1.

    Uses the recurrence obtained from ``a * (a**alpha)' = alpha * a' * a**alpha``,
    so rational ``alpha`` keeps exact series exact.
    """
    if isinstance(alpha, int) and alpha >= 0:
        result = TruncatedSeries.constant(1, a.order, a.flavor, a.name)
        base = a
        e = alpha
        while e:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return result
    _require_unit(a, "power_series")
    alpha = _coerce(alpha, a.flavor)
    b = a.coeffs
    out = [a._one()]
    for k in range(1, a.order + 1):
        s = sum((((alpha + 1) * j - k) * b[j] * out[k - j] for j in range(1, k + 1)),
                a._zero())
        out.append(s / k)
    return a._like(out)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` for an inner series with zero constant term (Horner)."""
    outer._check(inner)
    if inner.coeffs[0] != 0:
        raise InputError("compose needs an inner series with zero constant term")
    M = min(outer.order, inner.order)
    inner = inner.truncate(M)
    acc = TruncatedSeries.constant(outer.coeffs[M], M, outer.flavor, inner.name)
    for c in reversed(outer.coeffs[:M]):
        acc = mul(acc, inner) + c
    return acc


def exp_substitution(weights: Mapping[int, object], order: int,
                     flavor: str = EXACT, name: str = "z") -> TruncatedSeries:
    """Expand ``sum_e w_e * exp(e*z)`` to the given order.

    With ``w_e = fhat(e) r**e`` this is the z-expansion of ``f(r e^z)``.
    """
    out = []
    fact = 1
    for j in range(order + 1):
        if j:
            fact *= j
        s = sum((_coerce(w, flavor) * e ** j for e, w in weights.items()),
                Fraction(0) if flavor == EXACT else 0.0)
        out.append(s / fact)
    return TruncatedSeries(tuple(out), flavor, name)


def revert_saddle(mu: TruncatedSeries, l: int, M: int) -> TruncatedSeries:
    """Solve ``mu(t*rho(t)) = t**l`` for the series ``rho`` with ``rho(0) = 1``.

    ``mu`` must be normalized: zero below degree ``l`` and exactly 1 at degree
    ``l``; its order must reach ``l + M``.  Writing ``mu(r) = r**l h(r)`` the
    equation becomes ``rho**l * h(t*rho) = 1``, solved by Newton steps that
    double the number of correct coefficients each time.
    """
    if l < 1:
        raise InputError("l must be a positive integer")
    if M < 0:
        raise InputError("M must be non-negative")
    if mu.order < l + M:
        raise InputError(
            f"mu has order {mu.order}; reverting to order {M} needs order {l + M}"
        )
    if any(c != 0 for c in mu.coeffs[:l]) or mu.coeffs[l] != 1:
        raise InputError(
            "mu is not normalized (need zero coefficients below degree l and 1 at degree l)"
        )
    flavor = mu.flavor
    h = TruncatedSeries(mu.coeffs[l: l + M + 1], flavor, "r")
    dh = h.derivative()
    rho = TruncatedSeries.constant(1, 0, flavor, "t")
    prec = 1
    while prec < M + 1:
        prec = min(2 * prec, M + 1)
        p = prec - 1
        rho = TruncatedSeries.from_coeffs(list(rho.coeffs), p, flavor, "t")
        t = TruncatedSeries.variable(p, flavor, "t")
        s = mul(t, rho)
        h_at = compose(h.truncate(p), s)
        rho_l1 = power_series(rho, l - 1)
        rho_l = mul(rho_l1, rho)
        F = mul(rho_l, h_at) - 1
        # dh only meets t*rho**l, so its top coefficient is never read
        dh_at = compose(TruncatedSeries.from_coeffs(list(dh.coeffs), p, flavor, "r"), s)
        dF = l * mul(rho_l1, h_at) + mul(mul(t, rho_l), dh_at)
        rho = rho - mul(F, inverse(dF))
    return TruncatedSeries(rho.coeffs, flavor, "t")
