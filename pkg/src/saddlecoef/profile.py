"""Sparse series specifications and their exponent profile.

The profile records the gcd ``d`` of the exponent set, the smallest reduced
exponent ``l``, ``m = l // 2``, the secondary exponents ``l_j`` and ``l'_j``,
the limiting angles ``2*pi*j/l`` (kept as exact ``(j, l)`` pairs), the
threshold ``eps0`` and the coefficient test for strong positivity near 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping

from .errors import InputError


def _as_coefficient(c):
    if isinstance(c, bool):
        raise InputError("boolean is not a coefficient")
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, float):
        if not math.isfinite(c):
            raise InputError(f"non-finite coefficient {c!r}")
        return c
    raise InputError(f"unsupported coefficient {c!r}")


@dataclass(frozen=True)
class SeriesSpec:
    """``f(z) = 1 + sum c_e z**e`` given by its nonzero terms.

    ``truncation_degree`` marks a genuinely infinite series whose terms are
    only trusted up to that degree; ``radius`` is then the radius used by the
    geometric tail majorant (see :meth:`tail_bound`).  Coefficients are
    Fractions for user input; float coefficients only appear after an
    irrational rescaling (:func:`normalize`).
    """

    terms: tuple
    truncation_degree: int | None = None
    radius: float = 1.0

    def __post_init__(self):
        cleaned = []
        last = 0
        for e, c in self.terms:
            if not isinstance(e, int) or isinstance(e, bool) or e <= 0:
                raise InputError(f"exponents must be positive integers, got {e!r}")
            if e <= last:
                raise InputError("exponents must be strictly increasing")
            c = _as_coefficient(c)
            if c == 0:
                raise InputError(f"zero coefficient at exponent {e}")
            cleaned.append((e, c))
            last = e
        if not cleaned:
            raise InputError("f has no terms beyond the constant 1")
        if self.truncation_degree is not None:
            if self.truncation_degree < cleaned[-1][0]:
                raise InputError("truncation degree below the largest given exponent")
            if not self.radius > 0:
                raise InputError("radius must be positive")
        object.__setattr__(self, "terms", tuple(cleaned))

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, object], **kw) -> "SeriesSpec":
        """Build from ``{exponent: coefficient}``; a ``0: 1`` entry is accepted and dropped."""
        items = dict(coeffs)
        c0 = items.pop(0, 1)
        if c0 != 1:
            raise InputError(f"constant term must be 1, got {c0}")
        return cls(tuple(sorted(items.items())), **kw)

    @property
    def exponents(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    @property
    def degree(self) -> int:
        return self.terms[-1][0]

    @property
    def is_polynomial(self) -> bool:
        return self.truncation_degree is None

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self.terms)

    def coefficient(self, k: int):
        """``fhat(k)``; zero for exponents outside the support."""
        if k == 0:
            return Fraction(1)
        if self.truncation_degree is not None and k > self.truncation_degree:
            raise InputError(f"coefficient {k} lies beyond the trusted degree")
        for e, c in self.terms:
            if e == k:
                return c
        return Fraction(0)

    def as_dict(self, include_constant: bool = True) -> dict:
        d = {0: Fraction(1)} if include_constant else {}
        d.update(self.terms)
        return d

    def minus_one(self, x):
        """``f(x) - 1`` summed without forming ``1 + small`` first."""
        return sum(c * x ** e for e, c in self.terms)

    def __call__(self, x):
        return 1 + self.minus_one(x)

    def tail_bound(self, r: float) -> float:
        """Majorant for the unknown tail ``sum_{k > D} |fhat(k)| r**k``.

        Assumes the unknown coefficients are bounded by ``C * radius**-k`` with
        ``C`` the largest ``|fhat(k)| radius**k`` over the trusted terms.
        Zero for polynomials.
        """
        if self.truncation_degree is None:
            return 0.0
        q = r / self.radius
        if q >= 1:
            return math.inf
        C = max(abs(float(c)) * self.radius ** e for e, c in self.terms)
        return C * q ** (self.truncation_degree + 1) / (1 - q)

    def scaled(self, a) -> "SeriesSpec":
        """The series ``f(a z)``."""
        return SeriesSpec(tuple((e, c * a ** e) for e, c in self.terms),
                          self.truncation_degree,
                          self.radius / float(a) if self.truncation_degree is not None else self.radius)

    def reduced(self) -> tuple:
        """``(d, g)`` with ``d = gcd L(f)`` and ``f(z) = g(z**d)``."""
        d = reduce(math.gcd, self.exponents)
        if d == 1:
            return 1, self
        td = None if self.truncation_degree is None else self.truncation_degree // d
        rad = self.radius ** d if self.truncation_degree is not None else self.radius
        return d, SeriesSpec(tuple((e // d, c) for e, c in self.terms), td, rad)

    def __str__(self):
        parts = ["1"]
        for e, c in self.terms:
            parts.append(f"{c}*z^{e}")
        s = " + ".join(parts)
        if self.truncation_degree is not None:
            s += f" + O(z^{self.truncation_degree + 1})"
        return s


@dataclass(frozen=True)
class ExponentProfile:
    d: int
    l: int
    m: int
    lj: tuple            # l_1..l_m; None where the minimum lies beyond the trusted degree
    lj_prime: tuple      # l'_j for 1 <= j < l/2 (empty unless l > 2)
    thetaj: tuple        # (j, l) pairs, theta_j = 2*pi*j/l
    eps0: Fraction | None
    strongly_positive: bool
    reduced: SeriesSpec = field(repr=False)

    @property
    def degenerate(self) -> bool:
        """True when l == 1, so the secondary-maximum corrections are empty."""
        return self.l == 1

    def theta(self, j: int) -> float:
        jj, l = self.thetaj[j - 1]
        return 2 * math.pi * jj / l

    def lj_distinct(self) -> tuple:
        return tuple(sorted({x for x in self.lj if x is not None}))


def _first(exps: Iterable[int], pred):
    for e in exps:
        if pred(e):
            return e
    return None


def analyze(f: SeriesSpec) -> ExponentProfile:
    """Exponent profile of ``f`` computed on the gcd-reduced exponent set."""
    if not isinstance(f, SeriesSpec):
        raise InputError("analyze expects a SeriesSpec")
    d, g = f.reduced()
    exps = g.exponents
    l = exps[0]
    m = l // 2
    lj = tuple(_first(exps, lambda k, j=j: (j * k) % l != 0) for j in range(1, m + 1))
    if l > 2:
        lj_prime = tuple(_first(exps, lambda k, j=j: (2 * j * k) % l != 0)
                         for j in range(1, (l + 1) // 2))
    else:
        lj_prime = ()
    thetaj = tuple((j, l) for j in range(1, m + 1))
    if m and all(x is not None for x in lj):
        eps0 = max(1 - Fraction(l, x) for x in lj)
    else:
        eps0 = None
    sp = g.coefficient(l) > 0
    for x in lj:
        sp = sp and x is not None and g.coefficient(x) > 0
    return ExponentProfile(d, l, m, lj, lj_prime, thetaj, eps0, bool(sp), g)


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def exact_root(q: Fraction, k: int) -> Fraction | None:
    """The positive rational k-th root of ``q > 0`` when it exists."""
    num = _iroot(q.numerator, k)
    den = _iroot(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def normalize(f: SeriesSpec) -> tuple:
    """Rescale ``g(z) = f(a z)`` so that ``l * ghat(l) = 1``.

    Returns ``(a_float, a_exact_or_None, g)``.  ``g`` is exact whenever ``a``
    is rational; otherwise its coefficients are floats.
    """
    l = f.exponents[0]
    if l == 1:
        raise InputError("normalize needs f'(0) = 0 (smallest exponent above 1)")
    fl = f.coefficient(l)
    if fl <= 0:
        raise InputError("leading coefficient fhat(l) <= 0: f is not strongly positive near 0")
    s = l * fl
    a_exact = None
    if isinstance(s, Fraction):
        root = exact_root(s, l)
        if root is not None:
            a_exact = 1 / root
    a_float = math.exp(-math.log(float(s)) / l)
    g = f.scaled(a_exact if a_exact is not None else a_float)
    return a_float, a_exact, g
