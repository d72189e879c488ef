"""Plain-text series specifications.

One term per line, ``exponent: coefficient`` with the coefficient an integer
or ``numerator/denominator``.  ``#`` starts a comment.  The constant term is
always 1 (a ``0: 1`` line is allowed).  Two optional directives describe a
genuinely infinite series::

    truncate: 40      # terms above degree 40 are unknown
    radius: 1/2       # radius used by the tail majorant

Example::

    # f(z) = 1 + z^3/3 + z^4
    3: 1/3
    4: 1
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .errors import SpecParseError
from .profile import SeriesSpec

_INT = r"[+-]?\d+"
_RATIONAL = re.compile(rf"^({_INT})(?:/(\d+))?$")
_LINE = re.compile(r"^\s*([A-Za-z_]+|[+-]?\d+)\s*:\s*(.*?)\s*$")


def parse_rational(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    m = _RATIONAL.match(text.strip())
    if not m:
        raise SpecParseError(
            f"{text.strip()!r} is not an integer or p/q rational literal", line, column
        )
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise SpecParseError("zero denominator", line, column)
    return Fraction(num, den)


def parse_spec(text: str) -> SeriesSpec:
    terms = {}
    truncate = None
    radius = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _LINE.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise SpecParseError("expected 'exponent: coefficient'", lineno, col)
        key, value = m.group(1), m.group(2)
        key_col = body.index(key) + 1
        value_col = body.index(":", key_col - 1) + 2
        value_col += len(body[value_col - 1:]) - len(body[value_col - 1:].lstrip())
        if key.isalpha() or "_" in key:
            if key == "truncate":
                if not re.fullmatch(r"\d+", value):
                    raise SpecParseError("truncate needs a non-negative integer", lineno, value_col)
                truncate = int(value)
            elif key == "radius":
                radius = parse_rational(value, lineno, value_col)
                if radius <= 0:
                    raise SpecParseError("radius must be positive", lineno, value_col)
            else:
                raise SpecParseError(f"unknown directive {key!r}", lineno, key_col)
            continue
        exponent = int(key)
        coeff = parse_rational(value, lineno, value_col)
        if exponent < 0:
            raise SpecParseError("negative exponent", lineno, key_col)
        if exponent == 0:
            if coeff != 1:
                raise SpecParseError("the constant term is fixed at 1", lineno, value_col)
            continue
        if exponent in terms:
            raise SpecParseError(f"duplicate exponent {exponent}", lineno, key_col)
        if coeff == 0:
            raise SpecParseError(f"zero coefficient for exponent {exponent}", lineno, value_col)
        terms[exponent] = coeff
    if not terms:
        raise SpecParseError("no terms beyond the constant 1")
    kw = {}
    if truncate is not None:
        kw["truncation_degree"] = truncate
        if radius is not None:
            kw["radius"] = float(radius)
    elif radius is not None:
        raise SpecParseError("radius only applies together with truncate")
    try:
        return SeriesSpec(tuple(sorted(terms.items())), **kw)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc


def load_spec(source: str) -> SeriesSpec:
    """Parse a spec from a file path, or from inline text when ``source`` contains ':'
    and is not an existing file.  ``;`` separates inline terms."""
    path = Path(source)
    if path.exists():
        return parse_spec(path.read_text())
    if ":" in source:
        return parse_spec(source.replace(";", "\n"))
    raise SpecParseError(f"no such spec file: {source}")


def format_spec(f: SeriesSpec) -> str:
    lines = [f"{e}: {c}" for e, c in f.terms]
    if f.truncation_degree is not None:
        lines.append(f"truncate: {f.truncation_degree}")
    return "\n".join(lines) + "\n"
