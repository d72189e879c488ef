from fractions import Fraction as F

import pytest

from saddlecoef.errors import SpecParseError
from saddlecoef.profile import SeriesSpec
from saddlecoef.specfile import format_spec, load_spec, parse_rational, parse_spec


def test_basic():
    assert parse_spec("3: 1/3\n4: 1") == SeriesSpec(((3, F(1, 3)), (4, F(1))))


def test_ex3_shape():
    f = parse_spec("9: 1/9\n15: 2\n25: 3")
    assert f.terms == ((9, F(1, 9)), (15, F(2)), (25, F(3)))


def test_comments_constant_and_order():
    text = "# header\n0: 1\n\n4: -2/6   # reduced\n3: 1/3\n"
    f = parse_spec(text)
    assert f.terms == ((3, F(1, 3)), (4, F(-1, 3)))
    assert isinstance(f.terms[1][1], F)


def test_rationals_are_exact():
    f = parse_spec("2: 123456789012345678901234567890/7")
    assert f.coefficient(2) == F(123456789012345678901234567890, 7)


@pytest.mark.parametrize("text, line, col, needle", [
    ("3: 0", 1, 4, "zero coefficient"),
    ("3: 1\n3: 2", 2, 1, "duplicate"),
    ("3: 1\n4: 0.5", 2, 4, "not an integer"),
    ("3: 1\n  4: 1e3", 2, 6, "not an integer"),
    ("3 1", 1, 1, "expected"),
    ("0: 2", 1, 4, "constant"),
    ("3: 1/0", 1, 4, "zero denominator"),
    ("colour: 3", 1, 1, "unknown directive"),
])
def test_errors_carry_position(text, line, col, needle):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert needle in str(info.value)


def test_empty_spec():
    with pytest.raises(SpecParseError):
        parse_spec("# nothing\n0: 1\n")


def test_directives():
    f = parse_spec("2: 1/2\n3: 1\ntruncate: 20\nradius: 1/2")
    assert f.truncation_degree == 20 and f.radius == 0.5
    with pytest.raises(SpecParseError):
        parse_spec("2: 1\nradius: 1/2")


def test_load_inline_and_file(tmp_path):
    assert load_spec("3: 1/3; 4: 1") == parse_spec("3: 1/3\n4: 1")
    p = tmp_path / "f.txt"
    p.write_text(format_spec(parse_spec("3: 1/3\n4: 1")))
    assert load_spec(str(p)) == parse_spec("3: 1/3\n4: 1")
    with pytest.raises(SpecParseError):
        load_spec(str(tmp_path / "missing.txt"))


def test_format_roundtrip():
    f = parse_spec("2: -3/4\n7: 5\ntruncate: 9")
    assert parse_spec(format_spec(f)) == f


def test_parse_rational():
    assert parse_rational(" -7/21 ") == F(-1, 3)
    with pytest.raises(SpecParseError):
        parse_rational("1.5")
