import json
import random
import re
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nullstellen.errors import IdealFileError, NegativeExponent, ParseError, UnknownVariable
from nullstellen.parser import (
    IdealFile, dump_ideal, format_point, load_ideal, parse_expr, parse_point, parse_poly, parse_scalar, print_poly,
)
from nullstellen.ring import Monomial, Polynomial, grevlex, grlex, lex

from corpus import random_point, random_poly

XYZ = ("x", "y", "z")


def python_value(text: str, point: dict) -> Fraction:
    """Evaluate an expression string with Python's own parser as an oracle."""
    src = re.sub(r"(\d+)/(\d+)", r"Fraction(\1, \2)", text)
    src = re.sub(r"(?<![\w(])(\d+)(?![\d,])", r"Fraction(\1)", src)
    src = src.replace("^", "**")
    return eval(src, {"Fraction": Fraction}, dict(point))


class TestParseExamples:
    def test_basic(self):
        f = parse_poly("x^2 + y*z - 1", XYZ)
        assert f.terms == {Monomial({"x": 2}): 1, Monomial({"y": 1, "z": 1}): 1, Monomial.one(): -1}

    def test_like_terms(self):
        assert parse_poly("3/2*x - x", XYZ) == Polynomial({Monomial({"x": 1}): Fraction(1, 2)})

    def test_negative_exponent(self):
        with pytest.raises(NegativeExponent):
            parse_poly("x^-1", XYZ)

    def test_negative_exponent_is_a_syntax_error(self):
        with pytest.raises(ParseError):
            parse_poly("x^-1", XYZ)

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            parse_poly("x + w", XYZ)

    def test_precedence(self):
        assert parse_poly("-x^2", XYZ) == -parse_poly("x*x", XYZ)
        assert parse_poly("2*x^3", XYZ) == parse_poly("2*(x^3)", XYZ)
        assert parse_poly("x - y - z", XYZ) == parse_poly("(x - y) - z", XYZ)
        assert parse_poly("(x+y)^2", XYZ) == parse_poly("x^2 + 2*x*y + y^2", XYZ)

    def test_unary(self):
        assert parse_poly("--x", XYZ) == parse_poly("x", XYZ)
        assert parse_poly("+x - -y", XYZ) == parse_poly("x + y", XYZ)

    def test_ast_shape(self):
        node = parse_expr("x*y^2")
        assert node.kind == "mul"
        assert [c.kind for c in node.children] == ["variable", "pow"]
        assert node.children[1].value == 2


class TestSyntaxErrors:
    @pytest.mark.parametrize("text, pos", [
        ("2x", 1),
        ("x y", 2),
        ("x +", 3),
        ("(x + y", 6),
        ("x $ y", 2),
        ("x^y", 2),
        ("x^1/2", 2),
        ("1/0*x", 0),
        ("x/2", 1),
        ("", 0),
        ("x^2^3", 3),
    ])
    def test_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_poly(text, XYZ)
        assert info.value.position == pos
        assert f"position {pos}" in str(info.value)

    def test_negative_exponent_position(self):
        with pytest.raises(NegativeExponent) as info:
            parse_poly("x + y^-2", XYZ)
        assert info.value.position == 6


class TestPrint:
    def test_lex(self):
        f = parse_poly("-1 + y*z + x^2", XYZ)
        assert print_poly(f, lex(*XYZ)) == "x^2 + y*z - 1"

    def test_zero(self):
        assert print_poly(Polynomial.zero(), lex("x")) == "0"

    def test_fraction(self):
        assert print_poly(parse_poly("1/2*x", XYZ), lex(*XYZ)) == "1/2*x"

    def test_negative_leading(self):
        assert print_poly(parse_poly("-2/3*x*y^2 + 1", XYZ), lex(*XYZ)) == "-2/3*x*y^2 + 1"

    def test_order_changes_output(self):
        f = parse_poly("x + y^2", ["x", "y"])
        assert print_poly(f, lex("x", "y")) == "x + y^2"
        assert print_poly(f, grlex("x", "y")) == "y^2 + x"

    def test_variable_sequence_follows_order(self):
        f = parse_poly("x*y", ["x", "y"])
        assert print_poly(f, lex("y", "x")) == "y*x"


class TestRoundTrip:
    @pytest.mark.parametrize("order", [lex(*XYZ), grlex(*XYZ), grevlex("z", "x", "y")])
    def test_random(self, order):
        rng = random.Random(11)
        for _ in range(200):
            f = random_poly(rng, XYZ, 5, 6, bound=30, nonzero=False, fractions=True)
            text = print_poly(f, order)
            assert parse_poly(text, XYZ) == f
            assert print_poly(parse_poly(text, XYZ), order) == text

    @settings(max_examples=200, deadline=None)
    @given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
                           st.fractions(max_denominator=50), max_size=6))
    def test_hypothesis(self, dense):
        f = Polynomial.from_dense(XYZ, dense)
        assert parse_poly(print_poly(f, grevlex(*XYZ)), XYZ) == f


def expressions(depth: int = 3):
    leaf = st.one_of(
        st.sampled_from(["x", "y", "z"]),
        st.integers(0, 20).map(str),
        st.tuples(st.integers(0, 20), st.integers(1, 9)).map(lambda t: f"{t[0]}/{t[1]}"),
    )

    def extend(inner):
        return st.one_of(
            st.tuples(inner, st.sampled_from([" + ", " - ", "*"]), inner).map(lambda t: f"{t[0]}{t[1]}{t[2]}"),
            inner.map(lambda e: f"-{e}"),
            st.tuples(inner, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
            inner.map(lambda e: f"({e})"),
        )

    return st.recursive(leaf, extend, max_leaves=8)


class TestFuzz:
    @settings(max_examples=300, deadline=None)
    @given(expressions(), st.fractions(max_denominator=5), st.fractions(max_denominator=5),
           st.fractions(max_denominator=5))
    def test_valid_input_matches_python(self, text, a, b, c):
        point = {"x": a, "y": b, "z": c}
        f = parse_poly(text, XYZ)
        assert f(point) == python_value(text, point)

    @settings(max_examples=300, deadline=None)
    @given(st.text(alphabet="xyz0123/^*+-() $.", max_size=12))
    def test_garbage_never_crashes(self, text):
        try:
            parse_poly(text, XYZ)
        except ParseError as exc:
            assert 0 <= exc.position <= len(text)
        except UnknownVariable:
            pass


class TestPoints:
    def test_parse(self):
        assert parse_point("x=1, y=-2/3") == {"x": 1, "y": Fraction(-2, 3)}

    @pytest.mark.parametrize("text", ["x", "x=1,x=2", "x=1.5", "x=1/0", "1=x"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_point(text)

    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(50):
            p = random_point(rng, XYZ)
            assert parse_point(format_point(p, XYZ)) == p

    def test_scalar(self):
        assert parse_scalar(" -4/6 ") == Fraction(-2, 3)
        with pytest.raises(ParseError):
            parse_scalar("1/0")


class TestIdealFile:
    def test_load(self):
        a = load_ideal({"vars": ["x", "y"], "gens": ["x^2+y^2", "x*y"]})
        assert a.generators == (parse_poly("x^2+y^2", ["x", "y"]), parse_poly("x*y", ["x", "y"]))
        assert a.order == grevlex("x", "y")

    def test_zero_ideal(self):
        assert load_ideal({"vars": ["x"], "gens": []}).is_zero()

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            load_ideal({"vars": ["x"], "gens": ["y"]})

    def test_declared_order(self):
        a = load_ideal({"vars": ["y", "x"], "gens": ["x"], "order": "lex"})
        assert a.order == lex("y", "x")

    @pytest.mark.parametrize("data", [
        {"gens": ["x"]},
        {"vars": "x", "gens": []},
        {"vars": ["x", "x"]},
        {"vars": ["1x"]},
        {"vars": ["x"], "gens": [1]},
        {"vars": ["x"], "order": "deglex"},
        {"vars": ["x"], "extra": 1},
        ["x"],
    ])
    def test_malformed(self, data):
        with pytest.raises(IdealFileError):
            load_ideal(data)

    def test_bad_json(self):
        with pytest.raises(IdealFileError):
            IdealFile.from_json("{not json")

    def test_dump_round_trip(self):
        a = load_ideal({"vars": ["x", "y"], "gens": ["x^2 - 1/3*y", "x*y + 2"], "order": "grlex"})
        again = IdealFile.from_json(dump_ideal(a).to_json())
        assert json.loads(again.to_json()) == {"vars": ["x", "y"], "gens": ["x^2 - 1/3*y", "x*y + 2"],
                                               "order": "grlex"}
        assert load_ideal(again).generators == a.generators
