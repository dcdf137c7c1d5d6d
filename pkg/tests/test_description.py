import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sullivan.cdga import ValidationError, validate
from sullivan.cohomology import betti_numbers
from sullivan.description import (
    ParseError,
    dumps,
    model_to_description,
    parse_expression,
    parse_lie_algebra,
    parse_model,
)
from sullivan.graded_algebra import Element, GeneratorTable, format_element
from sullivan.models_library import LIBRARY, chevalley_eilenberg, tensor_product, sphere_model

TABLE = GeneratorTable.from_pairs([("a", 1), ("b", 1), ("x", 2), ("y", 3)])


@pytest.mark.parametrize(
    "text, expected",
    [
        ("a*b", {((0, 1), (1, 1)): 1}),
        ("b*a", {((0, 1), (1, 1)): -1}),
        ("-2*x^2 + 1/3*a*y", {((2, 2),): -2, ((0, 1), (3, 1)): Fraction(1, 3)}),
        ("3", {(): 3}),
        ("a*a", {}),
        ("x - x", {}),
        ("−x", {((2, 1),): -1}),
        ("  x^2  ", {((2, 2),): 1}),
    ],
)
def test_expression_grammar(text, expected):
    assert parse_expression(text, TABLE) == Element(expected)


@pytest.mark.parametrize(
    "text, position",
    [
        ("a +", 3),
        ("a ** b", 3),
        ("x^0", 2),
        ("q", 0),
        ("1/0", 2),
        ("a $ b", 2),
        ("a b", 2),
        ("2*3", 2),
        ("", 0),
    ],
)
def test_expression_errors_have_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_expression(text, TABLE)
    assert info.value.position == position


def test_model_errors():
    with pytest.raises(ParseError):
        parse_model("not json")
    with pytest.raises(ParseError):
        parse_model({"generators": [{"name": "a"}]})
    with pytest.raises(ParseError):
        parse_model({"generators": [{"name": "a", "degree": 1}], "differential": {"b": "a"}})
    with pytest.raises(ParseError) as info:
        parse_model({"generators": [{"name": "a", "degree": 1}], "differential": {"a": "a*"}})
    assert "differential['a']" in str(info.value)
    with pytest.raises(ParseError):
        parse_model({"generators": [{"name": "1a", "degree": 1}]})
    with pytest.raises(ParseError):
        parse_model({"generators": [{"name": "a", "degree": 0}]})


def test_validation_error_on_bad_degree():
    desc = {"generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}], "differential": {"y": "x"}}
    with pytest.raises(ValidationError) as info:
        parse_model(desc)
    assert info.value.report.kinds() == {"DegreeMismatch"}
    assert parse_model(desc, check=False).table.names == ["x", "y"]


def test_missing_differential_means_closed():
    A = parse_model({"generators": [{"name": "a", "degree": 1}]})
    assert A.d_generator(0).is_zero()


@pytest.mark.parametrize("name", ["heisenberg", "filiform4", "heisenberg-x-line"])
def test_round_trip_library(name):
    A = LIBRARY[name]()
    desc = json.loads(dumps(model_to_description(A, name)))
    B = parse_model(desc)
    assert B.table == A.table
    assert dict(B.differential) == dict(A.differential)
    assert model_to_description(B, name) == desc


def test_round_trip_with_relations():
    A = tensor_product(sphere_model(2), sphere_model(4))
    B = parse_model(model_to_description(A))
    assert B.relations == A.relations
    assert betti_numbers(B, 6) == betti_numbers(A, 6)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.sampled_from([(), ((0, 1),), ((0, 1), (1, 1)), ((2, 3),), ((1, 1), (2, 1), (3, 1))]),
                       st.fractions(max_denominator=7).filter(bool), max_size=5))
def test_format_parse_round_trip(terms):
    e = Element(terms)
    assert parse_expression(format_element(e, TABLE), TABLE) == e


def test_lie_file():
    L = parse_lie_algebra({"basis": ["e1", "e2", "e3", "e4"], "brackets": [["e1", "e2", "e3"], ["e1", "e3", "e4"]]})
    assert L.brackets == {(0, 1): {2: 1}, (0, 2): {3: 1}}
    assert betti_numbers(chevalley_eilenberg(L), 4) == [1, 2, 2, 2, 1]
    with pytest.raises(ParseError):
        parse_lie_algebra({"basis": ["e1", "e2"], "brackets": [["e1", "e2", "e1*e2"]]})
    with pytest.raises(ParseError):
        parse_lie_algebra({"basis": ["e1", "e2"], "brackets": [["e1", "e3", "e1"]]})
    with pytest.raises(ParseError):
        parse_lie_algebra({"basis": ["e1", "e2"], "brackets": [["e1", "e2", "e1"], ["e2", "e1", "e1"]]})
