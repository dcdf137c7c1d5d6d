from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import basis_size, bubble_sign
from sullivan.graded_algebra import (
    Element,
    GeneratorTable,
    UnknownGenerator,
    decompose_homogeneous,
    format_element,
    monomial_basis,
    monomial_degree,
    multiply,
    normalize,
    sort_word,
    word_element,
)


def g(i, c=1):
    return Element.generator(i, c)


def test_odd_generators_anticommute():
    t = GeneratorTable.from_pairs([("a", 1), ("b", 1)])
    ab = multiply(g(0), g(1), t)
    assert ab == Element.monomial(((0, 1), (1, 1)))
    assert multiply(g(1), g(0), t) == -ab


def test_odd_square_vanishes():
    t = GeneratorTable.from_pairs([("a", 1)])
    assert multiply(g(0), g(0), t).is_zero()


def test_even_square():
    t = GeneratorTable.from_pairs([("x", 2)])
    assert multiply(g(0), g(0), t) == Element.monomial(((0, 2),))


def test_mixed_distribution(mixed_table):
    # (2a + x)(3b) = 6ab + 3xb, and xb = bx since x is even
    lhs = multiply(g(0, 2) + g(2), g(1, 3), mixed_table)
    expected = Element({((0, 1), (1, 1)): 6, ((1, 1), (2, 1)): 3})
    assert lhs == expected


def test_unknown_generator_rejected():
    t = GeneratorTable.from_pairs([("a", 1)])
    with pytest.raises(UnknownGenerator):
        multiply(g(0), g(5), t)
    with pytest.raises(UnknownGenerator):
        multiply(g(5), g(5), t)


def test_table_invariants():
    with pytest.raises(ValueError):
        GeneratorTable.from_pairs([("a", 0)])
    with pytest.raises(ValueError):
        GeneratorTable.from_pairs([("a", 1), ("a", 2)])


@pytest.mark.parametrize(
    "pairs, n, expected",
    [
        ([("a", 1), ("b", 1)], 2, [((0, 1), (1, 1))]),
        ([("x", 2)], 6, [((0, 3),)]),
        ([("a", 1), ("x", 2)], 3, [((0, 1), (1, 1))]),
        ([("a", 1), ("x", 2)], 0, [()]),
    ],
)
def test_monomial_basis_examples(pairs, n, expected):
    assert monomial_basis(GeneratorTable.from_pairs(pairs), n) == expected


def test_monomial_basis_order_is_lexicographic_on_words():
    t = GeneratorTable.from_pairs([("x", 2), ("y", 2)])
    assert monomial_basis(t, 4) == [((0, 2),), ((0, 1), (1, 1)), ((1, 2),)]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(0, 10))
def test_monomial_basis_matches_enumeration(degrees, n):
    t = GeneratorTable.from_pairs([(f"g{i}", d) for i, d in enumerate(degrees)])
    basis = monomial_basis(t, n)
    assert len(basis) == len(set(basis)) == basis_size(degrees, n)
    assert all(monomial_degree(m, t) == n for m in basis)


def test_decompose_homogeneous(mixed_table):
    t = mixed_table
    assert decompose_homogeneous(Element.zero(), t) == {}
    ab = multiply(g(0), g(1), t)
    assert decompose_homogeneous(g(2) + ab, t) == {2: g(2) + ab}
    assert decompose_homogeneous(g(0) + g(2), t) == {1: g(0), 2: g(2)}


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=5), st.data())
def test_sort_word_matches_transposition_count(degrees, data):
    t = GeneratorTable.from_pairs([(f"g{i}", d) for i, d in enumerate(degrees)])
    word = data.draw(st.lists(st.integers(0, len(degrees) - 1), max_size=7))
    odd = {i: d % 2 == 1 for i, d in enumerate(degrees)}
    sign, m = sort_word(word, t)
    osign, oword = bubble_sign(word, odd)
    assert sign == osign
    if sign:
        assert tuple(x for x, e in m for _ in range(e)) == oword


def test_format_element(mixed_table):
    e = g(2, Fraction(-1, 2)) + multiply(g(0), g(1), mixed_table).scale(2) + Element.one()
    assert format_element(e, mixed_table) == "1 + 2*a*b - 1/2*x"
    assert format_element(Element.zero(), mixed_table) == "0"


# -- random elements ----------------------------------------------------------

DEGREES = [1, 1, 2, 3, 2]
TABLE = GeneratorTable.from_pairs([(f"g{i}", d) for i, d in enumerate(DEGREES)])


@st.composite
def homogeneous(draw, max_degree=5):
    n = draw(st.integers(0, max_degree))
    basis = monomial_basis(TABLE, n)
    if not basis:
        return Element.zero(), n
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    return Element(dict(zip(basis, coeffs))), n


@settings(max_examples=500, deadline=None, derandomize=True)
@given(homogeneous(), homogeneous(), homogeneous())
def test_associative_and_graded_commutative(x, y, z):
    (a, i), (b, j), (c, _) = x, y, z
    assert multiply(a, multiply(b, c, TABLE), TABLE) == multiply(multiply(a, b, TABLE), c, TABLE)
    ab = multiply(a, b, TABLE)
    ba = multiply(b, a, TABLE)
    assert ab == ba.scale((-1) ** (i * j))
    assert ab.is_zero() or ab.degree(TABLE) == i + j


@settings(max_examples=100, deadline=None)
@given(homogeneous())
def test_normalize_idempotent(x):
    e, _ = x
    assert normalize(e, TABLE) == e
    assert normalize(normalize(e, TABLE), TABLE) == e


def test_word_element_signs():
    t = GeneratorTable.from_pairs([("a", 1), ("b", 1), ("c", 1)])
    assert word_element([2, 1, 0], t) == Element.monomial(((0, 1), (1, 1), (2, 1)), -1)
    assert word_element([1, 2, 0], t) == Element.monomial(((0, 1), (1, 1), (2, 1)), 1)
