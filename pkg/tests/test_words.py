import json

import pytest
from hypothesis import given, strategies as st

from artin_shortlex.words import (
    Anchor, Cmp, LetterOrder, Presentation, PresentationError, WordParseError, alternating,
    format_word, free_reduce, inverse, is_freely_reduced, parse_word, shortlex_cmp,
    words_of_length, words_up_to,
)

letters6 = st.lists(st.integers(0, 5), max_size=14).map(tuple)


def test_parse_and_format(g333):
    assert parse_word("a b^2 A c^-1", g333) == (0, 2, 2, 1, 5)
    assert parse_word("a^-2", g333) == (1, 1)
    assert parse_word("", g333) == ()
    assert parse_word("ε", g333) == ()
    assert format_word((0, 2, 2, 1, 5), g333) == "a b b A C"
    assert format_word((), g333) == "ε"


@pytest.mark.parametrize("text", ["x", "a^0", "a^", "ab", "a b^-"])
def test_parse_errors(g333, text):
    with pytest.raises(WordParseError):
        parse_word(text, g333)


def test_long_generator_names():
    p = Presentation(("s1", "s2"), ((1, 4), (4, 1)))
    w = parse_word("s1 s2^-1 s1^3", p)
    assert w == (0, 3, 0, 0, 0)
    assert format_word(w, p) == "s1 s2^-1 s1 s1 s1"
    assert parse_word(format_word(w, p), p) == w


@given(letters6)
def test_format_parse_roundtrip(w):
    p = Presentation.triangle(3, 4, 5)
    assert parse_word(format_word(w, p), p) == w


@given(letters6)
def test_free_reduce(w):
    r = free_reduce(w)
    assert is_freely_reduced(r)
    assert free_reduce(r) == r
    assert free_reduce(w + inverse(w)) == ()
    assert inverse(inverse(w)) == w


def test_alternating():
    assert alternating(0, 2, 5) == (0, 2, 0, 2, 0)
    assert alternating(0, 2, 4, Anchor.ENDS_WITH_X) == (2, 0, 2, 0)
    assert alternating(0, 2, 0) == ()
    with pytest.raises(ValueError):
        alternating(0, 1, 3)


def test_shortlex_order():
    order = LetterOrder.default(2)
    assert shortlex_cmp((0,), (0, 0), order) is Cmp.LT
    assert shortlex_cmp((2, 0), (0, 2), order) is Cmp.GT
    assert shortlex_cmp((0, 2), (0, 2), order) is Cmp.EQ
    custom = LetterOrder.from_letters([2, 3, 0, 1])
    assert shortlex_cmp((2, 0), (0, 2), custom) is Cmp.LT


def test_enumeration_counts():
    assert sum(1 for _ in words_of_length(range(6), 3)) == 216
    assert sum(1 for _ in words_of_length(range(6), 3, reduced=True)) == 6 * 5 * 5
    assert sum(1 for _ in words_up_to(range(4), 2)) == 1 + 4 + 16


def test_presentation_validation():
    with pytest.raises(PresentationError):
        Presentation(("a",), ((1,),))
    with pytest.raises(PresentationError):
        Presentation(("a", "b"), ((1, 3), (4, 1)))
    with pytest.raises(PresentationError):
        Presentation(("a", "b", "c"), ((1, 2, 3), (2, 1, 3), (3, 3, 1)))
    with pytest.raises(PresentationError):
        Presentation(("a", "b"), ((1, None), (None, 1)))
    with pytest.raises(PresentationError):
        Presentation(("a", "a"), ((1, 3), (3, 1)))
    # m = 2 is fine for two generators
    assert Presentation.dihedral(2).M == 4


def test_presentation_properties(g345):
    assert g345.M == 10
    assert g345.m(0, 2) == 4
    assert g345.finite_pairs() == [(0, 1), (0, 2), (1, 2)]
    assert g345.is_large_type
    p = Presentation(("a", "b", "c"), ((1, 3, 0), (3, 1, "inf"), (0, "inf", 1)))
    assert p.m(0, 2) is None and p.m(1, 2) is None
    assert p.M == 6


def test_json_roundtrip(tmp_path, g345):
    custom = g345.with_order(LetterOrder.from_letters([4, 5, 0, 1, 2, 3]))
    path = tmp_path / "p.json"
    path.write_text(json.dumps(custom.to_json()))
    back = Presentation.load(path)
    assert back == custom
    with pytest.raises(PresentationError):
        Presentation.from_json({"generators": ["a", "b"]})
    with pytest.raises(PresentationError):
        Presentation.from_json({"generators": ["a", "b"], "matrix": [[1, 3], [3, 1]],
                                "order": ["a", "b"]})
