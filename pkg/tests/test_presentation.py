import pytest
from hypothesis import given, strategies as st

from charscheme.presentation import (
    Presentation, PresentationError, Relator, Word, abelianize, commutator, cyclic_reduce,
    length, make_presentation, parse_presentation, parse_word, print_word,
)

letters = st.tuples(st.integers(0, 2), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=12).map(lambda xs: Word(tuple(xs)))


def test_free_reduction_on_construction():
    w = Word(((0, 1), (1, 1), (1, -1), (0, -1), (2, 1)))
    assert w.letters == ((2, 1),)


def test_parse_and_print_roundtrip():
    gens = ["a", "b", "c"]
    w = parse_word("a b^-1 a^-1 b a", gens)
    assert print_word(w, gens) == "a b^-1 a^-1 b a"
    assert print_word(parse_word("a a a b^2", gens), gens) == "a^3 b^2"
    assert parse_word("e", gens).is_identity()
    assert print_word(Word(), gens) == "e"


def test_parse_errors():
    with pytest.raises(PresentationError):
        parse_word("a d", ["a", "b"])
    with pytest.raises(PresentationError):
        parse_word("a^x", ["a", "b"])
    with pytest.raises(PresentationError):
        make_presentation(["a", "e"], [])


def test_multi_letter_generators():
    w = parse_word("c^2 mu^-3", ["c", "mu"])
    assert w.letters == ((0, 1), (0, 1), (1, -1), (1, -1), (1, -1))


def test_commutator_and_cyclic_reduce():
    a, b = Word.generator(0), Word.generator(1)
    c = commutator(a, b)
    assert length(c) == 4
    assert cyclic_reduce(b * a * b.inverse()) == a


def test_file_format():
    p = parse_presentation("""
        # trefoil
        gens: a b
        rel: a b a = b a b   # braid relation
        rel: a^6
    """)
    assert p.generators == ("a", "b")
    assert len(p.relators) == 2
    assert p.relators[1].lhs.is_identity()
    again = parse_presentation(p.to_text())
    assert again == p


@pytest.mark.parametrize("text", ["rel: a\n", "gens: a\ngens: b\n", "gens: a\nfoo: a\n", "gens: a\nrel: b\n",
                                  "gens: a b\nrel: a = b = a\n"])
def test_file_format_errors(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_relator_word():
    p = make_presentation(["x", "y"], ["x^2 = y^3"])
    assert p.print(p.relators[0].word()) == "x^-2 y^3"


def test_abelianize_adds_commutators():
    p = make_presentation(["a", "b", "c"], ["a^2"])
    ab = abelianize(p)
    assert len(ab.relators) == 1 + 3


@given(words, words)
def test_inverse_is_antihomomorphism(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert (u * u.inverse()).is_identity()


@given(words)
def test_cyclic_reduce_is_conjugate_and_reduced(w):
    c = w.cyclic_reduce()
    assert len(c) <= len(w)
    if len(c) > 1:
        assert c.letters[0] != (c.letters[-1][0], -c.letters[-1][1])


@given(words)
def test_print_parse_roundtrip(w):
    gens = ["a", "b", "c"]
    assert parse_word(print_word(w, gens), gens) == w
