import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deficiency.errors import (EmptyRelatorError, PresentationSyntaxError,
                               UnknownGeneratorError)
from deficiency.presentation import (abelian_invariants, abelianization_matrix,
                                     deficiency_of_presentation, format_presentation,
                                     free_group, free_product, is_perfect,
                                     parse_presentation, parse_word)
from deficiency.presets import BINARY_ICOSAHEDRAL, D_FREE_D, TWIST_SPUN_TREFOIL
from deficiency.words import Word

from conftest import words


def test_trefoil_relators():
    P = parse_presentation(TWIST_SPUN_TREFOIL)
    t, x = Word.gen(0), Word.gen(1)
    assert P.generators == ("t", "x")
    assert P.relators == (x ** 3, t * x * t.inverse() * x)


def test_chain_expansion():
    P = parse_presentation(BINARY_ICOSAHEDRAL)
    x, y = Word.gen(0), Word.gen(1)
    assert P.relators == (x ** 5 * (y ** 3).inverse(), y ** 3 * ((x * y) ** 2).inverse())


def test_free_and_whitespace_product():
    P = parse_presentation("< a | >")
    assert P.ngens == 1 and P.nrels == 0
    Q = parse_presentation("<a,b|a b a^-1 b^-1>")
    assert Q.relators[0] == Word.from_letters([1, 2, -1, -2])


def test_deficiency_values():
    assert deficiency_of_presentation(parse_presentation(TWIST_SPUN_TREFOIL)) == 0
    assert deficiency_of_presentation(free_group(3)) == 3
    assert deficiency_of_presentation(parse_presentation(D_FREE_D)) == 0


def test_free_product_matches_preset():
    D = parse_presentation(BINARY_ICOSAHEDRAL)
    assert free_product(D, D) == parse_presentation(D_FREE_D)


@pytest.mark.parametrize("text,exc", [
    ("< a | a^ >", PresentationSyntaxError),
    ("< a | b >", UnknownGeneratorError),
    ("< a | a*a^-1 >", EmptyRelatorError),
    ("< a | 1 = a >", PresentationSyntaxError),
    ("< a, a | a >", PresentationSyntaxError),
    ("< a | a", PresentationSyntaxError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_presentation(text)


def test_error_position():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("< a |\n  a^x >")
    assert info.value.line == 2


def test_abelianization_matrices():
    tre = abelianization_matrix(parse_presentation(TWIST_SPUN_TREFOIL))
    assert tre.tolist() == [[0, 3], [0, 2]]
    D = abelianization_matrix(parse_presentation(BINARY_ICOSAHEDRAL))
    assert D.tolist() == [[5, -3], [-2, 1]]
    assert abelianization_matrix(free_group(2)).shape == (0, 2)


def test_perfectness_gate():
    assert is_perfect(parse_presentation(BINARY_ICOSAHEDRAL))
    literal = parse_presentation("< x, y | x^2 = y^3 = (x*y)^5 >")
    assert not is_perfect(literal)
    assert abelian_invariants(literal) == (0, [19])
    assert not is_perfect(free_group(1))
    assert abelian_invariants(parse_presentation(TWIST_SPUN_TREFOIL)) == (1, [])


def _exponent_sums_by_count(P):
    # count letters one by one, independent of the syllable bookkeeping
    rows = []
    for r in P.relators:
        row = [0] * P.ngens
        for g, s in r.letters():
            row[g] += s
        rows.append(row)
    return rows


presentations = st.builds(
    lambda rels: parse_presentation(
        "< a, b, c | " + ", ".join(r.format(["a", "b", "c"]) for r in rels) + " >"),
    st.lists(words().filter(lambda w: not w.is_identity()), min_size=1, max_size=5))


@settings(max_examples=60)
@given(presentations)
def test_round_trip_and_exponent_sums(P):
    assert parse_presentation(format_presentation(P)) == P
    assert abelianization_matrix(P).tolist() == _exponent_sums_by_count(P)


@settings(max_examples=40)
@given(presentations, st.randoms(use_true_random=False))
def test_invariants_ignore_relator_order(P, r):
    rels = list(P.relators)
    r.shuffle(rels)
    Q = type(P)(P.generators, rels)
    assert abelian_invariants(P) == abelian_invariants(Q)


def test_parse_word():
    assert parse_word("(x*y)^2", ("x", "y")) == Word.from_letters([1, 2, 1, 2])
    assert parse_word("1", ("x",)).is_identity()
    assert np.array_equal(abelianization_matrix(parse_presentation("< x | x^4 >")),
                          np.array([[4]], dtype=object))
