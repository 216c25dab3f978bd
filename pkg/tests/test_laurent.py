from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from deficiency import kernels
from deficiency.errors import InvalidSpecialization, ZeroPolynomialError
from deficiency.laurent import (LambdaMatrix, LaurentPolynomial, laurent_arith,
                                parse_laurent, rank_over_fraction_field, specialize,
                                specialize_corank, unit_normalize)

T = LaurentPolynomial.t()

laurents = st.dictionaries(st.integers(-4, 4), st.integers(-6, 6), max_size=4).map(
    LaurentPolynomial)


def test_arith_examples():
    assert laurent_arith(T + 1, T ** -1 + 1, "mul") == parse_laurent("t + 2 + t^-1")
    assert laurent_arith(T + 1, -T - 1, "add").is_zero()
    assert laurent_arith(3, T ** 2 + 1, "mul") == parse_laurent("3*t^2 + 3")
    with pytest.raises(ValueError):
        laurent_arith(T, T, "div")


@pytest.mark.parametrize("text,terms", [
    ("3", ((0, 3),)),
    ("t+1", ((0, 1), (1, 1))),
    ("t^2+1", ((0, 1), (2, 1))),
    ("2*t^-1 - 5", ((-1, 2), (0, -5))),
    ("-t^(-2) + t", ((-2, -1), (1, 1))),
])
def test_parse(text, terms):
    assert parse_laurent(text).terms == terms


@pytest.mark.parametrize("bad", ["", "t t", "3 4", "x+1", "t^"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_laurent(bad)


def test_str_round_trip():
    for text in ("t^2+1", "-5+2*t^-1", "3", "0", "t", "-t^-3"):
        assert str(parse_laurent(text)) == text or parse_laurent(str(parse_laurent(text))) \
            == parse_laurent(text)


@pytest.mark.parametrize("p,unit,core", [
    (-3 * T ** -2, (-1, -2), LaurentPolynomial(3)),
    (T + 1, (1, 0), T + 1),
    (T ** 3 + T ** 2, (1, 2), T + 1),
])
def test_unit_normalize(p, unit, core):
    assert unit_normalize(p) == (unit, core)


def test_unit_normalize_zero():
    with pytest.raises(ZeroPolynomialError):
        unit_normalize(0)


def test_negative_power_only_for_units():
    assert T ** -2 * T ** 2 == 1
    assert (-T) ** -1 == -(T ** -1)
    with pytest.raises(ValueError):
        (T + 1) ** -1


def test_divexact():
    a = (T + 1) * (T ** 2 - 3)
    assert a.divexact(T + 1) == T ** 2 - 3
    with pytest.raises(ArithmeticError):
        (T + 2).divexact(T + 1)


@pytest.mark.parametrize("rows,rank", [
    ([[3], [T + 1]], 1),
    ([[0, 0], [0, 0]], 0),
    ([[T + 1, 0], [0, 3]], 2),
    ([[T + 1, T - 1], [T ** 2 - 1, (T - 1) ** 2]], 1),
])
def test_rank(rows, rank):
    assert rank_over_fraction_field(LambdaMatrix(rows)) == rank


@pytest.mark.parametrize("rows,p,c,corank", [
    ([[3], [T + 1]], 3, -1, 1),
    ([[3], [T + 1]], 2, 1, 0),
    ([[1, 0], [0, 1]], 5, 2, 0),
])
def test_corank(rows, p, c, corank):
    assert specialize_corank(LambdaMatrix(rows), p, c) == corank


def test_invalid_points():
    A = LambdaMatrix([[T]])
    with pytest.raises(InvalidSpecialization):
        specialize(A, 3, 3)
    with pytest.raises(InvalidSpecialization):
        specialize(A, 4, 1)


@settings(max_examples=100)
@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a and a + b == b + a
    assert a - a == 0
    if not a.is_zero() and not b.is_zero():
        assert not (a * b).is_zero()


@settings(max_examples=100)
@given(laurents, laurents, st.sampled_from([(2, 1), (3, 1), (3, 2), (5, 2), (7, 3)]))
def test_evaluation_homomorphism(a, b, pc):
    p, c = pc
    ea, eb = a.evaluate_mod(c, p), b.evaluate_mod(c, p)
    assert (a * b).evaluate_mod(c, p) == ea * eb % p
    assert (a + b).evaluate_mod(c, p) == (ea + eb) % p
    x = Fraction(c)
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)


@given(laurents)
def test_unit_normalize_reconstructs(a):
    assume(not a.is_zero())
    (sign, k), core = unit_normalize(a)
    assert sign * LaurentPolynomial.monomial(k) * core == a
    assert core.min_exponent == 0 and core.terms[0][1] > 0


small_matrices = st.integers(1, 3).flatmap(lambda m: st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(laurents, min_size=n, max_size=n), min_size=m, max_size=m)))


def _generic_rank(A):
    # rank over Q(t) equals the rank at all but finitely many rational points
    best = 0
    for x in (Fraction(17, 3), Fraction(-29, 7), Fraction(101, 11)):
        M = sympy.Matrix([[sympy.Rational(e.evaluate(x)) for e in row] for row in A.entries])
        best = max(best, M.rank())
    return best


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_matches_generic_evaluation(rows):
    A = LambdaMatrix(rows)
    r = rank_over_fraction_field(A)
    assert r == _generic_rank(A)
    for p, c in ((2, 1), (3, 2), (5, 3)):
        assert kernels.rank_mod_p(specialize(A, p, c), p) <= r


@settings(max_examples=40, deadline=None)
@given(small_matrices, small_matrices, st.sampled_from([(3, 2), (5, 4), (7, 3)]))
def test_specialization_respects_products(r1, r2, pc):
    p, c = pc
    A = LambdaMatrix(r1)
    B = LambdaMatrix([[r2[i % len(r2)][j % len(r2[0])] for j in range(2)]
                      for i in range(A.cols)])
    lhs = specialize(A @ B, p, c)
    rhs = specialize(A, p, c).dot(specialize(B, p, c)) % p
    assert (lhs == rhs).all()
