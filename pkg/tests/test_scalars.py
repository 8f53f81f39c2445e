"""Exact-field arithmetic: worked examples, oracles, and randomized axioms."""

import random
from fractions import Fraction

import pytest

from qweyl.scalars import (
    LatticeMismatchError,
    LaurentPoly,
    ParameterLattice,
    Scalar,
    SpecializationError,
    parse_monomial,
    render_exponents,
    render_scalar,
)

QP = ParameterLattice(["q", "p"])
Q = QP.symbol("q")
P = QP.symbol("p")


def test_lattice_rejects_duplicates():
    with pytest.raises(ValueError):
        ParameterLattice(["q", "q"])


def test_self_quotient_is_one():
    assert (Q - P) / (Q - P) == QP.one()


def test_monomial_inverse_cancels():
    assert Q * QP.monomial({"q": -1}) == QP.one()


def test_difference_of_squares_quotient():
    # oracle: expand (q + p)(q - p) and compare raw term dicts with q^2 - p^2
    lhs = (Q + P).num.mul((Q - P).num)
    rhs = (Q * Q - P * P).num
    assert lhs == rhs
    assert (Q * Q - P * P) / (Q - P) == Q + P


def test_equality_by_substitution_oracle():
    # same rational function evaluated at exact sample points
    a = (Q * Q - P * P) / (Q - P)
    b = Q + P
    for qv, pv in [(Fraction(7, 3), Fraction(2, 5)), (Fraction(-4), Fraction(3, 2))]:
        vals = {"q": qv, "p": pv}
        assert a.substitute(vals) == b.substitute(vals)
    assert a == b


def test_distinct_symbols_differ():
    assert Q != P


def test_zero_representations_agree():
    assert QP.zero() == Scalar(LaurentPoly(QP, {}), (Q - P).num)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Q / QP.zero()
    with pytest.raises(ZeroDivisionError):
        QP.zero().inverse()


def test_lattice_mismatch_raises():
    other = ParameterLattice(["q"])
    with pytest.raises(LatticeMismatchError):
        Q == other.symbol("q")


def test_as_monomial():
    lat = ParameterLattice(["q1", "g12"])
    m = lat.monomial({"q1": 1, "g12": -1})
    assert m.as_monomial() == (1, -1)
    assert (Q + P).as_monomial() is None
    assert QP.one().as_monomial() == (0, 0)
    # coefficient must reduce to exactly one
    assert (Q + Q).as_monomial() is None
    assert ((Q + Q) / QP.rational(2)).as_monomial() == (1, 0)


def test_monomial_product_adds_exponents():
    lat = ParameterLattice(["a", "b", "c"])
    m1 = lat.monomial({"a": 2, "c": -1})
    m2 = lat.monomial({"b": 1, "c": 3})
    assert (m1 * m2).as_monomial() == (2, 1, 2)


def test_powers():
    assert Q**0 == QP.one()
    assert Q**3 == Q * Q * Q
    assert Q**-2 == QP.monomial({"q": -2})
    assert ((Q - P) ** 2) == (Q - P) * (Q - P)


def _random_poly(rng, lat, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(-2, 2) for _ in range(lat.k))
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if c:
            terms[e] = c
    return LaurentPoly(lat, terms)


def _random_scalar(rng, lat):
    num = _random_poly(rng, lat)
    den = _random_poly(rng, lat)
    while den.is_zero():
        den = _random_poly(rng, lat)
    return Scalar(num, den)


def test_field_axioms_randomized():
    rng = random.Random(20240901)
    for _ in range(60):
        a = _random_scalar(rng, QP)
        b = _random_scalar(rng, QP)
        c = _random_scalar(rng, QP)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * (QP.one() / a) == QP.one()
            assert a * a.inverse() == QP.one()


def test_substitution_checks_denominator():
    s = Q / (Q - P)
    assert s.substitute({"q": Fraction(2), "p": Fraction(3)}) == Fraction(-2)
    with pytest.raises(SpecializationError):
        s.substitute({"q": Fraction(2), "p": Fraction(2)})
    with pytest.raises(SpecializationError):
        Q.substitute({"q": Fraction(0), "p": Fraction(1)})


def test_monomial_string_round_trip():
    lat = ParameterLattice(["q1", "q2", "g12"])
    for text in ("1", "q1", "q1^2*g12^-1", "q2^-3"):
        s = parse_monomial(lat, text)
        assert render_exponents(lat, s.as_monomial()) == text
    with pytest.raises(KeyError):
        parse_monomial(lat, "bogus^2")


def test_render_scalar_shape():
    assert render_scalar((Q - P) / QP.one()) == "(q - p)/(1)"
    assert render_scalar(QP.zero()) == "(0)/(1)"
