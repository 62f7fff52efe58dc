from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gwc.errors import IndexOutOfRange, ParseError, RingMismatch
from gwc.fields import nf_new
from gwc.poly import (
    DEGREVLEX,
    LEX,
    MonomialOrder,
    MultiPoly,
    is_weighted_homogeneous,
    parse_poly,
    partial_derivative,
    poly_arith,
)


def P(text, n=2, field=None):
    return parse_poly(text, nvars=n) if field is None else parse_poly(text, nvars=n, field=field)


def test_arith_examples():
    assert poly_arith(P("x + y"), P("x - y"), "add") == P("2*x")
    assert poly_arith(P("x + y"), P("x - y"), "mul") == P("x^2 - y^2")
    assert poly_arith(P("x"), MultiPoly.zero(2), "mul").is_zero()
    assert poly_arith(P("x + y"), P("y"), "sub") == P("x")


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        P("x") + P("x", n=3)
    K = nf_new([1, 0, 1])
    with pytest.raises(RingMismatch):
        P("x") + P("x", field=K)


def test_derivative_examples():
    f = P("x^3 - y^2")
    assert partial_derivative(f, 0) == P("3x^2")
    assert partial_derivative(f, 1) == P("-2y")
    assert partial_derivative(P("x*y"), 0) == P("y")
    with pytest.raises(IndexOutOfRange):
        partial_derivative(f, 2)


def test_weighted_homogeneous_examples():
    assert is_weighted_homogeneous(P("x^3 - y^2"), (2, 3)) == 6
    assert is_weighted_homogeneous(P("x^2 + y^3"), (1, 1)) is None
    assert is_weighted_homogeneous(P("x*y"), (1, 1)) == 2


def test_parse_forms():
    assert P("2x*y") == P("2*x*y")
    with pytest.raises(ParseError):
        P("xy")
    assert P("x^2") == P("x**2")
    assert P("(x + 1)^2 - 1") == P("x^2 + 2x")
    assert parse_poly("x0*x4", nvars=5).nvars == 5
    assert P("x/2") == MultiPoly({(1, 0): Fraction(1, 2)}, 2)
    with pytest.raises(ParseError):
        P("x^-1")
    with pytest.raises(ParseError):
        P("x + ")
    with pytest.raises(ParseError):
        P("x*y*z", n=2)


def test_parse_over_number_field():
    K = nf_new([1, 0, 1])
    f = parse_poly("x^2 + a*y^2", nvars=2, field=K)
    assert f.coeff((0, 2)) == K.gen
    assert (f * f).coeff((0, 4)) == -K.one


def test_orders():
    x2, xy, y2, x = (2, 0), (1, 1), (0, 2), (1, 0)
    assert sorted([y2, x, xy, x2], key=DEGREVLEX.key) == [x, y2, xy, x2]
    assert sorted([y2, x, xy, x2], key=LEX.key) == [y2, x, xy, x2]
    w = MonomialOrder("weighted-degrevlex", (2, 3))
    assert w.key((3, 0)) > w.key((0, 2))  # same weight 6, ties broken by degrevlex
    assert w.key((0, 1)) > w.key((1, 0))
    with pytest.raises(ValueError):
        MonomialOrder("weighted-degrevlex", (0, 1))


def test_degrevlex_breaks_ties_on_last_variable():
    # x*z < y^2 in degrevlex with x > y > z
    assert DEGREVLEX.key((1, 0, 1)) < DEGREVLEX.key((0, 2, 0))
    assert LEX.key((1, 0, 1)) > LEX.key((0, 2, 0))


monos = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
orders = st.sampled_from([DEGREVLEX, LEX, MonomialOrder("weighted-degrevlex", (1, 2, 3))])


@given(orders, monos, monos, monos)
def test_orders_are_multiplicative_total_orders(order, a, b, c):
    ka, kb = order.key(a), order.key(b)
    assert (ka == kb) == (a == b)
    ac = tuple(i + j for i, j in zip(a, c))
    bc = tuple(i + j for i, j in zip(b, c))
    if ka < kb:
        assert order.key(ac) < order.key(bc)
    # 1 is the smallest monomial
    assert order.key((0, 0, 0)) <= ka


polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=5,
).map(lambda d: MultiPoly(d, 2))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) - g == f
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@given(polys, polys)
def test_leibniz_rule(f, g):
    for i in range(2):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@given(polys, st.fractions(min_value=-3, max_value=3), st.fractions(min_value=-3, max_value=3))
def test_evaluation_is_a_ring_map(f, a, b):
    g = f * f + f
    assert g.evaluate([a, b]) == f.evaluate([a, b]) ** 2 + f.evaluate([a, b])


@given(polys)
def test_text_round_trip(f):
    assert parse_poly(f.to_str(), nvars=2) == f
