import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gwc.errors import ConstantTermPresent, InputError, NotAtOrigin, NotIsolated, SmoothPoint
from gwc.fields import nf_new
from gwc.gw import GWClass, gw_equal, hyperbolic
from gwc.local import (
    canonical_functional,
    check_looks_like,
    decompose_partials,
    jacobian_ring,
    milnor_form,
    random_functional,
    scheja_storch_element,
    scheja_storch_form,
)
from gwc.poly import LEX, MultiPoly, parse_poly

F = Fraction


def P(text, n=None, field=None):
    if field is None:
        return parse_poly(text, nvars=n)
    return parse_poly(text, nvars=n, field=field)


def cls(*entries):
    return GWClass.from_entries(entries)


def test_jacobian_ring_examples():
    r = jacobian_ring(P("x*y"))
    assert r.milnor_number == 1 and r.basis == [(0, 0)]
    r = jacobian_ring(P("x^3 - y^2"))
    assert r.milnor_number == 2 and r.basis == [(0, 0), (1, 0)]
    r = jacobian_ring(P("x^3 + y^3"))
    assert r.milnor_number == 4 and sorted(r.basis) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_jacobian_ring_errors():
    with pytest.raises(NotIsolated):
        jacobian_ring(P("x^2*y"))
    with pytest.raises(NotAtOrigin):
        jacobian_ring(P("y^2 - x^2 - x^3"))
    with pytest.raises(SmoothPoint):
        jacobian_ring(P("x + y^2"))
    with pytest.raises(ConstantTermPresent):
        jacobian_ring(P("x^2 + y^2 + 1"))
    with pytest.raises(NotIsolated):
        jacobian_ring(P("x^2*y"), local=True)


def test_local_mode_discards_other_critical_points():
    r = jacobian_ring(P("y^2 - x^2 - x^3"), local=True)
    assert r.localized and r.milnor_number == 1
    assert gw_equal(milnor_form(P("y^2 - x^2 - x^3"), local=True).gw_class(), cls(-1))


def test_decompositions_and_elements():
    r = jacobian_ring(P("x*y"))
    A = decompose_partials(r)
    assert A == [[P("0", 2), P("1", 2)], [P("1", 2), P("0", 2)]]
    assert scheja_storch_element(r, A) == [-1]
    r = jacobian_ring(P("x^2 + y^2"))
    A = decompose_partials(r)
    assert A == [[P("2", 2), P("0", 2)], [P("0", 2), P("2", 2)]]
    assert scheja_storch_element(r, A) == [4]
    r = jacobian_ring(P("x^3 - y^2"))
    A = decompose_partials(r)
    assert A == [[P("3x", 2), P("0", 2)], [P("0", 2), P("-2", 2)]]
    assert scheja_storch_element(r, A) == [0, -6]


def test_milnor_form_examples():
    assert milnor_form(P("x*y")).matrix == [[-1]]
    assert milnor_form(P("x^2 + y^2")).matrix == [[F(1, 4)]]
    assert gw_equal(milnor_form(P("x^2 + y^2")).gw_class(), cls(1))
    q = milnor_form(P("x^3 - y^2"))
    assert q.matrix == [[0, F(-1, 6)], [F(-1, 6), 0]]
    assert gw_equal(q.gw_class(), hyperbolic(1))
    assert gw_equal(milnor_form(P("x^2 + y^2 + z^2")).gw_class(), cls(2))


def test_functional_must_normalize_element():
    r = jacobian_ring(P("x^3 - y^2"))
    with pytest.raises(InputError):
        scheja_storch_form(r, functional=[1, 0])


def test_works_over_number_fields():
    K = nf_new([1, 0, 1])
    f = P("x^2 + a*y^2", n=2, field=K)
    q = milnor_form(f)
    # Gram is 1/(4a)
    assert q.matrix[0][0] == K([1]) / (K([4]) * K.gen)


def _ekl_degree(coeffs, exps):
    # local degree of the gradient of sum c_i x_i^p_i: product over i of
    # deg(t -> c p t^(p-1)), which is sign(c) for odd p-1 and 0 otherwise
    deg = 1
    for c, p in zip(coeffs, exps):
        deg *= (1 if c > 0 else -1) if (p - 1) % 2 else 0
    return deg


@pytest.mark.parametrize("p", range(2, 7))
@pytest.mark.parametrize("q", range(2, 7))
@pytest.mark.parametrize("signs", [(1, 1), (1, -1), (-1, -1)])
def test_brieskorn_rank_and_signature(p, q, signs):
    f = MultiPoly({(p, 0): signs[0], (0, q): signs[1]}, 2)
    g = milnor_form(f).gw_class()
    assert g.rank == (p - 1) * (q - 1)
    # signature equals the local degree of the gradient (real EKL theorem)
    assert g.signature == _ekl_degree(signs, (p, q))


@pytest.mark.parametrize("exps", [(2, 3, 4), (3, 3, 3), (2, 2, 5), (4, 3, 2)])
def test_three_variable_signature(exps):
    f = MultiPoly({(exps[0], 0, 0): 1, (0, exps[1], 0): -1, (0, 0, exps[2]): 2}, 3)
    g = milnor_form(f).gw_class()
    assert g.rank == (exps[0] - 1) * (exps[1] - 1) * (exps[2] - 1)
    assert g.signature == _ekl_degree((1, -1, 2), exps)


def _sympy_milnor(text):
    x, y = sympy.symbols("x y")
    f = sympy.sympify(text.replace("^", "**"))
    G = sympy.groebner([f.diff(x), f.diff(y)], x, y, order="grevlex")
    lms = [sympy.Poly(g, x, y).monoms(order="grevlex")[0] for g in G.exprs]
    bound = max(max(m) for m in lms) + 1
    return sum(
        1
        for i in range(bound)
        for j in range(bound)
        if not any(i >= a and j >= b for a, b in lms)
    )


@pytest.mark.parametrize(
    "text", ["x^3 - y^2", "x^4 + y^4", "x^2*y + y^4", "x^3 + x*y^3", "x^5 + y^3", "x^3*y + y^5"]
)
def test_milnor_number_matches_sympy(text):
    # these Jacobian ideals are supported only at the origin, so global = local
    assert jacobian_ring(P(text)).milnor_number == _sympy_milnor(text)


def test_local_milnor_number_of_t255():
    # x^5 + y^5 + x^2 y^2 is T_{2,5,5} with mu = 2 + 5 + 5 - 1; the global
    # Jacobian ideal has length 16 because of critical points off the origin
    f = P("x^2*y^2 + x^5 + y^5")
    assert _sympy_milnor("x^2*y^2 + x^5 + y^5") == 16
    assert jacobian_ring(f, local=True).milnor_number == 11


@settings(max_examples=25)
@given(st.integers(2, 5), st.integers(2, 5), st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3).filter(bool))
def test_milnor_number_ignores_higher_weighted_terms(p, q, a, b, c):
    # x^p + y^q + c x^a y^b with a/p + b/q > 1 has the Milnor number of x^p + y^q
    if a * q + b * p <= p * q:
        return
    f = MultiPoly({(p, 0): 1, (0, q): 1, (a, b): c}, 2)
    assert jacobian_ring(f, local=True).milnor_number == (p - 1) * (q - 1)


CORPUS = ["x*y", "x^2 + y^2", "x^3 - y^2", "x^3 + y^3", "x^4 - y^3 + x^2*y^2", "x^2*y + y^4", "x^2 + y^2 + z^3"]


@pytest.mark.parametrize("text", CORPUS)
def test_choices_do_not_change_the_class(text):
    rng = random.Random(7)
    r = jacobian_ring(P(text), local=True)
    base = scheja_storch_form(r).gw_class()
    for _ in range(3):
        A = decompose_partials(r, rng)
        e = scheja_storch_element(r, A)
        phi = random_functional(r, e, rng)
        assert gw_equal(scheja_storch_form(r, A, phi).gw_class(), base)
        assert gw_equal(scheja_storch_form(r, A, canonical_functional(r, e)).gw_class(), base)


def test_order_does_not_change_the_class():
    f = parse_poly("x0^2*x1 + x1^4", nvars=2)
    assert gw_equal(milnor_form(f).gw_class(), milnor_form(f, order=LEX).gw_class())


def test_looks_like_examples():
    assert check_looks_like(P("x^3 - y^2"), (2, 3), 6).passed
    assert check_looks_like(P("x^2 - y^2"), (1, 1), 2).passed
    rep = check_looks_like(P("x^2*y"), (1, 1), 3)
    assert not rep.isolated_cone and not rep.passed


def test_looks_like_higher_terms():
    rep = check_looks_like(P("y^2 - x^2 - x^3"), (1, 1), 2)
    assert rep.passed and rep.higher_terms == [(3, 0)]
    rep = check_looks_like(P("x^3 - y^2 + x*y"), (2, 3), 6)
    assert not rep.passed and "is_weighted_homogeneous_leading" in rep.failures()
    rep = check_looks_like(P("x^3 - y^2"), (2, 4), 6)
    assert not rep.coprime
    rep = check_looks_like(P("x^3 - y^2"), (3, 2), 6)
    assert not rep.vertex_condition or not rep.is_weighted_homogeneous_leading
