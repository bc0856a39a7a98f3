from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import VAR, polys, rationals, scalars
from zinbiel.scalars import (
    NO,
    YES,
    AssumptionSet,
    AssumptionViolated,
    Conditional,
    DivisionByZero,
    ParameterClash,
    PoleAtValue,
    Poly,
    RatFunc,
    evaluate_at,
    factor_partial,
    inv,
    is_assumed_nonzero,
    is_zero,
    param,
    poly_gcd,
    poly_xgcd,
    ratfunc,
    rational_roots,
    scalar_str,
    squarefree_decomposition,
    to_scalar,
)

lam = param(VAR)
x = Poly.x("x")


def _sym(p: Poly):
    t = sympy.Symbol(p.var or "x")
    return sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(p.coeffs))


# -- worked cases ---------------------------------------------------------


def test_additive_inverse():
    assert Fraction(1, 2) + Fraction(-1, 2) == 0


def test_param_times_inverse_is_one():
    assert lam * (1 / lam) == 1
    assert isinstance(lam * inv(lam), Fraction)


def test_polynomial_division_collapses():
    q = (lam**2 - 1) / (lam - 1)
    assert q == lam + 1
    assert q.den == Poly((1,), VAR)


def test_evaluate_identity_and_pole():
    assert evaluate_at(lam, 2) == 2
    with pytest.raises(PoleAtValue):
        evaluate_at(1 / lam, 0)


def test_evaluate_respects_assumption():
    with pytest.raises(AssumptionViolated):
        evaluate_at(lam, 0, AssumptionSet.of([lam.num], VAR))


def test_assumed_nonzero_statuses():
    assert is_assumed_nonzero(Fraction(3, 4)) == YES
    assert is_assumed_nonzero(Fraction(0)) == NO
    assert is_assumed_nonzero(lam, AssumptionSet.of([lam.num], VAR)) == YES
    status = is_assumed_nonzero(lam + 1, AssumptionSet.of([lam.num], VAR))
    assert isinstance(status, Conditional)
    assert status.factor == Poly((1, 1), VAR)


def test_assumed_nonzero_through_products():
    a = AssumptionSet.of([Poly((0, 1), VAR), Poly((1, 1), VAR)], VAR)
    assert is_assumed_nonzero(lam**2 * (lam + 1) / (lam - 3), a) == YES


def test_factor_idempotent_polynomial():
    f = factor_partial(x**2 - x)
    assert sorted(f.factors, key=str) == sorted([(x, 1), (x - 1, 1)], key=str)
    assert not f.has_remainder


def test_factor_cube():
    f = factor_partial(x**3)
    assert f.factors == [(x, 3)]
    assert not f.has_remainder


def test_factor_irreducible_quadratic():
    f = factor_partial(x**2 + 1)
    assert f.factors == [(x**2 + 1, 1)]
    assert not f.has_remainder


def test_factor_reports_remainder_beyond_quadratics():
    f = factor_partial((x**3 - 2) * (x - 5))
    assert f.has_remainder
    assert f.expand() == (x**3 - 2) * (x - 5)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        inv(Fraction(0))
    with pytest.raises(DivisionByZero):
        ratfunc(Poly((1,), VAR), Poly((), VAR))


def test_two_parameters_clash():
    with pytest.raises(ParameterClash):
        param("a") + param("b")


def test_to_scalar_parses_text():
    assert to_scalar("2*alpha - 1") == 2 * param("alpha") - 1
    assert to_scalar("1/2") == Fraction(1, 2)


def test_scalar_str():
    assert scalar_str(Fraction(-3, 2)) == "-3/2"
    assert scalar_str(2 * lam**2 - lam + Fraction(1, 2)) == "2*lam^2 - lam + 1/2"


def test_canonical_denominator_is_monic():
    s = ratfunc(Poly((1,), VAR), Poly((4, 2), VAR))
    assert s.den.lead == 1
    assert s == 1 / (2 * lam + 4)


# -- field axioms (1000 random cases) -------------------------------------


@settings(max_examples=1000)
@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not is_zero(a):
        assert a * inv(a) == 1


@settings(max_examples=300)
@given(scalars())
def test_canonical_form_idempotent(a):
    if isinstance(a, RatFunc):
        again = ratfunc(a.num, a.den)
        assert again == a and hash(again) == hash(a)
        assert poly_gcd(a.num, a.den) == Poly((1,), VAR)
        assert a.den.lead == 1


@settings(max_examples=300)
@given(scalars(), scalars(), st.integers(-7, 7))
def test_evaluation_is_a_homomorphism(a, b, v):
    try:
        ea, eb = evaluate_at(a, v), evaluate_at(b, v)
    except PoleAtValue:
        return
    assert evaluate_at(a + b, v) == ea + eb
    prod = a * b
    if not is_zero(prod):
        assert evaluate_at(prod, v) == ea * eb


@settings(max_examples=300)
@given(polys(max_degree=5))
def test_factor_partial_product_is_input(p):
    if p.is_zero():
        return
    f = factor_partial(p)
    assert f.expand() == p
    for g, _ in f.factors:
        assert g.lead == 1 and g.degree in (1, 2)


@settings(max_examples=200)
@given(polys(max_degree=4), polys(max_degree=4))
def test_gcd_against_sympy(a, b):
    g = poly_gcd(a, b)
    expected = sympy.Poly(sympy.gcd(_sym(a), _sym(b)), sympy.Symbol(VAR))
    if expected.is_zero:
        assert g.is_zero()
    else:
        expected = expected.monic()
        assert _sym(g).expand() == expected.as_expr().expand()


@settings(max_examples=200)
@given(polys(max_degree=4), polys(max_degree=3))
def test_xgcd_bezout(a, b):
    g, u, v = poly_xgcd(a, b)
    assert u * a + v * b == g


@settings(max_examples=200)
@given(st.lists(rationals, min_size=1, max_size=4))
def test_rational_roots_recovered(roots):
    p = Poly((1,), VAR)
    for r in roots:
        p = p * Poly((-r, 1), VAR)
    assert sorted(set(rational_roots(p))) == sorted(set(roots))


@settings(max_examples=200)
@given(polys(max_degree=5))
def test_squarefree_decomposition_multiplies_back(p):
    if p.is_zero() or p.degree == 0:
        return
    acc = Poly((1,), VAR)
    for f, m in squarefree_decomposition(p):
        acc = acc * f**m
    assert acc == p.monic()
