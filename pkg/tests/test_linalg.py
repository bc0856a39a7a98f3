from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import VAR, rationals, scalars
from zinbiel.linalg import (
    SingularMatrix,
    SubspaceBasis,
    certified_nullspace,
    contains,
    evaluate_matrix,
    identity,
    intersect,
    matmul,
    matrix_inverse,
    nullspace,
    rank,
    rank_mod_p,
    rref,
    subspace_equal,
    subspace_sum,
    zeros,
)
from zinbiel.scalars import AssumptionSet, Poly, evaluate_at, is_zero, param

lam = param(VAR)
F = Fraction


def rational_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def param_matrices():
    return st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(st.lists(scalars(), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def _apply(m, v):
    out = []
    for row in m:
        acc = F(0)
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


# -- worked cases ---------------------------------------------------------


def test_rref_identity():
    out, cert = rref(identity(2))
    assert out == identity(2)
    assert cert.rank == 2 and cert.specialization_polys == ()


def test_rref_assumed_pivot():
    out, cert = rref([[lam, 0], [0, 1]], AssumptionSet.of([Poly((0, 1), VAR)], VAR))
    assert out == identity(2)
    assert cert.rank == 2 and cert.specialization_polys == ()


def test_rref_conditional_pivot_recorded():
    _, cert = rref([[lam + 1, 0], [0, 0]], AssumptionSet.of([Poly((0, 1), VAR)], VAR))
    assert cert.rank == 1
    assert cert.specialization_polys == (Poly((1, 1), VAR),)


def test_nullspace_worked_cases():
    assert nullspace(zeros(3, 3))[0].dim == 3
    assert nullspace(identity(3))[0].dim == 0
    space, _ = nullspace([[1, 2]])
    assert space == SubspaceBasis.span([(F(-2), F(1))], 2)


def test_subspace_lattice_worked_cases():
    x_axis = SubspaceBasis.span([(1, 0)], 2)
    y_axis = SubspaceBasis.span([(0, 1)], 2)
    assert intersect(x_axis, x_axis) == x_axis
    assert intersect(x_axis, y_axis).dim == 0
    assert subspace_equal(y_axis, y_axis)
    assert contains(y_axis, (0, 5))
    assert subspace_sum(x_axis, SubspaceBasis.span([(1, 1)], 2)) == SubspaceBasis.full(2)


def test_matrix_inverse():
    p = [[F(2), F(1)], [F(1), F(1)]]
    assert matmul(p, matrix_inverse(p)) == identity(2)
    with pytest.raises(SingularMatrix):
        matrix_inverse([[1, 2], [2, 4]])


def test_certified_nullspace_rejects_short_candidate_lists():
    rows = [{0: F(1), 1: F(2)}]
    assert certified_nullspace(rows, 3, [(F(-2), F(1), F(0))]) is None
    full = certified_nullspace(rows, 3, [(F(-2), F(1), F(0)), (F(0), F(0), F(1))])
    assert full == nullspace([[1, 2, 0]])[0]
    assert certified_nullspace(rows, 3, [(F(1), F(0), F(0))]) is None


def test_modular_rank_bounds_generic_rank():
    m = [[lam, 1], [1, 1 / lam]]
    assert rank(m) == 1
    assert rank_mod_p([{0: lam, 1: F(1)}, {0: F(1), 1: 1 / lam}], 2, 101, 5) == 1


# -- properties ----------------------------------------------------------


@settings(max_examples=150)
@given(rational_matrices())
def test_rref_idempotent(m):
    out, cert = rref(m, ncols=len(m[0]))
    again, cert2 = rref(out, ncols=len(m[0])) if out else ([], cert)
    assert again == out and cert2.rank == cert.rank


@settings(max_examples=500)
@given(rational_matrices(6, 6))
def test_rank_nullity(m):
    cols = len(m[0])
    space, cert = nullspace(m, ncols=cols)
    assert cert.rank + space.dim == cols
    assert cert.rank == sympy.Matrix(m).rank()


@settings(max_examples=200)
@given(rational_matrices(6, 6))
def test_nullspace_sound(m):
    space, _ = nullspace(m, ncols=len(m[0]))
    for v in space.basis:
        assert all(x == 0 for x in _apply(m, v))


@settings(max_examples=80)
@given(param_matrices(), st.integers(-5, 5))
def test_specialization_sound(m, value):
    cols = len(m[0])
    _, cert = rref(m, ncols=cols)
    if any(p(value) == 0 for p in cert.specialization_polys):
        return
    try:
        mv = evaluate_matrix(m, value)
    except ArithmeticError:
        return
    assert rank(mv) == cert.rank


@settings(max_examples=150)
@given(rational_matrices(4, 5), rational_matrices(4, 5))
def test_grassmann_identity(a, b):
    n = 5
    a = [row + [F(0)] * (n - len(row)) for row in a]
    b = [row + [F(0)] * (n - len(row)) for row in b]
    U, V = SubspaceBasis.span(a, n), SubspaceBasis.span(b, n)
    assert U.sum(V).dim + U.intersect(V).dim == U.dim + V.dim
    assert U.contains_space(U.intersect(V)) and V.contains_space(U.intersect(V))


@settings(max_examples=100)
@given(rational_matrices(4, 4))
def test_span_is_canonical(m):
    n = len(m[0])
    U = SubspaceBasis.span(m, n)
    shuffled = SubspaceBasis.span([list(reversed(m))[i] for i in range(len(m))] + [[2 * x for x in m[0]]], n)
    assert U == shuffled
    for p, v in zip(U.pivots(), U.basis):
        assert v[p] == 1
        assert all(is_zero(w[p]) for w in U.basis if w is not v)
