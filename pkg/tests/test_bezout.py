from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from hypercert.bezout import (
    HankelSpec,
    bezout_matrix,
    bezout_of_one,
    bezout_via_hankel,
    congruence_matrix,
    hankel_matrix,
    laurent_coefficients,
    shift_matrix,
)
from hypercert.errors import ContractError
from hypercert.linalg import QMatrix
from hypercert.poly import UvPoly

from conftest import small_fracs, uv_to_sympy

T, S = sp.symbols("t s")


def bezout_oracle(a: UvPoly, b: UvPoly, m: int) -> QMatrix:
    # coefficients of (a(t) b(s) - b(t) a(s)) / (t - s), read with sympy
    at, bt = uv_to_sympy(a, T), uv_to_sympy(b, T)
    expr = sp.cancel((at * bt.subs(T, S) - bt * at.subs(T, S)) / (T - S))
    poly = sp.Poly(sp.expand(expr), T, S)
    out = [[Fraction(0)] * m for _ in range(m)]
    for (i, j), c in poly.terms():
        out[i][j] = Fraction(str(c))
    return QMatrix(out)


def hankel_oracle(b: UvPoly, a: UvPoly, m: int) -> QMatrix:
    # Laurent coefficients at infinity: b/a = sum_k h_k t^-k
    z = sp.Symbol("z")
    f = sp.cancel(uv_to_sympy(b, T).subs(T, 1 / z) / uv_to_sympy(a, T).subs(T, 1 / z))
    ser = sp.series(f, z, 0, 2 * m + 1).removeO()
    h = [Fraction(str(ser.coeff(z, k))) for k in range(1, 2 * m)]
    return QMatrix([[h[i + j] for j in range(m)] for i in range(m)])


@st.composite
def pairs(draw, max_d=6, max_extra=2):
    d = draw(st.integers(1, max_d))
    a = UvPoly(draw(st.lists(small_fracs, min_size=d, max_size=d)) + [draw(small_fracs.filter(bool))])
    b = UvPoly(draw(st.lists(small_fracs, min_size=d, max_size=d)))
    m = d + draw(st.integers(0, max_extra))
    return a, b, m


@settings(max_examples=40, deadline=None)
@given(pairs(max_d=4))
def test_bezout_matches_definition(case):
    a, b, m = case
    assert bezout_matrix(a, b, m) == bezout_oracle(a, b, m)


@settings(max_examples=30, deadline=None)
@given(pairs(max_d=4))
def test_hankel_matches_series(case):
    a, b, m = case
    assert hankel_matrix(b, a, m) == hankel_oracle(b, a, m)


@settings(max_examples=100, deadline=None)
@given(pairs())
def test_congruence_identity(case):
    a, b, m = case
    mm, h = bezout_via_hankel(a, b, m)
    assert mm @ h @ mm.T == bezout_matrix(a, b, m)


@given(pairs(max_extra=0))
def test_bezout_of_one_is_unimodular(case):
    a, _, m = case
    b1 = bezout_of_one(a, m)
    assert b1.is_symmetric()
    assert abs(sp.Matrix(b1.tolist()).det()) == 1


@given(pairs())
def test_congruence_matrix_unimodular(case):
    a, _, m = case
    mm = congruence_matrix(a.monic(), m)
    assert abs(sp.Matrix(mm.tolist()).det()) == 1


@settings(max_examples=100, deadline=None)
@given(pairs(), small_fracs)
def test_shift_congruence(case, t0):
    a, b, m = case
    k = shift_matrix(t0, m)
    assert bezout_matrix(a.shift(t0), b.shift(t0), m) == k @ bezout_matrix(a, b, m) @ k.T


def test_shift_matrix_is_pascal():
    k = shift_matrix(2, 3)
    assert k.tolist() == [[1, 2, 4], [0, 1, 4], [0, 0, 1]]


def test_laurent_of_derivative_ratio_gives_power_sums():
    # a'/a = sum_k (sum_i r_i^(k-1)) t^-k for a with roots r_i
    a = UvPoly.from_roots([1, 2, -3])
    h = laurent_coefficients(a.derivative().coeffs, a.coeffs, 5)
    assert h == [sum(Fraction(r) ** k for r in (1, 2, -3)) for k in range(5)]


def test_contracts():
    with pytest.raises(ContractError):
        bezout_matrix(UvPoly([1, 1]), UvPoly([1, 1]), 2)
    with pytest.raises(ContractError):
        bezout_matrix(UvPoly([1, 0, 1]), UvPoly([1]), 1)
    with pytest.raises(ContractError):
        congruence_matrix(UvPoly([1, 2]), 2)
    spec = HankelSpec.build(UvPoly([1]), UvPoly([0, 1]), 2)
    assert spec.laurent == (1, 0, 0)
