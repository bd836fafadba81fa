from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from hypercert.errors import DimensionError
from hypercert.poly import MvPoly, UvPoly, as_fraction, is_homogeneous, poly_arith

from conftest import mv_polys, small_fracs, to_sympy, uv_polys, uv_to_sympy

X = sp.symbols("x0:3")


@given(mv_polys(), mv_polys())
def test_ring_ops_match_sympy(a, b):
    assert to_sympy(a + b) == sp.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a - b) == sp.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))


@given(mv_polys(), mv_polys(), mv_polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a - a == MvPoly.zero(3)


@given(mv_polys(), st.lists(small_fracs, min_size=3, max_size=3))
def test_eval_matches_sympy(p, pt):
    expected = to_sympy(p).subs(dict(zip(X, [sp.Rational(v.numerator, v.denominator) for v in pt])))
    assert p.eval(pt) == Fraction(str(expected))


@given(mv_polys(), st.integers(0, 2))
def test_partial_matches_sympy(p, i):
    assert to_sympy(p.partial(i)) == sp.expand(sp.diff(to_sympy(p), X[i]))


@settings(max_examples=50)
@given(mv_polys(max_terms=4), st.lists(small_fracs, min_size=3, max_size=3),
       st.lists(small_fracs, min_size=3, max_size=3))
def test_restrict_line_matches_substitution(p, x, e):
    t = sp.Symbol("t")
    sub = {X[i]: sp.Rational(x[i].numerator, x[i].denominator) + t * sp.Rational(e[i].numerator, e[i].denominator)
           for i in range(3)}
    assert sp.expand(uv_to_sympy(p.restrict_line(x, e), t) - to_sympy(p).subs(sub, simultaneous=True)) == 0


@settings(max_examples=50)
@given(mv_polys(max_terms=4), st.lists(small_fracs, min_size=3, max_size=3))
def test_taylor_coefficients_reassemble_line(p, e):
    # p(x + t e) = sum_k T_k(x) t^k
    coeffs = p.taylor_coefficients(e)
    x = (Fraction(1, 3), Fraction(-2), Fraction(5, 7))
    line = p.restrict_line(x, e)
    for k in range(len(coeffs)):
        assert coeffs[k].eval(x) == line.coeff(k)


@settings(max_examples=50)
@given(mv_polys(max_terms=4), st.lists(small_fracs, min_size=3, max_size=3))
def test_directional_derivative_is_gradient_dot(p, u):
    expected = sum((p.partial(i).scale(u[i]) for i in range(3)), MvPoly.zero(3))
    assert p.directional_derivative(u) == expected


def test_compose_and_substitute():
    x0, x1, x2 = MvPoly.variables(3)
    p = x0 * x0 * x1 + 3 * x2
    assert p.substitute({1: 2}) == 2 * x0 * x0 + 3 * x2
    assert p.compose([x1, x0, x0 + x1]) == x1 * x1 * x0 + 3 * x0 + 3 * x1


def test_homogeneity():
    x0, x1, _ = MvPoly.variables(3)
    h = is_homogeneous(x0 ** 2 + x0 * x1)
    assert h and h.degree == 2
    assert not is_homogeneous(x0 ** 2 + x1)


def test_json_roundtrip_and_format():
    x0, x1 = MvPoly.variables(2)
    p = Fraction(1, 2) * x0 ** 2 - x1
    assert MvPoly.from_json(p.to_json()) == p
    assert "x0^2" in p.format()


def test_dimension_errors():
    a, b = MvPoly.var(2, 0), MvPoly.var(3, 0)
    with pytest.raises(DimensionError):
        a + b
    with pytest.raises(DimensionError):
        a.eval([1, 2, 3])


def test_poly_arith_dispatch():
    a, b = MvPoly.variables(2)
    assert poly_arith(a, b, "add") == a + b
    assert poly_arith(a, b, "mul") == a * b
    assert poly_arith(a, None, "scale", 3) == 3 * a


def test_as_fraction_parses_strings():
    assert as_fraction("1/3") == Fraction(1, 3)
    assert as_fraction("-2") == -2


@given(uv_polys(), uv_polys(nonzero=True))
def test_uv_divmod(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


@given(uv_polys(), uv_polys())
def test_uv_gcd_matches_sympy(a, b):
    t = sp.Symbol("t")
    g = a.gcd(b)
    if a.is_zero and b.is_zero:
        return
    expected = sp.Poly(sp.gcd(uv_to_sympy(a, t), uv_to_sympy(b, t)), t, domain="QQ").monic()
    got = sp.Poly(uv_to_sympy(g.monic(), t), t, domain="QQ")
    assert got.all_coeffs() == expected.all_coeffs()


@given(uv_polys(), small_fracs)
def test_uv_shift(a, t0):
    for t in (Fraction(0), Fraction(1, 2), Fraction(-3)):
        assert a.shift(t0).eval(t) == a.eval(t + t0)


def test_uv_from_roots():
    f = UvPoly.from_roots([1, 2, 3])
    assert f.coeffs == UvPoly([-6, 11, -6, 1]).coeffs
