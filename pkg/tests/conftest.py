"""Shared oracles. Everything here is independent of the package internals."""

from __future__ import annotations

from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from hypercert.poly import MvPoly, UvPoly


def to_sympy(p: MvPoly, symbols=None):
    symbols = symbols or sp.symbols(f"x0:{p.nvars}")
    expr = sp.Integer(0)
    for exp, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, a in zip(symbols, exp):
            term *= s**a
        expr += term
    return sp.expand(expr)


def from_sympy(expr, symbols) -> MvPoly:
    poly = sp.Poly(sp.expand(expr), *symbols)
    return MvPoly(len(symbols), {
        tuple(m): Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for m, c in poly.terms()
    })


def uv_to_sympy(f: UvPoly, t):
    return sum(sp.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(f.coeffs))


def sym_matrix(m):
    return sp.Matrix([[sp.Rational(v.numerator, v.denominator) for v in row] for row in m.data])


small_fracs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))


@st.composite
def mv_polys(draw, nvars=3, max_terms=5, max_deg=3):
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        exp = tuple(draw(st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars)))
        terms[exp] = draw(small_fracs)
    return MvPoly(nvars, terms)


@st.composite
def uv_polys(draw, max_deg=5, nonzero=False):
    coeffs = draw(st.lists(small_fracs, min_size=1, max_size=max_deg + 1))
    if nonzero and not any(coeffs):
        coeffs[-1] = Fraction(1)
    return UvPoly(coeffs)


# acceptance lines, printed once at the end of the run
ACCEPTANCE: list[str] = []


def record_acceptance(number: int, ok: bool, detail: str) -> str:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
