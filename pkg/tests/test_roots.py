from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypercert.errors import ContractError
from hypercert.poly import UvPoly
from hypercert.roots import (
    all_roots_real,
    isolate_roots,
    refine_root,
    square_free_decomposition,
    square_free_part,
    sturm_count,
)

roots_st = st.lists(st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6)), min_size=1, max_size=6)


@given(roots_st)
def test_isolation_brackets_known_roots(roots):
    f = UvPoly.from_roots(roots)
    iso = isolate_roots(f, Fraction(1, 10**6))
    distinct = sorted(set(roots))
    assert len(iso) == len(distinct)
    for iv, r in zip(iso, distinct):
        assert iv.lo <= r <= iv.hi
        assert iv.width <= Fraction(1, 10**6)
        assert iv.multiplicity == roots.count(r)
    assert iso.total_multiplicity == len(roots)


@given(roots_st, st.integers(0, 3))
def test_sturm_count_on_intervals(roots, extra_pairs):
    # add (t^2 + 1) factors: never real
    f = UvPoly.from_roots(roots) * UvPoly([1, 0, 1]) ** extra_pairs
    distinct = set(roots)
    assert sturm_count(f) == len(distinct)
    assert sturm_count(f, Fraction(0), Fraction(10)) == len({r for r in distinct if 0 < r <= 10})
    assert all_roots_real(f) == (extra_pairs == 0)


@settings(max_examples=60)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7))
def test_real_root_count_matches_numpy(coeffs):
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    f = UvPoly(coeffs)
    sf = square_free_part(f)
    num = np.roots(list(reversed([float(c) for c in sf.coeffs])))
    real = [r for r in num if abs(r.imag) < 1e-7]
    if any(1e-9 < abs(r.imag) < 1e-5 for r in num):
        return  # numerically ambiguous, skip
    assert sturm_count(f) == len(real)


@given(roots_st)
def test_square_free_decomposition(roots):
    f = UvPoly.from_roots(roots)
    prod = UvPoly([1])
    for g, k in square_free_decomposition(f):
        prod = prod * g ** k
    assert prod.monic() == f.monic()


def test_refine_narrows():
    f = UvPoly([-2, 0, 1])
    iso = isolate_roots(f, Fraction(1, 2))
    iv = refine_root(f, iso[1], Fraction(1, 10**12))
    assert iv.lo ** 2 <= 2 <= iv.hi ** 2
    assert iv.width <= Fraction(1, 10**12)


def test_zero_polynomial_rejected():
    with pytest.raises(ContractError):
        isolate_roots(UvPoly([]), Fraction(1, 10))
