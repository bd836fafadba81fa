"""Bezoutians, Hankel matrices of rational functions, and the congruences between them.

The ``*_entries`` functions are ring-generic: coefficient sequences may hold
Fractions or `MvPoly` values (anything supporting ``+``, ``-``, ``*``). The
public `UvPoly`/`QMatrix` wrappers enforce the degree contracts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import ContractError
from .linalg import QMatrix
from .poly import MvPoly, UvPoly, as_fraction

__all__ = [
    "HankelSpec",
    "bezout_entries",
    "laurent_coefficients",
    "hankel_entries",
    "bezout_of_one_entries",
    "congruence_entries",
    "bezout_matrix",
    "hankel_matrix",
    "bezout_of_one",
    "congruence_matrix",
    "shift_matrix",
    "bezout_via_hankel",
]


def _get(seq, k):
    return seq[k] if 0 <= k < len(seq) else 0


def _is_zero(x) -> bool:
    return not x


def bezout_entries(a: Sequence, b: Sequence, m: int) -> list[list]:
    """Coefficients of (a(t)b(s) - b(t)a(s)) / (t - s) as an m x m array.

    Uses B[i][j] = B[i-1][j+1] - (a_i b_{j+1} - a_{j+1} b_i), which follows from
    comparing coefficients of t^i s^(j+1) in (t - s) * B(t, s).
    """
    prev = [0] * (m + 1)
    rows = []
    for i in range(m):
        ai, bi = _get(a, i), _get(b, i)
        row = []
        for j in range(m):
            aj, bj = _get(a, j + 1), _get(b, j + 1)
            c = 0
            if not _is_zero(ai) and not _is_zero(bj):
                c = ai * bj
            if not _is_zero(aj) and not _is_zero(bi):
                c = c - aj * bi
            row.append(prev[j + 1] - c)
        rows.append(row)
        prev = row + [0]
    return rows


def _lead_inverse(lead) -> Fraction:
    if isinstance(lead, MvPoly):
        value = lead.constant_value()
        if value is None:
            raise ContractError("leading coefficient must be a constant")
        lead = value
    lead = as_fraction(lead)
    if not lead:
        raise ContractError("leading coefficient vanishes")
    return 1 / lead


def laurent_coefficients(b: Sequence, a: Sequence, count: int) -> list:
    """h_1..h_count with b(t)/a(t) = sum_k h_k t^(-k), by long division in descending powers."""
    d = len(a) - 1
    while d >= 0 and _is_zero(a[d]):
        d -= 1
    if d < 0:
        raise ContractError("denominator is the zero polynomial")
    inv = _lead_inverse(a[d])
    h = [None]  # 1-indexed
    for k in range(1, count + 1):
        acc = _get(b, d - k)
        for j in range(max(0, d - k + 1), d):
            hk = h[k - d + j]
            aj = a[j]
            if not _is_zero(aj) and not _is_zero(hk):
                acc = acc - aj * hk
        h.append(acc * inv if not _is_zero(acc) else 0)
    return h[1:]


def hankel_entries(b: Sequence, a: Sequence, m: int) -> list[list]:
    h = laurent_coefficients(b, a, 2 * m - 1)
    return [[h[i + j] for j in range(m)] for i in range(m)]


def bezout_of_one_entries(a: Sequence, m: int) -> list[list]:
    """B(t^(m-d) a, 1) for monic a of degree d <= m: entry (i, j) is a~_(i+j+1) (0-indexed)."""
    d = len(a) - 1
    padded = [0] * (m - d) + list(a)
    return [[padded[i + j + 1] if i + j + 1 <= m else 0 for j in range(m)] for i in range(m)]


def congruence_entries(a: Sequence, m: int) -> list[list]:
    """M_m(a) with B_m(a, b) = M H_m(b/a) M^T, for monic a of degree d <= m.

    Rows are those of B(t^(m-d) a, 1) with the last d rows moved to the top.
    """
    d = len(a) - 1
    base = bezout_of_one_entries(a, m)
    return base[m - d:] + base[: m - d]


# -- rational wrappers --------------------------------------------------------

def _check_pair(a: UvPoly, b: UvPoly, m: int):
    if a.is_zero:
        raise ContractError("a must be nonzero")
    if not b.is_zero and b.degree >= a.degree:
        raise ContractError(f"need deg(b) < deg(a); got {b.degree} >= {a.degree}")
    if a.degree > m:
        raise ContractError(f"need deg(a) <= m; got {a.degree} > {m}")


def bezout_matrix(a: UvPoly, b: UvPoly, m: int) -> QMatrix:
    _check_pair(a, b, m)
    return QMatrix(bezout_entries(a.coeffs, b.coeffs, m))


def hankel_matrix(b: UvPoly, a: UvPoly, m: int) -> QMatrix:
    if a.is_zero:
        raise ContractError("denominator is the zero polynomial")
    if not b.is_zero and b.degree >= a.degree:
        raise ContractError(f"need deg(b) < deg(a); got {b.degree} >= {a.degree}")
    return QMatrix(hankel_entries(b.coeffs, a.coeffs, m))


def _monic_of_degree_at_most(a: UvPoly, m: int) -> UvPoly:
    if a.is_zero:
        raise ContractError("a must be nonzero")
    if a.degree > m:
        raise ContractError(f"need deg(a) <= m; got {a.degree} > {m}")
    return a


def bezout_of_one(a: UvPoly, m: int) -> QMatrix:
    """The symmetric unimodular B(t^(m-d) a, 1); ``a`` is normalized to monic first."""
    a = _monic_of_degree_at_most(a, m).monic()
    return QMatrix(bezout_of_one_entries(a.coeffs, m))


def congruence_matrix(a: UvPoly, m: int) -> QMatrix:
    a = _monic_of_degree_at_most(a, m)
    if a.lead != 1:
        raise ContractError("congruence_matrix needs a monic polynomial; divide by the leading coefficient")
    return QMatrix(congruence_entries(a.coeffs, m))


def bezout_via_hankel(a: UvPoly, b: UvPoly, m: int) -> tuple[QMatrix, QMatrix]:
    """(M, H) with B_m(a, b) = M H M^T for any nonzero leading coefficient of a.

    With c = lead(a), B_m(a, b) = c^2 B_m(a/c, b/c) and H(b/a) is unchanged, so
    M = c * M_m(a/c).
    """
    _check_pair(a, b, m)
    c = a.lead
    mono = a.monic()
    return congruence_matrix(mono, m).scale(c), hankel_matrix(b, a, m)


def shift_matrix(t0, m: int) -> QMatrix:
    """Upper triangular Pascal matrix K with K[j][k] = C(k, j) t0^(k-j) (0-indexed)."""
    if m < 1:
        raise ContractError("m must be at least 1")
    t0 = as_fraction(t0)
    return QMatrix([[comb(k, j) * t0 ** (k - j) if k >= j else 0 for k in range(m)] for j in range(m)])


@dataclass(frozen=True)
class HankelSpec:
    """A rational function b/a with its first 2m-1 Laurent coefficients."""

    b: UvPoly
    a: UvPoly
    m: int
    laurent: tuple[Fraction, ...]

    @classmethod
    def build(cls, b: UvPoly, a: UvPoly, m: int) -> "HankelSpec":
        _check_pair(a, b, m)
        h = laurent_coefficients(b.coeffs, a.coeffs, 2 * m - 1)
        return cls(b, a, m, tuple(as_fraction(v) for v in h))

    def matrix(self) -> QMatrix:
        return QMatrix([[self.laurent[i + j] for j in range(self.m)] for i in range(self.m)])

    def recurrence_residuals(self) -> list[Fraction]:
        """Coefficients of t^-1 .. t^-(2m-1-deg a) in a(t) * sum h_k t^-k - b(t); all zero when consistent."""
        d = self.a.degree
        out = []
        for r in range(1, 2 * self.m - d):
            # coefficient of t^(-r): sum_j a_j h_(j + r)
            acc = Fraction(0)
            for j in range(d + 1):
                k = j + r
                if k <= len(self.laurent):
                    acc += self.a.coeff(j) * self.laurent[k - 1]
            out.append(acc)
        return out
